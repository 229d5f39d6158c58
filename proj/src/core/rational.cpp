#include "entropykit/rational.hpp"

#include <cctype>
#include <cmath>

#include "entropykit/error.hpp"

namespace entropykit {

Rational make_rational(long num, long den) {
  if (den == 0) throw DivisionByZeroError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!all_digits(s)) throw ParseError("malformed number '" + std::string(s) + "'", 0, 0);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw ParseError("empty number", 0, 0);

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw DivisionByZeroError("rational with zero denominator");
    value = Rational(num, den);
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      std::string_view exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6)
        throw ParseError("malformed exponent in '" + std::string(text) + "'", 0, 0);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string digits;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      std::string_view int_part = mantissa.substr(0, dot);
      std::string_view frac_part = mantissa.substr(dot + 1);
      if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
          (int_part.empty() && frac_part.empty()))
        throw ParseError("malformed number '" + std::string(text) + "'", 0, 0);
      digits = std::string(int_part) + std::string(frac_part);
      exponent -= static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(mantissa)) throw ParseError("malformed number '" + std::string(text) + "'", 0, 0);
      digits = std::string(mantissa);
    }
    value = Rational(mpz_class(digits, 10));
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent < 0)
      value /= Rational(ten_pow);
    else
      value *= Rational(ten_pow);
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

double to_double(const Rational& q) { return q.get_d(); }

Rational pow_int(const Rational& q, long k) {
  if (k == 0) return Rational(1);
  if (q == 0) {
    if (k < 0) throw DivisionByZeroError("zero raised to a negative power");
    return Rational(0);
  }
  unsigned long n = static_cast<unsigned long>(k < 0 ? -k : k);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), n);
  Rational r = k < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_root(const Rational& q, unsigned long n) {
  if (q < 0 || n == 0) return std::nullopt;
  if (n == 1) return q;
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), n) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational q(x);
  q.canonicalize();
  return q;
}

std::optional<long> to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) return std::nullopt;
  return q.get_num().get_si();
}

}  // namespace entropykit
