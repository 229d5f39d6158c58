#pragma once

#include <random>
#include <string>
#include <vector>

#include "entropykit/expr.hpp"

namespace testsupport {

using entropykit::Expr;
using entropykit::Rational;

inline Rational random_rational(std::mt19937_64& rng, long max_num = 9, long max_den = 5) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return entropykit::make_rational(num(rng), den(rng));
}

/// Random polynomial in `vars` with up to `terms` monomials of total degree <= `degree`.
inline Expr random_polynomial(std::mt19937_64& rng, const std::vector<std::string>& vars, int terms = 4,
                              int degree = 3) {
  std::uniform_int_distribution<int> nterms(1, terms);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1);
  std::uniform_int_distribution<int> deg(0, degree);
  Expr out;
  for (int i = nterms(rng); i > 0; --i) {
    Expr mono(random_rational(rng));
    for (int d = deg(rng); d > 0; --d) mono *= Expr::symbol(vars[pick(rng)]);
    out += mono;
  }
  return out;
}

/// Random expression mixing polynomials, inverse powers, fractional powers and ln/exp.
inline Expr random_expr(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth = 2) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 6 : 0);
  switch (kind(rng)) {
    case 0:
      return random_polynomial(rng, vars);
    case 1:
      return random_expr(rng, vars, depth - 1) + random_expr(rng, vars, depth - 1);
    case 2:
      return random_expr(rng, vars, depth - 1) * random_expr(rng, vars, depth - 1);
    case 3: {
      Expr base = random_polynomial(rng, vars, 3, 2);
      if (base.is_zero()) base = Expr(1L);
      return entropykit::pow(base, Rational(-1 - static_cast<long>(rng() % 2)));
    }
    case 4:
      return entropykit::pow(Expr::symbol(vars[rng() % vars.size()]), entropykit::make_rational(1 + rng() % 3, 2 + rng() % 2));
    case 5:
      return entropykit::ln(Expr::symbol(vars[rng() % vars.size()]) + Expr(Rational(1 + static_cast<long>(rng() % 3))));
    default:
      return entropykit::exp(random_polynomial(rng, vars, 2, 1) * Expr(entropykit::make_rational(1, 10)));
  }
}

}  // namespace testsupport
