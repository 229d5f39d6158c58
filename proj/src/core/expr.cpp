#include "entropykit/expr.hpp"

#include <algorithm>
#include <cmath>

#include "entropykit/error.hpp"

namespace entropykit {

struct ExprBuilder {
  static Expr make(std::vector<Term> terms) {
    return Expr(std::make_shared<const ExprNode>(ExprNode{std::move(terms)}));
  }
};

namespace {

const std::shared_ptr<const ExprNode>& zero_node() {
  static const auto node = std::make_shared<const ExprNode>();
  return node;
}

int cmp_rational(const Rational& a, const Rational& b) {
  int c = cmp(a, b);
  return (c > 0) - (c < 0);
}

int cmp_string(const std::string& a, const std::string& b) {
  int c = a.compare(b);
  return (c > 0) - (c < 0);
}

int compare_factor(const Factor& a, const Factor& b) {
  if (int c = compare(a.base, b.base)) return c;
  return cmp_rational(a.exponent, b.exponent);
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

/// Collects terms keyed by monomial; the map order is the canonical term order.
class Accumulator {
 public:
  void add(const Rational& coef, const Monomial& mono) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(mono, coef);
    if (!inserted) it->second += coef;
  }
  void add(const Rational& coef, Monomial&& mono) {
    if (coef == 0) return;
    auto it = terms_.find(mono);
    if (it == terms_.end())
      terms_.emplace(std::move(mono), coef);
    else
      it->second += coef;
  }
  void add(const Expr& e, const Rational& scale = Rational(1)) {
    for (const Term& t : e.terms()) add(t.coef * scale, t.factors);
  }
  Expr build() {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& [mono, coef] : terms_)
      if (coef != 0) out.push_back(Term{coef, mono});
    return ExprBuilder::make(std::move(out));
  }

 private:
  std::map<Monomial, Rational, MonomialLess> terms_;
};

Expr single_term(Rational coef, Monomial mono) {
  if (coef == 0) return Expr();
  std::vector<Term> terms;
  terms.push_back(Term{std::move(coef), std::move(mono)});
  return ExprBuilder::make(std::move(terms));
}

bool is_sum_base(const Atom& a) { return a.kind == AtomKind::Power && a.arg.terms().size() > 1; }
bool is_constant_base(const Atom& a) { return a.kind == AtomKind::Power && a.arg.terms().size() == 1; }

bool positive_integer(const Rational& q) { return is_integer(q) && q > 0; }

Expr pow_positive_integer(const Expr& base, unsigned long n) {
  Expr result(1L);
  Expr square = base;
  while (n) {
    if (n & 1UL) result = result * square;
    n >>= 1UL;
    if (n) square = square * square;
  }
  return result;
}

Expr constant_power(const Rational& c, const Rational& q);

/// base^exponent for a single atom, normalized so that sums with positive
/// integer exponents are expanded and constant radicals keep exponents in (0,1).
Expr atom_power(const Atom& atom, const Rational& exponent) {
  if (exponent == 0) return Expr(1L);
  if (is_sum_base(atom)) {
    if (positive_integer(exponent)) return pow_positive_integer(atom.arg, exponent.get_num().get_ui());
  } else if (is_constant_base(atom)) {
    return constant_power(*atom.arg.constant_value(), exponent);
  }
  return single_term(Rational(1), Monomial{Factor{atom, exponent}});
}

bool needs_normalizing(const Factor& f) {
  if (is_sum_base(f.base)) return positive_integer(f.exponent);
  if (is_constant_base(f.base)) return f.exponent <= 0 || f.exponent >= 1;
  return false;
}

Expr constant_power(const Rational& c, const Rational& q) {
  if (q == 0) return Expr(1L);
  if (c == 0) {
    if (q < 0) throw DivisionByZeroError("zero raised to a negative power");
    return Expr();
  }
  if (is_integer(q)) {
    auto k = to_long(q);
    if (!k) throw DomainError("exponent too large");
    return Expr(pow_int(c, *k));
  }
  const long p = q.get_num().get_si();
  const unsigned long r = q.get_den().get_ui();
  Rational magnitude = c;
  Rational sign_factor(1);
  if (c < 0) {
    if (r % 2 == 0) throw DomainError("even root of a negative constant");
    magnitude = -c;
    if (p % 2 != 0) sign_factor = -1;
  }
  if (magnitude == 1) return Expr(sign_factor);
  if (auto root = exact_root(magnitude, r)) return Expr(sign_factor * pow_int(*root, p));
  // Keep the fractional part of the exponent in (0,1); the integer part is exact.
  mpz_class floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational frac = q - Rational(floor_q);
  Rational coef = sign_factor * pow_int(magnitude, floor_q.get_si());
  Atom atom{AtomKind::Power, {}, {}, {}, Expr(magnitude)};
  return single_term(coef, Monomial{Factor{std::move(atom), frac}});
}

/// Product of two normalized monomials with a coefficient.
Expr multiply_monomials(const Rational& coef, const Monomial& a, const Monomial& b) {
  Monomial merged;
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].base, b[j].base);
    if (c < 0) {
      merged.push_back(a[i++]);
    } else if (c > 0) {
      merged.push_back(b[j++]);
    } else {
      Rational e = a[i].exponent + b[j].exponent;
      if (e != 0) merged.push_back(Factor{a[i].base, e});
      ++i;
      ++j;
    }
  }
  bool dirty = std::any_of(merged.begin(), merged.end(), needs_normalizing);
  if (!dirty) return single_term(coef, std::move(merged));
  Monomial clean;
  Expr extra(coef);
  for (Factor& f : merged) {
    if (needs_normalizing(f))
      extra = extra * atom_power(f.base, f.exponent);
    else
      clean.push_back(std::move(f));
  }
  return extra * single_term(Rational(1), std::move(clean));
}

std::optional<Atom> as_bare_symbol(const Expr& e) {
  if (e.terms().size() != 1) return std::nullopt;
  const Term& t = e.terms().front();
  if (t.coef != 1 || t.factors.size() != 1) return std::nullopt;
  const Factor& f = t.factors.front();
  if (f.base.kind != AtomKind::Symbol || f.exponent != 1) return std::nullopt;
  return f.base;
}

}  // namespace

// ---------------------------------------------------------------- ordering

int compare(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case AtomKind::Symbol:
      return cmp_string(a.name, b.name);
    case AtomKind::Function: {
      if (int c = cmp_string(a.name, b.name)) return c;
      if (a.args != b.args) return a.args < b.args ? -1 : 1;
      if (a.derivs != b.derivs) return a.derivs < b.derivs ? -1 : 1;
      return 0;
    }
    case AtomKind::Ln:
    case AtomKind::Exp:
    case AtomKind::Power:
      return compare(a.arg, b.arg);
  }
  return 0;
}

int compare(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare_factor(a[i], b[i])) return c;
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  const std::size_t n = std::min(ta.size(), tb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(ta[i].factors, tb[i].factors)) return c;
    if (int c = cmp_rational(ta[i].coef, tb[i].coef)) return c;
  }
  if (ta.size() == tb.size()) return 0;
  return ta.size() < tb.size() ? -1 : 1;
}

bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  int c = compare(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// ---------------------------------------------------------------- construction

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(const Rational& value) : node_(zero_node()) {
  if (value != 0) *this = single_term(value, {});
}

Expr::Expr(long value) : Expr(Rational(value)) {}

Expr Expr::symbol(std::string name) {
  Atom atom;
  atom.kind = AtomKind::Symbol;
  atom.name = std::move(name);
  return single_term(Rational(1), Monomial{Factor{std::move(atom), Rational(1)}});
}

Expr Expr::function(std::string name, std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (args[i] == args[j]) throw InvalidArgumentError("repeated argument '" + args[i] + "' of " + name);
  Atom atom;
  atom.kind = AtomKind::Function;
  atom.name = std::move(name);
  atom.derivs.assign(args.size(), 0);
  atom.args = std::move(args);
  return single_term(Rational(1), Monomial{Factor{std::move(atom), Rational(1)}});
}

bool Expr::is_zero() const noexcept { return node_->terms.empty(); }

bool Expr::is_constant() const noexcept {
  return node_->terms.empty() || (node_->terms.size() == 1 && node_->terms.front().factors.empty());
}

std::optional<Rational> Expr::constant_value() const {
  if (node_->terms.empty()) return Rational(0);
  if (node_->terms.size() == 1 && node_->terms.front().factors.empty()) return node_->terms.front().coef;
  return std::nullopt;
}

const std::vector<Term>& Expr::terms() const noexcept { return node_->terms; }

// ---------------------------------------------------------------- arithmetic

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  std::vector<Term> out;
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    int c = i == ta.size() ? 1 : j == tb.size() ? -1 : compare(ta[i].factors, tb[j].factors);
    if (c < 0) {
      out.push_back(ta[i++]);
    } else if (c > 0) {
      out.push_back(tb[j++]);
    } else {
      Rational sum = ta[i].coef + tb[j].coef;
      if (sum != 0) out.push_back(Term{sum, ta[i].factors});
      ++i;
      ++j;
    }
  }
  return ExprBuilder::make(std::move(out));
}

Expr operator-(const Expr& a) {
  std::vector<Term> out = a.terms();
  for (Term& t : out) t.coef = -t.coef;
  return ExprBuilder::make(std::move(out));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (auto c = a.constant_value()) {
    if (*c == 1) return b;
    std::vector<Term> out = b.terms();
    for (Term& t : out) t.coef *= *c;
    return ExprBuilder::make(std::move(out));
  }
  if (b.is_constant()) return b * a;
  Accumulator acc;
  for (const Term& x : a.terms())
    for (const Term& y : b.terms()) acc.add(multiply_monomials(x.coef * y.coef, x.factors, y.factors));
  return acc.build();
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZeroError("division by zero");
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  if (tb.size() > 1 && ta.size() == tb.size()) {
    Rational ratio = ta.front().coef / tb.front().coef;
    if (a == b * Expr(ratio)) return Expr(ratio);
  }
  return a * pow(b, Rational(-1));
}

Expr multiply_by_factor(const Expr& e, const Factor& f) {
  Accumulator acc;
  const Monomial single{f};
  for (const Term& t : e.terms()) acc.add(multiply_monomials(t.coef, t.factors, single));
  return acc.build();
}

Expr pow(const Expr& base, const Rational& exponent) {
  if (exponent == 0) return Expr(1L);
  if (base.is_zero()) {
    if (exponent < 0) throw DivisionByZeroError("zero raised to a negative power");
    return Expr();
  }
  if (exponent == 1) return base;
  const auto& terms = base.terms();
  if (terms.size() == 1) {
    const Term& t = terms.front();
    Expr result = constant_power(t.coef, exponent);
    for (const Factor& f : t.factors) result = result * atom_power(f.base, f.exponent * exponent);
    return result;
  }
  if (positive_integer(exponent)) {
    if (!exponent.get_num().fits_ulong_p() || exponent > 4096) throw DomainError("exponent too large to expand");
    return pow_positive_integer(base, exponent.get_num().get_ui());
  }
  // Normalize the base so its leading coefficient is +-1 and pull the content out.
  Rational lead = terms.front().coef;
  if (!is_integer(exponent) && lead < 0) lead = -lead;
  Expr normalized = base * Expr(Rational(1) / lead);
  Atom atom{AtomKind::Power, {}, {}, {}, normalized};
  return constant_power(lead, exponent) * single_term(Rational(1), Monomial{Factor{std::move(atom), exponent}});
}

Expr ln(const Expr& arg) {
  if (auto c = arg.constant_value()) {
    if (*c <= 0) throw DomainError("ln of non-positive constant " + to_string(*c));
    if (*c == 1) return Expr();
  }
  Atom atom{AtomKind::Ln, {}, {}, {}, arg};
  return single_term(Rational(1), Monomial{Factor{std::move(atom), Rational(1)}});
}

Expr exp(const Expr& arg) {
  if (arg.is_zero()) return Expr(1L);
  Atom atom{AtomKind::Exp, {}, {}, {}, arg};
  return single_term(Rational(1), Monomial{Factor{std::move(atom), Rational(1)}});
}

// ---------------------------------------------------------------- calculus

namespace {

/// d/dvar of atom^exponent.
Expr differentiate_factor(const Factor& f, std::string_view var) {
  const Atom& a = f.base;
  const Rational& e = f.exponent;
  switch (a.kind) {
    case AtomKind::Symbol:
      if (a.name != var) return Expr();
      return Expr(e) * atom_power(a, e - 1);
    case AtomKind::Function: {
      auto it = std::find(a.args.begin(), a.args.end(), var);
      if (it == a.args.end()) return Expr();
      Atom derived = a;
      derived.derivs[static_cast<std::size_t>(it - a.args.begin())] += 1;
      return Expr(e) * atom_power(a, e - 1) * atom_power(derived, Rational(1));
    }
    case AtomKind::Ln: {
      Expr inner = differentiate(a.arg, var);
      if (inner.is_zero()) return Expr();
      return Expr(e) * atom_power(a, e - 1) * inner * pow(a.arg, Rational(-1));
    }
    case AtomKind::Exp: {
      Expr inner = differentiate(a.arg, var);
      if (inner.is_zero()) return Expr();
      return Expr(e) * atom_power(a, e) * inner;
    }
    case AtomKind::Power: {
      Expr inner = differentiate(a.arg, var);
      if (inner.is_zero()) return Expr();
      return Expr(e) * pow(a.arg, e - 1) * inner;
    }
  }
  return Expr();
}

bool atom_depends_on(const Atom& a, std::string_view var);

bool expr_depends_on(const Expr& e, std::string_view var) {
  for (const Term& t : e.terms())
    for (const Factor& f : t.factors)
      if (atom_depends_on(f.base, var)) return true;
  return false;
}

bool atom_depends_on(const Atom& a, std::string_view var) {
  switch (a.kind) {
    case AtomKind::Symbol:
      return a.name == var;
    case AtomKind::Function:
      return std::find(a.args.begin(), a.args.end(), var) != a.args.end();
    default:
      return expr_depends_on(a.arg, var);
  }
}

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
  Accumulator acc;
  for (const Term& t : e.terms()) {
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
      if (!atom_depends_on(t.factors[i].base, var)) continue;
      Expr d = differentiate_factor(t.factors[i], var);
      if (d.is_zero()) continue;
      Monomial rest;
      rest.reserve(t.factors.size() - 1);
      for (std::size_t j = 0; j < t.factors.size(); ++j)
        if (j != i) rest.push_back(t.factors[j]);
      acc.add(single_term(t.coef, std::move(rest)) * d);
    }
  }
  return acc.build();
}

Expr substitute(const Expr& e, const Substitution& sub) {
  if (sub.empty()) return e;
  bool touched = false;
  for (const auto& [name, value] : sub)
    if (expr_depends_on(e, name)) {
      touched = true;
      break;
    }
  if (!touched) return e;

  Accumulator acc;
  for (const Term& t : e.terms()) {
    Expr product(t.coef);
    for (const Factor& f : t.factors) {
      const Atom& a = f.base;
      switch (a.kind) {
        case AtomKind::Symbol: {
          auto it = sub.find(a.name);
          product = product * (it == sub.end() ? atom_power(a, f.exponent) : pow(it->second, f.exponent));
          break;
        }
        case AtomKind::Function: {
          Atom renamed = a;
          for (std::string& arg : renamed.args) {
            auto it = sub.find(arg);
            if (it == sub.end()) continue;
            auto target = as_bare_symbol(it->second);
            if (!target)
              throw InvalidArgumentError("cannot substitute '" + to_string(it->second) + "' into argument '" + arg +
                                         "' of generic function " + a.name);
            arg = target->name;
          }
          for (std::size_t i = 0; i < renamed.args.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
              if (renamed.args[i] == renamed.args[j])
                throw InvalidArgumentError("substitution identifies two arguments of " + a.name);
          product = product * atom_power(renamed, f.exponent);
          break;
        }
        case AtomKind::Ln:
          product = product * pow(ln(substitute(a.arg, sub)), f.exponent);
          break;
        case AtomKind::Exp:
          product = product * pow(exp(substitute(a.arg, sub)), f.exponent);
          break;
        case AtomKind::Power:
          product = product * pow(substitute(a.arg, sub), f.exponent);
          break;
      }
    }
    acc.add(product);
  }
  return acc.build();
}

namespace {

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  for (const Term& t : e.terms())
    for (const Factor& f : t.factors) {
      switch (f.base.kind) {
        case AtomKind::Symbol:
          out.insert(f.base.name);
          break;
        case AtomKind::Function:
          out.insert(f.base.args.begin(), f.base.args.end());
          break;
        default:
          collect_symbols(f.base.arg, out);
      }
    }
}

template <class Pred>
bool any_atom(const Expr& e, Pred pred) {
  for (const Term& t : e.terms())
    for (const Factor& f : t.factors) {
      if (pred(f)) return true;
      if (f.base.kind != AtomKind::Symbol && f.base.kind != AtomKind::Function && any_atom(f.base.arg, pred))
        return true;
    }
  return false;
}

}  // namespace

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

bool contains_transcendental(const Expr& e) {
  return any_atom(e, [](const Factor& f) { return f.base.kind == AtomKind::Ln || f.base.kind == AtomKind::Exp; });
}

bool contains_generic_function(const Expr& e) {
  return any_atom(e, [](const Factor& f) { return f.base.kind == AtomKind::Function; });
}

std::optional<Expr> integrate_monomials(const Expr& e, std::string_view var) {
  Expr result;
  const Expr x = Expr::symbol(std::string(var));
  for (const Term& t : e.terms()) {
    std::optional<Rational> power;
    Monomial rest;
    for (const Factor& f : t.factors) {
      if (f.base.kind == AtomKind::Symbol && f.base.name == var) {
        power = f.exponent;
      } else {
        if (atom_depends_on(f.base, var)) return std::nullopt;
        rest.push_back(f);
      }
    }
    Expr coefficient = single_term(t.coef, std::move(rest));
    Rational q = power.value_or(Rational(0));
    if (q == -1)
      result += coefficient * ln(x);
    else
      result += coefficient * Expr(Rational(1) / (q + 1)) * pow(x, q + 1);
  }
  return result;
}

// ---------------------------------------------------------------- printing

namespace {

struct Printer {
  const Chart* chart = nullptr;

  // Sort key for a factor when printing in chart order.
  std::tuple<int, int, std::string> key(const Factor& f) const {
    if (f.base.kind == AtomKind::Symbol) {
      if (chart)
        if (auto idx = chart->index_of(f.base.name)) return {0, *idx, {}};
      return {1, 0, f.base.name};
    }
    if (f.base.kind == AtomKind::Function) return {2, 0, f.base.name};
    return {3 + static_cast<int>(f.base.kind), 0, {}};
  }

  std::string exponent_suffix(const Rational& e) const {
    if (e == 1) return {};
    if (is_integer(e)) return "^" + to_string(e);
    return "^(" + to_string(e) + ")";
  }

  std::string atom(const Atom& a) const {
    switch (a.kind) {
      case AtomKind::Symbol:
        return a.name;
      case AtomKind::Function: {
        std::string out;
        bool derived = std::any_of(a.derivs.begin(), a.derivs.end(), [](unsigned d) { return d > 0; });
        if (derived) {
          out = "D[";
          bool first = true;
          for (std::size_t i = 0; i < a.args.size(); ++i)
            for (unsigned k = 0; k < a.derivs[i]; ++k) {
              if (!first) out += ",";
              out += a.args[i];
              first = false;
            }
          out += "]";
        }
        out += a.name + "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) out += (i ? "," : "") + a.args[i];
        return out + ")";
      }
      case AtomKind::Ln:
        return "ln(" + expr(a.arg) + ")";
      case AtomKind::Exp:
        return "exp(" + expr(a.arg) + ")";
      case AtomKind::Power: {
        auto c = a.arg.constant_value();
        if (c && is_integer(*c)) return to_string(*c);
        return "(" + expr(a.arg) + ")";
      }
    }
    return {};
  }

  std::string factor(const Factor& f) const { return atom(f.base) + exponent_suffix(f.exponent); }

  std::vector<const Factor*> ordered(const Monomial& m) const {
    std::vector<const Factor*> out;
    for (const Factor& f : m) out.push_back(&f);
    if (chart)
      std::stable_sort(out.begin(), out.end(), [&](const Factor* x, const Factor* y) { return key(*x) < key(*y); });
    return out;
  }

  std::string magnitude(const Term& t) const {
    Rational c = abs(t.coef);
    std::string body;
    for (const Factor* f : ordered(t.factors)) {
      if (!body.empty()) body += "*";
      body += factor(*f);
    }
    if (body.empty()) return to_string(c);
    if (c == 1) return body;
    return to_string(c) + "*" + body;
  }

  std::string expr(const Expr& e) const {
    if (e.is_zero()) return "0";
    std::vector<const Term*> terms;
    for (const Term& t : e.terms()) terms.push_back(&t);
    // Constants print last; with a chart, terms follow the chart-order factor keys.
    std::stable_sort(terms.begin(), terms.end(), [&](const Term* x, const Term* y) {
      if (x->factors.empty() != y->factors.empty()) return y->factors.empty();
      if (!chart) return false;
      auto fx = ordered(x->factors), fy = ordered(y->factors);
      std::vector<std::tuple<int, int, std::string>> kx, ky;
      for (auto* f : fx) kx.push_back(key(*f));
      for (auto* f : fy) ky.push_back(key(*f));
      return kx < ky;
    });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      bool negative = terms[i]->coef < 0;
      if (i == 0)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      out += magnitude(*terms[i]);
    }
    return out;
  }
};

}  // namespace

std::string to_string(const Expr& e) { return Printer{}.expr(e); }

std::string to_string(const Expr& e, const Chart& order) { return Printer{&order}.expr(e); }

// ---------------------------------------------------------------- evaluation

namespace {

double real_power(double base, const Rational& exponent) {
  if (is_integer(exponent)) {
    auto k = to_long(exponent);
    return std::pow(base, static_cast<double>(k.value_or(0)));
  }
  if (base >= 0) return std::pow(base, to_double(exponent));
  if (exponent.get_den() % 2 == 0) throw EvaluationError("fractional power of a negative value");
  double magnitude = std::pow(-base, to_double(exponent));
  return exponent.get_num() % 2 == 0 ? magnitude : -magnitude;
}

double atom_value(const Atom& a, const std::function<double(const Atom&)>& leaf) {
  switch (a.kind) {
    case AtomKind::Symbol:
    case AtomKind::Function:
      return leaf(a);
    case AtomKind::Ln: {
      double v = evaluate(a.arg, leaf);
      if (!(v > 0)) throw EvaluationError("ln of non-positive value");
      return std::log(v);
    }
    case AtomKind::Exp:
      return std::exp(evaluate(a.arg, leaf));
    case AtomKind::Power:
      return evaluate(a.arg, leaf);
  }
  return 0.0;
}

double term_value(const Term& t, const std::function<double(const Atom&)>& leaf) {
  double v = to_double(t.coef);
  for (const Factor& f : t.factors) {
    double b = atom_value(f.base, leaf);
    if (b == 0.0 && f.exponent < 0) throw EvaluationError("division by zero during evaluation");
    v *= real_power(b, f.exponent);
  }
  return v;
}

}  // namespace

double evaluate(const Expr& e, const std::function<double(const Atom&)>& leaf) {
  double sum = 0.0;
  for (const Term& t : e.terms()) sum += term_value(t, leaf);
  if (!std::isfinite(sum)) throw EvaluationError("non-finite value");
  return sum;
}

double evaluate(const Expr& e, const std::map<std::string, double, std::less<>>& values) {
  return evaluate(e, [&](const Atom& a) -> double {
    if (a.kind == AtomKind::Function) throw EvaluationError("generic function " + a.name + " has no numeric value");
    auto it = values.find(a.name);
    if (it == values.end()) throw EvaluationError("no value for symbol '" + a.name + "'");
    return it->second;
  });
}

double evaluate_magnitude(const Expr& e, const std::function<double(const Atom&)>& leaf) {
  double sum = 0.0;
  for (const Term& t : e.terms()) sum += std::fabs(term_value(t, leaf));
  if (!std::isfinite(sum)) throw EvaluationError("non-finite value");
  return sum;
}

}  // namespace entropykit
