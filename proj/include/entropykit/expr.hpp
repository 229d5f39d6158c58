#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entropykit/chart.hpp"
#include "entropykit/rational.hpp"

namespace entropykit {

struct ExprNode;
struct Term;

/// Immutable symbolic scalar in canonical form.
///
/// An Expr is a sum of terms `c * f1^e1 * ... * fk^ek` with exact rational
/// coefficients and rational exponents. Sums are kept expanded with like
/// terms collected, so two Exprs that are equal as polynomials or Laurent
/// polynomials are structurally identical. Atoms are symbols, generic
/// functions of coordinates (with a derivative multi-index), ln/exp of a
/// canonical argument, and non-integer powers of sums or rational constants.
///
/// Values are cheap to copy (shared immutable node) and safe to share across threads.
class Expr {
 public:
  Expr();  // zero
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(long value);             // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  static Expr symbol(std::string name);
  /// Unspecified smooth function `name(args...)` of coordinate symbols.
  static Expr function(std::string name, std::vector<std::string> args);

  bool is_zero() const noexcept;
  bool is_constant() const noexcept;
  /// Value when the Expr is a bare rational constant.
  std::optional<Rational> constant_value() const;

  const std::vector<Term>& terms() const noexcept;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& b) { return *this = *this + b; }
  Expr& operator-=(const Expr& b) { return *this = *this - b; }
  Expr& operator*=(const Expr& b) { return *this = *this * b; }

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

  const ExprNode* node() const noexcept { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;

  friend struct ExprBuilder;
};

enum class AtomKind : std::uint8_t { Symbol, Function, Ln, Exp, Power };

struct Atom {
  AtomKind kind = AtomKind::Symbol;
  std::string name;               // Symbol / Function
  std::vector<std::string> args;  // Function arguments
  std::vector<unsigned> derivs;   // Function derivative order per argument
  Expr arg;                       // Ln / Exp argument, Power base (multi-term sum or positive constant)
};

struct Factor {
  Atom base;
  Rational exponent;
};

using Monomial = std::vector<Factor>;

struct Term {
  Rational coef;
  Monomial factors;
};

struct ExprNode {
  std::vector<Term> terms;
};

int compare(const Atom& a, const Atom& b);
int compare(const Monomial& a, const Monomial& b);
int compare(const Expr& a, const Expr& b);

Expr pow(const Expr& base, const Rational& exponent);
Expr ln(const Expr& arg);
Expr exp(const Expr& arg);

/// e * base^exponent with exponents merged before normalization, so negative
/// powers of a sum cancel against the same sum instead of being expanded first.
Expr multiply_by_factor(const Expr& e, const Factor& f);

/// Exact partial derivative; symbols other than `var` are held constant.
Expr differentiate(const Expr& e, std::string_view var);

using Substitution = std::map<std::string, Expr, std::less<>>;
/// Simultaneous replacement of symbols. Generic-function arguments may only be renamed.
Expr substitute(const Expr& e, const Substitution& sub);

std::set<std::string> free_symbols(const Expr& e);
bool contains_transcendental(const Expr& e);
bool contains_generic_function(const Expr& e);

/// Parseable text form. With a chart, factors and terms follow the chart's
/// coordinate order (coordinates first, then other symbols by name).
std::string to_string(const Expr& e);
std::string to_string(const Expr& e, const Chart& order);

/// Numeric value. `leaf` supplies values for Symbol and Function atoms.
/// Throws EvaluationError on ln of a non-positive value, a negative base
/// under a fractional power, or a non-finite result.
double evaluate(const Expr& e, const std::function<double(const Atom&)>& leaf);
double evaluate(const Expr& e, const std::map<std::string, double, std::less<>>& values);

/// Sum of |term| values at a point, used to scale zero-test tolerances.
double evaluate_magnitude(const Expr& e, const std::function<double(const Atom&)>& leaf);

/// Antiderivative in `var` for sums of terms whose `var` dependence is a bare
/// power (x^q -> x^(q+1)/(q+1), x^-1 -> ln x). Nullopt if any term needs more.
std::optional<Expr> integrate_monomials(const Expr& e, std::string_view var);

}  // namespace entropykit
