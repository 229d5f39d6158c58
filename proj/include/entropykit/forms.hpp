#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropykit/chart.hpp"
#include "entropykit/expr.hpp"
#include "entropykit/zero_test.hpp"

namespace entropykit {

using IndexTuple = std::vector<int>;

/// Sparse k-form over a chart: coefficients keyed by strictly increasing index tuples.
class DifferentialForm {
 public:
  DifferentialForm() = default;
  DifferentialForm(Chart chart, int degree);

  static DifferentialForm scalar(Chart chart, Expr value);
  /// The basis 1-form d(name).
  static DifferentialForm basis(Chart chart, std::string_view name);
  /// df for a 0-form f.
  static DifferentialForm exact(Chart chart, const Expr& f);

  const Chart& chart() const noexcept { return chart_; }
  int degree() const noexcept { return degree_; }
  const std::map<IndexTuple, Expr>& coefficients() const noexcept { return coeffs_; }
  Expr coefficient(const IndexTuple& indices) const;
  /// Coefficient of d(names[0])∧d(names[1])∧..., with the permutation sign applied.
  Expr coefficient(const std::vector<std::string>& names) const;
  /// Structural zero (every coefficient canonically zero).
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Adds c·dx_{i1}∧...∧dx_{ik} for indices in any order; repeated indices contribute nothing.
  void add_term(IndexTuple indices, const Expr& c);
  void add_term(const std::vector<std::string>& names, const Expr& c);

  friend DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm operator-(const DifferentialForm& a);
  friend DifferentialForm operator*(const Expr& f, const DifferentialForm& a);
  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) = default;

 private:
  Chart chart_;
  int degree_ = 0;
  std::map<IndexTuple, Expr> coeffs_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);

/// Human-readable form such as `dU - T*dS + p*dV` or `dS∧dT + dV∧dp`.
std::string to_string(const DifferentialForm& form);

/// Map between charts: one Expr per target coordinate, written in source coordinates.
class SmoothMap {
 public:
  SmoothMap() = default;
  SmoothMap(Chart source, Chart target, std::vector<Expr> components);

  const Chart& source() const noexcept { return source_; }
  const Chart& target() const noexcept { return target_; }
  const std::vector<Expr>& components() const noexcept { return components_; }
  const Expr& component(std::string_view target_name) const;
  /// Substitution sending each target coordinate to its component.
  Substitution as_substitution() const;

 private:
  Chart source_;
  Chart target_;
  std::vector<Expr> components_;
};

SmoothMap identity_map(const Chart& chart);
/// g∘f, requires f.target() == g.source().
SmoothMap compose(const SmoothMap& g, const SmoothMap& f);
DifferentialForm pullback(const SmoothMap& f, const DifferentialForm& form);

/// Aggregate certainty over several zero tests: nonzero wins, then probable, then certain.
struct ZeroSummary {
  bool all_zero = true;
  Certainty certainty = Certainty::CertainZero;
  /// First coefficient found nonzero.
  std::optional<IndexTuple> witness_index;
  std::optional<ZeroResult> witness;
};

ZeroSummary form_is_zero(const DifferentialForm& form, const SamplingConfig& config = {});

struct FrobeniusVerdict {
  bool integrable = false;
  Certainty certainty = Certainty::CertainZero;
  DifferentialForm q_wedge_dq;
  ZeroSummary detail;
};

/// Single 1-form criterion q∧dq = 0.
FrobeniusVerdict frobenius_check(const DifferentialForm& q, const SamplingConfig& config = {});

struct ContactVerdict {
  bool contact = false;
  Certainty certainty = Certainty::CertainZero;
  /// θ∧(dθ)^n and its single top-degree coefficient.
  DifferentialForm top_form;
  Expr top_coefficient;
};

/// θ∧(dθ)^n ≠ 0 on a (2n+1)-dimensional chart. Throws InvalidArgumentError on dimension mismatch.
ContactVerdict contact_check(const DifferentialForm& theta, int n, const SamplingConfig& config = {});

/// Whether θ is literally dX0 - Σ P_i dX_i (each P_i a bare coordinate, signs absorbed),
/// with every coordinate appearing exactly once. Returns the energy coordinate if so.
std::optional<std::string> darboux_canonical(const DifferentialForm& theta);

struct IntegratingFactorVerdict;

/// Proof object that q = T dS was verified; only verify_integrating_factor creates one.
class IntegratingFactorCertificate {
 public:
  const DifferentialForm& heat_form() const noexcept { return q_; }
  const Expr& temperature() const noexcept { return t_; }
  const Expr& entropy() const noexcept { return s_; }
  Certainty certainty() const noexcept { return certainty_; }

 private:
  IntegratingFactorCertificate(DifferentialForm q, Expr t, Expr s, Certainty c)
      : q_(std::move(q)), t_(std::move(t)), s_(std::move(s)), certainty_(c) {}
  DifferentialForm q_;
  Expr t_;
  Expr s_;
  Certainty certainty_;

  friend IntegratingFactorVerdict verify_integrating_factor(const DifferentialForm&, const Expr&, const Expr&,
                                                            const SamplingConfig&);
};

struct IntegratingFactorVerdict {
  enum class Status { Ok, Fail, SingularFactor };
  Status status = Status::Fail;
  Certainty certainty = Certainty::CertainNonzero;
  /// q - T dS
  DifferentialForm residual;
  ZeroSummary detail;
  std::optional<std::map<std::string, Rational>> singular_point;
  std::optional<IntegratingFactorCertificate> certificate;
};

const char* to_string(IntegratingFactorVerdict::Status s);

IntegratingFactorVerdict verify_integrating_factor(const DifferentialForm& q, const Expr& T, const Expr& S,
                                                   const SamplingConfig& config = {});

struct SymmetryVerdict {
  bool symmetry = false;
  Certainty certainty = Certainty::CertainNonzero;
  std::optional<Expr> factor;  // λ with φ*ω_target = λ ω_source
  DifferentialForm pulled;
  /// Basis indices (i, j) where the cross-multiplication check failed.
  std::optional<std::pair<IndexTuple, IndexTuple>> witness;
};

/// φ*target_form = λ·source_form for some non-vanishing λ. Throws InvalidArgumentError if source_form = 0.
SymmetryVerdict contact_map_check(const SmoothMap& phi, const DifferentialForm& target_form,
                                  const DifferentialForm& source_form, const SamplingConfig& config = {});

/// φ endomaps ω's chart and φ*ω = λω.
SymmetryVerdict contact_symmetry_check(const SmoothMap& phi, const DifferentialForm& omega,
                                       const SamplingConfig& config = {});

/// Non-vanishing sample check; returns the first point where |e| is below tolerance.
std::optional<std::map<std::string, Rational>> find_vanishing_sample(const Expr& e, const SamplingConfig& config);

}  // namespace entropykit
