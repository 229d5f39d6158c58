#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "entropykit/forms.hpp"

namespace entropykit::thermo {

enum class Role { Heat, Work };

/// Intensive/extensive coordinate pair entering θ as -sign * intensive * d(extensive).
struct ConjugatePair {
  std::string intensive;
  std::string extensive;
  int sign = 1;
  Role role = Role::Work;
};

/// Chart of thermodynamic phase space: θ = dX0 - Σ σ_i P_i dX_i.
class ThermoChart {
 public:
  ThermoChart() = default;
  ThermoChart(std::string energy, std::vector<ConjugatePair> pairs);

  /// Standard conventions: (T,S) heat with σ=+1, (p,V) work with σ=-1, (mu,N) work with σ=-1,
  /// other pairs work with σ=+1.
  static ThermoChart standard(std::string energy, const std::vector<std::pair<std::string, std::string>>& pairs);

  const std::string& energy() const noexcept { return energy_; }
  const std::vector<ConjugatePair>& pairs() const noexcept { return pairs_; }
  int n() const noexcept { return static_cast<int>(pairs_.size()); }

  /// [X0, extensives..., intensives...]
  const Chart& full_chart() const noexcept { return full_; }
  /// [extensives...], the coordinates of a Legendre submanifold.
  const Chart& extensive_chart() const noexcept { return extensive_; }

  /// Index of the pair containing `name` as intensive or extensive coordinate.
  std::optional<int> pair_index(std::string_view name) const;

  /// Energy of this chart in the coordinates of the chart it was Legendre-transformed from
  /// (the energy symbol itself for an untransformed chart).
  const Expr& energy_in_base() const noexcept { return energy_in_base_; }
  const std::string& base_energy() const noexcept { return base_energy_; }
  const std::set<int>& swapped() const noexcept { return swapped_; }
  /// Same chart with Legendre-transform history attached.
  ThermoChart with_history(std::string base_energy, Expr energy_in_base, std::set<int> swapped) const;

  friend bool operator==(const ThermoChart& a, const ThermoChart& b) {
    return a.energy_ == b.energy_ && a.full_ == b.full_ && a.signs() == b.signs();
  }

 private:
  std::vector<int> signs() const;
  void build_charts();

  std::string energy_;
  std::vector<ConjugatePair> pairs_;
  Chart full_;
  Chart extensive_;
  std::string base_energy_;
  Expr energy_in_base_;
  std::set<int> swapped_;
};

std::string to_string(const ThermoChart& chart);

/// θ = dX0 - Σ σ_i P_i dX_i on the full chart.
DifferentialForm first_law_form(const ThermoChart& chart);
/// Q = Σ_{heat pairs} σ_i P_i dX_i.
DifferentialForm heat_form(const ThermoChart& chart);
/// W = -Σ_{work pairs} σ_i P_i dX_i, so that θ = dX0 - Q + W.
DifferentialForm work_form(const ThermoChart& chart);

/// Candidate Legendre submanifold. Expressions are written in the extensive coordinates and parameters.
struct Potential {
  Expr energy;
};
struct StateEquations {
  /// intensive name -> expression; generic functions (Expr::function) stand for unspecified equations.
  std::map<std::string, Expr> intensive;
  std::optional<Expr> energy;
};
using LegendreSpec = std::variant<Potential, StateEquations>;

using ParamValues = std::map<std::string, Rational, std::less<>>;

/// Everything a path or cycle computation needs.
struct ThermoSystem {
  ThermoChart chart;
  LegendreSpec spec;
  std::vector<std::string> params;
  ParamValues values;
};

/// Intensive coordinates induced by a spec: σ_i ∂X0/∂X_i for a potential, the given expressions otherwise.
std::map<std::string, Expr> induced_intensives(const LegendreSpec& spec, const ThermoChart& chart);

/// X0 reconstructed by integrating σ_i P_i along coordinate axes (nullopt when not possible).
std::optional<Expr> reconstruct_energy(const std::map<std::string, Expr>& intensives, const ThermoChart& chart);

/// Φ: extensive chart -> full chart. Throws InvalidArgumentError if X0 is unknown and cannot be reconstructed.
SmoothMap inclusion(const LegendreSpec& spec, const ThermoChart& chart);

/// Integrability condition ∂P_i/∂X_j = σ_iσ_j ∂P_j/∂X_i for pairs i < j.
struct Integrability {
  int i = 0;
  int j = 0;
  std::string relation;  // e.g. "∂T/∂V = -∂p/∂S"
  Expr lhs;              // ∂P_i/∂X_j
  Expr rhs;              // σ_iσ_j ∂P_j/∂X_i
  ZeroResult zero;
  bool holds = false;
  /// True when the condition involves unspecified functions and is a constraint, not a check.
  bool symbolic = false;
};

std::vector<Integrability> integrability_conditions(const std::map<std::string, Expr>& intensives,
                                                    const ThermoChart& chart, const SamplingConfig& config = {});

enum class Verdict { Ok, Fail, Conditional };
const char* to_string(Verdict v);

struct LegendreReport {
  Verdict verdict = Verdict::Fail;
  Certainty certainty = Certainty::CertainNonzero;
  std::map<std::string, Expr> equations_of_state;
  std::vector<Integrability> integrability;
  std::optional<Expr> energy;
  bool energy_reconstructed = false;
  std::optional<DifferentialForm> pulled_theta;
  std::vector<std::string> notes;
};

LegendreReport check_legendre(const LegendreSpec& spec, const ThermoChart& chart, const SamplingConfig& config = {});

struct MaxwellIdentity {
  int i = 0;
  int j = 0;
  std::string relation;  // "∂T/∂V = -∂p/∂S"
  Expr lhs;
  Expr rhs;
  /// Coefficient of dX_i∧dX_j in Φ*dθ.
  Expr coefficient;
  /// coefficient == σ_i (lhs - rhs) canonically.
  bool cross_checked = false;
  Verdict verdict = Verdict::Fail;
  ZeroResult zero;
};

std::vector<MaxwellIdentity> maxwell_relations(const LegendreSpec& spec, const ThermoChart& chart,
                                               const SamplingConfig& config = {});

struct LegendreTransform {
  ThermoChart chart;
  std::string potential_name;
  /// The new potential in the base chart's coordinates, e.g. U + p*V.
  Expr potential;
  DifferentialForm theta;
  /// New full chart -> old full chart.
  SmoothMap transformation;
  ContactVerdict contact;
  SymmetryVerdict map_check;
};

/// Swaps the listed pairs (each named by its intensive or extensive coordinate).
LegendreTransform legendre_transform(const ThermoChart& chart, const std::vector<std::string>& swap,
                                     const SamplingConfig& config = {});

// ---------------------------------------------------------------- paths

/// Piecewise-smooth curve in the extensive coordinates, each segment parametrized by t in [0,1].
struct ProcessPath {
  std::vector<SmoothMap> segments;  // source chart [t], target = extensive chart
  bool closed = false;
};

const Chart& parameter_chart();

/// Builds a path from per-segment component expressions (in t and parameters) over the extensive chart.
ProcessPath make_path(const ThermoChart& chart, const std::vector<std::vector<Expr>>& segments, bool closed);

struct PathCheck {
  bool continuous = true;
  std::optional<int> gap_after;  // segment index whose end does not meet the next start
  bool closes = true;
};
PathCheck check_path(const ProcessPath& path, const SamplingConfig& config = {});

struct SegmentIntegral {
  double value = 0.0;
  double abserr = 0.0;
  bool converged = true;
};

struct PathIntegral {
  double value = 0.0;
  double abserr = 0.0;
  bool converged = true;
  std::vector<SegmentIntegral> segments;
};

/// ∫_γ (Φ∘γ)* form with parameter values substituted; GSL adaptive Gauss–Kronrod per segment.
PathIntegral path_integral(const DifferentialForm& form, const ProcessPath& path, const ThermoSystem& system);

struct FirstLawBalance {
  PathIntegral dU, Q, W;
  double endpoint_dU = 0.0;  // X0(end) - X0(start)
  double residual = 0.0;     // ΔU - (ΔQ - ΔW)
};
FirstLawBalance first_law_balance(const ProcessPath& path, const ThermoSystem& system);

/// Pullback coefficient of `form` along segment k at parameter t.
double pulled_coefficient(const DifferentialForm& form, const ProcessPath& path, int segment, double t,
                          const ThermoSystem& system);

struct SegmentAudit {
  bool adiabatic = false;  // |Q(t)| <= tol at all samples
  double min_q = 0.0;
  double max_q = 0.0;
};

struct CycleReport {
  PathIntegral heat;
  PathIntegral work;
  PathIntegral energy;
  double balance = 0.0;  // |∮Q - ∮W|
  bool balance_ok = false;
  std::vector<SegmentAudit> segments;
  bool heat_nonnegative = false;
  bool kelvin_violation = false;
  std::vector<std::string> notes;
};

struct AuditConfig {
  int samples_per_segment = 64;
  double adiabatic_tol = 1e-9;
  double balance_tol = 1e-8;
  double work_tol = 1e-9;
};

/// Throws InvalidArgumentError if the path is not closed.
CycleReport cycle_audit(const ProcessPath& cycle, const ThermoSystem& system, const AuditConfig& audit = {},
                        const SamplingConfig& config = {});

enum class EntropyTrend { QuasiStaticAdiabatic, LeafViolation, Constant, StrictlyIncreasing, StrictlyDecreasing, NonMonotone };
const char* to_string(EntropyTrend t);

struct AdiabaticReport {
  EntropyTrend trend = EntropyTrend::NonMonotone;
  bool heat_vanishes = false;
  double max_abs_q = 0.0;
  double max_entropy_drift = 0.0;  // max |S(t) - S(0)|
  std::vector<double> entropy_samples;
  /// (sample index, S before, S after) where monotonicity broke.
  std::vector<std::tuple<int, double, double>> violations;
  bool transversal = false;
  std::vector<std::string> notes;
};

/// Samples S along the path. The certificate's chart coordinates must be coordinates of the
/// system's full chart; its heat form is cross-checked against the chart's Q along the path.
AdiabaticReport adiabatic_entropy_check(const ProcessPath& path, const ThermoSystem& system,
                                        const IntegratingFactorCertificate& certificate,
                                        const AuditConfig& audit = {});

}  // namespace entropykit::thermo
