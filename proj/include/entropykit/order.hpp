#pragma once

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropykit/error.hpp"
#include "entropykit/kernels.hpp"
#include "entropykit/rational.hpp"

namespace entropykit::order {

using entropykit::to_string;

class OracleNondeterminismError : public Error {
 public:
  using Error::Error;
};

struct State {
  std::string id;
  std::vector<Rational> coords;
};

class StateSpace {
 public:
  StateSpace() = default;
  StateSpace(std::string label, std::vector<State> states, bool scalable = false,
             std::vector<std::string> coordinates = {});

  const std::string& label() const noexcept { return label_; }
  const std::vector<State>& states() const noexcept { return states_; }
  const State& state(int i) const { return states_.at(static_cast<std::size_t>(i)); }
  int size() const noexcept { return static_cast<int>(states_.size()); }
  bool scalable() const noexcept { return scalable_; }
  const std::vector<std::string>& coordinates() const noexcept { return coordinates_; }
  std::optional<int> index_of(std::string_view id) const;

 private:
  std::string label_;
  std::vector<State> states_;
  bool scalable_ = false;
  std::vector<std::string> coordinates_;
};

/// A base state: index of its space in the caller's space list, and of the state within it.
struct StateRef {
  int space = 0;
  int state = 0;
  auto operator<=>(const StateRef&) const = default;
};

struct Component {
  Rational scale;
  StateRef ref;
};

/// Multiset of scaled base states, kept sorted so that composition is order-insensitive.
/// Repeated components are not merged: (X, X) and 2X are different composites.
class CompositeState {
 public:
  CompositeState() = default;
  CompositeState(StateRef ref, Rational scale = Rational(1));
  explicit CompositeState(std::vector<Component> parts);

  const std::vector<Component>& components() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  CompositeState scaled(const Rational& lambda) const;
  /// Sum of the component scales.
  Rational size() const;

  friend CompositeState operator+(const CompositeState& a, const CompositeState& b);
  friend bool operator==(const CompositeState& a, const CompositeState& b);
  friend bool operator<(const CompositeState& a, const CompositeState& b);

 private:
  std::vector<Component> parts_;
};

std::size_t hash_value(const CompositeState& x);

/// "a", "1/2*a", "(a, 2*b)". Ids are qualified as "space:id" when `spaces` has more than one space.
std::string to_string(const CompositeState& x, const std::vector<StateSpace>& spaces);
/// Inverse of to_string; also accepts "a + b" and unqualified ids that are unique across spaces.
CompositeState parse_composite(std::string_view text, const std::vector<StateSpace>& spaces);

/// Values on base states, extended to composites by additivity and extensivity.
class EntropyFn {
 public:
  void set(StateRef ref, Rational value) { values_[ref] = std::move(value); }
  std::optional<Rational> value(StateRef ref) const;
  const std::map<StateRef, Rational>& values() const noexcept { return values_; }
  /// Σ λ S(x); throws InvalidArgumentError if S is undefined on a component.
  Rational operator()(const CompositeState& x) const;
  bool defined_on(const StateSpace& space, int space_index) const;

 private:
  std::map<StateRef, Rational> values_;
};

enum class Backend { Edges, Oracle };

/// X ≺ Y, either as an explicit edge list or as a decision procedure. Copies share one cache.
class Accessibility {
 public:
  using Oracle = std::function<bool(const CompositeState&, const CompositeState&)>;

  /// Edge list; `close` applies the reflexive-transitive closure before answering.
  static Accessibility from_edges(std::vector<std::pair<CompositeState, CompositeState>> edges, bool close = true);
  static Accessibility from_oracle(Oracle oracle, bool scaling = true);

  Backend backend() const;
  bool closed() const;
  bool supports_scaling() const;
  /// Oracles answer any composite; an edge list only the composites it mentions.
  bool supports_composition() const;
  /// Whether `x` can be queried (always true for oracles).
  bool knows(const CompositeState& x) const;
  /// Composite states named by the edge list (empty for oracles).
  const std::vector<CompositeState>& nodes() const;

  bool precedes(const CompositeState& x, const CompositeState& y) const;

  /// When on, memoized oracle answers are re-queried and compared; a mismatch throws
  /// OracleNondeterminismError.
  void set_audit(bool audit);
  std::size_t memo_size() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// X ≺ Y iff S(X) <= S(Y).
Accessibility entropy_oracle(EntropyFn entropy, bool scaling = true);

/// STRICT: X ≺≺ Y. ACCESSIBLE: Y ≺≺ X (X is reached from Y).
enum class Relation { Strict, Equivalent, Incomparable, Accessible };
const char* to_string(Relation r);

Relation derived_relation(const Accessibility& a, const CompositeState& x, const CompositeState& y);

enum class Status { Pass, Fail, NotApplicable };
const char* to_string(Status s);

struct AxiomConfig {
  std::vector<Rational> lambda_grid{Rational(1, 2), Rational(2), Rational(3)};
  int eps_steps = 6;
  kernels::Mode mode = kernels::default_mode();
};

struct AxiomResult {
  std::string name;
  /// The axiom's wording in the source text.
  std::string label;
  Status status = Status::Pass;
  bool limit_approximated = false;
  std::vector<CompositeState> witness;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;
  bool passed() const;
  const AxiomResult& operator[](std::string_view name) const;
};

AxiomReport check_axioms(const Accessibility& a, const std::vector<StateSpace>& spaces, const AxiomConfig& config = {});

struct ComparisonReport {
  bool total = true;
  std::vector<std::pair<StateRef, StateRef>> incomparable;
};

ComparisonReport comparison_hypothesis(const Accessibility& a, const std::vector<StateSpace>& spaces, int space);

enum class ConstructionStatus { Ok, Impossible, Degenerate };
const char* to_string(ConstructionStatus s);

struct ConstructionConfig {
  Rational resolution = Rational(1, 64);
  /// Oracle queries allowed per state when refining the grid supremum to the exact one.
  int refine_budget = 4096;
  AxiomConfig axioms;
};

struct Construction {
  ConstructionStatus status = ConstructionStatus::Ok;
  EntropyFn entropy;
  std::string method;  // "rank" or "two-reference"
  std::vector<CompositeState> witness;
  std::string detail;
  std::optional<StateRef> low;
  std::optional<StateRef> high;
  /// Grid step of the λ supremum; unset when every value was refined to the exact supremum.
  std::optional<Rational> resolution;
};

Construction construct_entropy(const Accessibility& a, const std::vector<StateSpace>& spaces, int space,
                               const ConstructionConfig& config = {});

struct EntropyCheck {
  std::string name;
  Status status = Status::Pass;
  std::vector<CompositeState> witness;
  /// "⇒" when X ≺ Y but S(X) > S(Y); "⇐" when S(X) <= S(Y) but not X ≺ Y.
  std::string direction;
  std::string detail;
};

struct EntropyReport {
  std::vector<EntropyCheck> checks;
  bool passed() const;
  const EntropyCheck& operator[](std::string_view name) const;
};

EntropyReport verify_entropy(const EntropyFn& s, const Accessibility& a, const std::vector<StateSpace>& spaces,
                             const AxiomConfig& config = {});

struct CalibrationConfig {
  Rational margin = Rational(1, 1000000);
};

struct CalibrationConstraint {
  enum class Kind { Strict, Equivalent, Positive };
  Kind kind = Kind::Strict;
  CompositeState x;  // Strict: x ≺≺ y; Equivalent: x ∼ y
  CompositeState y;
  int space = 0;  // Positive: a_space > 0
};

struct Calibration {
  bool feasible = false;
  /// (a_i, B_i) per space.
  std::vector<std::pair<Rational, Rational>> coefficients;
  std::vector<CalibrationConstraint> constraints;
  /// Irreducible infeasible subset when not feasible.
  std::vector<CalibrationConstraint> witness;
};

/// Glues per-space entropies into S(X) = a_Γ S_Γ(X) + B(Γ) consistent with `cross`. entropies[i] is keyed by
/// StateRef{i, ·}.
Calibration calibrate(const std::vector<StateSpace>& spaces, const std::vector<EntropyFn>& entropies,
                      const Accessibility& cross, const CalibrationConfig& config = {});

/// S(X) = Σ λ (a S_Γ(x) + B_Γ) for a calibration result.
Rational glued_entropy(const Calibration& c, const std::vector<EntropyFn>& entropies, const CompositeState& x);

// ---------------------------------------------------------------- exact linear feasibility

/// Σ coef[k] v_k + constant, compared against 0.
struct LinearConstraint {
  std::vector<Rational> coef;
  Rational constant;
  bool equality = false;  // = 0, otherwise >= 0
};

/// Exact Fourier–Motzkin feasibility. On success returns a point; variables are pulled toward
/// `preferred` within the feasible interval found during back-substitution.
std::optional<std::vector<Rational>> solve_linear(const std::vector<LinearConstraint>& constraints, int variables,
                                                  const std::vector<Rational>& preferred);

}  // namespace entropykit::order
