#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropykit/galois.hpp"
#include "entropykit/order.hpp"
#include "entropykit/parse.hpp"
#include "entropykit/thermo.hpp"

namespace entropykit::cli {

/// Problem with a document, located as "file:line:column: message".
class DocumentError : public Error {
 public:
  DocumentError(const std::string& file, int line, int column, const std::string& message);
};

struct NamedPath {
  std::string name;
  thermo::ProcessPath path;
};

struct NamedPoset {
  std::string name;
  galois::Poset poset;
};

/// Map between two posets, or between the states of two state spaces.
struct NamedMap {
  std::string name;
  std::string from;
  std::string to;
  std::vector<int> graph;
  bool on_spaces = false;
  /// Which adjoint the `adjoint` check computes ("right", "left", "both"); config.adjoint when unset.
  std::optional<std::string> adjoint;
};

struct PotentialRequest {
  std::vector<std::string> swap;
  std::optional<Expr> expect_potential;
  std::optional<std::string> expect_theta;
  SourcePos theta_origin;
};

/// Optional per-document settings; command-line flags take precedence.
struct DocumentConfig {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<Rational>> lambda_grid;
  std::optional<int> eps_steps;
  /// Corpus mode: check name -> expected outcome (PASS / FAIL / INCONCLUSIVE / ERROR).
  std::vector<std::pair<std::string, std::string>> checks;
  /// galois / landauer: (F, G) map names.
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string adjoint = "right";
};

/// A system document (YAML). Sections: chart, params, spec, paths, states, relation, posets, maps, config.
/// Sections are decoded on demand, so a document only needs what the requested check uses.
class Document {
 public:
  static Document load(const std::string& path);
  static Document from_string(const std::string& text, const std::string& name = "<string>");

  const std::string& name() const;
  bool has(const std::string& section) const;

  bool thermo() const;
  thermo::ThermoChart thermo_chart() const;
  /// Plain coordinate chart, or the full chart of a thermodynamic one.
  Chart chart() const;
  std::vector<std::string> params() const;
  thermo::ParamValues param_values() const;
  Scope scope(const Chart& chart) const;

  thermo::LegendreSpec legendre_spec() const;
  thermo::ThermoSystem system() const;
  /// spec.form, or θ of the thermodynamic chart when absent.
  DifferentialForm form() const;
  /// spec.transforms; empty when absent.
  std::vector<PotentialRequest> potentials() const;
  std::vector<NamedPath> paths() const;

  std::vector<order::StateSpace> spaces() const;
  /// Entropy values given in the states section, per space, keyed by StateRef{space, ·}.
  std::vector<std::optional<order::EntropyFn>> entropies() const;
  order::Accessibility relation(const std::vector<order::StateSpace>& spaces) const;

  std::vector<NamedPoset> posets() const;
  std::vector<NamedMap> maps() const;

  DocumentConfig config() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace entropykit::cli
