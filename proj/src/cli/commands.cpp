#include <cmath>
#include <map>

#include "entropykit/cli.hpp"

namespace entropykit::cli {

namespace {

using order::CompositeState;
using order::StateSpace;

struct Settings {
  double tol = 1e-8;
  SamplingConfig sampling;
  order::AxiomConfig axioms;
};

Settings resolve(const Document& doc, const RunConfig& rc) {
  Settings s;
  const auto dc = doc.config();
  s.tol = rc.tol.value_or(dc.tol.value_or(1e-8));
  if (rc.seed)
    s.sampling.seed = *rc.seed;
  else if (dc.seed)
    s.sampling.seed = *dc.seed;
  if (rc.lambda_grid)
    s.axioms.lambda_grid = *rc.lambda_grid;
  else if (dc.lambda_grid)
    s.axioms.lambda_grid = *dc.lambda_grid;
  s.axioms.eps_steps = rc.eps_steps.value_or(dc.eps_steps.value_or(s.axioms.eps_steps));
  return s;
}

Block header(const std::string& check, const Document& doc) {
  Block b;
  b.add("check", check).add("document", doc.name());
  return b;
}

[[noreturn]] void bad_input(const Document& doc, const std::string& message) {
  throw DocumentError(doc.name(), 0, 0, message);
}

/// Outcome of a verdict whose deciding zero test has certainty `c`.
Outcome decided(bool pass, Certainty c) {
  if (c == Certainty::ProbablyZero) return Outcome::Inconclusive;
  return pass ? Outcome::Pass : Outcome::Fail;
}

std::string point(const std::map<std::string, Rational>& p) {
  std::string out;
  for (const auto& [k, v] : p) out += (out.empty() ? "" : ", ") + k + "=" + to_string(v);
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : sep) + p;
  return out;
}

std::string composites(const std::vector<CompositeState>& xs, const std::vector<StateSpace>& spaces) {
  std::vector<std::string> parts;
  for (const auto& x : xs) parts.push_back(order::to_string(x, spaces));
  return join(parts, " | ");
}

std::string ref_name(order::StateRef r, const std::vector<StateSpace>& spaces) {
  return order::to_string(CompositeState(r), spaces);
}

// ---------------------------------------------------------------- forms

void contact(const Document& doc, const Settings& s, Report& r) {
  const auto form = doc.form();
  const int dim = form.chart().dimension();
  if (dim % 2 == 0)
    bad_input(doc, "a contact form needs an odd-dimensional chart, this one has dimension " + std::to_string(dim));
  const auto v = contact_check(form, (dim - 1) / 2, s.sampling);
  Block b = header("contact-check", doc);
  b.add("form", to_string(form)).add("dimension", dim).add("n", (dim - 1) / 2);
  b.add("top_coefficient", to_string(v.top_coefficient, form.chart()));
  b.add("certainty", to_string(v.certainty));
  if (auto e = darboux_canonical(form)) b.add("darboux_energy", *e);
  b.add("verdict", v.contact ? "CONTACT" : "NOT_CONTACT");
  r.add(std::move(b), v.contact ? Outcome::Pass : decided(false, v.certainty));
}

void frobenius(const Document& doc, const Settings& s, Report& r) {
  const auto form = doc.form();
  const auto v = frobenius_check(form, s.sampling);
  Block b = header("frobenius", doc);
  b.add("form", to_string(form));
  b.add("q_wedge_dq", to_string(v.q_wedge_dq));
  b.add("certainty", to_string(v.certainty));
  if (!v.integrable && v.detail.witness && v.detail.witness->witness && !v.detail.witness->witness->empty())
    b.add("witness_point", point(*v.detail.witness->witness));
  b.add("verdict", v.integrable ? "INTEGRABLE" : "NOT_INTEGRABLE");
  r.add(std::move(b), v.integrable ? decided(true, v.certainty) : Outcome::Fail);
}

// ---------------------------------------------------------------- thermo

const char* condition_status(bool holds, bool symbolic) {
  if (holds) return "holds";
  return symbolic ? "constraint" : "violated";
}

void legendre(const Document& doc, const Settings& s, Report& r) {
  const auto chart = doc.thermo_chart();
  const auto spec = doc.legendre_spec();
  const auto rep = thermo::check_legendre(spec, chart, s.sampling);
  const Chart& ext = chart.extensive_chart();
  for (const auto& c : rep.integrability) {
    Block b = header("legendre-check", doc);
    b.add("condition", c.relation).add("lhs", to_string(c.lhs, ext)).add("rhs", to_string(c.rhs, ext));
    b.add("status", condition_status(c.holds, c.symbolic));
    if (!c.symbolic) b.add("certainty", to_string(c.zero.certainty));
    r.add(std::move(b));
  }
  Block b = header("legendre-check", doc);
  b.add("theta", to_string(thermo::first_law_form(chart)));
  b.add("spec", std::holds_alternative<thermo::Potential>(spec) ? "potential" : "equations");
  for (const auto& [name, e] : rep.equations_of_state) b.add("equation_of_state", name + " = " + to_string(e, ext));
  if (rep.energy)
    b.add("energy", chart.energy() + " = " + to_string(*rep.energy, ext) + (rep.energy_reconstructed ? " (reconstructed)" : ""));
  if (rep.pulled_theta) b.add("pulled_theta", to_string(*rep.pulled_theta));
  for (const auto& n : rep.notes) b.add("note", n);
  b.add("certainty", to_string(rep.certainty));
  b.add("verdict", thermo::to_string(rep.verdict));
  Outcome o = Outcome::Pass;
  if (rep.verdict == thermo::Verdict::Fail)
    o = Outcome::Fail;
  else if (rep.verdict == thermo::Verdict::Ok)
    o = decided(true, rep.certainty);
  r.add(std::move(b), o);
}

void maxwell(const Document& doc, const Settings& s, Report& r) {
  const auto chart = doc.thermo_chart();
  const auto ids = thermo::maxwell_relations(doc.legendre_spec(), chart, s.sampling);
  const Chart& ext = chart.extensive_chart();
  if (ids.empty()) {
    Block b = header("maxwell", doc);
    b.add("note", "one conjugate pair: no Maxwell relation").add("verdict", "OK");
    r.add(std::move(b), Outcome::Pass);
  }
  for (const auto& m : ids) {
    Block b = header("maxwell", doc);
    b.add("identity", m.relation).add("lhs", to_string(m.lhs, ext)).add("rhs", to_string(m.rhs, ext));
    b.add("dtheta_coefficient", to_string(m.coefficient, ext));
    b.add("cross_checked", m.cross_checked);
    const bool ok = m.verdict != thermo::Verdict::Fail;
    if (!m.cross_checked)
      b.add("status", "derivation mismatch");
    else
      b.add("status", m.verdict == thermo::Verdict::Ok ? "holds" : ok ? "constraint" : "violated");
    if (m.verdict == thermo::Verdict::Ok) b.add("certainty", to_string(m.zero.certainty));
    b.add("verdict", ok ? "OK" : "FAIL");
    r.add(std::move(b), m.verdict == thermo::Verdict::Ok ? decided(true, m.zero.certainty)
                                                         : ok ? Outcome::Pass : Outcome::Fail);
  }
}

void potential(const Document& doc, const Settings& s, Report& r) {
  const auto chart = doc.thermo_chart();
  auto requests = doc.potentials();
  if (requests.empty()) {
    const int n = chart.n();
    for (int size = 1; size <= n; ++size)
      for (unsigned mask = 1; mask < (1U << n); ++mask) {
        if (__builtin_popcount(mask) != size) continue;
        PotentialRequest q;
        for (int i = 0; i < n; ++i)
          if (mask & (1U << i)) q.swap.push_back(chart.pairs()[static_cast<std::size_t>(i)].extensive);
        requests.push_back(std::move(q));
      }
  }
  for (const auto& q : requests) {
    const auto t = thermo::legendre_transform(chart, q.swap, s.sampling);
    Block b = header("potential", doc);
    b.add("swap", join(q.swap)).add("name", t.potential_name);
    b.add("potential", t.potential_name + " = " + to_string(t.potential, chart.full_chart()));
    b.add("theta", to_string(t.theta));
    b.add("contact", t.contact.contact);
    b.add("contactomorphism", t.map_check.symmetry);
    if (t.map_check.factor) b.add("conformal_factor", to_string(*t.map_check.factor));
    bool pass = t.contact.contact && t.map_check.symmetry;
    if (q.expect_potential) {
      const bool same = t.potential == *q.expect_potential;
      b.add("expected_potential", to_string(*q.expect_potential, chart.full_chart())).add("potential_matches", same);
      pass = pass && same;
    }
    if (q.expect_theta) {
      Scope sc{t.chart.full_chart(), doc.params(), {}};
      DifferentialForm want;
      try {
        want = parse_one_form(*q.expect_theta, sc, q.theta_origin);
      } catch (const ParseError& e) {
        throw DocumentError(doc.name(), 0, 0, e.what());
      }
      const bool same = want == t.theta;
      b.add("expected_theta", to_string(want)).add("theta_matches", same);
      pass = pass && same;
    }
    b.add("verdict", pass ? "OK" : "FAIL");
    r.add(std::move(b), pass ? Outcome::Pass : Outcome::Fail);
  }
}

std::vector<double> endpoint(const thermo::ProcessPath& path, const thermo::ThermoSystem& sys, bool end) {
  std::map<std::string, double, std::less<>> at{{"t", end ? 1.0 : 0.0}};
  for (const auto& [k, v] : sys.values) at.emplace(k, to_double(v));
  const auto& seg = end ? path.segments.back() : path.segments.front();
  std::vector<double> out;
  for (const auto& c : seg.components()) out.push_back(evaluate(c, at));
  return out;
}

bool same_point(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::fabs(a[i] - b[i]) > 1e-12 * std::max(1.0, std::fabs(a[i]))) return false;
  return true;
}

void path(const Document& doc, const Settings& s, Report& r) {
  const auto sys = doc.system();
  const auto paths = doc.paths();
  std::vector<std::optional<double>> du(paths.size());
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& p = paths[k];
    Block b = header("path", doc);
    b.add("path", p.name).add("segments", static_cast<long>(p.path.segments.size())).add("closed", p.path.closed);
    const auto pc = thermo::check_path(p.path, s.sampling);
    if (!pc.continuous || (p.path.closed && !pc.closes)) {
      if (pc.gap_after) b.add("gap_after_segment", *pc.gap_after);
      b.add("verdict", pc.continuous ? "NOT_CLOSED" : "DISCONTINUOUS");
      r.add(std::move(b), Outcome::Fail);
      continue;
    }
    const auto fb = thermo::first_law_balance(p.path, sys);
    b.add("delta_energy", fb.dU.value).add("endpoint_delta_energy", fb.endpoint_dU);
    b.add("delta_Q", fb.Q.value).add("delta_W", fb.W.value).add("residual", fb.residual);
    b.add("quadrature_abserr", std::max({fb.dU.abserr, fb.Q.abserr, fb.W.abserr}));
    const bool converged = fb.dU.converged && fb.Q.converged && fb.W.converged;
    if (!converged) b.add("note", "quadrature did not reach the requested accuracy");
    const bool ok = converged && std::fabs(fb.residual) <= s.tol && std::fabs(fb.dU.value - fb.endpoint_dU) <= s.tol;
    b.add("tolerance", s.tol).add("verdict", ok ? "BALANCED" : "UNBALANCED");
    r.add(std::move(b), ok ? Outcome::Pass : Outcome::Fail);
    if (!p.path.closed) du[k] = fb.dU.value;
  }
  for (std::size_t i = 0; i < paths.size(); ++i)
    for (std::size_t j = i + 1; j < paths.size(); ++j) {
      if (!du[i] || !du[j]) continue;
      const auto& a = paths[i].path;
      const auto& c = paths[j].path;
      if (!same_point(endpoint(a, sys, false), endpoint(c, sys, false)) ||
          !same_point(endpoint(a, sys, true), endpoint(c, sys, true)))
        continue;
      const double diff = *du[i] - *du[j];
      Block b = header("path", doc);
      b.add("paths", paths[i].name + " | " + paths[j].name);
      b.add("delta_energy_first", *du[i]).add("delta_energy_second", *du[j]).add("difference", diff);
      const bool ok = std::fabs(diff) <= s.tol;
      b.add("tolerance", s.tol).add("verdict", ok ? "PATH_INDEPENDENT" : "PATH_DEPENDENT");
      r.add(std::move(b), ok ? Outcome::Pass : Outcome::Fail);
    }
}

void cycle(const Document& doc, const Settings& s, Report& r) {
  const auto sys = doc.system();
  thermo::AuditConfig audit;
  audit.balance_tol = s.tol;
  for (const auto& p : doc.paths()) {
    if (!p.path.closed) bad_input(doc, "path '" + p.name + "' is not marked closed");
    const auto rep = thermo::cycle_audit(p.path, sys, audit, s.sampling);
    Block b = header("cycle-audit", doc);
    b.add("cycle", p.name).add("heat", rep.heat.value).add("work", rep.work.value).add("energy", rep.energy.value);
    b.add("balance", rep.balance).add("balance_ok", rep.balance_ok).add("heat_nonnegative", rep.heat_nonnegative);
    std::vector<std::string> adiabatic;
    for (std::size_t k = 0; k < rep.segments.size(); ++k)
      if (rep.segments[k].adiabatic) adiabatic.push_back(std::to_string(k));
    b.add("adiabatic_segments", adiabatic.empty() ? "none" : join(adiabatic));
    b.add("kelvin_violation", rep.kelvin_violation);
    for (const auto& n : rep.notes) b.add("note", n);
    const char* verdict = rep.kelvin_violation ? "KELVIN_VIOLATION" : rep.balance_ok ? "OK" : "UNBALANCED";
    b.add("verdict", verdict);
    r.add(std::move(b), rep.kelvin_violation || !rep.balance_ok ? Outcome::Fail : Outcome::Pass);
  }
}

// ---------------------------------------------------------------- access order

void axioms(const Document& doc, const Settings& s, Report& r) {
  const auto spaces = doc.spaces();
  const auto acc = doc.relation(spaces);
  const auto rep = order::check_axioms(acc, spaces, s.axioms);
  for (const auto& a : rep.axioms) {
    Block b = header("axioms", doc);
    b.add("axiom", a.name).add("label", a.label).add("status", order::to_string(a.status));
    if (a.limit_approximated) b.add("limit_approximated", true);
    if (!a.witness.empty()) b.add("witness", composites(a.witness, spaces));
    if (!a.detail.empty()) b.add("detail", a.detail);
    if (a.status == order::Status::NotApplicable)
      r.add(std::move(b));
    else
      r.add(std::move(b), a.status == order::Status::Pass ? Outcome::Pass : Outcome::Fail);
  }
}

void comparison(const Document& doc, const Settings&, Report& r) {
  const auto spaces = doc.spaces();
  const auto acc = doc.relation(spaces);
  for (int i = 0; i < static_cast<int>(spaces.size()); ++i) {
    const auto rep = order::comparison_hypothesis(acc, spaces, i);
    Block b = header("ch", doc);
    b.add("space", spaces[static_cast<std::size_t>(i)].label());
    b.add("states", spaces[static_cast<std::size_t>(i)].size());
    b.add("incomparable_pairs", static_cast<long>(rep.incomparable.size()));
    if (!rep.incomparable.empty())
      b.add("witness", ref_name(rep.incomparable[0].first, spaces) + " | " + ref_name(rep.incomparable[0].second, spaces));
    b.add("verdict", rep.total ? "TOTAL" : "NOT_TOTAL");
    r.add(std::move(b), rep.total ? Outcome::Pass : Outcome::Fail);
  }
}

std::string entropy_values(const order::EntropyFn& e, int space, const std::vector<StateSpace>& spaces) {
  std::vector<std::string> parts;
  for (int k = 0; k < spaces[static_cast<std::size_t>(space)].size(); ++k) {
    auto v = e.value({space, k});
    parts.push_back(ref_name({space, k}, spaces) + "=" + (v ? to_string(*v) : std::string("?")));
  }
  return join(parts);
}

void construct(const Document& doc, const Settings& s, Report& r) {
  const auto spaces = doc.spaces();
  const auto acc = doc.relation(spaces);
  order::ConstructionConfig cfg;
  cfg.axioms = s.axioms;
  for (int i = 0; i < static_cast<int>(spaces.size()); ++i) {
    const auto c = order::construct_entropy(acc, spaces, i, cfg);
    Block b = header("entropy-construct", doc);
    b.add("space", spaces[static_cast<std::size_t>(i)].label()).add("status", order::to_string(c.status));
    if (c.status != order::ConstructionStatus::Impossible) {
      b.add("method", c.method).add("entropy", entropy_values(c.entropy, i, spaces));
      if (c.low) b.add("low", ref_name(*c.low, spaces));
      if (c.high) b.add("high", ref_name(*c.high, spaces));
      b.add("resolution", c.resolution ? to_string(*c.resolution) : std::string("exact"));
    }
    if (!c.witness.empty()) b.add("witness", composites(c.witness, spaces));
    if (!c.detail.empty()) b.add("detail", c.detail);
    r.add(std::move(b), c.status == order::ConstructionStatus::Impossible ? Outcome::Fail : Outcome::Pass);
  }
}

order::EntropyFn combined_entropy(const Document& doc, const std::vector<StateSpace>& spaces) {
  order::EntropyFn all;
  const auto es = doc.entropies();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (!es[i]) bad_input(doc, "no entropy values given for space '" + spaces[i].label() + "'");
    for (const auto& [ref, v] : es[i]->values()) all.set(ref, v);
  }
  return all;
}

void verify(const Document& doc, const Settings& s, Report& r) {
  const auto spaces = doc.spaces();
  const auto acc = doc.relation(spaces);
  const auto entropy = combined_entropy(doc, spaces);
  const auto rep = order::verify_entropy(entropy, acc, spaces, s.axioms);
  for (const auto& c : rep.checks) {
    Block b = header("entropy-verify", doc);
    b.add("property", c.name).add("status", order::to_string(c.status));
    if (!c.witness.empty()) b.add("witness", composites(c.witness, spaces));
    if (!c.direction.empty()) b.add("direction", c.direction);
    if (!c.detail.empty()) b.add("detail", c.detail);
    if (c.status == order::Status::NotApplicable)
      r.add(std::move(b));
    else
      r.add(std::move(b), c.status == order::Status::Pass ? Outcome::Pass : Outcome::Fail);
  }
}

std::string constraint_text(const order::CalibrationConstraint& c, const std::vector<StateSpace>& spaces) {
  using K = order::CalibrationConstraint::Kind;
  switch (c.kind) {
    case K::Strict: return order::to_string(c.x, spaces) + " ≺≺ " + order::to_string(c.y, spaces);
    case K::Equivalent: return order::to_string(c.x, spaces) + " ∼ " + order::to_string(c.y, spaces);
    case K::Positive: return "a(" + spaces[static_cast<std::size_t>(c.space)].label() + ") > 0";
  }
  return "?";
}

void calibrate(const Document& doc, const Settings& s, Report& r) {
  const auto spaces = doc.spaces();
  const auto acc = doc.relation(spaces);
  const auto given = doc.entropies();
  std::vector<order::EntropyFn> es;
  std::vector<std::string> source;
  order::ConstructionConfig cfg;
  cfg.axioms = s.axioms;
  for (int i = 0; i < static_cast<int>(spaces.size()); ++i) {
    if (given[static_cast<std::size_t>(i)]) {
      es.push_back(*given[static_cast<std::size_t>(i)]);
      source.emplace_back("given");
      continue;
    }
    auto c = order::construct_entropy(acc, spaces, i, cfg);
    if (c.status == order::ConstructionStatus::Impossible) {
      Block b = header("calibrate", doc);
      b.add("space", spaces[static_cast<std::size_t>(i)].label()).add("entropy_source", "constructed");
      b.add("status", order::to_string(c.status));
      if (!c.witness.empty()) b.add("witness", composites(c.witness, spaces));
      b.add("verdict", "NO_ENTROPY");
      r.add(std::move(b), Outcome::Fail);
      return;
    }
    es.push_back(std::move(c.entropy));
    source.emplace_back("constructed");
  }
  const auto c = order::calibrate(spaces, es, acc);
  if (c.feasible)
    for (int i = 0; i < static_cast<int>(spaces.size()); ++i) {
      Block b = header("calibrate", doc);
      const auto& [a, B] = c.coefficients[static_cast<std::size_t>(i)];
      b.add("space", spaces[static_cast<std::size_t>(i)].label()).add("entropy_source", source[static_cast<std::size_t>(i)]);
      b.add("a", to_string(a)).add("B", to_string(B));
      std::vector<std::string> glued;
      for (int k = 0; k < spaces[static_cast<std::size_t>(i)].size(); ++k)
        glued.push_back(ref_name({i, k}, spaces) + "=" + to_string(order::glued_entropy(c, es, CompositeState({i, k}))));
      b.add("glued_entropy", join(glued));
      r.add(std::move(b));
    }
  Block b = header("calibrate", doc);
  b.add("constraints", static_cast<long>(c.constraints.size())).add("feasible", c.feasible);
  for (const auto& w : c.witness) b.add("witness", constraint_text(w, spaces));
  b.add("verdict", c.feasible ? "FEASIBLE" : "INFEASIBLE");
  r.add(std::move(b), c.feasible ? Outcome::Pass : Outcome::Fail);
}

// ---------------------------------------------------------------- posets and maps

struct Carriers {
  std::map<std::string, galois::Poset> posets;
  std::map<std::string, galois::EntropySystem> systems;
};

Carriers carriers(const Document& doc) {
  Carriers c;
  if (doc.has("posets"))
    for (auto& p : doc.posets()) c.posets.emplace(p.name, std::move(p.poset));
  if (doc.has("states")) {
    const auto spaces = doc.spaces();
    const auto es = doc.entropies();
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      if (!es[i]) continue;
      galois::EntropySystem sys{spaces[i], static_cast<int>(i), *es[i]};
      c.posets.emplace(spaces[i].label(), galois::poset_from_entropy(sys.space, sys.space_index, sys.entropy));
      c.systems.emplace(spaces[i].label(), std::move(sys));
    }
  }
  return c;
}

const galois::Poset& poset_of(const Document& doc, const Carriers& c, const std::string& name) {
  auto it = c.posets.find(name);
  if (it == c.posets.end()) bad_input(doc, "'" + name + "' is a state space without entropy values");
  return it->second;
}

std::string graph_text(const galois::Poset& a, const galois::Poset& b, const std::vector<int>& g) {
  std::vector<std::string> parts;
  for (int x = 0; x < a.size(); ++x) parts.push_back(a.name(x) + " -> " + b.name(g[static_cast<std::size_t>(x)]));
  return join(parts);
}

std::vector<std::pair<NamedMap, NamedMap>> map_pairs(const Document& doc, bool on_spaces) {
  const auto maps = doc.maps();
  auto find = [&](const std::string& n) -> const NamedMap& {
    for (const auto& m : maps)
      if (m.name == n) return m;
    bad_input(doc, "config.pairs names unknown map '" + n + "'");
  };
  std::vector<std::pair<NamedMap, NamedMap>> out;
  const auto cfg = doc.config();
  if (!cfg.pairs.empty()) {
    for (const auto& [f, g] : cfg.pairs) {
      const auto& F = find(f);
      const auto& G = find(g);
      if (F.from != G.to || F.to != G.from) bad_input(doc, "maps '" + f + "' and '" + g + "' do not run in opposite directions");
      out.emplace_back(F, G);
    }
  } else {
    for (std::size_t i = 0; i < maps.size(); ++i)
      for (std::size_t j = i + 1; j < maps.size(); ++j)
        if (maps[i].on_spaces == on_spaces && maps[i].from == maps[j].to && maps[i].to == maps[j].from)
          out.emplace_back(maps[i], maps[j]);
  }
  if (out.empty()) bad_input(doc, "no pair of maps F: A → B, G: B → A");
  return out;
}

std::string unordered(const galois::Poset& a, const galois::Poset& b, const std::vector<int>& f,
                      std::pair<int, int> w) {
  return a.name(w.first) + " <= " + a.name(w.second) + " but " + b.name(f[static_cast<std::size_t>(w.first)]) +
         " <= " + b.name(f[static_cast<std::size_t>(w.second)]) + " fails";
}

std::string violation_text(const galois::Poset& a, const galois::Poset& b, const kernels::AdjunctionViolation& v) {
  const std::string head = "a=" + a.name(v.a) + ", b=" + b.name(v.b) + ": ";
  return head + (v.forward ? "F(a) <= b but not a <= G(b)" : "a <= G(b) but not F(a) <= b");
}

void galois_check(const Document& doc, const Settings&, Report& r) {
  const auto c = carriers(doc);
  for (const auto& [F, G] : map_pairs(doc, false)) {
    const auto& A = poset_of(doc, c, F.from);
    const auto& B = poset_of(doc, c, F.to);
    Block b = header("galois", doc);
    b.add("F", F.name + ": " + F.from + " -> " + F.to).add("G", G.name + ": " + G.from + " -> " + G.to);
    const auto fm = galois::check_monotone(A, B, F.graph);
    const auto gm = galois::check_monotone(B, A, G.graph);
    b.add("F_monotone", fm.monotone).add("G_monotone", gm.monotone);
    if (!fm.monotone) b.add("F_witness", unordered(A, B, F.graph, *fm.witness));
    if (!gm.monotone) b.add("G_witness", unordered(B, A, G.graph, *gm.witness));
    if (!fm.monotone || !gm.monotone) {
      b.add("verdict", "NOT_MONOTONE");
      r.add(std::move(b), Outcome::Fail);
      continue;
    }
    const auto v = galois::check_galois(galois::MonotoneMap(A, B, F.graph), galois::MonotoneMap(B, A, G.graph));
    b.add("adjoint", v.adjoint);
    if (v.violation) b.add("violation", violation_text(A, B, *v.violation));
    b.add("unit", v.unit).add("counit", v.counit);
    b.add("verdict", v.adjoint ? "PASS" : "FAIL");
    r.add(std::move(b), v.adjoint ? Outcome::Pass : Outcome::Fail);
  }
}

void adjoint(const Document& doc, const Settings&, Report& r) {
  const auto c = carriers(doc);
  const auto fallback = doc.config().adjoint;
  for (const auto& m : doc.maps()) {
    const std::string side = m.adjoint.value_or(fallback);
    const auto& A = poset_of(doc, c, m.from);
    const auto& B = poset_of(doc, c, m.to);
    Block b = header("adjoint", doc);
    b.add("map", m.name + ": " + m.from + " -> " + m.to);
    const auto mono = galois::check_monotone(A, B, m.graph);
    if (!mono.monotone) {
      b.add("monotone", false).add("witness", unordered(A, B, m.graph, *mono.witness)).add("verdict", "NOT_MONOTONE");
      r.add(std::move(b), Outcome::Fail);
      continue;
    }
    const galois::MonotoneMap f(A, B, m.graph);
    bool found = true;
    if (side == "right" || side == "both") {
      const auto g = galois::right_adjoint(f);
      if (g.map) {
        b.add("right_adjoint", graph_text(B, A, g.map->graph()));
        b.add("right_checked", galois::check_galois(f, *g.map).adjoint);
      } else {
        b.add("right_adjoint", "NONE");
        b.add("right_witness", "b=" + B.name(*g.witness) + ": {a : F(a) <= b} has no greatest element");
        found = false;
      }
    }
    if (side == "left" || side == "both") {
      const auto g = galois::left_adjoint(f);
      if (g.map) {
        b.add("left_adjoint", graph_text(B, A, g.map->graph()));
        b.add("left_checked", galois::check_galois(*g.map, f).adjoint);
      } else {
        b.add("left_adjoint", "NONE");
        b.add("left_witness", "a=" + A.name(*g.witness) + ": {b : a <= G(b)} has no least element");
        found = false;
      }
    }
    b.add("verdict", found ? "FOUND" : "NONE");
    r.add(std::move(b), found ? Outcome::Pass : Outcome::Fail);
  }
}

void landauer(const Document& doc, const Settings&, Report& r) {
  const auto c = carriers(doc);
  for (const auto& [F, G] : map_pairs(doc, true)) {
    auto s1 = c.systems.find(F.from);
    auto s2 = c.systems.find(F.to);
    if (s1 == c.systems.end() || s2 == c.systems.end())
      bad_input(doc, "landauer needs maps between state spaces with entropy values");
    const auto& P1 = c.posets.at(F.from);
    const auto& P2 = c.posets.at(F.to);
    const auto rep = galois::landauer_check(s1->second, s2->second, F.graph, G.graph);
    Block b = header("landauer", doc);
    b.add("realization", F.name + ": " + F.from + " -> " + F.to).add("abstraction", G.name + ": " + G.from + " -> " + G.to);
    b.add("F_monotone", !rep.f_not_monotone).add("G_monotone", !rep.g_not_monotone);
    if (rep.f_not_monotone) b.add("F_witness", unordered(P1, P2, F.graph, *rep.f_not_monotone));
    if (rep.g_not_monotone) b.add("G_witness", unordered(P2, P1, G.graph, *rep.g_not_monotone));
    if (rep.violation) b.add("violation", violation_text(P1, P2, *rep.violation));
    for (const auto& e : rep.realization)
      b.add("entropy", P1.name(e.state) + " -> " + P2.name(F.graph[static_cast<std::size_t>(e.state)]) + ": " +
                           to_string(e.source_entropy) + " -> " + to_string(e.realized_entropy));
    b.add("verdict", rep.passed ? "PASS" : "FAIL");
    r.add(std::move(b), rep.passed ? Outcome::Pass : Outcome::Fail);
  }
}

using CheckFn = void (*)(const Document&, const Settings&, Report&);

const std::vector<std::pair<std::string, CheckFn>>& table() {
  static const std::vector<std::pair<std::string, CheckFn>> t{
      {"contact-check", contact},   {"frobenius", frobenius},       {"legendre-check", legendre},
      {"maxwell", maxwell},         {"potential", potential},       {"path", path},
      {"cycle-audit", cycle},       {"axioms", axioms},             {"ch", comparison},
      {"entropy-construct", construct}, {"entropy-verify", verify}, {"calibrate", calibrate},
      {"galois", galois_check},     {"adjoint", adjoint},           {"landauer", landauer},
  };
  return t;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : table()) out.push_back(n);
    return out;
  }();
  return names;
}

Report run_check(const std::string& check, const Document& doc, const RunConfig& config) {
  for (const auto& [n, fn] : table())
    if (n == check) {
      const Settings s = resolve(doc, config);
      Report r;
      try {
        fn(doc, s, r);
      } catch (const DocumentError&) {
        throw;
      } catch (const Error& e) {
        throw DocumentError(doc.name(), 0, 0, e.what());
      }
      return r;
    }
  throw InvalidArgumentError("unknown check '" + check + "'");
}

}  // namespace entropykit::cli
