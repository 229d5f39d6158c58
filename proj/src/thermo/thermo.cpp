#include "entropykit/thermo.hpp"

#include <algorithm>

#include "entropykit/error.hpp"

namespace entropykit::thermo {

namespace {

Certainty combine(Certainty a, Certainty b) {
  if (a == Certainty::CertainNonzero || b == Certainty::CertainNonzero) return Certainty::CertainNonzero;
  if (a == Certainty::ProbablyZero || b == Certainty::ProbablyZero) return Certainty::ProbablyZero;
  return Certainty::CertainZero;
}

Expr sym(const std::string& name) { return Expr::symbol(name); }

std::string partial(const std::string& f, const std::string& x) { return "∂" + f + "/∂" + x; }

}  // namespace

// ---------------------------------------------------------------- charts

ThermoChart::ThermoChart(std::string energy, std::vector<ConjugatePair> pairs)
    : energy_(std::move(energy)), pairs_(std::move(pairs)) {
  for (const auto& p : pairs_)
    if (p.sign != 1 && p.sign != -1)
      throw InvalidArgumentError("pair (" + p.intensive + "," + p.extensive + ") needs sign +1 or -1");
  build_charts();
  base_energy_ = energy_;
  energy_in_base_ = sym(energy_);
}

void ThermoChart::build_charts() {
  std::vector<std::string> full{energy_};
  std::vector<std::string> ext;
  for (const auto& p : pairs_) {
    full.push_back(p.extensive);
    ext.push_back(p.extensive);
  }
  for (const auto& p : pairs_) full.push_back(p.intensive);
  if (std::find(full.begin(), full.end(), "t") != full.end())
    throw InvalidArgumentError("'t' is reserved for path parameters and cannot be a coordinate");
  full_ = Chart(std::move(full));
  extensive_ = Chart(std::move(ext));
}

ThermoChart ThermoChart::standard(std::string energy, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<ConjugatePair> out;
  for (const auto& [intensive, extensive] : pairs) {
    ConjugatePair p{intensive, extensive, 1, Role::Work};
    if (intensive == "T") p.role = Role::Heat;
    if (intensive == "p" || intensive == "P" || intensive == "mu") p.sign = -1;
    out.push_back(p);
  }
  return ThermoChart(std::move(energy), std::move(out));
}

std::optional<int> ThermoChart::pair_index(std::string_view name) const {
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    if (pairs_[i].intensive == name || pairs_[i].extensive == name) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<int> ThermoChart::signs() const {
  std::vector<int> out;
  for (const auto& p : pairs_) out.push_back(p.sign);
  return out;
}

ThermoChart ThermoChart::with_history(std::string base_energy, Expr energy_in_base, std::set<int> swapped) const {
  ThermoChart out = *this;
  out.base_energy_ = std::move(base_energy);
  out.energy_in_base_ = std::move(energy_in_base);
  out.swapped_ = std::move(swapped);
  return out;
}

std::string to_string(const ThermoChart& chart) {
  std::string out = chart.energy() + "; ";
  for (std::size_t i = 0; i < chart.pairs().size(); ++i) {
    const auto& p = chart.pairs()[i];
    if (i) out += ", ";
    out += "(" + p.intensive + "," + p.extensive + ",";
    out += p.sign > 0 ? "+1" : "-1";
    out += p.role == Role::Heat ? ",heat)" : ",work)";
  }
  return out;
}

DifferentialForm first_law_form(const ThermoChart& chart) {
  const Chart& full = chart.full_chart();
  DifferentialForm theta = DifferentialForm::basis(full, chart.energy());
  for (const auto& p : chart.pairs())
    theta.add_term(std::vector<std::string>{p.extensive}, Expr(static_cast<long>(-p.sign)) * sym(p.intensive));
  return theta;
}

DifferentialForm heat_form(const ThermoChart& chart) {
  DifferentialForm q(chart.full_chart(), 1);
  for (const auto& p : chart.pairs())
    if (p.role == Role::Heat)
      q.add_term(std::vector<std::string>{p.extensive}, Expr(static_cast<long>(p.sign)) * sym(p.intensive));
  return q;
}

DifferentialForm work_form(const ThermoChart& chart) {
  DifferentialForm w(chart.full_chart(), 1);
  for (const auto& p : chart.pairs())
    if (p.role == Role::Work)
      w.add_term(std::vector<std::string>{p.extensive}, Expr(static_cast<long>(-p.sign)) * sym(p.intensive));
  return w;
}

// ---------------------------------------------------------------- Legendre submanifolds

namespace {

void require_extensive_only(const Expr& e, const ThermoChart& chart, const std::string& what) {
  for (const auto& s : free_symbols(e)) {
    if (s == chart.energy())
      throw InvalidArgumentError(what + " must not mention the energy coordinate " + s);
    if (auto i = chart.pair_index(s); i && chart.pairs()[static_cast<std::size_t>(*i)].intensive == s)
      throw InvalidArgumentError(what + " must be written in extensive coordinates, found intensive " + s);
  }
}

}  // namespace

std::map<std::string, Expr> induced_intensives(const LegendreSpec& spec, const ThermoChart& chart) {
  std::map<std::string, Expr> out;
  if (const auto* pot = std::get_if<Potential>(&spec)) {
    require_extensive_only(pot->energy, chart, "potential");
    for (const auto& p : chart.pairs())
      out.emplace(p.intensive, Expr(static_cast<long>(p.sign)) * differentiate(pot->energy, p.extensive));
    return out;
  }
  const auto& eqs = std::get<StateEquations>(spec);
  for (const auto& [name, e] : eqs.intensive) {
    auto i = chart.pair_index(name);
    if (!i || chart.pairs()[static_cast<std::size_t>(*i)].intensive != name)
      throw InvalidArgumentError("state equation for '" + name + "', which is not an intensive coordinate");
    require_extensive_only(e, chart, "state equation for " + name);
  }
  for (const auto& p : chart.pairs()) {
    auto it = eqs.intensive.find(p.intensive);
    if (it == eqs.intensive.end()) throw InvalidArgumentError("missing state equation for " + p.intensive);
    out.emplace(p.intensive, it->second);
  }
  if (eqs.energy) require_extensive_only(*eqs.energy, chart, "energy");
  return out;
}

std::optional<Expr> reconstruct_energy(const std::map<std::string, Expr>& intensives, const ThermoChart& chart) {
  Expr energy;
  std::vector<std::string> done;
  for (const auto& p : chart.pairs()) {
    const Expr& P = intensives.at(p.intensive);
    if (contains_generic_function(P)) return std::nullopt;
    Expr residual = Expr(static_cast<long>(p.sign)) * P - differentiate(energy, p.extensive);
    for (const auto& prev : done)
      if (!differentiate(residual, prev).is_zero()) return std::nullopt;
    auto piece = integrate_monomials(residual, p.extensive);
    if (!piece) return std::nullopt;
    energy += *piece;
    done.push_back(p.extensive);
  }
  return energy;
}

namespace {

std::optional<Expr> spec_energy(const LegendreSpec& spec) {
  if (const auto* pot = std::get_if<Potential>(&spec)) return pot->energy;
  return std::get<StateEquations>(spec).energy;
}

SmoothMap inclusion_with(const Expr& energy, const std::map<std::string, Expr>& intensives, const ThermoChart& chart) {
  std::vector<Expr> comps{energy};
  for (const auto& p : chart.pairs()) comps.push_back(sym(p.extensive));
  for (const auto& p : chart.pairs()) comps.push_back(intensives.at(p.intensive));
  return SmoothMap(chart.extensive_chart(), chart.full_chart(), std::move(comps));
}

}  // namespace

SmoothMap inclusion(const LegendreSpec& spec, const ThermoChart& chart) {
  auto intensives = induced_intensives(spec, chart);
  auto energy = spec_energy(spec);
  if (!energy) energy = reconstruct_energy(intensives, chart);
  if (!energy)
    throw InvalidArgumentError("the energy " + chart.energy() +
                               " is not given and cannot be reconstructed from the state equations");
  return inclusion_with(*energy, intensives, chart);
}

std::vector<Integrability> integrability_conditions(const std::map<std::string, Expr>& intensives,
                                                    const ThermoChart& chart, const SamplingConfig& config) {
  std::vector<Integrability> out;
  const auto& pairs = chart.pairs();
  for (int i = 0; i < chart.n(); ++i)
    for (int j = i + 1; j < chart.n(); ++j) {
      const auto& pi = pairs[static_cast<std::size_t>(i)];
      const auto& pj = pairs[static_cast<std::size_t>(j)];
      const int s = pi.sign * pj.sign;
      Integrability c;
      c.i = i;
      c.j = j;
      c.relation = partial(pi.intensive, pj.extensive) + " = " + (s < 0 ? "-" : "") + partial(pj.intensive, pi.extensive);
      c.lhs = differentiate(intensives.at(pi.intensive), pj.extensive);
      c.rhs = Expr(static_cast<long>(s)) * differentiate(intensives.at(pj.intensive), pi.extensive);
      const Expr diff = c.lhs - c.rhs;
      c.zero = is_zero(diff, config);
      c.holds = zero_like(c.zero.certainty);
      c.symbolic = !c.holds && contains_generic_function(diff);
      out.push_back(std::move(c));
    }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Ok: return "OK";
    case Verdict::Fail: return "FAIL";
    case Verdict::Conditional: return "CONDITIONAL";
  }
  return "?";
}

LegendreReport check_legendre(const LegendreSpec& spec, const ThermoChart& chart, const SamplingConfig& config) {
  LegendreReport r;
  auto intensives = induced_intensives(spec, chart);
  r.equations_of_state = intensives;
  r.integrability = integrability_conditions(intensives, chart, config);
  r.certainty = Certainty::CertainZero;
  bool failed = false;
  bool symbolic = false;
  for (const auto& c : r.integrability) {
    if (c.symbolic)
      symbolic = true;
    else {
      r.certainty = combine(r.certainty, c.zero.certainty);
      if (!c.holds) failed = true;
    }
  }

  r.energy = spec_energy(spec);
  if (!r.energy && !failed && !symbolic) {
    r.energy = reconstruct_energy(intensives, chart);
    r.energy_reconstructed = r.energy.has_value();
    if (!r.energy) r.notes.push_back("energy not reconstructed; verdict rests on the integrability conditions");
  }

  if (r.energy) {
    if (contains_generic_function(*r.energy)) symbolic = true;
    auto phi = inclusion_with(*r.energy, intensives, chart);
    r.pulled_theta = pullback(phi, first_law_form(chart));
    auto z = form_is_zero(*r.pulled_theta, config);
    if (!z.all_zero && !symbolic) failed = true;
    if (!symbolic) r.certainty = combine(r.certainty, z.certainty);
  }

  if (failed) {
    r.verdict = Verdict::Fail;
    r.certainty = Certainty::CertainNonzero;
  } else if (symbolic) {
    r.verdict = Verdict::Conditional;
    r.notes.push_back("unspecified state functions: integrability conditions are constraints on them");
  } else {
    r.verdict = Verdict::Ok;
  }
  return r;
}

std::vector<MaxwellIdentity> maxwell_relations(const LegendreSpec& spec, const ThermoChart& chart,
                                               const SamplingConfig& config) {
  auto intensives = induced_intensives(spec, chart);
  // dθ has no dX0 component, so the energy component of Φ does not enter Φ*dθ.
  auto phi = inclusion_with(spec_energy(spec).value_or(Expr()), intensives, chart);
  auto pulled = pullback(phi, exterior_derivative(first_law_form(chart)));
  auto conditions = integrability_conditions(intensives, chart, config);

  std::vector<MaxwellIdentity> out;
  for (auto& c : conditions) {
    MaxwellIdentity m;
    m.i = c.i;
    m.j = c.j;
    m.relation = c.relation;
    m.lhs = c.lhs;
    m.rhs = c.rhs;
    m.coefficient = pulled.coefficient(IndexTuple{c.i, c.j});
    const long sigma_i = chart.pairs()[static_cast<std::size_t>(c.i)].sign;
    m.cross_checked = m.coefficient == Expr(sigma_i) * (c.lhs - c.rhs);
    m.zero = c.zero;
    if (!m.cross_checked)
      m.verdict = Verdict::Fail;
    else if (c.holds)
      m.verdict = Verdict::Ok;
    else
      m.verdict = c.symbolic ? Verdict::Conditional : Verdict::Fail;
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------- Legendre transformations

namespace {

std::string potential_name(const ThermoChart& base_like, const std::set<int>& swapped, const std::string& base_energy,
                           const Chart& taken) {
  if (swapped.empty()) return base_energy;
  // Pair intensives as they read in the base chart: swapped pairs have their roles exchanged.
  std::set<std::string> base_intensives;
  for (int i : swapped) {
    const auto& p = base_like.pairs()[static_cast<std::size_t>(i)];
    base_intensives.insert(base_like.swapped().count(i) ? p.extensive : p.intensive);
  }
  std::string name;
  if (base_energy == "U") {
    if (base_intensives == std::set<std::string>{"p"}) name = "H";
    if (base_intensives == std::set<std::string>{"T"}) name = "F";
    if (base_intensives == std::set<std::string>{"T", "p"}) name = "G";
  }
  if (name.empty()) {
    name = base_energy;
    for (const auto& s : base_intensives) name += "_" + s;
  }
  while (taken.contains(name)) name += "_";
  return name;
}

}  // namespace

LegendreTransform legendre_transform(const ThermoChart& chart, const std::vector<std::string>& swap,
                                     const SamplingConfig& config) {
  std::set<int> to_swap;
  for (const auto& name : swap) {
    auto i = chart.pair_index(name);
    if (!i) throw InvalidArgumentError("unknown pair '" + name + "'");
    to_swap.insert(*i);
  }

  std::set<int> history = chart.swapped();
  for (int i : to_swap)
    if (!history.erase(i)) history.insert(i);

  std::vector<ConjugatePair> pairs = chart.pairs();
  Expr in_base = chart.energy_in_base();
  Expr shift;  // Σ σ_i P_i X_i over swapped pairs
  for (int i : to_swap) {
    auto& p = pairs[static_cast<std::size_t>(i)];
    Expr term = Expr(static_cast<long>(p.sign)) * sym(p.intensive) * sym(p.extensive);
    shift += term;
    in_base -= term;
    std::swap(p.intensive, p.extensive);
    p.sign = -p.sign;
  }

  // Names other than the energy stay fixed, so collisions are checked against the remaining coordinates.
  std::vector<std::string> others;
  for (const auto& p : pairs) {
    others.push_back(p.intensive);
    others.push_back(p.extensive);
  }
  std::string name = to_swap.empty() ? chart.energy()
                                     : potential_name(chart, history, chart.base_energy(), Chart(others));

  LegendreTransform out;
  out.chart = ThermoChart(name, pairs).with_history(chart.base_energy(), in_base, history);
  out.potential_name = name;
  out.potential = in_base;
  out.theta = first_law_form(out.chart);

  // New coordinates -> old: X0 = X̃0 + Σ σ_i P_i X_i, everything else keeps its name.
  std::vector<Expr> comps;
  for (const auto& old_name : chart.full_chart().names())
    comps.push_back(old_name == chart.energy() ? sym(name) + shift : sym(old_name));
  out.transformation = SmoothMap(out.chart.full_chart(), chart.full_chart(), std::move(comps));
  out.contact = contact_check(out.theta, out.chart.n(), config);
  out.map_check = contact_map_check(out.transformation, first_law_form(chart), out.theta, config);
  return out;
}

}  // namespace entropykit::thermo
