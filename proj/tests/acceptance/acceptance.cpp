#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/random_order.hpp"
#include "../support/random_poset.hpp"
#include "entropykit/cli.hpp"
#include "entropykit/galois.hpp"
#include "entropykit/order.hpp"
#include "entropykit/parse.hpp"
#include "entropykit/thermo.hpp"

using namespace entropykit;
using namespace entropykit::thermo;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds; 0 = none of its own
  std::function<Outcome()> run;
};

const std::vector<std::string> kParams{"N", "R"};

ThermoChart gas_chart() { return ThermoChart::standard("U", {{"T", "S"}, {"p", "V"}}); }

Expr on(const Chart& chart, std::string_view text) { return parse(text, Scope{chart, kParams, {}}); }

ThermoSystem gas_system() {
  ThermoChart chart = gas_chart();
  return ThermoSystem{chart, Potential{on(chart.full_chart(), "exp(2/3*S/(N*R))*V^(-2/3)")}, kParams,
                      {{"N", Rational(1)}, {"R", Rational(1)}}};
}

double gas_u(double s, double v) { return std::exp(2.0 / 3.0 * s) * std::pow(v, -2.0 / 3.0); }

const Expr& t() {
  static const Expr sym = Expr::symbol("t");
  return sym;
}

std::vector<Expr> line(const Rational& s0, const Rational& v0, const Rational& s1, const Rational& v1) {
  return {Expr(s0) + Expr(Rational(s1 - s0)) * t(), Expr(v0) + Expr(Rational(v1 - v0)) * t()};
}

Rational grid(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo * 8, hi * 8);
  return make_rational(d(rng), 8);
}

std::vector<std::pair<Rational, Rational>> random_points(std::mt19937_64& rng, int count) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (int i = 0; i < count; ++i) pts.emplace_back(grid(rng, 0, 2), grid(rng, 1, 3));
  return pts;
}

ProcessPath polyline(const ThermoChart& chart, const std::vector<std::pair<Rational, Rational>>& pts, bool closed) {
  std::vector<std::vector<Expr>> segs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    segs.push_back(line(pts[i].first, pts[i].second, pts[i + 1].first, pts[i + 1].second));
  if (closed) segs.push_back(line(pts.back().first, pts.back().second, pts[0].first, pts[0].second));
  return make_path(chart, segs, closed);
}

cli::Block only_block(const cli::Report& r) {
  if (r.blocks().size() != 1) throw Error("expected one report block, got " + std::to_string(r.blocks().size()));
  return r.blocks()[0];
}

Outcome maxwell_golden() {
  Outcome o;
  auto doc = cli::Document::from_string(R"yaml(chart:
  energy: U
  pairs: [[T, S], [p, V]]
spec:
  functions: {T: [S, V], p: [S, V]}
  equations: {T: "T(S, V)", p: "p(S, V)"}
)yaml");
  auto block = only_block(cli::run_check("maxwell", doc, {}));
  o.require(block.get("identity") == "∂T/∂V = -∂p/∂S", "identity: " + block.get("identity").value_or("?"));
  o.require(block.get("verdict") == "OK", "verdict: " + block.get("verdict").value_or("?"));

  const Expr T = Expr::function("T", {"S", "V"}), p = Expr::function("p", {"S", "V"});
  auto ids = maxwell_relations(StateEquations{{{"T", T}, {"p", p}}, std::nullopt}, gas_chart());
  o.require(ids.size() == 1, "identity count " + std::to_string(ids.size()));
  if (!o.ok) return o;
  o.require(ids[0].lhs == differentiate(T, "V"), "lhs " + to_string(ids[0].lhs));
  o.require(ids[0].rhs == -differentiate(p, "S"), "rhs " + to_string(ids[0].rhs));
  o.require(ids[0].coefficient == differentiate(T, "V") + differentiate(p, "S"),
            "Φ*dθ coefficient " + to_string(ids[0].coefficient));
  o.require(ids[0].cross_checked, "not cross-checked");
  o.detail = ids[0].relation;
  return o;
}

Outcome ideal_gas_entropy() {
  Outcome o;
  auto doc = cli::Document::from_string(R"yaml(chart:
  energy: S
  pairs:
    - {intensive: invT, extensive: U, sign: 1, role: heat}
    - {intensive: pT, extensive: V, sign: 1, role: work}
params: [N, R]
spec:
  equations: {invT: "3/2*N*R/U", pT: "N*R/V"}
)yaml");
  cli::Block block;
  const auto report = cli::run_check("legendre-check", doc, {});
  for (const auto& b : report.blocks())
    if (b.get("verdict")) block = b;
  o.require(block.get("verdict") == "OK", "verdict " + block.get("verdict").value_or("?"));

  auto chart = doc.thermo_chart();
  auto r = check_legendre(doc.legendre_spec(), chart);
  o.require(r.verdict == Verdict::Ok, "library verdict");
  o.require(r.certainty == Certainty::CertainZero, "not exact");
  o.require(r.integrability.size() == 1 && r.integrability[0].lhs == r.integrability[0].rhs, "integrability");
  o.require(r.energy.has_value(), "no entropy reconstructed");
  if (!o.ok) return o;
  const Chart& ext = chart.extensive_chart();
  const Expr& s = *r.energy;
  o.require(differentiate(s, "U") == on(ext, "3*N*R/(2*U)"), "∂S/∂U = " + to_string(differentiate(s, "U")));
  o.require(differentiate(s, "V") == on(ext, "N*R/V"), "∂S/∂V = " + to_string(differentiate(s, "V")));
  o.require(differentiate(differentiate(s, "U"), "V") == differentiate(differentiate(s, "V"), "U"), "mixed partials");
  o.detail = "S = " + to_string(s);
  return o;
}

Outcome potentials_table() {
  Outcome o;
  const auto chart = gas_chart();
  struct Row {
    std::vector<std::string> swap;
    const char* name;
    const char* potential;
    const char* theta;
  };
  for (const Row& row : {Row{{"p"}, "H", "U + p*V", "dH - T*dS - V*dp"},
                         Row{{"T"}, "F", "U - T*S", "dF + S*dT + p*dV"},
                         Row{{"p", "T"}, "G", "U + p*V - T*S", "dG + S*dT - V*dp"}}) {
    auto tr = legendre_transform(chart, row.swap);
    const std::string tag = std::string(row.name) + ": ";
    o.require(tr.potential_name == row.name, tag + "name " + tr.potential_name);
    o.require(tr.potential == on(chart.full_chart(), row.potential), tag + to_string(tr.potential));
    o.require(tr.theta == parse_one_form(row.theta, Scope{tr.chart.full_chart(), {}, {}}), tag + to_string(tr.theta));
    auto contact = contact_check(tr.theta, 2);
    o.require(contact.contact && contact.certainty == Certainty::CertainNonzero, tag + "contact_check");
  }
  o.detail = "H, F, G";
  return o;
}

Outcome contact_frobenius() {
  Outcome o;
  const auto chart = gas_chart();
  auto theta = contact_check(first_law_form(chart), 2);
  o.require(theta.contact && theta.certainty == Certainty::CertainNonzero, "θ not contact");

  auto heat = frobenius_check(heat_form(chart));
  o.require(heat.integrable && heat.certainty == Certainty::CertainZero, "T dS not integrable");

  const Chart xyz({"x", "y", "z"});
  auto q = frobenius_check(parse_one_form("dz - y*dx", Scope{xyz, {}, {}}));
  DifferentialForm volume(xyz, 3);
  volume.add_term(std::vector<std::string>{"x", "y", "z"}, Expr(1));
  o.require(!q.integrable && q.certainty == Certainty::CertainNonzero, "dz - y dx integrable");
  o.require(q.q_wedge_dq == volume, "q∧dq = " + to_string(q.q_wedge_dq));
  o.detail = "q∧dq = " + to_string(q.q_wedge_dq);
  return o;
}

Outcome first_law_numerics() {
  Outcome o;
  const auto sys = gas_system();
  std::mt19937_64 rng(1001);
  double worst_pair = 0, worst_balance = 0;
  for (int i = 0; i < 20; ++i) {
    auto ends = random_points(rng, 2);
    auto mid = random_points(rng, 1 + static_cast<int>(rng() % 3));
    std::vector<std::pair<Rational, Rational>> stairs{ends[0], {ends[1].first, ends[0].second}, ends[1]};
    std::vector<std::pair<Rational, Rational>> bent{ends[0]};
    bent.insert(bent.end(), mid.begin(), mid.end());
    bent.push_back(ends[1]);
    auto a = first_law_balance(polyline(sys.chart, stairs, false), sys);
    auto b = first_law_balance(polyline(sys.chart, bent, false), sys);
    const double oracle = gas_u(to_double(ends[1].first), to_double(ends[1].second)) -
                          gas_u(to_double(ends[0].first), to_double(ends[0].second));
    worst_pair = std::max({worst_pair, std::fabs(a.dU.value - b.dU.value), std::fabs(a.dU.value - oracle)});
    worst_balance = std::max({worst_balance, std::fabs(a.residual), std::fabs(b.residual)});
    o.require(a.dU.converged && b.dU.converged && a.Q.converged && b.Q.converged, "quadrature did not converge");
  }
  o.require(worst_pair < 1e-8, "path dependence " + cli::format_double(worst_pair));
  o.require(worst_balance < 1e-8, "ΔU - (ΔQ - ΔW) = " + cli::format_double(worst_balance));
  o.detail = "max |ΔU1-ΔU2| " + cli::format_double(worst_pair) + ", max residual " + cli::format_double(worst_balance);
  return o;
}

Outcome leaf_property() {
  Outcome o;
  const auto sys = gas_system();
  const auto q = heat_form(sys.chart);
  std::mt19937_64 rng(2002);
  double worst_q = 0;
  for (int i = 0; i < 20; ++i) {
    const Rational s = grid(rng, 0, 2);
    std::vector<std::vector<Expr>> segs;
    Rational v = grid(rng, 1, 3);
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < count; ++k) {
      const Rational next = grid(rng, 1, 3), bow = make_rational(static_cast<long>(rng() % 9), 8);
      // V(t) = v + (next - v) t + bow t (1 - t) stays positive on [0, 1].
      segs.push_back({Expr(s), Expr(v) + Expr(Rational(next - v)) * t() + Expr(bow) * t() * (Expr(1) - t())});
      v = next;
    }
    auto path = make_path(sys.chart, segs, false);
    for (int k = 0; k < count; ++k)
      for (int j = 0; j < 64; ++j)
        worst_q = std::max(worst_q, std::fabs(pulled_coefficient(q, path, k, j / 63.0, sys)));
  }
  o.require(worst_q < 1e-9, "|Q| = " + cli::format_double(worst_q) + " on a constant-S path");

  auto cert = verify_integrating_factor(q, Expr::symbol("T"), Expr::symbol("S"));
  o.require(cert.certificate.has_value(), "no integrating-factor certificate for Q = T dS");
  if (!o.ok) return o;
  double min_q = INFINITY;
  for (int i = 0; i < 20; ++i) {
    // Heating at V = v from U = u0 to u1 > u0, written through S(U, V) = 3/2 ln U + ln V.
    const Rational v = grid(rng, 1, 3), u0 = grid(rng, 1, 2), u1 = u0 + make_rational(1 + rng() % 16, 8);
    const Expr s = Expr(Rational(3, 2)) * ln(Expr(u0) + Expr(Rational(u1 - u0)) * t()) + ln(Expr(v));
    auto path = make_path(sys.chart, {{s, Expr(v)}}, false);
    auto report = adiabatic_entropy_check(path, sys, *cert.certificate);
    o.require(report.trend == EntropyTrend::StrictlyIncreasing, std::string("trend ") + to_string(report.trend));
    o.require(report.entropy_samples.size() >= 64, "too few entropy samples");
    for (std::size_t j = 1; j < report.entropy_samples.size(); ++j)
      o.require(report.entropy_samples[j] > report.entropy_samples[j - 1], "S not strictly increasing");
    for (int j = 0; j < 64; ++j) min_q = std::min(min_q, pulled_coefficient(q, path, 0, j / 63.0, sys));
  }
  o.require(min_q > 0, "heating leg with Q <= 0");
  o.detail = "max |Q| on adiabats " + cli::format_double(worst_q) + ", min Q while heating " + cli::format_double(min_q);
  return o;
}

Outcome cycle_audit_suite() {
  Outcome o;
  const auto sys = gas_system();
  std::mt19937_64 rng(3003);
  double worst = 0;
  int flagged = 0;
  for (int i = 0; i < 20; ++i) {
    auto r = cycle_audit(polyline(sys.chart, random_points(rng, 3 + static_cast<int>(rng() % 3)), true), sys);
    worst = std::max(worst, r.balance);
    flagged += r.kelvin_violation;
  }
  o.require(worst < 1e-8, "|∮Q - ∮W| = " + cli::format_double(worst));
  o.require(flagged == 0, std::to_string(flagged) + " random ideal-gas cycles flagged");

  const ThermoSystem planted{sys.chart, Potential{on(sys.chart.full_chart(), "S^2*(V-1)/2")}, kParams, {}};
  auto k = cycle_audit(polyline(sys.chart, {{Rational(1), Rational(2)}, {Rational(2), Rational(2)},
                                            {Rational(2), Rational(1)}, {Rational(1), Rational(1)}},
                                true),
                       planted);
  o.require(k.kelvin_violation, "planted all-heat-to-work cycle not flagged");
  o.require(k.balance_ok, "planted cycle unbalanced");

  auto rect = cycle_audit(polyline(sys.chart, {{Rational(1), Rational(1)}, {Rational(2), Rational(1)},
                                               {Rational(2), Rational(3)}, {Rational(1), Rational(3)}},
                                   true),
                          sys);
  o.require(!rect.kelvin_violation && rect.balance_ok, "rectangle flagged or unbalanced");

  // Carnot: isotherms V = c·e^S (T ∝ c^(-2/3)) joined by adiabats.
  const Rational s0(1, 2), s1(3, 2), hot(1), cold(2);
  const Expr s = Expr(s0) + Expr(Rational(s1 - s0)) * t(), back = Expr(s1) - Expr(Rational(s1 - s0)) * t();
  auto carnot = make_path(sys.chart,
                          {{s, Expr(hot) * exp(s)},
                           {Expr(s1), exp(Expr(s1)) * (Expr(hot) + Expr(Rational(cold - hot)) * t())},
                           {back, Expr(cold) * exp(back)},
                           {Expr(s0), exp(Expr(s0)) * (Expr(cold) - Expr(Rational(cold - hot)) * t())}},
                          true);
  auto c = cycle_audit(carnot, sys);
  o.require(!c.kelvin_violation && c.balance_ok, "Carnot cycle flagged or unbalanced");
  o.require(c.work.value > 0 && c.segments[1].adiabatic && c.segments[3].adiabatic, "Carnot cycle shape");
  o.detail = "max |∮Q-∮W| " + cli::format_double(worst) + ", planted work " + cli::format_double(k.work.value);
  return o;
}

struct OrderTally {
  int instances = 0;
  int canonical = 0;
  Outcome axioms;
};

const OrderTally& order_suite() {
  static const OrderTally tally = [] {
    using namespace entropykit::order;
    OrderTally out;
    std::mt19937_64 rng(4004);
    AxiomConfig cfg;
    cfg.lambda_grid = {Rational(1, 2), Rational(1), Rational(2)};
    // Entropy gaps reach 1/12 against spreads of 12, so the schedule has to go below 1/144.
    cfg.eps_steps = 16;
    ConstructionConfig cc;
    cc.axioms = cfg;
    for (int trial = 0; trial < 1000; ++trial) {
      auto sys = testsupport::random_entropy_space(rng, 8);
      auto a = entropy_oracle(sys.hidden);
      const std::string tag = "instance " + std::to_string(trial) + ": ";
      auto axioms = check_axioms(a, sys.spaces, cfg);
      for (const auto& ax : axioms.axioms) out.axioms.require(ax.status == Status::Pass, tag + ax.name + " failed");
      out.axioms.require(axioms["stability"].limit_approximated, tag + "stability without the limit caveat");
      out.axioms.require(comparison_hypothesis(a, sys.spaces, 0).total, tag + "comparison not total");
      auto built = construct_entropy(a, sys.spaces, 0, cc);
      out.axioms.require(built.status != ConstructionStatus::Impossible, tag + "construction impossible");
      auto verified = verify_entropy(built.entropy, a, sys.spaces, cfg);
      for (const char* name : {"monotonicity", "additivity", "extensivity"})
        out.axioms.require(verified[name].status == Status::Pass, tag + name + " failed");

      const int n = sys.spaces[0].size();
      bool same = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          same = same && ((*built.entropy.value({0, i}) <= *built.entropy.value({0, j})) ==
                          (*sys.hidden.value({0, i}) <= *sys.hidden.value({0, j})));
      ++out.instances;
      out.canonical += same;
    }
    if (out.axioms.ok) out.axioms.detail = std::to_string(out.instances) + " instances";
    return out;
  }();
  return tally;
}

Outcome axiom_suite() { return order_suite().axioms; }

Outcome order_canonicity() {
  const auto& tally = order_suite();
  Outcome o;
  o.require(tally.instances >= 1000 && tally.canonical == tally.instances,
            std::to_string(tally.canonical) + "/" + std::to_string(tally.instances) + " orders match");
  o.detail = std::to_string(tally.canonical) + "/" + std::to_string(tally.instances) + " orders match";
  return o;
}

Outcome calibration() {
  using namespace entropykit::order;
  Outcome o;
  std::vector<StateSpace> spaces{StateSpace("one", {{"x", {}}, {"y", {}}, {"z", {}}}),
                                 StateSpace("two", {{"x", {}}, {"y", {}}, {"z", {}}})};
  const Rational base[] = {Rational(0), Rational(1, 2), Rational(4)};
  std::vector<EntropyFn> es(2);
  std::vector<std::pair<CompositeState, CompositeState>> cross;
  for (int i = 0; i < 3; ++i) {
    es[0].set({0, i}, base[i]);
    es[1].set({1, i}, 2 * base[i] + 3);
    cross.emplace_back(CompositeState({0, i}), CompositeState({1, i}));
    cross.emplace_back(CompositeState({1, i}), CompositeState({0, i}));
    if (i > 0) cross.emplace_back(CompositeState({0, i - 1}), CompositeState({0, i}));
  }
  auto c = calibrate(spaces, es, Accessibility::from_edges(cross));
  o.require(c.feasible, "affine instance infeasible");
  if (!o.ok) return o;
  // Normalize so that one:x = 0 and one:z = 1, then compare identified states exactly.
  auto glued = [&](int space, int i) { return glued_entropy(c, es, CompositeState({space, i})); };
  const Rational lo = glued(0, 0), span = glued(0, 2) - lo;
  o.require(span > 0, "degenerate calibration");
  for (int i = 0; i < 3 && o.ok; ++i)
    o.require((glued(0, i) - lo) / span == (glued(1, i) - lo) / span, "identified states differ at " + std::to_string(i));

  std::vector<EntropyFn> flat(2);
  for (int s = 0; s < 2; ++s)
    for (int i = 0; i < 3; ++i) flat[static_cast<std::size_t>(s)].set({s, i}, Rational(i));
  auto bad = calibrate(spaces, flat,
                       Accessibility::from_edges({{CompositeState({0, 1}), CompositeState({1, 0})},
                                                  {CompositeState({1, 1}), CompositeState({0, 0})}},
                                                 false));
  o.require(!bad.feasible, "contradictory instance feasible");
  o.require(!bad.witness.empty(), "no infeasibility witness");
  o.detail = "a2 = " + to_string(c.coefficients[1].first) + ", B2 = " + to_string(c.coefficients[1].second) +
             "; witness of " + std::to_string(bad.witness.size()) + " constraints";
  return o;
}

Outcome galois_suite() {
  using namespace entropykit::galois;
  Outcome o;
  std::mt19937_64 rng(5005);
  int with_adjoint = 0;
  for (int trial = 0; trial < 500 && o.ok; ++trial) {
    Poset a = testsupport::random_poset(rng), b = testsupport::random_poset(rng);
    MonotoneMap f = testsupport::random_monotone(rng, a, b);
    const auto brute = testsupport::all_right_adjoints(f);
    auto g = right_adjoint(f);
    const std::string tag = "map " + std::to_string(trial) + ": ";
    o.require(g.map.has_value() == !brute.empty(), tag + "existence disagrees with brute force");
    if (!g.map) continue;
    ++with_adjoint;
    auto v = check_galois(f, *g.map);
    o.require(v.adjoint && v.unit && v.counit, tag + "check_galois failed");
    bool listed = false;
    for (const auto& cand : brute) listed = listed || cand == g.map->graph();
    o.require(listed, tag + "adjoint not among brute-force adjoints");
    for (int x = 0; x < a.size(); ++x) {
      const int gf = (*g.map)(f(x));
      o.require(a.leq(x, gf), tag + "a <= GF(a) fails");
      o.require(a.equivalent((*g.map)(f(gf)), gf), tag + "GF not idempotent");
    }
  }
  o.require(with_adjoint > 0, "no map had an adjoint");
  o.detail = "500 maps, " + std::to_string(with_adjoint) + " with right adjoints";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto once = [] {
    const char* argv[] = {"entropykit", "--format", "structured", "--seed", "20261015", "corpus", ENTROPYKIT_CORPUS_DIR};
    std::ostringstream out, err;
    const int code = cli::run(7, argv, out, err);
    return std::pair{code, out.str()};
  };
  auto [c1, a] = once();
  auto [c2, b] = once();
  o.require(!a.empty(), "empty report");
  o.require(a == b, "reports differ");
  o.require(c1 == c2, "exit codes differ");
  o.detail = std::to_string(a.size()) + " bytes, exit " + std::to_string(c1);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "maxwell golden identity", 1, maxwell_golden},
      {2, "ideal-gas consistency", 1, ideal_gas_entropy},
      {3, "potentials table", 1, potentials_table},
      {4, "contact and frobenius", 1, contact_frobenius},
      {5, "first-law numerics", 10, first_law_numerics},
      {6, "second-law leaf property", 10, leaf_property},
      {7, "cycle audit", 10, cycle_audit_suite},
      {8, "axiomatic property suite", 60, axiom_suite},
      {9, "order canonicity", 0, order_canonicity},
      {10, "calibration", 5, calibration},
      {11, "galois suite", 60, galois_suite},
      {12, "determinism", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.budget > 0 && secs > c.budget) {
      o.ok = false;
      o.detail = "over budget of " + cli::format_double(c.budget) + " s";
    }
    failed += !o.ok;
    std::printf("%-4s %2d  %-26s %8.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
