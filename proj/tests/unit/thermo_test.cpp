#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/random_expr.hpp"
#include "entropykit/error.hpp"
#include "entropykit/parse.hpp"
#include "entropykit/thermo.hpp"

using namespace entropykit;
using namespace entropykit::thermo;

namespace {

const std::vector<std::string> kParams{"N", "R"};

ThermoChart gas_chart() { return ThermoChart::standard("U", {{"T", "S"}, {"p", "V"}}); }

Expr on(const ThermoChart& chart, std::string_view text) { return parse(text, Scope{chart.full_chart(), kParams}); }

const char* kGasEnergy = "exp(2/3*S/(N*R))*V^(-2/3)";

ThermoSystem gas_system() {
  ThermoChart chart = gas_chart();
  return ThermoSystem{chart, Potential{on(chart, kGasEnergy)}, kParams, {{"N", Rational(1)}, {"R", Rational(1)}}};
}

double gas_u(double s, double v) { return std::exp(2.0 / 3.0 * s) * std::pow(v, -2.0 / 3.0); }

Expr t_expr(std::string_view text) { return parse(text, Scope{parameter_chart(), kParams}); }

/// Straight segment between two (S,V) points with rational coordinates.
std::vector<Expr> line(const Rational& s0, const Rational& v0, const Rational& s1, const Rational& v1) {
  Expr t = Expr::symbol("t");
  return {Expr(s0) + Expr(Rational(s1 - s0)) * t, Expr(v0) + Expr(Rational(v1 - v0)) * t};
}

Rational grid(std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo * 8, hi * 8);
  return make_rational(d(rng), 8);
}

DifferentialForm df_named(const Chart& chart, const std::vector<std::pair<std::string, std::string>>& parts,
                          const std::vector<std::string>& params = {}) {
  DifferentialForm f(chart, 1);
  for (const auto& [n, c] : parts) f.add_term(std::vector<std::string>{n}, parse(c, Scope{chart, params}));
  return f;
}

}  // namespace

TEST_CASE("first-law form conventions") {
  auto chart = gas_chart();
  CHECK(to_string(first_law_form(chart)) == "dU - T*dS + p*dV");
  auto single = ThermoChart::standard("U", {{"T", "S"}});
  CHECK(to_string(first_law_form(single)) == "dU - T*dS");
  CHECK(contact_check(first_law_form(single), 1).contact);
  auto three = ThermoChart::standard("U", {{"T", "S"}, {"p", "V"}, {"mu", "N"}});
  CHECK(to_string(first_law_form(three)) == "dU - T*dS + p*dV + mu*dN");
  for (const auto& c : {single, chart, three}) CHECK(contact_check(first_law_form(c), c.n()).contact);
  CHECK(first_law_form(chart) == DifferentialForm::basis(chart.full_chart(), "U") - heat_form(chart) + work_form(chart));
}

TEST_CASE("potential specs are Legendre with tautological Maxwell relations") {
  auto chart = gas_chart();
  std::mt19937_64 rng(42);
  for (int i = 0; i < 40; ++i) {
    Expr u = testsupport::random_polynomial(rng, {"S", "V"}, 5, 4);
    auto r = check_legendre(Potential{u}, chart);
    CHECK(r.verdict == Verdict::Ok);
    CHECK(r.certainty == Certainty::CertainZero);
    CHECK(r.equations_of_state.at("T") == differentiate(u, "S"));
    CHECK(r.equations_of_state.at("p") == -differentiate(u, "V"));
    for (const auto& m : maxwell_relations(Potential{u}, chart)) {
      CHECK(m.verdict == Verdict::Ok);
      CHECK(m.cross_checked);
    }
  }
  auto gas = check_legendre(Potential{on(chart, kGasEnergy)}, chart);
  CHECK(gas.verdict == Verdict::Ok);
  auto mw = maxwell_relations(Potential{on(chart, kGasEnergy)}, chart);
  REQUIRE(mw.size() == 1);
  CHECK(mw[0].verdict == Verdict::Ok);
}

TEST_CASE("ideal gas in the entropy representation") {
  ThermoChart chart("S", {{"invT", "U", 1, Role::Heat}, {"pT", "V", 1, Role::Work}});
  StateEquations eqs;
  eqs.intensive.emplace("invT", on(chart, "3/2*N*R/U"));
  eqs.intensive.emplace("pT", on(chart, "N*R/V"));
  auto r = check_legendre(eqs, chart);
  CHECK(r.verdict == Verdict::Ok);
  REQUIRE(r.integrability.size() == 1);
  CHECK(r.integrability[0].holds);
  CHECK(r.integrability[0].zero.certainty == Certainty::CertainZero);
  CHECK(r.integrability[0].lhs.is_zero());
  CHECK(r.integrability[0].rhs.is_zero());
  REQUIRE(r.energy);
  CHECK(r.energy_reconstructed);
  CHECK(*r.energy == on(chart, "3/2*N*R*ln(U) + N*R*ln(V)"));
  for (const auto& m : maxwell_relations(eqs, chart)) CHECK(m.verdict == Verdict::Ok);
}

TEST_CASE("inconsistent state equations fail with a witness") {
  auto chart = gas_chart();
  StateEquations eqs;
  eqs.intensive.emplace("T", on(chart, "V"));
  eqs.intensive.emplace("p", on(chart, "V"));
  auto r = check_legendre(eqs, chart);
  CHECK(r.verdict == Verdict::Fail);
  REQUIRE(r.integrability.size() == 1);
  CHECK(r.integrability[0].relation == "∂T/∂V = -∂p/∂S");
  CHECK(r.integrability[0].lhs == Expr(1L));
  CHECK(r.integrability[0].rhs.is_zero());
  CHECK_FALSE(r.integrability[0].holds);
}

TEST_CASE("maxwell relation for unspecified state functions") {
  auto chart = gas_chart();
  StateEquations eqs;
  eqs.intensive.emplace("T", Expr::function("T", {"S", "V"}));
  eqs.intensive.emplace("p", Expr::function("p", {"S", "V"}));
  auto ids = maxwell_relations(eqs, chart);
  REQUIRE(ids.size() == 1);
  CHECK(ids[0].relation == "∂T/∂V = -∂p/∂S");
  CHECK(ids[0].lhs == differentiate(Expr::function("T", {"S", "V"}), "V"));
  CHECK(ids[0].rhs == -differentiate(Expr::function("p", {"S", "V"}), "S"));
  CHECK(ids[0].verdict == Verdict::Conditional);
  CHECK(ids[0].cross_checked);
  CHECK(check_legendre(eqs, chart).verdict == Verdict::Conditional);
  CHECK_THROWS_AS(inclusion(eqs, chart), InvalidArgumentError);
}

TEST_CASE("malformed specs are rejected") {
  auto chart = gas_chart();
  CHECK_THROWS_AS(check_legendre(Potential{on(chart, "T*S")}, chart), InvalidArgumentError);
  StateEquations missing;
  missing.intensive.emplace("T", on(chart, "S"));
  CHECK_THROWS_AS(check_legendre(missing, chart), InvalidArgumentError);
}

TEST_CASE("thermodynamic potentials") {
  auto chart = gas_chart();
  struct Row {
    std::vector<std::string> swap;
    std::string name, potential, theta;
  };
  for (const Row& row : {Row{{"V"}, "H", "U + p*V", "dH - T*dS - V*dp"},
                         Row{{"T"}, "F", "U - T*S", "dF + S*dT + p*dV"},
                         Row{{"p", "S"}, "G", "U + p*V - T*S", "dG + S*dT - V*dp"}}) {
    auto t = legendre_transform(chart, row.swap);
    CHECK(t.potential_name == row.name);
    CHECK(t.potential == on(chart, row.potential));
    CHECK(to_string(t.theta) == row.theta);
    CHECK(t.contact.contact);
    CHECK(t.map_check.symmetry);
    CHECK(*t.map_check.factor == Expr(1L));

    auto back = legendre_transform(t.chart, row.swap);
    CHECK(back.chart == chart);
    CHECK(back.potential == Expr::symbol("U"));
    CHECK(back.theta == first_law_form(chart));
  }
  auto same = legendre_transform(chart, {});
  CHECK(same.chart == chart);
  CHECK(same.theta == first_law_form(chart));
  CHECK_THROWS_AS(legendre_transform(chart, {"mu"}), InvalidArgumentError);
}

TEST_CASE("path integrals on the ideal gas") {
  auto sys = gas_system();
  auto chart = sys.chart;
  // Closed triangle: ∮dU = 0.
  auto tri = make_path(chart,
                       {line(Rational(1), Rational(1), Rational(2), Rational(1)),
                        line(Rational(2), Rational(1), Rational(2), Rational(3)),
                        line(Rational(2), Rational(3), Rational(1), Rational(1))},
                       true);
  auto du = path_integral(DifferentialForm::basis(chart.full_chart(), "U"), tri, sys);
  CHECK(std::fabs(du.value) < 1e-9);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 10; ++i) {
    Rational s0 = grid(rng, 0, 2), v0 = grid(rng, 1, 3), s1 = grid(rng, 0, 2), v1 = grid(rng, 1, 3);
    Rational sm = grid(rng, 0, 2), vm = grid(rng, 1, 3);
    auto direct = make_path(chart, {line(s0, v0, s1, v1)}, false);
    auto bent = make_path(chart, {line(s0, v0, sm, vm), line(sm, vm, s1, v1)}, false);
    auto a = first_law_balance(direct, sys);
    auto b = first_law_balance(bent, sys);
    const double oracle = gas_u(to_double(s1), to_double(v1)) - gas_u(to_double(s0), to_double(v0));
    CHECK(std::fabs(a.dU.value - b.dU.value) < 1e-8);
    CHECK(std::fabs(a.dU.value - oracle) < 1e-8);
    CHECK(std::fabs(a.residual) < 1e-8);
    CHECK(std::fabs(b.residual) < 1e-8);
  }
}

TEST_CASE("cycle audit") {
  auto sys = gas_system();
  auto chart = sys.chart;
  const Rational s0(1), s1(2), v0(1), v1(3);
  auto rect = make_path(chart, {line(s0, v0, s1, v0), line(s1, v0, s1, v1), line(s1, v1, s0, v1), line(s0, v1, s0, v0)},
                        true);
  auto r = cycle_audit(rect, sys);
  CHECK(r.balance_ok);
  CHECK_FALSE(r.kelvin_violation);
  // Work around the rectangle equals the heat, which telescopes into energy differences.
  const double oracle = (gas_u(2, 1) - gas_u(1, 1)) - (gas_u(2, 3) - gas_u(1, 3));
  CHECK(std::fabs(r.work.value - oracle) < 1e-6);
  CHECK(r.segments[1].adiabatic);
  CHECK(r.segments[3].adiabatic);
  CHECK_FALSE(r.segments[0].adiabatic);

  // Cooling at constant volume, then a straight return: the return leg cannot be adiabatic.
  auto cool = make_path(chart, {line(s1, v1, s0, v1), line(s0, v1, s1, v1)}, true);
  auto c = cycle_audit(cool, sys);
  CHECK_FALSE(c.segments[1].adiabatic);
  CHECK_FALSE(c.kelvin_violation);

  CHECK_THROWS_AS(cycle_audit(make_path(chart, {line(s0, v0, s1, v1)}, true), sys), InvalidArgumentError);

  // Degenerate system whose temperature vanishes on V = 1.
  ThermoSystem bad{chart, Potential{on(chart, "S^2*(V-1)/2")}, kParams, {}};
  auto planted = make_path(chart,
                           {line(Rational(1), Rational(2), Rational(2), Rational(2)),
                            line(Rational(2), Rational(2), Rational(2), Rational(1)),
                            line(Rational(2), Rational(1), Rational(1), Rational(1)),
                            line(Rational(1), Rational(1), Rational(1), Rational(2))},
                           true);
  auto k = cycle_audit(planted, bad);
  CHECK(k.kelvin_violation);
  CHECK(std::fabs(k.work.value - 1.5) < 1e-9);
  CHECK(k.balance_ok);
}

TEST_CASE("entropy along quasi-static paths") {
  auto sys = gas_system();
  auto chart = sys.chart;
  auto cert = verify_integrating_factor(heat_form(chart), Expr::symbol("T"), Expr::symbol("S"));
  REQUIRE(cert.certificate);

  auto adiabat = make_path(chart, {{Expr(Rational(3, 2)), t_expr("1 + 2*t^2")}}, false);
  auto a = adiabatic_entropy_check(adiabat, sys, *cert.certificate);
  CHECK(a.trend == EntropyTrend::QuasiStaticAdiabatic);
  CHECK(a.max_entropy_drift < 1e-9);

  // Heating at constant volume V=2 from U=1 to U=3, written through S(U,V) = 3/2 ln U + ln V.
  auto heating = make_path(chart, {{t_expr("3/2*ln(1 + 2*t)") + Expr(1L) * ln(Expr(2L)), Expr(2L)}}, false);
  auto h = adiabatic_entropy_check(heating, sys, *cert.certificate);
  CHECK(h.trend == EntropyTrend::StrictlyIncreasing);
  auto cooling = make_path(chart, {{t_expr("3/2*ln(3 - 2*t)") + ln(Expr(2L)), Expr(2L)}}, false);
  auto c = adiabatic_entropy_check(cooling, sys, *cert.certificate);
  CHECK(c.trend == EntropyTrend::StrictlyDecreasing);
  CHECK(c.transversal);

  // The same check through a certificate on [U,V]: q = dU + p dV with S(U,V).
  const Chart uv({"U", "V"});
  auto q = df_named(uv, {{"U", "1"}, {"V", "2/3*U/V"}}, kParams);
  auto gas_cert = verify_integrating_factor(q, parse("2*U/(3*N*R)", uv, kParams),
                                            parse("3/2*N*R*ln(U) + N*R*ln(V)", uv, kParams));
  REQUIRE(gas_cert.certificate);
  auto h2 = adiabatic_entropy_check(heating, sys, *gas_cert.certificate);
  CHECK(h2.trend == EntropyTrend::StrictlyIncreasing);
  auto a2 = adiabatic_entropy_check(adiabat, sys, *gas_cert.certificate);
  CHECK(a2.trend == EntropyTrend::QuasiStaticAdiabatic);
}
