#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/random_expr.hpp"
#include "entropykit/error.hpp"
#include "entropykit/parse.hpp"
#include "entropykit/zero_test.hpp"

using namespace entropykit;

namespace {

Expr P(std::string_view text, std::vector<std::string> chart, std::vector<std::string> params = {}) {
  return parse(text, Chart(std::move(chart)), params);
}

const std::vector<std::string> kXYZ{"x", "y", "z"};

}  // namespace

TEST_CASE("parse builds canonical monomials and sums") {
  Expr e = P("3/2*N*R*T", {"T"}, {"N", "R"});
  REQUIRE(e.terms().size() == 1);
  CHECK(e.terms()[0].coef == make_rational(3, 2));
  CHECK(e.terms()[0].factors.size() == 3);
  CHECK(to_string(e) == "3/2*N*R*T");

  CHECK(P("x*y - y*x", kXYZ).is_zero());

  Expr gibbs = P("U + p*V - T*S", {"U", "S", "V", "T", "p"});
  CHECK(gibbs.terms().size() == 3);
  CHECK(gibbs == P("-S*T + V*p + U", {"U", "S", "V", "T", "p"}));
  CHECK(to_string(gibbs, Chart({"U", "S", "V", "T", "p"})) == "U - S*T + V*p");
}

TEST_CASE("parse follows the grammar for exponents and numbers") {
  CHECK(P("x^1/2", kXYZ) == pow(Expr::symbol("x"), make_rational(1, 2)));
  CHECK(P("x^(-2)", kXYZ) == P("1/x^2", kXYZ));
  CHECK(P("(x^2)^(1/2)", kXYZ) == Expr::symbol("x"));
  CHECK(P("4^(1/2)", kXYZ) == Expr(2L));
  CHECK(P("(x+y)^2", kXYZ) == P("x^2 + 2*x*y + y^2", kXYZ));
  CHECK(P("(x+y)/(x+y)", kXYZ) == Expr(1L));
  CHECK(P("-x^2", kXYZ) == -P("x*x", kXYZ));
  CHECK(P("ln(1) + exp(0)", kXYZ) == Expr(1L));
}

TEST_CASE("parse errors carry positions") {
  try {
    P("x + * y", kXYZ);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  try {
    P("x +\n  w", kXYZ);
    FAIL("expected UnknownIdentifierError");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.name() == "w");
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(P("x/(y-y)", kXYZ), DivisionByZeroError);
  CHECK_THROWS_AS(P("x/0", kXYZ), DivisionByZeroError);
  CHECK_THROWS_AS(P("ln(0)", kXYZ), ParseError);
  CHECK_THROWS_AS(P("(x", kXYZ), ParseError);
  CHECK_THROWS_AS(P("x # y", kXYZ), ParseError);
  CHECK_THROWS_AS(P("x^y", kXYZ), ParseError);
}

TEST_CASE("derivative of a logarithm agrees with difference quotients") {
  const Chart chart({"U"});
  Expr s = parse("3/2*N*R*ln(U)", chart, {"N", "R"});
  Expr ds = differentiate(s, "U");
  CHECK(ds == parse("3/2*N*R*U^-1", chart, {"N", "R"}));

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> draw(1, 1000);
  for (int i = 0; i < 8; ++i) {
    double u = 0, n = 0, r = 0;
    while (u <= 0.0 || u > 10.0) u = static_cast<double>(draw(rng)) / static_cast<double>(draw(rng));
    n = static_cast<double>(draw(rng)) / 100.0;
    r = static_cast<double>(draw(rng)) / 100.0;
    auto f = [&](double x) { return 1.5 * n * r * std::log(x); };
    const double h = 1e-5 * u;
    double quotient = (f(u + h) - f(u - h)) / (2 * h);
    double symbolic = evaluate(ds, {{"U", u}, {"N", n}, {"R", r}});
    CHECK(std::fabs(quotient - symbolic) <= 1e-9 * std::max(1.0, std::fabs(symbolic)) + 1e-7 * std::fabs(symbolic));
  }
}

TEST_CASE("elementary derivatives") {
  const Chart chart({"U", "S", "V", "T", "p"});
  CHECK(differentiate(parse("U", chart), "V").is_zero());
  CHECK(differentiate(parse("U + p*V - T*S", chart), "S") == parse("-T", chart));
  CHECK(differentiate(parse("exp(2*S)*V^(-2/3)", chart), "V") ==
        parse("-2/3*exp(2*S)*V^(-5/3)", chart));
  CHECK(differentiate(parse("(S+V)^(1/2)", chart), "S") == parse("1/2*(S+V)^(-1/2)", chart));
}

TEST_CASE("zero test certainty levels") {
  CHECK(is_zero(Expr()).certainty == Certainty::CertainZero);
  CHECK(is_zero(P("x", kXYZ)).certainty == Certainty::CertainNonzero);
  CHECK(is_zero(P("exp(ln(x)) - x", kXYZ)).certainty == Certainty::ProbablyZero);
  CHECK(is_zero(P("exp(ln(x)) - x - 1/1000000", kXYZ)).certainty == Certainty::CertainNonzero);
  CHECK(is_zero(P("1/(x+y) + 1/(x-y) - 2*x/(x^2-y^2)", kXYZ)).certainty == Certainty::CertainZero);
  CHECK(is_zero(P("1/(x+y) - 1/(x-y)", kXYZ)).certainty == Certainty::CertainNonzero);
  CHECK(is_zero(P("ln(x*y) - ln(x) - ln(y)", kXYZ)).certainty == Certainty::ProbablyZero);
}

TEST_CASE("zero test on a planted exp(ln x) identity uses 16 samples within tolerance") {
  Expr e = P("exp(ln(x)) - x", kXYZ);
  Sampler sampler(SamplingConfig{}.seed);
  for (std::uint64_t i = 0; i < 16; ++i) {
    Rational x = sampler.symbol_value("x", i);
    CHECK(x > 0);
    CHECK(x <= 10);
    CHECK(x.get_num() <= 1000);
    CHECK(x.get_den() <= 1000);
    CHECK(std::fabs(sampler.evaluate(e, i)) < 1e-9);
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    Expr e = testsupport::random_expr(rng, kXYZ);
    std::string text = to_string(e);
    Expr back = P(text, kXYZ);
    INFO(text);
    CHECK(back == e);
    std::string charted = to_string(e, Chart(kXYZ));
    CHECK(P(charted, kXYZ) == e);
  }
}

TEST_CASE("differentiation is linear and obeys the product rule") {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    Expr a = testsupport::random_expr(rng, kXYZ);
    Expr b = testsupport::random_expr(rng, kXYZ);
    Rational ca = testsupport::random_rational(rng), cb = testsupport::random_rational(rng);
    Expr lhs = differentiate(Expr(ca) * a + Expr(cb) * b, "x");
    Expr rhs = Expr(ca) * differentiate(a, "x") + Expr(cb) * differentiate(b, "x");
    CHECK(lhs == rhs);
  }
  for (int i = 0; i < 200; ++i) {
    Expr a = testsupport::random_polynomial(rng, kXYZ);
    Expr b = testsupport::random_polynomial(rng, kXYZ);
    CHECK(differentiate(a * b, "y") == differentiate(a, "y") * b + a * differentiate(b, "y"));
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Expr e = testsupport::random_expr(rng, kXYZ);
    Expr xy = differentiate(differentiate(e, "x"), "y");
    Expr yx = differentiate(differentiate(e, "y"), "x");
    INFO(to_string(e));
    CHECK(is_zero(xy - yx).certainty != Certainty::CertainNonzero);
  }
}

TEST_CASE("substitution and generic functions") {
  Expr t = Expr::function("T", {"S", "V"});
  Expr dt = differentiate(t, "V");
  CHECK(to_string(dt) == "D[V]T(S,V)");
  CHECK(differentiate(differentiate(t, "S"), "V") == differentiate(differentiate(t, "V"), "S"));
  CHECK(differentiate(t, "p").is_zero());

  Expr e = P("x^2 + y", kXYZ);
  CHECK(substitute(e, {{"x", P("y+1", kXYZ)}}) == P("y^2 + 3*y + 1", kXYZ));
  CHECK(free_symbols(P("x*ln(y)", kXYZ)) == std::set<std::string>{"x", "y"});
}

TEST_CASE("integrate_monomials inverts differentiation on power terms") {
  Expr e = P("x^2*y + 3/x + y", kXYZ);
  auto integral = integrate_monomials(e, "x");
  REQUIRE(integral);
  CHECK(differentiate(*integral, "x") == e);
  CHECK_FALSE(integrate_monomials(P("ln(x)", kXYZ), "x"));
}

TEST_CASE("declared functions parse with or without their arguments") {
  Scope scope{Chart({"S", "V"}), {}, {{"T", {"S", "V"}}}};
  CHECK(parse("T(S, V)", scope) == Expr::function("T", {"S", "V"}));
  CHECK(parse("2*T", scope) == Expr::function("T", {"S", "V"}) * Expr(2));
  CHECK_THROWS_AS(parse("T(V, S)", scope), ParseError);
  CHECK_THROWS_AS(parse("T(S V)", scope), ParseError);
  CHECK_THROWS_AS(parse("p(S, V)", scope), UnknownIdentifierError);
}

TEST_CASE("one-forms from text") {
  Scope scope{Chart({"x", "y", "z"}), {"a"}, {}};
  DifferentialForm q = parse_one_form("dz - y*dx", scope);
  CHECK(q.coefficient(std::vector<std::string>{"z"}) == Expr(1));
  CHECK(q.coefficient(std::vector<std::string>{"x"}) == -Expr::symbol("y"));
  CHECK(q.coefficient(std::vector<std::string>{"y"}).is_zero());
  CHECK(parse_one_form("a*(dx + dy) - dy", scope) ==
        parse_one_form("a*dx + (a - 1)*dy", scope));

  CHECK_THROWS_AS(parse_one_form("dx*dy", scope), ParseError);
  CHECK_THROWS_AS(parse_one_form("dx + y", scope), ParseError);
  CHECK_THROWS_AS(parse_one_form("dw", scope), UnknownIdentifierError);
  try {
    parse_one_form("dx + q*dy", scope, SourcePos{4, 10});
    FAIL("expected an error");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 15);
  }
}
