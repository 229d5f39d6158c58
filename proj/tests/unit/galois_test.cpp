#include <doctest.h>

#include <random>

#include "../support/random_poset.hpp"
#include "entropykit/galois.hpp"

using namespace entropykit;
using namespace entropykit::galois;

namespace {

Poset chain(int n) {
  std::vector<std::string> carrier;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    carrier.push_back(std::to_string(i));
    if (i > 0) edges.emplace_back(i - 1, i);
  }
  return Poset(carrier, edges);
}

Poset antichain(int n) {
  std::vector<std::string> carrier;
  for (int i = 0; i < n; ++i) carrier.push_back("a" + std::to_string(i + 1));
  return Poset(carrier, {});
}

std::vector<int> identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

EntropySystem entropy_system(std::string label, std::vector<Rational> values, int index) {
  std::vector<order::State> states;
  EntropySystem sys;
  for (std::size_t i = 0; i < values.size(); ++i) {
    states.push_back({label + std::to_string(i), {}});
    sys.entropy.set({index, static_cast<int>(i)}, values[i]);
  }
  sys.space = order::StateSpace(label, states);
  sys.space_index = index;
  return sys;
}

}  // namespace

TEST_CASE("posets from entropy") {
  auto flat = entropy_system("x", {Rational(2), Rational(2), Rational(2)}, 0);
  auto p = poset_from_entropy(flat.space, 0, flat.entropy);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p.equivalent(i, j));
  CHECK(p.total());
  CHECK_FALSE(p.antisymmetric());

  auto inj = entropy_system("y", {Rational(3), Rational(-1), Rational(1, 2), Rational(7)}, 0);
  auto q = poset_from_entropy(inj.space, 0, inj.entropy);
  CHECK(q.antisymmetric());
  CHECK(q.total());
  CHECK(q.leq(1, 2));
  CHECK(q.leq(2, 0));
  CHECK(q.leq(0, 3));
  CHECK_FALSE(q.leq(3, 0));

  // Composing S with a strictly increasing map leaves the order unchanged.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> v;
    for (int i = 0; i < 6; ++i) v.push_back(make_rational(static_cast<long>(rng() % 7) - 3, 1 + rng() % 3));
    auto sys = entropy_system("z", v, 0);
    std::vector<Rational> w;
    for (const auto& s : v) w.push_back(s * s * s + 5 * s - 2);
    auto warped = entropy_system("z", w, 0);
    CHECK(poset_from_entropy(sys.space, 0, sys.entropy) == poset_from_entropy(warped.space, 0, warped.entropy));
  }
}

TEST_CASE("monotone maps") {
  auto c2 = chain(2);
  CHECK(check_monotone(c2, c2, identity(2)).monotone);
  CHECK(check_monotone(c2, c2, {1, 1}).monotone);
  auto rev = check_monotone(c2, c2, {1, 0});
  CHECK_FALSE(rev.monotone);
  CHECK(rev.witness == std::pair{0, 1});
  CHECK_THROWS_AS(MonotoneMap(c2, c2, {1, 0}), NotMonotoneError);
  CHECK_THROWS_AS(check_monotone(c2, c2, {0}), InvalidArgumentError);
}

TEST_CASE("galois connection between chains") {
  auto a = chain(3), b = chain(2);
  MonotoneMap f(a, b, {0, 0, 1});
  MonotoneMap g(b, a, {1, 2});
  auto ok = check_galois(f, g);
  CHECK(ok.adjoint);
  CHECK(ok.unit);
  CHECK(ok.counit);

  MonotoneMap bad(b, a, {0, 2});
  auto v = check_galois(f, bad);
  CHECK_FALSE(v.adjoint);
  REQUIRE(v.violation);
  CHECK(v.violation->a == 1);
  CHECK(v.violation->b == 0);
  CHECK(v.violation->forward);

  auto id = MonotoneMap(a, a, identity(3));
  CHECK(check_galois(id, id).adjoint);
  CHECK_THROWS_AS(check_galois(f, f), InvalidArgumentError);

  auto r = right_adjoint(f);
  REQUIRE(r.map);
  CHECK(r.map->graph() == std::vector<int>{1, 2});
  auto l = left_adjoint(g);
  REQUIRE(l.map);
  CHECK(l.map->graph() == std::vector<int>{0, 0, 1});
  CHECK(right_adjoint(id).map->graph() == identity(3));
  CHECK(left_adjoint(id).map->graph() == identity(3));
}

TEST_CASE("missing adjoints") {
  auto anti = antichain(2);
  auto point = chain(1);
  auto r = right_adjoint(MonotoneMap(anti, point, {0, 0}));
  CHECK_FALSE(r.map);
  CHECK(r.witness == 0);

  // G from a point into an antichain: {b : a2 <= G(b)} is empty.
  auto l = left_adjoint(MonotoneMap(point, anti, {0}));
  CHECK_FALSE(l.map);
  CHECK(l.witness == 1);
}

TEST_CASE("adjoints of random monotone maps") {
  std::mt19937_64 rng(19);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto a = testsupport::random_poset(rng, 6);
    auto b = testsupport::random_poset(rng, 6);
    auto f = testsupport::random_monotone(rng, a, b);
    const auto brute = testsupport::all_right_adjoints(f);
    auto r = right_adjoint(f);
    REQUIRE(r.map.has_value() == !brute.empty());
    if (!r.map) continue;
    ++found;
    const auto& g = *r.map;
    auto v = check_galois(f, g);
    CHECK(v.adjoint);
    CHECK(v.unit);
    CHECK(v.counit);
    // Any two right adjoints agree up to equivalence.
    for (const auto& other : brute)
      for (int y = 0; y < b.size(); ++y) CHECK(a.equivalent(g(y), other[static_cast<std::size_t>(y)]));
    // G∘F is a closure operator, F∘G a kernel operator.
    for (int x = 0; x < a.size(); ++x) {
      CHECK(a.leq(x, g(f(x))));
      CHECK(a.equivalent(g(f(g(f(x)))), g(f(x))));
    }
    for (int y = 0; y < b.size(); ++y) {
      CHECK(b.leq(f(g(y)), y));
      CHECK(b.equivalent(f(g(f(g(y)))), f(g(y))));
    }
    // F preserves existing joins.
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < a.size(); ++y) {
        std::optional<int> join;
        for (int j = 0; j < a.size() && !join; ++j) {
          if (!a.leq(x, j) || !a.leq(y, j)) continue;
          bool least = true;
          for (int k = 0; k < a.size(); ++k)
            if (a.leq(x, k) && a.leq(y, k) && !a.leq(j, k)) least = false;
          if (least) join = j;
        }
        if (!join) continue;
        for (int k = 0; k < b.size(); ++k) {
          const bool upper = b.leq(f(x), k) && b.leq(f(y), k);
          CHECK(upper == b.leq(f(*join), k));
        }
      }
    auto back = left_adjoint(g);
    REQUIRE(back.map);
    for (int x = 0; x < a.size(); ++x) CHECK(b.equivalent((*back.map)(x), f(x)));
  }
  CHECK(found > 30);
}

TEST_CASE("landauer connection") {
  auto bit = entropy_system("bit", {Rational(0), Rational(1)}, 0);
  auto same = landauer_check(bit, bit, {0, 1}, {0, 1});
  CHECK(same.passed);
  REQUIRE(same.realization.size() == 2);
  CHECK(same.realization[1].realized_entropy == 1);

  auto phys = entropy_system("phys", {Rational(0), Rational(1, 2), Rational(2), Rational(3)}, 1);
  auto p1 = poset_from_entropy(bit.space, 0, bit.entropy);
  auto p2 = poset_from_entropy(phys.space, 1, phys.entropy);
  MonotoneMap embed(p1, p2, {0, 3});
  CHECK_FALSE(right_adjoint(MonotoneMap(p1, p2, {1, 3})).map);
  auto g = right_adjoint(embed);
  REQUIRE(g.map);
  auto r = landauer_check(bit, phys, embed.graph(), g.map->graph());
  CHECK(r.passed);
  CHECK(r.realization[0].realized_entropy == 0);
  CHECK(g.map->graph() == std::vector<int>{0, 0, 0, 1});
  CHECK(r.realization[1].realized_entropy == 3);

  auto flipped = landauer_check(bit, phys, {3, 1}, g.map->graph());
  CHECK_FALSE(flipped.passed);
  CHECK(flipped.f_not_monotone == std::pair{0, 1});
}
