#include <doctest.h>

#include <random>

#include "../support/random_order.hpp"
#include "entropykit/kernels.hpp"

using namespace entropykit::kernels;

namespace {

BitMatrix random_matrix(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, bit(rng));
  return m;
}

}  // namespace

TEST_CASE("closure matches brute-force reachability") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 90);
    BitMatrix m = random_matrix(rng, n, 2.0 / n);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m.get(i, j)) edges.emplace_back(i, j);
    const auto reach = testsupport::reachability(n, edges);

    BitMatrix serial = m, parallel = m;
    make_reflexive(serial);
    make_reflexive(parallel);
    transitive_closure(serial, Mode::Serial);
    transitive_closure(parallel, Mode::Parallel);
    CHECK(serial == parallel);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(serial.get(i, j) == reach[i][j]);

    BitMatrix again = serial;
    transitive_closure(again);
    CHECK(again == serial);
    CHECK_FALSE(transitivity_violation(serial));
  }
}

TEST_CASE("scans agree across modes and report the first index") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    BitMatrix a = random_matrix(rng, n, 0.3), b = a;
    if (rng() % 2) b.set(static_cast<int>(rng() % n), static_cast<int>(rng() % n), rng() % 2);
    auto s = first_disagreement(a, b, Mode::Serial);
    CHECK(s == first_disagreement(a, b, Mode::Parallel));
    std::optional<std::pair<int, int>> brute;
    for (int i = 0; i < n && !brute; ++i)
      for (int j = 0; j < n && !brute; ++j)
        if (a.get(i, j) != b.get(i, j)) brute = std::pair{i, j};
    CHECK(s == brute);

    auto t = transitivity_violation(a, Mode::Serial);
    CHECK(t == transitivity_violation(a, Mode::Parallel));
    std::optional<std::array<int, 3>> tb;
    for (int i = 0; i < n && !tb; ++i)
      for (int j = 0; j < n && !tb; ++j)
        for (int k = 0; k < n && !tb; ++k)
          if (a.get(i, j) && a.get(j, k) && !a.get(i, k)) tb = std::array{i, j, k};
    CHECK(t == tb);

    std::vector<int> f(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n));
    for (auto& x : f) x = static_cast<int>(rng() % n);
    for (auto& x : g) x = static_cast<int>(rng() % n);
    CHECK(monotone_scan(a, b, f, Mode::Serial) == monotone_scan(a, b, f, Mode::Parallel));
    auto u = adjunction_scan(a, b, f, g, Mode::Serial);
    auto v = adjunction_scan(a, b, f, g, Mode::Parallel);
    REQUIRE(u.has_value() == v.has_value());
    if (u) {
      CHECK(u->a == v->a);
      CHECK(u->b == v->b);
      CHECK(u->forward == v->forward);
      CHECK(b.get(f[u->a], u->b) != a.get(u->a, g[u->b]));
    }
  }
}

TEST_CASE("fill and sample evaluation") {
  BitMatrix m(70);
  fill(m, [](int i, int j) { return (i + j) % 3 == 0; }, Mode::Parallel);
  for (int i = 0; i < 70; ++i)
    for (int j = 0; j < 70; ++j) CHECK(m.get(i, j) == ((i + j) % 3 == 0));
  auto v = evaluate_samples(64, [](int k) { return k * 0.5; });
  CHECK(v[63] == 31.5);
  CHECK_THROWS(fill(m, [](int i, int) -> bool { if (i == 5) throw std::runtime_error("x"); return true; }));
}
