#pragma once

#include <random>
#include <string>
#include <vector>

#include "entropykit/order.hpp"

namespace testsupport {

using entropykit::Rational;
using namespace entropykit::order;

struct HiddenEntropySpace {
  std::vector<StateSpace> spaces;
  EntropyFn hidden;
};

/// One scalable space of 1..max_states states with hidden entropy values num/den, num in [-6, 6],
/// den in [1, 4]. Ties are likely, so ∼-classes with several members occur.
inline HiddenEntropySpace random_entropy_space(std::mt19937_64& rng, int max_states = 8) {
  std::uniform_int_distribution<int> count(1, max_states);
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  HiddenEntropySpace out;
  std::vector<State> states;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Rational s = entropykit::make_rational(num(rng), den(rng));
    states.push_back({"s" + std::to_string(i), {s}});
    out.hidden.set({0, i}, s);
  }
  out.spaces.emplace_back("gamma", std::move(states), true, std::vector<std::string>{"x"});
  return out;
}

/// Brute-force reachability in a finite digraph (depth-first from every node).
inline std::vector<std::vector<bool>> reachability(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) adj[static_cast<std::size_t>(a)].push_back(b);
  std::vector<std::vector<bool>> out(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
  for (int s = 0; s < n; ++s) {
    std::vector<int> stack{s};
    auto& row = out[static_cast<std::size_t>(s)];
    row[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[static_cast<std::size_t>(v)])
        if (!row[static_cast<std::size_t>(w)]) {
          row[static_cast<std::size_t>(w)] = true;
          stack.push_back(w);
        }
    }
  }
  return out;
}

}  // namespace testsupport
