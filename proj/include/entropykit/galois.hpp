#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropykit/kernels.hpp"
#include "entropykit/order.hpp"

namespace entropykit::galois {

/// Finite pre-order, stored closed under reflexivity and transitivity.
class Poset {
 public:
  Poset() = default;
  /// `edges` are pairs (x, y) meaning x <= y; the closure is applied here.
  Poset(std::vector<std::string> carrier, const std::vector<std::pair<int, int>>& edges);
  static Poset from_matrix(std::vector<std::string> carrier, kernels::BitMatrix relation);

  int size() const noexcept { return static_cast<int>(carrier_.size()); }
  const std::vector<std::string>& carrier() const noexcept { return carrier_; }
  const std::string& name(int i) const { return carrier_.at(static_cast<std::size_t>(i)); }
  std::optional<int> index_of(std::string_view name) const;

  bool leq(int x, int y) const { return relation_.get(x, y); }
  bool equivalent(int x, int y) const { return leq(x, y) && leq(y, x); }
  const kernels::BitMatrix& relation() const noexcept { return relation_; }
  bool antisymmetric() const noexcept { return antisymmetric_; }
  bool total() const noexcept { return total_; }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.carrier_ == b.carrier_ && a.relation_ == b.relation_;
  }

 private:
  void classify();

  std::vector<std::string> carrier_;
  kernels::BitMatrix relation_;
  bool antisymmetric_ = true;
  bool total_ = true;
};

/// Carrier = states of the space, x <= y iff S(x) <= S(y).
Poset poset_from_entropy(const order::StateSpace& space, int space_index, const order::EntropyFn& entropy);

struct MonotoneVerdict {
  bool monotone = true;
  /// x <= y with F(x) not <= F(y).
  std::optional<std::pair<int, int>> witness;
};

MonotoneVerdict check_monotone(const Poset& source, const Poset& target, const std::vector<int>& graph);

class NotMonotoneError : public Error {
 public:
  NotMonotoneError(const std::string& message, std::pair<int, int> witness) : Error(message), witness_(witness) {}
  std::pair<int, int> witness() const noexcept { return witness_; }

 private:
  std::pair<int, int> witness_;
};

/// Order-preserving total function between carriers; checked on construction.
class MonotoneMap {
 public:
  MonotoneMap(Poset source, Poset target, std::vector<int> graph);

  const Poset& source() const noexcept { return source_; }
  const Poset& target() const noexcept { return target_; }
  const std::vector<int>& graph() const noexcept { return graph_; }
  int operator()(int x) const { return graph_.at(static_cast<std::size_t>(x)); }

 private:
  Poset source_;
  Poset target_;
  std::vector<int> graph_;
};

struct GaloisVerdict {
  bool adjoint = true;
  /// First (a, b) where F(a) <= b and a <= G(b) disagree.
  std::optional<kernels::AdjunctionViolation> violation;
  /// a <= G(F(a)) for all a, and F(G(b)) <= b for all b.
  bool unit = true;
  bool counit = true;
};

/// Throws InvalidArgumentError when the carriers of F and G do not line up.
GaloisVerdict check_galois(const MonotoneMap& f, const MonotoneMap& g, kernels::Mode mode = kernels::default_mode());

struct AdjointResult {
  std::optional<MonotoneMap> map;
  /// Element whose candidate set has no greatest (right) or least (left) member.
  std::optional<int> witness;
};

/// G(b) = a greatest element of {a : F(a) <= b}.
AdjointResult right_adjoint(const MonotoneMap& f);
/// F(a) = a least element of {b : a <= G(b)}.
AdjointResult left_adjoint(const MonotoneMap& g);

struct EntropySystem {
  order::StateSpace space;
  int space_index = 0;
  order::EntropyFn entropy;
};

struct LandauerEntry {
  int state = 0;
  Rational source_entropy;   // S1(c)
  Rational realized_entropy; // S2(F c)
};

struct LandauerReport {
  bool passed = false;
  std::optional<std::pair<int, int>> f_not_monotone;  // in sys1 states
  std::optional<std::pair<int, int>> g_not_monotone;  // in sys2 states
  /// (c, d) and which side of S2(Fc) <= S2(d) ⇔ S1(c) <= S1(Gd) broke.
  std::optional<kernels::AdjunctionViolation> violation;
  std::vector<LandauerEntry> realization;
};

/// F realizes sys1 in sys2 (the "realization" direction), G abstracts back.
LandauerReport landauer_check(const EntropySystem& sys1, const EntropySystem& sys2, const std::vector<int>& f,
                              const std::vector<int>& g);

}  // namespace entropykit::galois
