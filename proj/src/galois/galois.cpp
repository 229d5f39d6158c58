#include "entropykit/galois.hpp"

namespace entropykit::galois {

Poset::Poset(std::vector<std::string> carrier, const std::vector<std::pair<int, int>>& edges)
    : carrier_(std::move(carrier)), relation_(static_cast<int>(carrier_.size())) {
  for (auto [x, y] : edges) {
    if (x < 0 || y < 0 || x >= size() || y >= size()) throw InvalidArgumentError("poset edge outside the carrier");
    relation_.set(x, y);
  }
  kernels::make_reflexive(relation_);
  kernels::transitive_closure(relation_);
  classify();
}

Poset Poset::from_matrix(std::vector<std::string> carrier, kernels::BitMatrix relation) {
  if (relation.size() != static_cast<int>(carrier.size())) throw InvalidArgumentError("relation size mismatch");
  Poset p;
  p.carrier_ = std::move(carrier);
  p.relation_ = std::move(relation);
  kernels::make_reflexive(p.relation_);
  kernels::transitive_closure(p.relation_);
  p.classify();
  return p;
}

void Poset::classify() {
  antisymmetric_ = total_ = true;
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y) {
      if (leq(x, y) && leq(y, x)) antisymmetric_ = false;
      if (!leq(x, y) && !leq(y, x)) total_ = false;
    }
}

std::optional<int> Poset::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < carrier_.size(); ++i)
    if (carrier_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

Poset poset_from_entropy(const order::StateSpace& space, int space_index, const order::EntropyFn& entropy) {
  std::vector<std::string> carrier;
  std::vector<Rational> s;
  for (int i = 0; i < space.size(); ++i) {
    carrier.push_back(space.state(i).id);
    auto v = entropy.value({space_index, i});
    if (!v) throw InvalidArgumentError("entropy undefined on state '" + space.state(i).id + "'");
    s.push_back(*v);
  }
  kernels::BitMatrix m(space.size());
  kernels::fill(m, [&](int i, int j) { return s[static_cast<std::size_t>(i)] <= s[static_cast<std::size_t>(j)]; });
  return Poset::from_matrix(std::move(carrier), std::move(m));
}

namespace {

void check_graph(const Poset& source, const Poset& target, const std::vector<int>& graph) {
  if (static_cast<int>(graph.size()) != source.size())
    throw InvalidArgumentError("map must assign an image to each of the " + std::to_string(source.size()) +
                               " source elements");
  for (int y : graph)
    if (y < 0 || y >= target.size()) throw InvalidArgumentError("map image outside the target carrier");
}

}  // namespace

MonotoneVerdict check_monotone(const Poset& source, const Poset& target, const std::vector<int>& graph) {
  check_graph(source, target, graph);
  MonotoneVerdict v;
  v.witness = kernels::monotone_scan(source.relation(), target.relation(), graph);
  v.monotone = !v.witness;
  return v;
}

MonotoneMap::MonotoneMap(Poset source, Poset target, std::vector<int> graph)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)) {
  auto v = check_monotone(source_, target_, graph_);
  if (!v.monotone)
    throw NotMonotoneError("map is not monotone: " + source_.name(v.witness->first) + " <= " +
                               source_.name(v.witness->second) + " but images are not ordered",
                           *v.witness);
}

GaloisVerdict check_galois(const MonotoneMap& f, const MonotoneMap& g, kernels::Mode mode) {
  if (!(f.source() == g.target()) || !(f.target() == g.source()))
    throw InvalidArgumentError("F: A → B and G: B → A must share carriers and orders");
  GaloisVerdict v;
  v.violation = kernels::adjunction_scan(f.source().relation(), f.target().relation(), f.graph(), g.graph(), mode);
  v.adjoint = !v.violation;
  for (int a = 0; a < f.source().size(); ++a)
    if (!f.source().leq(a, g(f(a)))) v.unit = false;
  for (int b = 0; b < f.target().size(); ++b)
    if (!f.target().leq(f(g(b)), b)) v.counit = false;
  return v;
}

namespace {

/// Index of an element of `members` above (or below) all others in `order`, if any.
std::optional<int> extremum(const Poset& order, const std::vector<int>& members, bool greatest) {
  for (int c : members) {
    bool ok = true;
    for (int m : members)
      if (greatest ? !order.leq(m, c) : !order.leq(c, m)) {
        ok = false;
        break;
      }
    if (ok) return c;
  }
  return std::nullopt;
}

}  // namespace

AdjointResult right_adjoint(const MonotoneMap& f) {
  const Poset& a = f.source();
  const Poset& b = f.target();
  std::vector<int> g;
  for (int y = 0; y < b.size(); ++y) {
    std::vector<int> below;
    for (int x = 0; x < a.size(); ++x)
      if (b.leq(f(x), y)) below.push_back(x);
    auto top = extremum(a, below, true);
    if (!top) return {std::nullopt, y};
    g.push_back(*top);
  }
  return {MonotoneMap(b, a, std::move(g)), std::nullopt};
}

AdjointResult left_adjoint(const MonotoneMap& g) {
  const Poset& b = g.source();
  const Poset& a = g.target();
  std::vector<int> f;
  for (int x = 0; x < a.size(); ++x) {
    std::vector<int> above;
    for (int y = 0; y < b.size(); ++y)
      if (a.leq(x, g(y))) above.push_back(y);
    auto bottom = extremum(b, above, false);
    if (!bottom) return {std::nullopt, x};
    f.push_back(*bottom);
  }
  return {MonotoneMap(a, b, std::move(f)), std::nullopt};
}

LandauerReport landauer_check(const EntropySystem& sys1, const EntropySystem& sys2, const std::vector<int>& f,
                              const std::vector<int>& g) {
  const Poset p1 = poset_from_entropy(sys1.space, sys1.space_index, sys1.entropy);
  const Poset p2 = poset_from_entropy(sys2.space, sys2.space_index, sys2.entropy);
  LandauerReport r;
  r.f_not_monotone = check_monotone(p1, p2, f).witness;
  r.g_not_monotone = check_monotone(p2, p1, g).witness;
  r.violation = kernels::adjunction_scan(p1.relation(), p2.relation(), f, g);
  for (int c = 0; c < p1.size(); ++c)
    r.realization.push_back({c, *sys1.entropy.value({sys1.space_index, c}),
                             *sys2.entropy.value({sys2.space_index, f[static_cast<std::size_t>(c)]})});
  r.passed = !r.f_not_monotone && !r.g_not_monotone && !r.violation;
  return r;
}

}  // namespace entropykit::galois
