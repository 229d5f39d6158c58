#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>
#include <unordered_map>

#include "entropykit/order.hpp"

namespace entropykit::order {

StateSpace::StateSpace(std::string label, std::vector<State> states, bool scalable, std::vector<std::string> coordinates)
    : label_(std::move(label)), states_(std::move(states)), scalable_(scalable), coordinates_(std::move(coordinates)) {
  std::set<std::string> seen;
  for (const auto& s : states_) {
    if (!seen.insert(s.id).second) throw InvalidArgumentError("duplicate state id '" + s.id + "' in " + label_);
    if (s.coords.size() != states_.front().coords.size())
      throw InvalidArgumentError("state '" + s.id + "' has " + std::to_string(s.coords.size()) +
                                 " coordinates, expected " + std::to_string(states_.front().coords.size()));
    if (!coordinates_.empty() && s.coords.size() != coordinates_.size())
      throw InvalidArgumentError("state '" + s.id + "' does not match the coordinate names of " + label_);
  }
}

std::optional<int> StateSpace::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------- composites

namespace {

bool component_less(const Component& a, const Component& b) {
  if (a.ref != b.ref) return a.ref < b.ref;
  return a.scale < b.scale;
}

}  // namespace

CompositeState::CompositeState(StateRef ref, Rational scale) : CompositeState(std::vector<Component>{{scale, ref}}) {}

CompositeState::CompositeState(std::vector<Component> parts) : parts_(std::move(parts)) {
  for (const auto& c : parts_)
    if (sgn(c.scale) <= 0) throw InvalidArgumentError("composite scale factors must be positive");
  std::sort(parts_.begin(), parts_.end(), component_less);
}

CompositeState CompositeState::scaled(const Rational& lambda) const {
  if (sgn(lambda) <= 0) throw InvalidArgumentError("scale factor must be positive");
  CompositeState out = *this;
  for (auto& c : out.parts_) c.scale *= lambda;
  return out;
}

Rational CompositeState::size() const {
  Rational total(0);
  for (const auto& c : parts_) total += c.scale;
  return total;
}

CompositeState operator+(const CompositeState& a, const CompositeState& b) {
  std::vector<Component> parts = a.parts_;
  parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
  return CompositeState(std::move(parts));
}

bool operator==(const CompositeState& a, const CompositeState& b) {
  if (a.parts_.size() != b.parts_.size()) return false;
  for (std::size_t i = 0; i < a.parts_.size(); ++i)
    if (a.parts_[i].ref != b.parts_[i].ref || a.parts_[i].scale != b.parts_[i].scale) return false;
  return true;
}

bool operator<(const CompositeState& a, const CompositeState& b) {
  return std::lexicographical_compare(a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end(),
                                      component_less);
}

std::size_t hash_value(const CompositeState& x) {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& c : x.components()) {
    mix(static_cast<std::size_t>(c.ref.space));
    mix(static_cast<std::size_t>(c.ref.state));
    mix(mpz_get_ui(c.scale.get_num_mpz_t()));
    mix(mpz_get_ui(c.scale.get_den_mpz_t()));
  }
  return h;
}

std::string to_string(const CompositeState& x, const std::vector<StateSpace>& spaces) {
  auto name = [&](StateRef r) {
    const auto& space = spaces.at(static_cast<std::size_t>(r.space));
    const std::string& id = space.state(r.state).id;
    return spaces.size() > 1 ? space.label() + ":" + id : id;
  };
  std::string out;
  for (const auto& c : x.components()) {
    if (!out.empty()) out += ", ";
    if (c.scale != 1) out += to_string(c.scale) + "*";
    out += name(c.ref);
  }
  return x.components().size() == 1 ? out : "(" + out + ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

StateRef lookup(std::string_view name, const std::vector<StateSpace>& spaces) {
  if (auto colon = name.find(':'); colon != std::string_view::npos) {
    const auto label = trim(name.substr(0, colon));
    const auto id = trim(name.substr(colon + 1));
    for (std::size_t s = 0; s < spaces.size(); ++s)
      if (spaces[s].label() == label) {
        if (auto i = spaces[s].index_of(id)) return {static_cast<int>(s), *i};
        throw InvalidArgumentError("no state '" + std::string(id) + "' in space '" + std::string(label) + "'");
      }
    throw InvalidArgumentError("unknown state space '" + std::string(label) + "'");
  }
  std::optional<StateRef> found;
  for (std::size_t s = 0; s < spaces.size(); ++s)
    if (auto i = spaces[s].index_of(name)) {
      if (found) throw InvalidArgumentError("state id '" + std::string(name) + "' is ambiguous; qualify it as space:id");
      found = StateRef{static_cast<int>(s), *i};
    }
  if (!found) throw InvalidArgumentError("unknown state '" + std::string(name) + "'");
  return *found;
}

Component parse_component(std::string_view item, const std::vector<StateSpace>& spaces) {
  item = trim(item);
  if (item.empty()) throw InvalidArgumentError("empty component in composite state");
  std::size_t k = 0;
  while (k < item.size() && (std::isdigit(static_cast<unsigned char>(item[k])) || item[k] == '/')) ++k;
  Rational scale(1);
  if (k > 0 && !trim(item.substr(k)).empty()) {
    scale = parse_rational(item.substr(0, k));
    item = trim(item.substr(k));
    if (!item.empty() && item.front() == '*') item = trim(item.substr(1));
  }
  if (sgn(scale) <= 0) throw InvalidArgumentError("composite scale factors must be positive");
  return {scale, lookup(item, spaces)};
}

}  // namespace

CompositeState parse_composite(std::string_view text, const std::vector<StateSpace>& spaces) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') text = trim(text.substr(1, text.size() - 2));
  std::vector<Component> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i)
    if (i == text.size() || text[i] == ',' || text[i] == '+') {
      parts.push_back(parse_component(text.substr(start, i - start), spaces));
      start = i + 1;
    }
  return CompositeState(std::move(parts));
}

// ---------------------------------------------------------------- entropy

std::optional<Rational> EntropyFn::value(StateRef ref) const {
  auto it = values_.find(ref);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

Rational EntropyFn::operator()(const CompositeState& x) const {
  Rational total(0);
  for (const auto& c : x.components()) {
    auto it = values_.find(c.ref);
    if (it == values_.end())
      throw InvalidArgumentError("entropy undefined on state " + std::to_string(c.ref.space) + "/" +
                                 std::to_string(c.ref.state));
    total += c.scale * it->second;
  }
  return total;
}

bool EntropyFn::defined_on(const StateSpace& space, int space_index) const {
  for (int i = 0; i < space.size(); ++i)
    if (!values_.count({space_index, i})) return false;
  return true;
}

// ---------------------------------------------------------------- accessibility

namespace {

struct CompositeHash {
  std::size_t operator()(const CompositeState& x) const { return hash_value(x); }
};

struct PairHash {
  std::size_t operator()(const std::pair<CompositeState, CompositeState>& p) const {
    return hash_value(p.first) * 31 + hash_value(p.second);
  }
};

}  // namespace

struct Accessibility::Impl {
  Backend backend = Backend::Edges;
  bool closed = true;
  bool scaling = false;

  std::vector<CompositeState> nodes;
  std::unordered_map<CompositeState, int, CompositeHash> index;
  std::vector<std::pair<int, int>> edges;
  kernels::BitMatrix relation;
  std::once_flag built;

  Oracle oracle;
  mutable std::mutex mu;
  std::unordered_map<std::pair<CompositeState, CompositeState>, bool, PairHash> memo;
  bool audit = false;

  void build() {
    std::call_once(built, [&] {
      relation = kernels::BitMatrix(static_cast<int>(nodes.size()));
      for (auto [i, j] : edges) relation.set(i, j);
      if (closed) {
        kernels::make_reflexive(relation);
        kernels::transitive_closure(relation);
      }
    });
  }
};

Accessibility Accessibility::from_edges(std::vector<std::pair<CompositeState, CompositeState>> edges, bool close) {
  Accessibility a;
  a.impl_ = std::make_shared<Impl>();
  a.impl_->closed = close;
  auto node = [&](const CompositeState& x) {
    auto [it, inserted] = a.impl_->index.emplace(x, static_cast<int>(a.impl_->nodes.size()));
    if (inserted) a.impl_->nodes.push_back(x);
    return it->second;
  };
  for (const auto& [x, y] : edges) {
    const int i = node(x);
    a.impl_->edges.emplace_back(i, node(y));
  }
  return a;
}

Accessibility Accessibility::from_oracle(Oracle oracle, bool scaling) {
  Accessibility a;
  a.impl_ = std::make_shared<Impl>();
  a.impl_->backend = Backend::Oracle;
  a.impl_->scaling = scaling;
  a.impl_->oracle = std::move(oracle);
  return a;
}

Backend Accessibility::backend() const { return impl_->backend; }
bool Accessibility::closed() const { return impl_->backend == Backend::Oracle || impl_->closed; }
bool Accessibility::supports_scaling() const { return impl_->scaling; }

bool Accessibility::supports_composition() const {
  if (impl_->backend == Backend::Oracle) return true;
  return std::any_of(impl_->nodes.begin(), impl_->nodes.end(),
                     [](const CompositeState& x) { return x.components().size() > 1; });
}

bool Accessibility::knows(const CompositeState& x) const {
  return impl_->backend == Backend::Oracle || impl_->index.count(x) > 0;
}

const std::vector<CompositeState>& Accessibility::nodes() const { return impl_->nodes; }

bool Accessibility::precedes(const CompositeState& x, const CompositeState& y) const {
  Impl& m = *impl_;
  if (m.backend == Backend::Edges) {
    if (m.closed && x == y) return true;
    auto ix = m.index.find(x);
    auto iy = m.index.find(y);
    if (ix == m.index.end() || iy == m.index.end()) return false;
    m.build();
    return m.relation.get(ix->second, iy->second);
  }
  auto key = std::pair{x, y};
  {
    std::lock_guard lock(m.mu);
    auto it = m.memo.find(key);
    if (it != m.memo.end() && !m.audit) return it->second;
  }
  const bool answer = m.oracle(x, y);
  std::lock_guard lock(m.mu);
  auto [it, inserted] = m.memo.emplace(std::move(key), answer);
  if (!inserted && it->second != answer)
    throw OracleNondeterminismError("accessibility oracle changed its answer for a memoized query");
  return it->second;
}

void Accessibility::set_audit(bool audit) {
  std::lock_guard lock(impl_->mu);
  impl_->audit = audit;
}

std::size_t Accessibility::memo_size() const {
  std::lock_guard lock(impl_->mu);
  return impl_->memo.size();
}

Accessibility entropy_oracle(EntropyFn entropy, bool scaling) {
  return Accessibility::from_oracle(
      [s = std::move(entropy)](const CompositeState& x, const CompositeState& y) { return s(x) <= s(y); }, scaling);
}

}  // namespace entropykit::order
