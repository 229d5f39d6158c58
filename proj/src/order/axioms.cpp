#include <algorithm>
#include <unordered_set>

#include "entropykit/order.hpp"

namespace entropykit::order {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::Strict: return "STRICT";
    case Relation::Equivalent: return "EQUIVALENT";
    case Relation::Incomparable: return "INCOMPARABLE";
    case Relation::Accessible: return "ACCESSIBLE";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

const char* to_string(ConstructionStatus s) {
  switch (s) {
    case ConstructionStatus::Ok: return "OK";
    case ConstructionStatus::Impossible: return "CONSTRUCTION_IMPOSSIBLE";
    case ConstructionStatus::Degenerate: return "DEGENERATE";
  }
  return "?";
}

Relation derived_relation(const Accessibility& a, const CompositeState& x, const CompositeState& y) {
  const bool forward = a.precedes(x, y);
  const bool backward = a.precedes(y, x);
  if (forward && backward) return Relation::Equivalent;
  if (forward) return Relation::Strict;
  if (backward) return Relation::Accessible;
  return Relation::Incomparable;
}

bool AxiomReport::passed() const {
  return std::none_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.status == Status::Fail; });
}

const AxiomResult& AxiomReport::operator[](std::string_view name) const {
  for (const auto& r : axioms)
    if (r.name == name) return r;
  throw InvalidArgumentError("no axiom named '" + std::string(name) + "'");
}

bool EntropyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const EntropyCheck& c) { return c.status == Status::Fail; });
}

const EntropyCheck& EntropyReport::operator[](std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw InvalidArgumentError("no entropy check named '" + std::string(name) + "'");
}

namespace {

std::vector<CompositeState> singles(const std::vector<StateSpace>& spaces) {
  std::vector<CompositeState> out;
  for (std::size_t s = 0; s < spaces.size(); ++s)
    for (int i = 0; i < spaces[s].size(); ++i) out.emplace_back(StateRef{static_cast<int>(s), i});
  return out;
}

std::vector<CompositeState> singles(const std::vector<StateSpace>& spaces, int space) {
  std::vector<CompositeState> out;
  for (int i = 0; i < spaces.at(static_cast<std::size_t>(space)).size(); ++i)
    out.emplace_back(StateRef{space, i});
  return out;
}

/// Unordered pairs (x, y), x <= y in list order.
std::vector<CompositeState> pairs_of(const std::vector<CompositeState>& xs) {
  std::vector<CompositeState> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i; j < xs.size(); ++j) out.push_back(xs[i] + xs[j]);
  return out;
}

void append_unique(std::vector<CompositeState>& out, const std::vector<CompositeState>& more) {
  struct Hash {
    std::size_t operator()(const CompositeState& x) const { return hash_value(x); }
  };
  std::unordered_set<CompositeState, Hash> seen(out.begin(), out.end());
  for (const auto& x : more)
    if (seen.insert(x).second) out.push_back(x);
}

kernels::BitMatrix relation_matrix(const Accessibility& a, const std::vector<CompositeState>& xs, kernels::Mode mode) {
  kernels::BitMatrix m(static_cast<int>(xs.size()));
  kernels::fill(
      m, [&](int i, int j) { return a.precedes(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]); },
      mode);
  return m;
}

kernels::BitMatrix entropy_matrix(const EntropyFn& s, const std::vector<CompositeState>& xs, kernels::Mode mode) {
  std::vector<Rational> v;
  v.reserve(xs.size());
  for (const auto& x : xs) v.push_back(s(x));
  kernels::BitMatrix m(static_cast<int>(xs.size()));
  kernels::fill(m, [&](int i, int j) { return v[static_cast<std::size_t>(i)] <= v[static_cast<std::size_t>(j)]; },
                mode);
  return m;
}

bool scaling_applicable(const Accessibility& a, const std::vector<StateSpace>& spaces) {
  return a.supports_scaling() &&
         std::all_of(spaces.begin(), spaces.end(), [](const StateSpace& s) { return s.scalable(); });
}

std::vector<Rational> splitting_grid(const std::vector<Rational>& grid) {
  std::vector<Rational> out;
  for (const auto& l : grid)
    if (sgn(l) > 0 && l < 1) out.push_back(l);
  if (out.empty()) out.push_back(Rational(1, 2));
  return out;
}

AxiomResult not_applicable(std::string name, std::string label, std::string why) {
  AxiomResult r{std::move(name), std::move(label), Status::NotApplicable, false, {}, std::move(why)};
  return r;
}

}  // namespace

AxiomReport check_axioms(const Accessibility& a, const std::vector<StateSpace>& spaces, const AxiomConfig& config) {
  const auto units = singles(spaces);
  const bool scaled = scaling_applicable(a, spaces);

  // Composites every check draws from: base states, then pairs, then scaled states.
  std::vector<CompositeState> probe = units;
  if (a.backend() == Backend::Oracle) {
    append_unique(probe, pairs_of(units));
  } else {
    append_unique(probe, a.nodes());
  }
  const std::size_t unscaled = probe.size();
  if (scaled)
    for (const auto& l : config.lambda_grid)
      if (l != 1) {
        std::vector<CompositeState> more;
        for (const auto& u : units) more.push_back(u.scaled(l));
        append_unique(probe, more);
      }

  const auto rel = relation_matrix(a, probe, config.mode);
  auto at = [&](std::size_t i) -> const CompositeState& { return probe[i]; };
  AxiomReport report;

  {
    AxiomResult r{"reflexivity", "Monotonicity: X ∼ X", Status::Pass, false, {}, ""};
    r.detail = "read as reflexivity X ≺ X; checked on " + std::to_string(probe.size()) + " composites";
    for (std::size_t i = 0; i < probe.size(); ++i)
      if (!rel.get(static_cast<int>(i), static_cast<int>(i))) {
        r.status = Status::Fail;
        r.witness = {at(i)};
        break;
      }
    report.axioms.push_back(std::move(r));
  }
  {
    AxiomResult r{"transitivity", "Transitivity: If X ≺ Y and Y ≺ Z then X ≺ Z", Status::Pass, false, {}, ""};
    if (auto v = kernels::transitivity_violation(rel, config.mode)) {
      r.status = Status::Fail;
      for (int k : *v) r.witness.push_back(at(static_cast<std::size_t>(k)));
    }
    report.axioms.push_back(std::move(r));
  }
  {
    const std::string label = "Consistency: X ≺ X′ and Y ≺ Y′ implies (X,Y) ≺ (X′,Y′)";
    std::vector<CompositeState> doubles;
    for (std::size_t i = 0; i < unscaled; ++i)
      if (at(i).components().size() == 2) doubles.push_back(at(i));
    if (doubles.empty()) {
      report.axioms.push_back(not_applicable("consistency", label, "relation has no two-component states"));
    } else {
      AxiomResult r{"consistency", label, Status::Pass, false, {}, ""};
      auto part = [](const CompositeState& x, int k) {
        const auto& c = x.components()[static_cast<std::size_t>(k)];
        return CompositeState(c.ref, c.scale);
      };
      for (const auto& p : doubles) {
        for (const auto& q : doubles) {
          const bool premise = (a.precedes(part(p, 0), part(q, 0)) && a.precedes(part(p, 1), part(q, 1))) ||
                               (a.precedes(part(p, 0), part(q, 1)) && a.precedes(part(p, 1), part(q, 0)));
          if (premise && !a.precedes(p, q)) {
            r.status = Status::Fail;
            r.witness = {p, q};
            break;
          }
        }
        if (r.status == Status::Fail) break;
      }
      report.axioms.push_back(std::move(r));
    }
  }

  const std::string scaling_label = "Scaling invariance: λ > 0 and X ≺ Y implies λX ≺ λY";
  const std::string splitting_label = "Splitting recombination: X ∼ (λX,(1−λ) X)";
  const std::string stability_label = "Stability: If (X,εZ) ≺ (Y, εZ′) then X ≺ Y for ε → 0⁺";
  if (!scaled) {
    const std::string why = "relation or state space does not support scaled composites";
    report.axioms.push_back(not_applicable("scaling", scaling_label, why));
    report.axioms.push_back(not_applicable("splitting", splitting_label, why));
    report.axioms.push_back(not_applicable("stability", stability_label, why));
    return report;
  }

  {
    AxiomResult r{"scaling", scaling_label, Status::Pass, false, {}, ""};
    for (std::size_t i = 0; i < unscaled && r.status == Status::Pass; ++i)
      for (std::size_t j = 0; j < unscaled && r.status == Status::Pass; ++j) {
        if (!rel.get(static_cast<int>(i), static_cast<int>(j))) continue;
        for (const auto& l : config.lambda_grid)
          if (!a.precedes(at(i).scaled(l), at(j).scaled(l))) {
            r.status = Status::Fail;
            r.witness = {at(i), at(j), at(i).scaled(l), at(j).scaled(l)};
            r.detail = "λ = " + to_string(l);
            break;
          }
      }
    report.axioms.push_back(std::move(r));
  }
  {
    AxiomResult r{"splitting", splitting_label, Status::Pass, false, {}, ""};
    const auto grid = splitting_grid(config.lambda_grid);
    for (std::size_t i = 0; i < unscaled && r.status == Status::Pass; ++i)
      for (const auto& l : grid) {
        const CompositeState split = at(i).scaled(l) + at(i).scaled(Rational(1 - l));
        if (!a.precedes(at(i), split) || !a.precedes(split, at(i))) {
          r.status = Status::Fail;
          r.witness = {at(i), split};
          r.detail = "λ = " + to_string(l);
          break;
        }
      }
    report.axioms.push_back(std::move(r));
  }
  {
    AxiomResult r{"stability", stability_label, Status::Pass, true, {}, ""};
    r.detail = "ε ∈ {2^-1, …, 2^-" + std::to_string(config.eps_steps) + "}";
    const int n = static_cast<int>(units.size());
    for (int x = 0; x < n && r.status == Status::Pass; ++x)
      for (int y = 0; y < n && r.status == Status::Pass; ++y) {
        if (rel.get(x, y)) continue;
        for (int z = 0; z < n && r.status == Status::Pass; ++z)
          for (int w = 0; w < n; ++w) {
            bool premise = true;
            Rational eps(1, 2);
            for (int k = 0; k < config.eps_steps && premise; ++k, eps /= 2)
              premise = a.precedes(units[static_cast<std::size_t>(x)] + units[static_cast<std::size_t>(z)].scaled(eps),
                                   units[static_cast<std::size_t>(y)] + units[static_cast<std::size_t>(w)].scaled(eps));
            if (premise) {
              r.status = Status::Fail;
              r.witness = {units[static_cast<std::size_t>(x)], units[static_cast<std::size_t>(y)],
                           units[static_cast<std::size_t>(z)], units[static_cast<std::size_t>(w)]};
              break;
            }
          }
      }
    report.axioms.push_back(std::move(r));
  }
  return report;
}

ComparisonReport comparison_hypothesis(const Accessibility& a, const std::vector<StateSpace>& spaces, int space) {
  const auto xs = singles(spaces, space);
  const auto rel = relation_matrix(a, xs, kernels::default_mode());
  ComparisonReport out;
  for (int i = 0; i < rel.size(); ++i)
    for (int j = i + 1; j < rel.size(); ++j)
      if (!rel.get(i, j) && !rel.get(j, i)) {
        out.total = false;
        out.incomparable.emplace_back(StateRef{space, i}, StateRef{space, j});
      }
  return out;
}

// ---------------------------------------------------------------- construction

namespace {

/// ((1-λ) X0, λ X1), collapsing the endpoints to a single state.
CompositeState mixture(const CompositeState& low, const CompositeState& high, const Rational& lambda) {
  if (sgn(lambda) == 0) return low;
  if (lambda == 1) return high;
  return low.scaled(Rational(1 - lambda)) + high.scaled(lambda);
}

struct Fraction {
  mpz_class p, q;
  Rational value() const { return Rational(p, q); }
};

Fraction add(const Fraction& a, const Fraction& b, const mpz_class& j = 1) { return {a.p + j * b.p, a.q + j * b.q}; }

/// Exact sup{λ : mixture(λ) ≺ x} by a galloping Stern–Brocot search. Needs the supremum to be
/// attained and rational, in which case it is the unique λ with mixture(λ) ∼ x.
std::optional<Rational> exact_supremum(const std::function<bool(const Rational&)>& below,
                                       const std::function<bool(const Rational&)>& above, int budget) {
  int used = 0;
  auto P = [&](const Fraction& f) {
    ++used;
    return below(f.value());
  };
  auto Q = [&](const Fraction& f) {
    ++used;
    return above(f.value());
  };
  Fraction lo{0, 1}, hi{1, 1};
  if (Q(lo)) return Rational(0);
  if (P(hi)) return Rational(1);
  const mpz_class cap = mpz_class(1) << 48;
  while (used < budget) {
    Fraction mid = add(lo, hi);
    if (P(mid)) {
      // Largest j with lo + j*hi still below.
      mpz_class good = 1, bad = 2;
      while (bad < cap && P(add(lo, hi, bad)) && used < budget) {
        good = bad;
        bad *= 2;
      }
      if (bad >= cap) return std::nullopt;
      while (bad - good > 1 && used < budget) {
        mpz_class m = (good + bad) / 2;
        (P(add(lo, hi, m)) ? good : bad) = m;
      }
      Fraction at = add(lo, hi, good);
      if (Q(at)) return at.value();
      Fraction next = add(lo, hi, good + 1);
      lo = at;
      hi = next;
    } else {
      // Largest j with j*lo + hi still above.
      auto point = [&](const mpz_class& j) { return add(hi, lo, j); };
      mpz_class good = 1, bad = 2;
      while (bad < cap && !P(point(bad)) && used < budget) {
        good = bad;
        bad *= 2;
      }
      if (bad >= cap) return std::nullopt;
      while (bad - good > 1 && used < budget) {
        mpz_class m = (good + bad) / 2;
        (!P(point(m)) ? good : bad) = m;
      }
      Fraction first_below = point(good + 1);
      if (P(first_below) && Q(first_below)) return first_below.value();
      hi = point(good);
      lo = first_below;
    }
  }
  return std::nullopt;
}

}  // namespace

Construction construct_entropy(const Accessibility& a, const std::vector<StateSpace>& spaces, int space,
                               const ConstructionConfig& config) {
  const auto xs = singles(spaces, space);
  const auto rel = relation_matrix(a, xs, config.axioms.mode);
  Construction out;
  const int n = rel.size();

  for (int i = 0; i < n; ++i)
    if (!rel.get(i, i)) {
      out.status = ConstructionStatus::Impossible;
      out.witness = {xs[static_cast<std::size_t>(i)]};
      out.detail = "reflexivity fails";
      return out;
    }
  if (auto v = kernels::transitivity_violation(rel, config.axioms.mode)) {
    out.status = ConstructionStatus::Impossible;
    for (int k : *v) out.witness.push_back(xs[static_cast<std::size_t>(k)]);
    out.detail = "transitivity fails";
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!rel.get(i, j) && !rel.get(j, i)) {
        out.status = ConstructionStatus::Impossible;
        out.witness = {xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]};
        out.detail = "comparison hypothesis fails";
        return out;
      }

  // Rank of each ∼-class in the chain of classes.
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> below;
    for (int j = 0; j < n; ++j)
      if (rel.get(j, i) && !rel.get(i, j)) {
        int cls = j;
        for (int k = 0; k < n; ++k)
          if (rel.get(j, k) && rel.get(k, j)) {
            cls = k;
            break;
          }
        below.push_back(cls);
      }
    std::sort(below.begin(), below.end());
    rank[static_cast<std::size_t>(i)] = static_cast<int>(std::unique(below.begin(), below.end()) - below.begin());
  }

  const bool scaled = scaling_applicable(a, {spaces[static_cast<std::size_t>(space)]});
  if (!scaled) {
    out.method = "rank";
    for (int i = 0; i < n; ++i) out.entropy.set({space, i}, Rational(rank[static_cast<std::size_t>(i)]));
    return out;
  }

  out.method = "two-reference";
  if (n == 0) return out;
  const int lo = static_cast<int>(std::min_element(rank.begin(), rank.end()) - rank.begin());
  const int hi = static_cast<int>(std::max_element(rank.begin(), rank.end()) - rank.begin());
  out.low = StateRef{space, lo};
  out.high = StateRef{space, hi};
  if (rank[static_cast<std::size_t>(hi)] == 0) {
    out.status = ConstructionStatus::Degenerate;
    out.detail = "no strict pair X0 ≺≺ X1; entropy is constant";
    for (int i = 0; i < n; ++i) out.entropy.set({space, i}, Rational(0));
    return out;
  }

  const CompositeState& x0 = xs[static_cast<std::size_t>(lo)];
  const CompositeState& x1 = xs[static_cast<std::size_t>(hi)];
  const Rational steps_q = 1 / config.resolution;
  if (!is_integer(steps_q) || sgn(config.resolution) <= 0)
    throw InvalidArgumentError("λ grid resolution must be 1/m for a positive integer m");

  // Grid supremum by bisection over k*h, then exact refinement.
  auto grid_sup = [&](const CompositeState& x, const Rational& h) -> Rational {
    mpz_class good = 0, bad = mpz_class(Rational(1 / h).get_num()) + 1;
    while (bad - good > 1) {
      mpz_class m = (good + bad) / 2;
      (a.precedes(mixture(x0, x1, Rational(m) * h), x) ? good : bad) = m;
    }
    return Rational(Rational(good) * h);
  };
  std::vector<Rational> exact;
  bool all_exact = true;
  for (int i = 0; i < n && all_exact; ++i) {
    const auto& x = xs[static_cast<std::size_t>(i)];
    auto v = exact_supremum([&](const Rational& l) { return a.precedes(mixture(x0, x1, l), x); },
                            [&](const Rational& l) { return a.precedes(x, mixture(x0, x1, l)); },
                            config.refine_budget);
    if (!v) all_exact = false;
    else exact.push_back(*v);
  }
  if (all_exact) {
    for (int i = 0; i < n; ++i) out.entropy.set({space, i}, exact[static_cast<std::size_t>(i)]);
    return out;
  }

  // Uniform grid, halved until the grid values separate every strict pair.
  Rational h = config.resolution;
  for (int round = 0; round < 40; ++round, h /= 2) {
    EntropyFn s;
    for (int i = 0; i < n; ++i) s.set({space, i}, grid_sup(xs[static_cast<std::size_t>(i)], h));
    if (!kernels::first_disagreement(rel, entropy_matrix(s, xs, config.axioms.mode), config.axioms.mode)) {
      out.entropy = std::move(s);
      out.resolution = h;
      return out;
    }
  }
  out.status = ConstructionStatus::Impossible;
  out.detail = "λ grid could not separate the strict pairs";
  return out;
}

// ---------------------------------------------------------------- verification

namespace {

EntropyCheck compare_orders(std::string name, const EntropyFn& s, const Accessibility& a,
                            const std::vector<CompositeState>& xs, kernels::Mode mode) {
  EntropyCheck c{std::move(name), Status::Pass, {}, "", ""};
  const auto rel = relation_matrix(a, xs, mode);
  const auto ord = entropy_matrix(s, xs, mode);
  if (auto d = kernels::first_disagreement(rel, ord, mode)) {
    c.status = Status::Fail;
    c.witness = {xs[static_cast<std::size_t>(d->first)], xs[static_cast<std::size_t>(d->second)]};
    c.direction = rel.get(d->first, d->second) ? "⇒" : "⇐";
  }
  return c;
}

}  // namespace

EntropyReport verify_entropy(const EntropyFn& s, const Accessibility& a, const std::vector<StateSpace>& spaces,
                             const AxiomConfig& config) {
  EntropyReport report;
  for (std::size_t k = 0; k < spaces.size(); ++k)
    if (!s.defined_on(spaces[k], static_cast<int>(k)))
      throw InvalidArgumentError("entropy is not defined on every state of " + spaces[k].label());

  EntropyCheck mono{"monotonicity", Status::Pass, {}, "", ""};
  for (std::size_t k = 0; k < spaces.size() && mono.status == Status::Pass; ++k)
    mono = compare_orders("monotonicity", s, a, singles(spaces, static_cast<int>(k)), config.mode);
  mono.detail = "X ≺ Y ⇔ S(X) ≤ S(Y) over all state pairs of each space";
  report.checks.push_back(std::move(mono));

  if (!a.supports_composition()) {
    report.checks.push_back({"additivity", Status::NotApplicable, {}, "", "relation has no compound states"});
  } else {
    std::vector<CompositeState> compounds;
    if (a.backend() == Backend::Oracle) {
      for (std::size_t k = 0; k < spaces.size(); ++k) append_unique(compounds, pairs_of(singles(spaces, static_cast<int>(k))));
    } else {
      for (const auto& x : a.nodes())
        if (x.components().size() > 1) compounds.push_back(x);
    }
    auto c = compare_orders("additivity", s, a, compounds, config.mode);
    c.detail = "(X,Y) ≺ (X′,Y′) ⇔ S(X)+S(Y) ≤ S(X′)+S(Y′) on " + std::to_string(compounds.size()) + " compounds";
    report.checks.push_back(std::move(c));
  }

  if (!scaling_applicable(a, spaces)) {
    report.checks.push_back(
        {"extensivity", Status::NotApplicable, {}, "", "relation or state space does not support scaled composites"});
    return report;
  }
  EntropyCheck ext{"extensivity", Status::Pass, {}, "", ""};
  for (std::size_t k = 0; k < spaces.size() && ext.status == Status::Pass; ++k) {
    const auto xs = singles(spaces, static_cast<int>(k));
    for (const auto& l : config.lambda_grid) {
      std::vector<CompositeState> scaled;
      for (const auto& x : xs) scaled.push_back(x.scaled(l));
      ext = compare_orders("extensivity", s, a, scaled, config.mode);
      if (ext.status == Status::Fail) break;
    }
    if (ext.status == Status::Fail) break;
    for (const auto& l : splitting_grid(config.lambda_grid)) {
      std::vector<CompositeState> mixed = xs;
      for (const auto& x : xs)
        for (const auto& y : xs) mixed.push_back(x.scaled(l) + y.scaled(Rational(1 - l)));
      ext = compare_orders("extensivity", s, a, mixed, config.mode);
      if (ext.status == Status::Fail) break;
    }
  }
  ext.detail = "λX ≺ λY ⇔ λS(X) ≤ λS(Y) and mixtures (λX,(1−λ)Y) against states, λ on the grid";
  report.checks.push_back(std::move(ext));
  return report;
}

}  // namespace entropykit::order
