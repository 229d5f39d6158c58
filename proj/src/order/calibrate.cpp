#include <algorithm>
#include <set>

#include "entropykit/order.hpp"

namespace entropykit::order {

namespace {

using Row = std::vector<Rational>;  // coefficients, constant last

bool zero_coefs(const Row& r) {
  for (std::size_t k = 0; k + 1 < r.size(); ++k)
    if (sgn(r[k]) != 0) return false;
  return true;
}

/// Scales an inequality so that its first nonzero coefficient has magnitude 1.
Row normalized(Row r) {
  for (std::size_t k = 0; k + 1 < r.size(); ++k)
    if (sgn(r[k]) != 0) {
      const Rational s = abs(r[k]);
      for (auto& v : r) v /= s;
      break;
    }
  return r;
}

/// r + t * s
Row axpy(const Row& r, const Rational& t, const Row& s) {
  Row out = r;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += t * s[k];
  return out;
}

Rational value_of(const Row& r, const std::vector<Rational>& x, std::size_t skip) {
  Rational v = r.back();
  for (std::size_t k = 0; k + 1 < r.size(); ++k)
    if (k != skip && sgn(r[k]) != 0) v += r[k] * x[k];
  return v;
}

}  // namespace

std::optional<std::vector<Rational>> solve_linear(const std::vector<LinearConstraint>& constraints, int variables,
                                                  const std::vector<Rational>& preferred) {
  const std::size_t nv = static_cast<std::size_t>(variables);
  std::vector<Row> eqs, ineqs;
  for (const auto& c : constraints) {
    Row r(nv + 1, Rational(0));
    for (std::size_t k = 0; k < c.coef.size() && k < nv; ++k) r[k] = c.coef[k];
    r[nv] = c.constant;
    (c.equality ? eqs : ineqs).push_back(std::move(r));
  }

  // Gaussian elimination of equalities; pivots are solved for last.
  std::vector<std::pair<std::size_t, Row>> pivots;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    Row r = eqs[e];
    std::size_t p = nv;
    for (std::size_t k = 0; k < nv; ++k)
      if (sgn(r[k]) != 0) {
        p = k;
        break;
      }
    if (p == nv) {
      if (sgn(r[nv]) != 0) return std::nullopt;
      continue;
    }
    const Rational c = r[p];
    for (auto& v : r) v /= c;
    auto eliminate = [&](Row& other) {
      if (sgn(other[p]) != 0) other = axpy(other, Rational(-other[p]), r);
    };
    for (std::size_t f = e + 1; f < eqs.size(); ++f) eliminate(eqs[f]);
    for (auto& q : ineqs) eliminate(q);
    for (auto& [_, prev] : pivots) eliminate(prev);
    pivots.emplace_back(p, r);
  }
  std::vector<bool> pivot(nv, false);
  for (const auto& [p, _] : pivots) pivot[p] = true;

  // Fourier–Motzkin over the remaining variables; stages[v] holds the rows that bound v.
  std::vector<std::vector<Row>> stages(nv);
  std::vector<Row> current;
  {
    std::set<Row> seen;
    for (auto& r : ineqs)
      if (seen.insert(normalized(r)).second) current.push_back(normalized(r));
  }
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < nv; ++v)
    if (!pivot[v]) order.push_back(v);
  for (std::size_t v : order) {
    std::vector<Row> pos, neg, next;
    for (auto& r : current) {
      if (sgn(r[v]) > 0) pos.push_back(r);
      else if (sgn(r[v]) < 0) neg.push_back(r);
      else next.push_back(r);
    }
    stages[v] = pos;
    stages[v].insert(stages[v].end(), neg.begin(), neg.end());
    for (const auto& p : pos)
      for (const auto& q : neg) next.push_back(axpy(p, Rational(p[v] / -q[v]), q));
    std::set<Row> seen;
    current.clear();
    for (auto& r : next) {
      Row n = normalized(r);
      if (seen.insert(n).second) current.push_back(std::move(n));
    }
  }
  for (const auto& r : current)
    if (zero_coefs(r) && sgn(r.back()) < 0) return std::nullopt;

  std::vector<Rational> x(nv, Rational(0));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    std::optional<Rational> lo, hi;
    for (const auto& r : stages[v]) {
      // r[v] x_v + rest >= 0
      const Rational bound = -value_of(r, x, v) / r[v];
      if (sgn(r[v]) > 0) lo = lo ? std::max(*lo, bound) : bound;
      else hi = hi ? std::min(*hi, bound) : bound;
    }
    Rational want = v < preferred.size() ? preferred[v] : Rational(0);
    if (lo && want < *lo) want = *lo;
    if (hi && want > *hi) want = *hi;
    if (lo && hi && *lo > *hi) return std::nullopt;
    x[v] = want;
  }
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto& [p, r] = *it;
    x[p] = -value_of(r, x, p);
  }
  return x;
}

namespace {

/// Coefficients of S(x) in the variables (a_0..a_{k-1}, B_0..B_{k-1}).
Row glued_row(const CompositeState& x, const std::vector<EntropyFn>& entropies) {
  const std::size_t k = entropies.size();
  Row r(2 * k + 1, Rational(0));
  for (const auto& c : x.components()) {
    const auto s = entropies.at(static_cast<std::size_t>(c.ref.space)).value(c.ref);
    if (!s) throw InvalidArgumentError("entropy undefined on a calibration state");
    r[static_cast<std::size_t>(c.ref.space)] += c.scale * *s;
    r[k + static_cast<std::size_t>(c.ref.space)] += c.scale;
  }
  return r;
}

LinearConstraint to_linear(const CalibrationConstraint& c, const std::vector<EntropyFn>& entropies,
                           const Rational& margin) {
  const std::size_t k = entropies.size();
  LinearConstraint out;
  if (c.kind == CalibrationConstraint::Kind::Positive) {
    out.coef.assign(2 * k, Rational(0));
    out.coef[static_cast<std::size_t>(c.space)] = 1;
    out.constant = -margin;
    return out;
  }
  Row diff = glued_row(c.y, entropies);
  const Row rx = glued_row(c.x, entropies);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= rx[i];
  out.coef.assign(diff.begin(), diff.begin() + static_cast<long>(2 * k));
  if (c.kind == CalibrationConstraint::Kind::Equivalent) {
    out.equality = true;
  } else {
    out.constant = -margin;
  }
  return out;
}

std::optional<std::vector<Rational>> solve_calibration(const std::vector<CalibrationConstraint>& cs,
                                                       const std::vector<EntropyFn>& entropies,
                                                       const Rational& margin) {
  const std::size_t k = entropies.size();
  std::vector<LinearConstraint> lin;
  // Normalization a_0 = 1, B_0 = 0.
  LinearConstraint a0, b0;
  a0.coef.assign(2 * k, Rational(0));
  a0.coef[0] = 1;
  a0.constant = -1;
  a0.equality = true;
  b0.coef.assign(2 * k, Rational(0));
  b0.coef[k] = 1;
  b0.equality = true;
  lin.push_back(a0);
  lin.push_back(b0);
  for (const auto& c : cs) lin.push_back(to_linear(c, entropies, margin));
  std::vector<Rational> preferred(2 * k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) preferred[i] = 1;
  return solve_linear(lin, static_cast<int>(2 * k), preferred);
}

}  // namespace

Calibration calibrate(const std::vector<StateSpace>& spaces, const std::vector<EntropyFn>& entropies,
                      const Accessibility& cross, const CalibrationConfig& config) {
  if (spaces.size() != entropies.size()) throw InvalidArgumentError("one entropy per state space is required");
  if (spaces.empty()) throw InvalidArgumentError("calibration needs at least one state space");
  for (std::size_t i = 0; i < spaces.size(); ++i)
    if (!entropies[i].defined_on(spaces[i], static_cast<int>(i)))
      throw InvalidArgumentError("entropy is not defined on every state of " + spaces[i].label());

  std::vector<CompositeState> candidates;
  if (cross.backend() == Backend::Edges) {
    candidates = cross.nodes();
  } else {
    for (std::size_t s = 0; s < spaces.size(); ++s)
      for (int i = 0; i < spaces[s].size(); ++i) candidates.emplace_back(StateRef{static_cast<int>(s), i});
  }

  Calibration out;
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    CalibrationConstraint c;
    c.kind = CalibrationConstraint::Kind::Positive;
    c.space = static_cast<int>(s);
    out.constraints.push_back(c);
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      const auto r = derived_relation(cross, candidates[i], candidates[j]);
      CalibrationConstraint c;
      switch (r) {
        case Relation::Strict: c = {CalibrationConstraint::Kind::Strict, candidates[i], candidates[j], 0}; break;
        case Relation::Accessible: c = {CalibrationConstraint::Kind::Strict, candidates[j], candidates[i], 0}; break;
        case Relation::Equivalent: c = {CalibrationConstraint::Kind::Equivalent, candidates[i], candidates[j], 0}; break;
        case Relation::Incomparable: continue;
      }
      out.constraints.push_back(std::move(c));
    }

  auto solution = solve_calibration(out.constraints, entropies, config.margin);
  if (solution) {
    out.feasible = true;
    const std::size_t k = spaces.size();
    for (std::size_t s = 0; s < k; ++s) out.coefficients.emplace_back((*solution)[s], (*solution)[k + s]);
    return out;
  }

  // Deletion filter: drop every constraint whose removal keeps the system infeasible.
  std::vector<CalibrationConstraint> core = out.constraints;
  for (std::size_t i = 0; i < core.size();) {
    std::vector<CalibrationConstraint> trial = core;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (!solve_calibration(trial, entropies, config.margin)) core = std::move(trial);
    else ++i;
  }
  out.witness = std::move(core);
  return out;
}

Rational glued_entropy(const Calibration& c, const std::vector<EntropyFn>& entropies, const CompositeState& x) {
  Rational total(0);
  for (const auto& comp : x.components()) {
    const auto s = static_cast<std::size_t>(comp.ref.space);
    const auto v = entropies.at(s).value(comp.ref);
    if (!v) throw InvalidArgumentError("entropy undefined on a glued state");
    total += comp.scale * (c.coefficients.at(s).first * *v + c.coefficients.at(s).second);
  }
  return total;
}

}  // namespace entropykit::order
