#include "entropykit/forms.hpp"

#include <algorithm>
#include <cmath>

#include "entropykit/error.hpp"

namespace entropykit {

namespace {

void require_same_chart(const DifferentialForm& a, const DifferentialForm& b, const char* op) {
  if (a.chart() != b.chart())
    throw ChartMismatchError(std::string(op) + ": forms live on different charts " + to_string(a.chart()) + " and " +
                             to_string(b.chart()));
}

/// Sorts indices in place; returns the permutation sign, or 0 if an index repeats.
int sort_with_sign(IndexTuple& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return sign;
}

void accumulate(std::map<IndexTuple, Expr>& coeffs, const IndexTuple& idx, const Expr& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs.erase(it);
  }
}

Certainty combine(Certainty a, Certainty b) {
  if (a == Certainty::CertainNonzero || b == Certainty::CertainNonzero) return Certainty::CertainNonzero;
  if (a == Certainty::ProbablyZero || b == Certainty::ProbablyZero) return Certainty::ProbablyZero;
  return Certainty::CertainZero;
}

}  // namespace

DifferentialForm::DifferentialForm(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0) throw InvalidArgumentError("negative form degree");
}

DifferentialForm DifferentialForm::scalar(Chart chart, Expr value) {
  DifferentialForm f(std::move(chart), 0);
  f.add_term(IndexTuple{}, value);
  return f;
}

DifferentialForm DifferentialForm::basis(Chart chart, std::string_view name) {
  auto idx = chart.index_of(name);
  if (!idx) throw ChartMismatchError("coordinate '" + std::string(name) + "' is not in chart " + to_string(chart));
  DifferentialForm f(std::move(chart), 1);
  f.add_term(IndexTuple{*idx}, Expr(1L));
  return f;
}

DifferentialForm DifferentialForm::exact(Chart chart, const Expr& f) {
  return exterior_derivative(scalar(std::move(chart), f));
}

Expr DifferentialForm::coefficient(const IndexTuple& indices) const {
  IndexTuple sorted = indices;
  int sign = sort_with_sign(sorted);
  if (sign == 0) return Expr();
  auto it = coeffs_.find(sorted);
  if (it == coeffs_.end()) return Expr();
  return sign > 0 ? it->second : -it->second;
}

Expr DifferentialForm::coefficient(const std::vector<std::string>& names) const {
  IndexTuple idx;
  for (const auto& n : names) {
    auto i = chart_.index_of(n);
    if (!i) throw ChartMismatchError("coordinate '" + n + "' is not in chart " + to_string(chart_));
    idx.push_back(*i);
  }
  return coefficient(idx);
}

void DifferentialForm::add_term(IndexTuple indices, const Expr& c) {
  if (static_cast<int>(indices.size()) != degree_)
    throw InvalidArgumentError("basis element of degree " + std::to_string(indices.size()) + " added to a " +
                               std::to_string(degree_) + "-form");
  for (int i : indices)
    if (i < 0 || i >= chart_.dimension()) throw InvalidArgumentError("basis index out of range");
  int sign = sort_with_sign(indices);
  if (sign == 0) return;
  accumulate(coeffs_, indices, sign > 0 ? c : -c);
}

void DifferentialForm::add_term(const std::vector<std::string>& names, const Expr& c) {
  IndexTuple idx;
  for (const auto& n : names) {
    auto i = chart_.index_of(n);
    if (!i) throw ChartMismatchError("coordinate '" + n + "' is not in chart " + to_string(chart_));
    idx.push_back(*i);
  }
  add_term(std::move(idx), c);
}

DifferentialForm operator+(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a, b, "sum");
  if (a.degree_ != b.degree_) throw InvalidArgumentError("sum of forms of different degree");
  DifferentialForm out = a;
  for (const auto& [idx, c] : b.coeffs_) accumulate(out.coeffs_, idx, c);
  return out;
}

DifferentialForm operator-(const DifferentialForm& a) {
  DifferentialForm out = a;
  for (auto& [idx, c] : out.coeffs_) c = -c;
  return out;
}

DifferentialForm operator-(const DifferentialForm& a, const DifferentialForm& b) { return a + (-b); }

DifferentialForm operator*(const Expr& f, const DifferentialForm& a) {
  DifferentialForm out(a.chart_, a.degree_);
  if (f.is_zero()) return out;
  for (const auto& [idx, c] : a.coeffs_) accumulate(out.coeffs_, idx, f * c);
  return out;
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  require_same_chart(a, b, "wedge");
  DifferentialForm out(a.chart(), a.degree() + b.degree());
  if (out.degree() > a.chart().dimension()) return out;
  for (const auto& [ia, ca] : a.coefficients())
    for (const auto& [ib, cb] : b.coefficients()) {
      IndexTuple merged;
      merged.reserve(ia.size() + ib.size());
      int inversions = 0;
      bool repeated = false;
      std::size_t i = 0, j = 0;
      while (i < ia.size() || j < ib.size()) {
        if (j == ib.size() || (i < ia.size() && ia[i] < ib[j])) {
          merged.push_back(ia[i++]);
        } else if (i < ia.size() && ia[i] == ib[j]) {
          repeated = true;
          break;
        } else {
          // ib[j] jumps over the remaining elements of ia.
          inversions += static_cast<int>(ia.size() - i);
          merged.push_back(ib[j++]);
        }
      }
      if (repeated) continue;
      Expr c = ca * cb;
      out.add_term(merged, inversions % 2 ? -c : c);
    }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm out(a.chart(), a.degree() + 1);
  if (out.degree() > a.chart().dimension()) return out;
  const int dim = a.chart().dimension();
  for (const auto& [idx, c] : a.coefficients())
    for (int j = 0; j < dim; ++j) {
      if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
      Expr dc = differentiate(c, a.chart().name(j));
      if (dc.is_zero()) continue;
      IndexTuple merged{j};
      merged.insert(merged.end(), idx.begin(), idx.end());
      out.add_term(merged, dc);
    }
  return out;
}

std::string to_string(const DifferentialForm& form) {
  if (form.is_zero()) return "0";
  const Chart& chart = form.chart();
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : form.coefficients()) {
    std::string basis;
    for (std::size_t k = 0; k < idx.size(); ++k) basis += (k ? "∧d" : "d") + chart.name(idx[k]);
    bool negative = c.terms().size() == 1 && c.terms().front().coef < 0;
    Expr magnitude = negative ? -c : c;
    std::string coef;
    if (magnitude.terms().size() > 1)
      coef = "(" + to_string(magnitude, chart) + ")";
    else if (magnitude != Expr(1L))
      coef = to_string(magnitude, chart);
    std::string body = basis.empty() ? (coef.empty() ? "1" : coef) : (coef.empty() ? basis : coef + "*" + basis);
    if (first)
      out += negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

SmoothMap::SmoothMap(Chart source, Chart target, std::vector<Expr> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != target_.dimension())
    throw InvalidArgumentError("smooth map needs one component per target coordinate (" +
                               std::to_string(target_.dimension()) + "), got " + std::to_string(components_.size()));
}

const Expr& SmoothMap::component(std::string_view target_name) const {
  auto i = target_.index_of(target_name);
  if (!i) throw ChartMismatchError("'" + std::string(target_name) + "' is not a target coordinate");
  return components_[static_cast<std::size_t>(*i)];
}

Substitution SmoothMap::as_substitution() const {
  Substitution sub;
  for (int i = 0; i < target_.dimension(); ++i) sub.emplace(target_.name(i), components_[static_cast<std::size_t>(i)]);
  return sub;
}

SmoothMap identity_map(const Chart& chart) {
  std::vector<Expr> comps;
  for (const auto& n : chart.names()) comps.push_back(Expr::symbol(n));
  return SmoothMap(chart, chart, std::move(comps));
}

SmoothMap compose(const SmoothMap& g, const SmoothMap& f) {
  if (f.target() != g.source())
    throw ChartMismatchError("cannot compose: " + to_string(f.target()) + " vs " + to_string(g.source()));
  Substitution sub = f.as_substitution();
  std::vector<Expr> comps;
  for (const Expr& c : g.components()) comps.push_back(substitute(c, sub));
  return SmoothMap(f.source(), g.target(), std::move(comps));
}

DifferentialForm pullback(const SmoothMap& f, const DifferentialForm& form) {
  if (form.chart() != f.target())
    throw ChartMismatchError("pullback: form lives on " + to_string(form.chart()) + ", map targets " +
                             to_string(f.target()));
  const Chart& src = f.source();
  const Substitution sub = f.as_substitution();
  std::vector<std::optional<DifferentialForm>> differentials(static_cast<std::size_t>(f.target().dimension()));
  auto dF = [&](int i) -> const DifferentialForm& {
    auto& slot = differentials[static_cast<std::size_t>(i)];
    if (!slot) slot = DifferentialForm::exact(src, f.components()[static_cast<std::size_t>(i)]);
    return *slot;
  };
  DifferentialForm out(src, form.degree());
  for (const auto& [idx, c] : form.coefficients()) {
    DifferentialForm piece = DifferentialForm::scalar(src, substitute(c, sub));
    for (int i : idx) {
      piece = wedge(piece, dF(i));
      if (piece.is_zero()) break;
    }
    if (!piece.is_zero()) out = out + piece;
  }
  return out;
}

ZeroSummary form_is_zero(const DifferentialForm& form, const SamplingConfig& config) {
  ZeroSummary summary;
  for (const auto& [idx, c] : form.coefficients()) {
    ZeroResult r = is_zero(c, config);
    summary.certainty = combine(summary.certainty, r.certainty);
    if (r.certainty == Certainty::CertainNonzero) {
      summary.all_zero = false;
      summary.witness_index = idx;
      summary.witness = std::move(r);
      return summary;
    }
  }
  return summary;
}

FrobeniusVerdict frobenius_check(const DifferentialForm& q, const SamplingConfig& config) {
  if (q.degree() != 1) throw InvalidArgumentError("frobenius check needs a 1-form");
  FrobeniusVerdict v;
  v.q_wedge_dq = wedge(q, exterior_derivative(q));
  v.detail = form_is_zero(v.q_wedge_dq, config);
  v.integrable = v.detail.all_zero;
  v.certainty = v.detail.certainty;
  return v;
}

ContactVerdict contact_check(const DifferentialForm& theta, int n, const SamplingConfig& config) {
  if (theta.degree() != 1) throw InvalidArgumentError("contact check needs a 1-form");
  if (theta.chart().dimension() != 2 * n + 1)
    throw InvalidArgumentError("contact check with n=" + std::to_string(n) + " needs a " + std::to_string(2 * n + 1) +
                               "-dimensional chart, got " + std::to_string(theta.chart().dimension()));
  const DifferentialForm dtheta = exterior_derivative(theta);
  std::vector<DifferentialForm> powers{DifferentialForm::scalar(theta.chart(), Expr(1L))};
  for (int k = 1; k <= n; ++k) powers.push_back(wedge(powers.back(), dtheta));
  ContactVerdict v;
  v.top_form = wedge(theta, powers.back());
  IndexTuple top(static_cast<std::size_t>(2 * n + 1));
  for (int i = 0; i <= 2 * n; ++i) top[static_cast<std::size_t>(i)] = i;
  v.top_coefficient = v.top_form.coefficient(top);
  ZeroResult r = is_zero(v.top_coefficient, config);
  v.contact = r.certainty == Certainty::CertainNonzero;
  v.certainty = r.certainty;
  return v;
}

std::optional<std::string> darboux_canonical(const DifferentialForm& theta) {
  if (theta.degree() != 1) return std::nullopt;
  const Chart& chart = theta.chart();
  const int dim = chart.dimension();
  if (dim % 2 == 0) return std::nullopt;
  std::vector<int> uses(static_cast<std::size_t>(dim), 0);
  std::optional<std::string> energy;
  for (const auto& [idx, c] : theta.coefficients()) {
    const int i = idx.front();
    ++uses[static_cast<std::size_t>(i)];
    if (c == Expr(1L) && !energy) {
      energy = chart.name(i);
      continue;
    }
    if (c.terms().size() != 1) return std::nullopt;
    const Term& t = c.terms().front();
    if ((t.coef != 1 && t.coef != -1) || t.factors.size() != 1 || t.factors.front().exponent != 1 ||
        t.factors.front().base.kind != AtomKind::Symbol)
      return std::nullopt;
    auto j = chart.index_of(t.factors.front().base.name);
    if (!j) return std::nullopt;
    ++uses[static_cast<std::size_t>(*j)];
  }
  if (!energy) return std::nullopt;
  for (int u : uses)
    if (u != 1) return std::nullopt;
  return energy;
}

std::optional<std::map<std::string, Rational>> find_vanishing_sample(const Expr& e, const SamplingConfig& config) {
  Sampler sampler(config.seed ^ 0x7f4a7c159e3779b9ULL);
  if (e.is_zero()) return std::map<std::string, Rational>{};
  int accepted = 0;
  int failures = 0;
  for (std::uint64_t draw = 0; accepted < config.samples; ++draw) {
    double value = 0.0;
    try {
      value = sampler.evaluate(e, draw);
    } catch (const EvaluationError&) {
      if (++failures > config.max_retries) return sampler.point(e, draw);
      continue;
    }
    failures = 0;
    ++accepted;
    if (std::fabs(value) <= config.tolerance) return sampler.point(e, draw);
  }
  return std::nullopt;
}

const char* to_string(IntegratingFactorVerdict::Status s) {
  switch (s) {
    case IntegratingFactorVerdict::Status::Ok: return "OK";
    case IntegratingFactorVerdict::Status::Fail: return "FAIL";
    case IntegratingFactorVerdict::Status::SingularFactor: return "SINGULAR_FACTOR";
  }
  return "?";
}

IntegratingFactorVerdict verify_integrating_factor(const DifferentialForm& q, const Expr& T, const Expr& S,
                                                   const SamplingConfig& config) {
  if (q.degree() != 1) throw InvalidArgumentError("integrating-factor check needs a 1-form");
  IntegratingFactorVerdict v;
  v.residual = q - T * DifferentialForm::exact(q.chart(), S);
  if (auto point = find_vanishing_sample(T, config)) {
    v.status = IntegratingFactorVerdict::Status::SingularFactor;
    v.singular_point = std::move(point);
    return v;
  }
  v.detail = form_is_zero(v.residual, config);
  v.certainty = v.detail.certainty;
  if (v.detail.all_zero) {
    v.status = IntegratingFactorVerdict::Status::Ok;
    v.certificate = IntegratingFactorCertificate(q, T, S, v.certainty);
  }
  return v;
}

SymmetryVerdict contact_map_check(const SmoothMap& phi, const DifferentialForm& target_form,
                                  const DifferentialForm& source_form, const SamplingConfig& config) {
  if (source_form.degree() != 1 || target_form.degree() != 1)
    throw InvalidArgumentError("contact map check needs 1-forms");
  if (source_form.chart() != phi.source()) throw ChartMismatchError("source form does not live on the map's source");
  SymmetryVerdict v;
  v.pulled = pullback(phi, target_form);

  // Reference component: first coefficient of the source form that is not zero.
  std::optional<IndexTuple> ref;
  for (const auto& [idx, c] : source_form.coefficients())
    if (is_zero(c, config).certainty == Certainty::CertainNonzero) {
      ref = idx;
      break;
    }
  if (!ref) throw InvalidArgumentError("contact map check: the form is zero");

  const Expr w_ref = source_form.coefficient(*ref);
  const Expr p_ref = v.pulled.coefficient(*ref);
  v.certainty = Certainty::CertainZero;

  const int dim = phi.source().dimension();
  for (int j = 0; j < dim; ++j) {
    IndexTuple idx{j};
    Expr cross = v.pulled.coefficient(idx) * w_ref - p_ref * source_form.coefficient(idx);
    ZeroResult r = is_zero(cross, config);
    v.certainty = combine(v.certainty, r.certainty);
    if (r.certainty == Certainty::CertainNonzero) {
      v.symmetry = false;
      v.witness = std::make_pair(*ref, idx);
      return v;
    }
  }
  Expr lambda = p_ref / w_ref;
  if (find_vanishing_sample(lambda, config)) {
    v.symmetry = false;
    v.factor = lambda;
    return v;
  }
  v.symmetry = true;
  v.factor = lambda;
  return v;
}

SymmetryVerdict contact_symmetry_check(const SmoothMap& phi, const DifferentialForm& omega,
                                       const SamplingConfig& config) {
  if (phi.source() != omega.chart() || phi.target() != omega.chart())
    throw ChartMismatchError("contact symmetry must map " + to_string(omega.chart()) + " to itself");
  return contact_map_check(phi, omega, omega, config);
}

}  // namespace entropykit
