#include <algorithm>
#include <cmath>

#include "entropykit/error.hpp"
#include "entropykit/quadrature.hpp"
#include "entropykit/thermo.hpp"

namespace entropykit::thermo {

const Chart& parameter_chart() {
  static const Chart chart({"t"});
  return chart;
}

ProcessPath make_path(const ThermoChart& chart, const std::vector<std::vector<Expr>>& segments, bool closed) {
  if (segments.empty()) throw InvalidArgumentError("a path needs at least one segment");
  ProcessPath path;
  path.closed = closed;
  for (const auto& comps : segments) {
    for (const Expr& c : comps)
      for (const auto& s : free_symbols(c))
        if (chart.full_chart().contains(s))
          throw InvalidArgumentError("path components are functions of t, found coordinate " + s);
    path.segments.emplace_back(parameter_chart(), chart.extensive_chart(), comps);
  }
  return path;
}

namespace {

Expr at(const Expr& e, long t) { return substitute(e, Substitution{{"t", Expr(t)}}); }

Substitution param_substitution(const ParamValues& values) {
  Substitution sub;
  for (const auto& [name, v] : values) sub.emplace(name, Expr(v));
  return sub;
}

/// Segment maps [t] -> full chart with parameters replaced by their values.
std::vector<SmoothMap> lift(const ProcessPath& path, const ThermoSystem& system) {
  const Substitution params = param_substitution(system.values);
  SmoothMap phi = inclusion(system.spec, system.chart);
  std::vector<Expr> comps;
  for (const Expr& c : phi.components()) comps.push_back(substitute(c, params));
  phi = SmoothMap(phi.source(), phi.target(), std::move(comps));
  std::vector<SmoothMap> out;
  for (const auto& seg : path.segments) {
    if (seg.target() != system.chart.extensive_chart())
      throw ChartMismatchError("path segment does not live in the extensive coordinates " +
                               to_string(system.chart.extensive_chart()));
    std::vector<Expr> sc;
    for (const Expr& c : seg.components()) sc.push_back(substitute(c, params));
    out.push_back(compose(phi, SmoothMap(seg.source(), seg.target(), std::move(sc))));
  }
  return out;
}

Expr pulled(const DifferentialForm& form, const SmoothMap& segment, const ParamValues& values) {
  auto p = pullback(segment, form);
  return substitute(p.coefficient(IndexTuple{0}), param_substitution(values));
}

double value_at(const Expr& e, double t) { return evaluate(e, {{"t", t}}); }

double sample_t(int k, int samples) { return samples <= 1 ? 0.0 : static_cast<double>(k) / (samples - 1); }

PathIntegral integrate_lifted(const DifferentialForm& form, const std::vector<SmoothMap>& lifted,
                              const ParamValues& values) {
  PathIntegral out;
  for (const auto& seg : lifted) {
    Expr integrand = pulled(form, seg, values);
    SegmentIntegral si;
    if (!integrand.is_zero()) {
      auto q = integrate([&](double t) { return value_at(integrand, t); }, 0.0, 1.0);
      si.value = q.value;
      si.abserr = q.abserr;
      si.converged = q.converged;
    }
    out.value += si.value;
    out.abserr += si.abserr;
    out.converged = out.converged && si.converged;
    out.segments.push_back(si);
  }
  return out;
}

}  // namespace

PathCheck check_path(const ProcessPath& path, const SamplingConfig& config) {
  PathCheck check;
  const auto& segs = path.segments;
  auto meets = [&](const SmoothMap& a, const SmoothMap& b) {
    for (std::size_t k = 0; k < a.components().size(); ++k)
      if (!zero_like(is_zero(at(a.components()[k], 1) - at(b.components()[k], 0), config).certainty)) return false;
    return true;
  };
  for (std::size_t k = 0; k + 1 < segs.size(); ++k)
    if (!meets(segs[k], segs[k + 1])) {
      check.continuous = false;
      check.gap_after = static_cast<int>(k);
      break;
    }
  check.closes = meets(segs.back(), segs.front());
  return check;
}

PathIntegral path_integral(const DifferentialForm& form, const ProcessPath& path, const ThermoSystem& system) {
  if (form.degree() != 1) throw InvalidArgumentError("path integrals need a 1-form");
  if (form.chart() != system.chart.full_chart())
    throw ChartMismatchError("form lives on " + to_string(form.chart()) + ", expected " +
                             to_string(system.chart.full_chart()));
  return integrate_lifted(form, lift(path, system), system.values);
}

FirstLawBalance first_law_balance(const ProcessPath& path, const ThermoSystem& system) {
  auto lifted = lift(path, system);
  const auto& chart = system.chart;
  FirstLawBalance b;
  b.dU = integrate_lifted(DifferentialForm::basis(chart.full_chart(), chart.energy()), lifted, system.values);
  b.Q = integrate_lifted(heat_form(chart), lifted, system.values);
  b.W = integrate_lifted(work_form(chart), lifted, system.values);
  b.endpoint_dU = value_at(lifted.back().components()[0], 1.0) - value_at(lifted.front().components()[0], 0.0);
  b.residual = b.dU.value - (b.Q.value - b.W.value);
  return b;
}

double pulled_coefficient(const DifferentialForm& form, const ProcessPath& path, int segment, double t,
                          const ThermoSystem& system) {
  auto lifted = lift(path, system);
  return value_at(pulled(form, lifted.at(static_cast<std::size_t>(segment)), system.values), t);
}

CycleReport cycle_audit(const ProcessPath& cycle, const ThermoSystem& system, const AuditConfig& audit,
                        const SamplingConfig& config) {
  auto shape = check_path(cycle, config);
  if (!shape.continuous)
    throw InvalidArgumentError("path is not continuous after segment " + std::to_string(*shape.gap_after));
  if (!shape.closes) throw InvalidArgumentError("path is not closed");

  auto lifted = lift(cycle, system);
  const auto& chart = system.chart;
  CycleReport r;
  const auto q = heat_form(chart);
  r.heat = integrate_lifted(q, lifted, system.values);
  r.work = integrate_lifted(work_form(chart), lifted, system.values);
  r.energy = integrate_lifted(DifferentialForm::basis(chart.full_chart(), chart.energy()), lifted, system.values);
  r.balance = std::fabs(r.heat.value - r.work.value);
  r.balance_ok = r.balance < audit.balance_tol;

  r.heat_nonnegative = true;
  for (const auto& seg : lifted) {
    Expr qt = pulled(q, seg, system.values);
    SegmentAudit s;
    s.min_q = s.max_q = value_at(qt, 0.0);
    for (int k = 0; k < audit.samples_per_segment; ++k) {
      double v = value_at(qt, sample_t(k, audit.samples_per_segment));
      s.min_q = std::min(s.min_q, v);
      s.max_q = std::max(s.max_q, v);
    }
    s.adiabatic = std::max(std::fabs(s.min_q), std::fabs(s.max_q)) <= audit.adiabatic_tol;
    if (s.min_q < -audit.adiabatic_tol) r.heat_nonnegative = false;
    r.segments.push_back(s);
  }
  r.kelvin_violation = r.heat_nonnegative && r.work.value > audit.work_tol;
  if (!r.heat.converged || !r.work.converged || !r.energy.converged)
    r.notes.push_back("quadrature did not reach the requested tolerance on some segment");
  return r;
}

const char* to_string(EntropyTrend t) {
  switch (t) {
    case EntropyTrend::QuasiStaticAdiabatic: return "QUASI_STATIC_ADIABATIC";
    case EntropyTrend::LeafViolation: return "LEAF_VIOLATION";
    case EntropyTrend::Constant: return "CONSTANT";
    case EntropyTrend::StrictlyIncreasing: return "STRICTLY_INCREASING";
    case EntropyTrend::StrictlyDecreasing: return "STRICTLY_DECREASING";
    case EntropyTrend::NonMonotone: return "NON_MONOTONE";
  }
  return "?";
}

AdiabaticReport adiabatic_entropy_check(const ProcessPath& path, const ThermoSystem& system,
                                        const IntegratingFactorCertificate& certificate, const AuditConfig& audit) {
  const Chart& full = system.chart.full_chart();
  const Chart& cert_chart = certificate.heat_form().chart();
  for (const auto& name : cert_chart.names())
    if (!full.contains(name))
      throw InvalidArgumentError("certificate coordinate '" + name + "' is not a coordinate of " + to_string(full));

  auto lifted = lift(path, system);
  const Substitution params = param_substitution(system.values);
  const auto q = heat_form(system.chart);
  const Expr s_expr = substitute(certificate.entropy(), params);

  AdiabaticReport r;
  r.notes.push_back("only quasi-static paths are checked; non-quasi-static adiabatic processes have no path");
  std::vector<double> heat;
  for (std::size_t k = 0; k < lifted.size(); ++k) {
    const auto& seg = lifted[k];
    // Path as a map into the certificate's chart.
    std::vector<Expr> comps;
    for (const auto& name : cert_chart.names()) comps.push_back(seg.component(name));
    SmoothMap into_cert(seg.source(), cert_chart, comps);
    Expr cert_q = substitute(pullback(into_cert, certificate.heat_form()).coefficient(IndexTuple{0}), params);
    Expr chart_q = pulled(q, seg, system.values);
    Expr s_t = substitute(s_expr, into_cert.as_substitution());
    for (int i = (k == 0 ? 0 : 1); i < audit.samples_per_segment; ++i) {
      const double t = sample_t(i, audit.samples_per_segment);
      const double qv = value_at(chart_q, t);
      const double cv = value_at(cert_q, t);
      if (std::fabs(qv - cv) > audit.adiabatic_tol * std::max(1.0, std::fabs(qv)))
        throw InvalidArgumentError("certified heat form disagrees with the chart's Q along the path (segment " +
                                   std::to_string(k) + ")");
      heat.push_back(qv);
      r.entropy_samples.push_back(value_at(s_t, t));
    }
  }
  for (double v : heat) r.max_abs_q = std::max(r.max_abs_q, std::fabs(v));
  r.heat_vanishes = r.max_abs_q <= audit.adiabatic_tol;
  const double s0 = r.entropy_samples.front();
  for (double s : r.entropy_samples) r.max_entropy_drift = std::max(r.max_entropy_drift, std::fabs(s - s0));

  if (r.heat_vanishes) {
    r.trend = r.max_entropy_drift < audit.adiabatic_tol ? EntropyTrend::QuasiStaticAdiabatic : EntropyTrend::LeafViolation;
    return r;
  }
  bool all_up = true, all_down = true, all_flat = true;
  for (std::size_t i = 1; i < r.entropy_samples.size(); ++i) {
    const double d = r.entropy_samples[i] - r.entropy_samples[i - 1];
    if (!(d > 0)) all_up = false;
    if (!(d < 0)) all_down = false;
    if (std::fabs(d) > audit.adiabatic_tol) all_flat = false;
  }
  if (all_flat) {
    r.trend = EntropyTrend::Constant;
  } else if (all_up) {
    r.trend = EntropyTrend::StrictlyIncreasing;
    r.transversal = true;
  } else if (all_down) {
    r.trend = EntropyTrend::StrictlyDecreasing;
    r.transversal = true;
  } else {
    r.trend = EntropyTrend::NonMonotone;
    const bool rising = r.entropy_samples.back() >= s0;
    for (std::size_t i = 1; i < r.entropy_samples.size(); ++i) {
      const double d = r.entropy_samples[i] - r.entropy_samples[i - 1];
      if (rising ? !(d > 0) : !(d < 0))
        r.violations.emplace_back(static_cast<int>(i), r.entropy_samples[i - 1], r.entropy_samples[i]);
    }
  }
  return r;
}

}  // namespace entropykit::thermo
