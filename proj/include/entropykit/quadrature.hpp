#pragma once

#include <cstddef>
#include <functional>

namespace entropykit {

struct QuadratureConfig {
  double epsabs = 1e-10;
  double epsrel = 0.0;
  std::size_t limit = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double abserr = 0.0;
  bool converged = true;
};

/// Adaptive 21-point Gauss–Kronrod integration of f over [a, b] (GSL qag).
/// Exceptions thrown by f propagate; non-convergence is reported, not thrown.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config = {});

}  // namespace entropykit
