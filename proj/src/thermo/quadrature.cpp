#include "entropykit/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <exception>
#include <memory>

namespace entropykit {

namespace {

struct Closure {
  const std::function<double(double)>* f;
  std::exception_ptr error;
};

double trampoline(double x, void* data) {
  auto* closure = static_cast<Closure*>(data);
  if (closure->error) return 0.0;
  try {
    return (*closure->f)(x);
  } catch (...) {
    closure->error = std::current_exception();
    return 0.0;
  }
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& config) {
  static const gsl_error_handler_t* previous = gsl_set_error_handler_off();
  (void)previous;
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> workspace(
      gsl_integration_workspace_alloc(config.limit));
  Closure closure{&f, nullptr};
  gsl_function fn{&trampoline, &closure};
  QuadratureResult result;
  int status = gsl_integration_qag(&fn, a, b, config.epsabs, config.epsrel, config.limit, GSL_INTEG_GAUSS21,
                                   workspace.get(), &result.value, &result.abserr);
  if (closure.error) std::rethrow_exception(closure.error);
  result.converged = status == GSL_SUCCESS;
  return result;
}

}  // namespace entropykit
