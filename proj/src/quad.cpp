#include "ddent/quad.hpp"

namespace ddent {

void QuadSpec::validate() const {
  if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
    throw ConfigError("quadrature domain must satisfy a < b with finite ends");
  }
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw ConfigError("quadrature tolerances must be > 0");
  if (max_panels == 0) throw ConfigError("max_panels must be positive");
  if (oscillation_period_hint && !(*oscillation_period_hint > 0.0)) {
    throw ConfigError("oscillation period hint must be > 0");
  }
}

QuadResult integrate(const std::function<double(double)>& f, const QuadSpec& spec) {
  auto wrapped = [&f](double x) { return QuadVec<1>{f(x)}; };
  const auto r = integrate_n<1>(wrapped, spec);
  return QuadResult{r.value[0], r.error_estimate[0], r.panels_used, r.converged};
}

}  // namespace ddent
