#include "adamlab/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adamlab {

RegionClass classify_region(const Rational& beta1, const Rational& beta2) {
  if (beta1 < 0 || beta1 >= 1 || beta2 < 0 || beta2 >= 1)
    throw std::invalid_argument("classify_region: beta1, beta2 must be in [0, 1)");
  RegionClass cls;
  const Rational b1sq = beta1 * beta1;
  // gamma < 1  <=>  beta1^4 < beta2 (both sides positive); gamma is 0 by
  // convention at beta1 = 0 and undefined (hence out of scope) at beta2 = 0
  // with beta1 > 0.
  if (beta1 == 0)
    cls.bock_scope = true;
  else if (beta2 == 0)
    cls.bock_scope = false;
  else
    cls.bock_scope = b1sq * b1sq < beta2;
  cls.lemma31_ok = beta1 > 0 && beta2 > b1sq && beta2 < 2 * b1sq;
  cls.lemma32_ok = beta2 >= 2 * beta1 - b1sq;
  cls.result33_scope = beta2 < 2 * b1sq && cls.lemma32_ok;
  return cls;
}

RegionClass classify_region(double beta1, double beta2) {
  return classify_region(Rational(beta1), Rational(beta2));
}

double kb_bound(const DerivedConstants& constants, double g_norm) {
  if (!(g_norm >= 0.0))
    throw std::invalid_argument("kb_bound: g_norm must be >= 0");
  const double gamma = constants.gamma.value_or_throw("gamma");
  if (gamma >= 1.0) {
    std::ostringstream msg;
    msg << "kb bound out of scope: gamma = " << gamma << " >= 1";
    throw ScopeError(msg.str());
  }
  return (2.0 / (1.0 - gamma)) * (1.0 / std::sqrt(constants.x2)) * g_norm;
}

double new_bound(const DerivedConstants& constants, std::int64_t T, double g_norm) {
  if (T < 1) throw std::invalid_argument("new_bound: T must be >= 1");
  if (!(g_norm >= 0.0))
    throw std::invalid_argument("new_bound: g_norm must be >= 0");
  const RegionClass cls =
      classify_region(constants.beta1_exact, constants.beta2_exact);
  if (!cls.result33_scope) {
    if (!cls.lemma32_ok)
      throw ScopeError("new bound out of scope: beta2 >= 2*beta1 - beta1^2 violated");
    throw ScopeError("new bound out of scope: beta2 < 2*beta1^2 violated");
  }
  const double tau = static_cast<double>(constants.tau.value_or_throw("tau"));
  const double kx = constants.ratio_bound.value_or_throw("K*x1^2/x2");
  return (2.0 + std::sqrt(tau)) *
         std::sqrt(1.0 + kx * std::log(static_cast<double>(T))) * g_norm;
}

std::vector<RegionCell> region_grid(int resolution, ExecutionPolicy policy) {
  if (resolution < 2) throw std::invalid_argument("region_grid: resolution must be >= 2");
  const std::int64_t n = static_cast<std::int64_t>(resolution) * resolution;
  std::vector<RegionCell> cells(static_cast<std::size_t>(n));
  for_each_cell(n, policy, [&](std::int64_t flat) {
    const std::int64_t i = flat / resolution;  // beta1 index (row)
    const std::int64_t j = flat % resolution;  // beta2 index (column)
    const Rational b1(2 * i + 1, 2 * static_cast<std::int64_t>(resolution));
    const Rational b2(2 * j + 1, 2 * static_cast<std::int64_t>(resolution));
    RegionCell& cell = cells[static_cast<std::size_t>(flat)];
    cell.beta1 = to_double(b1);
    cell.beta2 = to_double(b2);
    cell.cls = classify_region(b1, b2);
  });
  return cells;
}

}  // namespace adamlab
