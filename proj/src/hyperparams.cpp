#include "adamlab/hyperparams.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace adamlab {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("invalid hyperparameters: " + what);
}
}  // namespace

void validate(const HyperParams& h) {
  require(std::isfinite(h.eta) && h.eta > 0.0, "eta must be > 0");
  require(std::isfinite(h.beta1) && h.beta1 >= 0.0 && h.beta1 < 1.0,
          "beta1 must be in [0, 1)");
  require(std::isfinite(h.beta2) && h.beta2 >= 0.0 && h.beta2 < 1.0,
          "beta2 must be in [0, 1)");
  require(std::isfinite(h.lambda_m) && h.lambda_m > 0.0 && h.lambda_m <= 1.0,
          "lambda_m must be in (0, 1]");
  require(std::isfinite(h.lambda_g) && h.lambda_g > 0.0 && h.lambda_g <= 1.0,
          "lambda_g must be in (0, 1]");
  require(h.T >= 1, "T must be >= 1");
}

}  // namespace adamlab
