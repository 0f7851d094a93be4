#include "oracle.hpp"

#include "adamlab/trajectory.hpp"

namespace adamlab::testing {

BigFloat oracle_s(const HyperParams& hyper, std::span<const double> gradients) {
  using boost::multiprecision::pow;
  const BigFloat beta1(hyper.beta1);
  const BigFloat beta2(hyper.beta2);
  const BigFloat lambda_m(hyper.lambda_m);
  const BigFloat lambda_g(hyper.lambda_g);

  BigFloat m = 0, v = 0, s = 0;
  for (std::size_t i = 0; i < gradients.size(); ++i) {
    const auto t = static_cast<int>(i + 1);
    const BigFloat g(gradients[i]);
    m = beta1 * pow(lambda_m, t - 1) * m + (1 - beta1 * pow(lambda_g, t - 1)) * g;
    v = beta2 * v + (1 - beta2) * g * g;
    const BigFloat m_hat = m / (1 - pow(beta1, t));
    const BigFloat v_hat = v / (1 - pow(beta2, t));
    s += m_hat * m_hat / sqrt(BigFloat(t) * v_hat);
  }
  return s;
}

double oracle_relative_error(const HyperParams& hyper,
                             std::span<const double> gradients) {
  const BigFloat reference = oracle_s(hyper, gradients);
  const double computed = run_trace_values(hyper, gradients).s_final();
  const BigFloat rel = abs((BigFloat(computed) - reference) / reference);
  return rel.convert_to<double>();
}

}  // namespace adamlab::testing
