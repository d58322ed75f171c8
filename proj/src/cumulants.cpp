#include "roycrit/cumulants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace roycrit {

Cumulants::Cumulants(double mean, double volatility, std::vector<double> zeta)
    : mean_(mean), volatility_(volatility), zeta_(std::move(zeta)) {
  if (!(volatility_ > 0.0) || !std::isfinite(volatility_)) {
    throw std::invalid_argument("volatility must be positive and finite");
  }
  if (!std::isfinite(mean_)) {
    throw std::invalid_argument("mean must be finite");
  }
  if (max_order() > kMaxCumulantOrder) {
    throw std::invalid_argument("cumulants supported through order " +
                                std::to_string(kMaxCumulantOrder));
  }
  if (zeta_.size() >= 2) {
    const double z3 = zeta_[0];
    const double z4 = zeta_[1];
    if (z4 < z3 * z3 - 2.0) {
      throw std::invalid_argument(
          "unrealizable moments: zeta_4 < zeta_3^2 - 2");
    }
  }
}

double Cumulants::zeta(int order) const {
  if (!has(order)) {
    throw std::invalid_argument("zeta_" + std::to_string(order) +
                                " not present");
  }
  return zeta_[static_cast<std::size_t>(order - 3)];
}

Horizon::Horizon(double n_periods, double disaster_rate)
    : n_periods_(n_periods), disaster_rate_(disaster_rate) {
  if (!(n_periods_ > 0.0) || !std::isfinite(n_periods_)) {
    throw std::invalid_argument("n_periods must be positive and finite");
  }
  if (!std::isfinite(disaster_rate_)) {
    throw std::invalid_argument("disaster_rate must be finite");
  }
}

double snr(const Cumulants& c, const Horizon& h) {
  return (c.mean() - h.disaster_rate()) / c.volatility();
}

double c_statistic(const Cumulants& c, const Horizon& h) {
  return std::sqrt(h.n_periods()) * snr(c, h);
}

Cumulants scale_to_horizon(const Cumulants& c, double n_periods) {
  if (!(n_periods > 0.0)) {
    throw std::invalid_argument("n_periods must be positive");
  }
  std::vector<double> scaled(c.zetas());
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    const double order = static_cast<double>(i) + 3.0;
    scaled[i] *= std::pow(n_periods, 1.0 - 0.5 * order);
  }
  return Cumulants(0.0, 1.0, std::move(scaled));
}

Cumulants estimate_cumulants(std::span<const double> values, int max_order) {
  if (max_order < 3 || max_order > kMaxCumulantOrder) {
    throw std::invalid_argument("max_order must lie in 3..7");
  }
  const std::size_t n = values.size();
  if (n < static_cast<std::size_t>(max_order) + 1) {
    throw std::invalid_argument("sample too short: need at least " +
                                std::to_string(max_order + 1) + " values");
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);

  // Central moments with 1/N normalization.
  double m[8] = {};
  for (double v : values) {
    const double d = v - mean;
    double pw = d;
    for (int i = 2; i <= max_order; ++i) {
      pw *= d;
      m[i] += pw;
    }
  }
  for (int i = 2; i <= max_order; ++i) m[i] /= static_cast<double>(n);

  const double var = m[2] * static_cast<double>(n) / static_cast<double>(n - 1);
  if (!(var > 0.0)) {
    throw std::invalid_argument("degenerate sample: zero variance");
  }
  const double sd = std::sqrt(var);

  // Moment-to-cumulant relations for central moments.
  double kappa[8] = {};
  kappa[3] = m[3];
  kappa[4] = m[4] - 3.0 * m[2] * m[2];
  kappa[5] = m[5] - 10.0 * m[3] * m[2];
  kappa[6] = m[6] - 15.0 * m[4] * m[2] - 10.0 * m[3] * m[3] +
             30.0 * m[2] * m[2] * m[2];
  kappa[7] = m[7] - 21.0 * m[5] * m[2] - 35.0 * m[4] * m[3] +
             210.0 * m[3] * m[2] * m[2];

  std::vector<double> zeta;
  zeta.reserve(static_cast<std::size_t>(max_order) - 2);
  double sd_pow = sd * sd;  // sd^2
  for (int i = 3; i <= max_order; ++i) {
    sd_pow *= sd;  // sd^i
    zeta.push_back(kappa[i] / sd_pow);
  }
  return Cumulants(mean, sd, std::move(zeta));
}

Cumulants gamma_cumulants(double shape, double rate, double shift) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("gamma shape and rate must be positive");
  }
  const double mean = shift + shape / rate;
  const double sd = std::sqrt(shape) / rate;
  // kappa_i = shape (i-1)! / rate^i  =>  zeta_i = (i-1)! shape^{1 - i/2}
  std::vector<double> zeta;
  zeta.reserve(kMaxCumulantOrder - 2);
  double factorial = 2.0;  // (i-1)! starting at i = 3
  for (int i = 3; i <= kMaxCumulantOrder; ++i) {
    zeta.push_back(factorial * std::pow(shape, 1.0 - 0.5 * i));
    factorial *= static_cast<double>(i);
  }
  return Cumulants(mean, sd, std::move(zeta));
}

}  // namespace roycrit
