#include "roycrit/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "roycrit/special_fn.hpp"

namespace roycrit {

namespace {

void require_zetas(const Cumulants& c, int through_order,
                   const char* operation) {
  for (int i = 3; i <= through_order; ++i) {
    if (!c.has(i)) {
      throw std::invalid_argument(std::string(operation) + " needs zeta_" +
                                  std::to_string(i));
    }
  }
}

}  // namespace

EdgeworthCdf edgeworth_cdf(const Cumulants& c, double n_periods, double t,
                           int order) {
  if (order < 0 || order > 3) {
    throw std::invalid_argument("edgeworth order must lie in 0..3");
  }
  if (!(n_periods > 0.0)) {
    throw std::invalid_argument("n_periods must be positive");
  }
  require_zetas(c, order + 2, "edgeworth_cdf");

  // Expansion written at the argument cc = -t with density weight phi(cc),
  // alternating bracket signs.
  const double cc = -t;
  const double rn = std::sqrt(n_periods);
  const double w = norm_pdf(cc);

  double value = norm_cdf(t);
  if (order >= 1) {
    const double z3 = c.zeta(3);
    value -= w * (z3 / 6.0) * hermite(2, cc) / rn;
  }
  if (order >= 2) {
    const double z3 = c.zeta(3);
    const double z4 = c.zeta(4);
    value += w *
             (z4 / 24.0 * hermite(3, cc) + z3 * z3 / 72.0 * hermite(5, cc)) /
             n_periods;
  }
  if (order >= 3) {
    const double z3 = c.zeta(3);
    const double z4 = c.zeta(4);
    const double z5 = c.zeta(5);
    value -= w *
             (z5 / 120.0 * hermite(4, cc) +
              z3 * z4 / 144.0 * hermite(6, cc) +
              z3 * z3 * z3 / 1296.0 * hermite(8, cc)) /
             (n_periods * rn);
  }
  return {value, value >= 0.0 && value <= 1.0};
}

double exceed_probability(const Cumulants& c, const Horizon& h) {
  require_zetas(c, 3, "exceed_probability");
  const double cc = c_statistic(c, h);
  const double rn = std::sqrt(h.n_periods());
  return norm_cdf(cc) +
         norm_pdf(cc) / rn * (c.zeta(3) / 6.0) * (cc * cc - 1.0);
}

double chebyshev_loss_bound(double snr) {
  if (!(snr > 0.0)) {
    throw std::domain_error("chebyshev_loss_bound requires snr > 0");
  }
  return std::min(1.0, 1.0 / (snr * snr));
}

SkewPreference skew_preference(const Cumulants& c, const Horizon& h) {
  const double cc = c_statistic(c, h);
  SkewPreference pref;
  const double d = cc * cc - 1.0;
  pref.sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
  const double excess = c.mean() - h.disaster_rate();
  if (excess > 0.0) {
    pref.crossover_n =
        (c.volatility() / excess) * (c.volatility() / excess);
  }
  return pref;
}

}  // namespace roycrit
