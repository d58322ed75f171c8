#pragma once

#include <optional>

#include "roycrit/cumulants.hpp"

namespace roycrit {

// Edgeworth CDF value plus a breakdown indicator: truncated expansions may
// legitimately exit [0,1] in the tails, and the value is reported unclamped.
struct EdgeworthCdf {
  double value = 0.0;
  bool in_unit_interval = true;
};

// Edgeworth approximation to Pr{ sqrt(n)(mbar - mu)/sigma <= t } for the
// mean of n_periods draws from c. `order` counts correction brackets beyond
// the plain normal (0..3); order k needs zeta_3..zeta_{k+2} present.
EdgeworthCdf edgeworth_cdf(const Cumulants& c, double n_periods, double t,
                           int order);

// Order-1 exceedance probability Pr{ mbar >= r0 }:
//   Phi(c) + phi(c)/sqrt(n) * [zeta_3/6 (c^2 - 1)],  c = sqrt(n)(mu-r0)/sigma.
// Requires zeta_3 present.
double exceed_probability(const Cumulants& c, const Horizon& h);

// Chebyshev upper bound min(1, 1/snr^2) on the loss probability.
// Throws std::domain_error for snr <= 0 (the derivation needs r0 < mu).
double chebyshev_loss_bound(double snr);

// Sign of d Pr{mbar >= r0} / d zeta_3 at fixed c: positive when c^2 > 1.
// crossover_n is the horizon n* = sigma^2/(mu-r0)^2 where the sign flips;
// absent when mu <= r0.
struct SkewPreference {
  int sign = 0;
  std::optional<double> crossover_n;
};

SkewPreference skew_preference(const Cumulants& c, const Horizon& h);

}  // namespace roycrit
