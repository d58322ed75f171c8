#pragma once

#include <span>
#include <vector>

namespace roycrit {

inline constexpr int kMaxCumulantOrder = 7;

// Per-period return distribution summarized by its mean, volatility and
// standardized cumulants zeta_i = kappa_i / sigma^i for i = 3..7 (zeta_3 is
// the skewness, zeta_4 the excess kurtosis).
//
// Construction enforces volatility > 0 and, when both zeta_3 and zeta_4 are
// present, the moment-realizability bound zeta_4 >= zeta_3^2 - 2.
class Cumulants {
 public:
  Cumulants(double mean, double volatility, std::vector<double> zeta = {});

  double mean() const { return mean_; }
  double volatility() const { return volatility_; }

  // Highest cumulant order carried (2 when no zetas are present).
  int max_order() const { return 2 + static_cast<int>(zeta_.size()); }
  bool has(int order) const {
    return order >= 3 && order <= max_order();
  }
  // zeta_order; throws std::invalid_argument if absent.
  double zeta(int order) const;
  const std::vector<double>& zetas() const { return zeta_; }

 private:
  double mean_;
  double volatility_;
  std::vector<double> zeta_;  // zeta_[i] holds zeta_{i+3}
};

// Loss event definition: n_periods independent draws, disaster when the
// sample mean return falls below disaster_rate (a per-period rate).
class Horizon {
 public:
  Horizon(double n_periods, double disaster_rate);

  double n_periods() const { return n_periods_; }
  double disaster_rate() const { return disaster_rate_; }

 private:
  double n_periods_;
  double disaster_rate_;
};

// Signal-to-noise ratio (mean - r0)/sigma, the classical Sharpe ratio.
double snr(const Cumulants& c, const Horizon& h);

// The c statistic sqrt(n) (mean - r0)/sigma entering both expansions.
double c_statistic(const Cumulants& c, const Horizon& h);

// Cumulants of Y = sqrt(n)(mbar - mu)/sigma, the standardized mean of
// n_periods draws: mean 0, volatility 1, zeta_i -> n^{1-i/2} zeta_i.
Cumulants scale_to_horizon(const Cumulants& c, double n_periods);

// Plug-in sample cumulants: mean, volatility with 1/(N-1) normalization,
// zeta_i from 1/N central moments through the standard moment-to-cumulant
// relations. Bias is O(1/N). Requires values.size() >= max_order + 1 and a
// strictly positive sample variance; max_order in 3..7.
Cumulants estimate_cumulants(std::span<const double> values, int max_order);

// Exact cumulants of shift + Gamma(shape, rate): kappa_i = shape (i-1)!/rate^i,
// standardized through order 7.
Cumulants gamma_cumulants(double shape, double rate, double shift = 0.0);

}  // namespace roycrit
