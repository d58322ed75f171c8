#pragma once

#include <vector>

#include "roycrit/roy.hpp"

namespace roycrit {

// Base asset with mean mu > 0 and volatility sigma > 0, plus a constant
// bonus B > 0 added with probability p. The bonus asset first-order
// stochastically dominates the base asset yet can have a lower Sharpe ratio.
struct BonusAsset {
  double mu;
  double sigma;
  double p;
  double bonus;

  BonusAsset(double mu, double sigma, double p, double bonus);
};

// mu + p B
double bonus_mean(const BonusAsset& a);

// sigma^2 - 2 mu p B - p^2 B^2 + p B^2
double bonus_variance(const BonusAsset& a);

// (mu + p B - r0) / sqrt(bonus_variance). Throws std::domain_error when the
// variance expression is not positive.
double bonus_sharpe(const BonusAsset& a, double r0 = 0.0);

// Sufficient bound for Sharpe reversal: p <= mu^2/(sigma^2 + mu^2) - 2 mu/B.
// May be <= 0, meaning no feasible p exists at this B.
double reversal_p_bound(double mu, double sigma, double bonus);

// Smallest bonus admitting a reversing p: B_min = 2 (mu + sigma^2/mu).
double min_reversal_bonus(double mu, double sigma);

// Mixture CDF of the bonus asset over a base CDF:
//   F_y(t) = (1-p) F_x(t) + p F_x(t - B).
CdfOracle bonus_mixture_cdf(const CdfOracle& base, const BonusAsset& a);

struct DominanceReport {
  bool degenerate = false;  // p == 0: the two distributions coincide
  bool fosd_holds = false;
  double max_cdf_gap = 0.0;  // max over the grid of F_bonus - F_base
  double base_sharpe = 0.0;
  double bonus_sharpe = 0.0;
  bool sharpe_reversed = false;
  bool roy_consistent = false;  // bonus >= base at every probe r0
  std::vector<double> probe_r0;
  std::vector<double> base_score;
  std::vector<double> bonus_score;
};

// Checks, on a 501-point quantile grid spanning [q(1e-5), q(1-1e-5)] of the
// base CDF, that the bonus asset dominates; compares Sharpe ratios at r0 = 0;
// and scores both assets with roy_exact at 11 probe disaster rates. A
// dominance violation on the grid throws std::logic_error (construction bug).
DominanceReport verify_dominance_and_reversal(const BonusAsset& a,
                                              const CdfOracle& base_cdf);

// Same with the default Normal(mu, sigma^2) base.
DominanceReport verify_dominance_and_reversal(const BonusAsset& a);

}  // namespace roycrit
