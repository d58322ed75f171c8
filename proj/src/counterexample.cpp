#include "roycrit/counterexample.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace roycrit {

BonusAsset::BonusAsset(double mu_, double sigma_, double p_, double bonus_)
    : mu(mu_), sigma(sigma_), p(p_), bonus(bonus_) {
  if (!(mu > 0.0)) throw std::invalid_argument("BonusAsset needs mu > 0");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("BonusAsset needs sigma > 0");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("BonusAsset needs p in [0,1]");
  }
  if (!(bonus > 0.0)) throw std::invalid_argument("BonusAsset needs B > 0");
}

double bonus_mean(const BonusAsset& a) { return a.mu + a.p * a.bonus; }

double bonus_variance(const BonusAsset& a) {
  return a.sigma * a.sigma - 2.0 * a.mu * a.p * a.bonus -
         a.p * a.p * a.bonus * a.bonus + a.p * a.bonus * a.bonus;
}

double bonus_sharpe(const BonusAsset& a, double r0) {
  const double var = bonus_variance(a);
  if (!(var > 0.0)) {
    throw std::domain_error(
        "bonus asset variance expression is not positive");
  }
  return (bonus_mean(a) - r0) / std::sqrt(var);
}

double reversal_p_bound(double mu, double sigma, double bonus) {
  if (!(mu > 0.0) || !(sigma > 0.0) || !(bonus > 0.0)) {
    throw std::invalid_argument("reversal_p_bound needs mu, sigma, B > 0");
  }
  return mu * mu / (sigma * sigma + mu * mu) - 2.0 * mu / bonus;
}

double min_reversal_bonus(double mu, double sigma) {
  if (!(mu > 0.0) || !(sigma > 0.0)) {
    throw std::invalid_argument("min_reversal_bonus needs mu, sigma > 0");
  }
  return 2.0 * (mu + sigma * sigma / mu);
}

CdfOracle bonus_mixture_cdf(const CdfOracle& base, const BonusAsset& a) {
  const double p = a.p;
  const double bonus = a.bonus;
  return CdfOracle(
      [base, p, bonus](double t) {
        return (1.0 - p) * base(t) + p * base(t - bonus);
      },
      base.probe_lo(), base.probe_hi() + bonus);
}

DominanceReport verify_dominance_and_reversal(const BonusAsset& a,
                                              const CdfOracle& base_cdf) {
  DominanceReport report;
  report.base_sharpe = a.mu / a.sigma;
  report.bonus_sharpe = bonus_sharpe(a, 0.0);
  report.sharpe_reversed = report.bonus_sharpe < report.base_sharpe;

  if (a.p == 0.0) {
    report.degenerate = true;
    report.fosd_holds = true;
    report.max_cdf_gap = 0.0;
    report.roy_consistent = true;
    return report;
  }

  const CdfOracle mixture = bonus_mixture_cdf(base_cdf, a);

  // 501 quantile-spaced probes across the bulk of the base distribution.
  const double q_lo = 1e-5;
  const double q_hi = 1.0 - 1e-5;
  report.max_cdf_gap = -1.0;
  for (int i = 0; i < 501; ++i) {
    const double q =
        q_lo + (q_hi - q_lo) * static_cast<double>(i) / 500.0;
    const double t = base_cdf.quantile(q);
    const double gap = mixture(t) - base_cdf(t);
    if (gap > report.max_cdf_gap) report.max_cdf_gap = gap;
  }
  report.fosd_holds = report.max_cdf_gap <= 1e-12;
  if (!report.fosd_holds) {
    throw std::logic_error(
        "bonus mixture failed to dominate its base (gap " +
        std::to_string(report.max_cdf_gap) + "): construction bug");
  }

  report.roy_consistent = true;
  for (int i = 0; i < 11; ++i) {
    const double q = 0.02 + (0.98 - 0.02) * static_cast<double>(i) / 10.0;
    const double r0 = base_cdf.quantile(q);
    const RiskScore base_score =
        roy_exact(base_cdf, Horizon(1.0, r0));
    const RiskScore bonus_score = roy_exact(mixture, Horizon(1.0, r0));
    report.probe_r0.push_back(r0);
    report.base_score.push_back(base_score.value);
    report.bonus_score.push_back(bonus_score.value);
    if (!(bonus_score.value >= base_score.value - 1e-12)) {
      report.roy_consistent = false;
    }
  }
  return report;
}

DominanceReport verify_dominance_and_reversal(const BonusAsset& a) {
  return verify_dominance_and_reversal(a, CdfOracle::normal(a.mu, a.sigma));
}

}  // namespace roycrit
