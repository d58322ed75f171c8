#pragma once

#include <functional>
#include <string>

#include "roycrit/cumulants.hpp"
#include "roycrit/edgeworth.hpp"

namespace roycrit {

enum class ScoreMethod {
  sharpe,
  sr3,
  exact,
  edgeworth_invert,
  cf_newton,
  cf_quadratic,
};

// A computed criterion value (units period^-1/2) with solver diagnostics.
struct RiskScore {
  double value = 0.0;
  ScoreMethod method = ScoreMethod::sharpe;
  int order = 0;        // expansion order / term count, where applicable
  int iterations = 0;   // F evaluations spent by the solver
  double residual = 0.0;
  int root_branch = 0;  // sign applied to the quadratic root; 0 = degenerate
  bool converged = true;
  bool saturated = false;  // loss probability hit 0 or 1

  // "sharpe", "cf-newton-2", "edgeworth-1", ...
  std::string method_label() const;
};

// A CDF t -> Pr{x <= t} wrapped with a probe range. Monotonicity and range
// are spot-checked on 20 sorted points of [probe_lo, probe_hi] at
// construction; violations throw std::invalid_argument.
class CdfOracle {
 public:
  CdfOracle(std::function<double(double)> cdf, double probe_lo,
            double probe_hi);

  double operator()(double t) const { return cdf_(t); }
  double probe_lo() const { return probe_lo_; }
  double probe_hi() const { return probe_hi_; }

  // Inverse by bisection, expanding the bracket beyond the probe range when
  // needed. Requires 0 < q < 1.
  double quantile(double q) const;

  static CdfOracle normal(double mean, double sigma);

 private:
  std::function<double(double)> cdf_;
  double probe_lo_;
  double probe_hi_;
};

// The classical criterion (mu - r0)/sigma.
RiskScore sharpe(const Cumulants& c, const Horizon& h);

// Exact generalized criterion -Phi^{-1}(Pr{x <= r0}) / sqrt(n). The oracle
// must describe the observed variable: the per-period return at n = 1, the
// n-period sample mean otherwise. A loss probability of exactly 0 or 1
// yields +/-infinity with the saturated flag set.
RiskScore roy_exact(const CdfOracle& cdf, const Horizon& h);

// -Phi^{-1}( edgeworth_cdf(c, n, -c_stat, order) ) / sqrt(n). Throws
// ApproximationError when the Edgeworth probability leaves (0,1).
RiskScore roy_edgeworth_invert(const Cumulants& c, const Horizon& h,
                               int order);

// Newton solve of the implicit quantile expansion truncated to `terms`
// bracket groups (2..4; terms=2 needs zeta_3, 3 needs zeta_4, 4 needs
// zeta_5). Starts from the Sharpe ratio; falls back to one bisection pass on
// [snr - 3|zeta_3|, snr + 3|zeta_3|] before throwing SolverError.
RiskScore roy_cf_newton(const Cumulants& c, const Horizon& h, int terms,
                        double tol = 1e-12, int max_iter = 50);

// Closed form of the two-term truncation:
//   3/zeta_3 - sign(zeta_3) sqrt(9/zeta_3^2 + 1/n - 6 snr/zeta_3),
// the branch that tends to the Sharpe ratio as zeta_3 -> 0. zeta_3 = 0
// returns the Sharpe ratio with a degenerate branch flag; a negative
// discriminant throws NoRealRootError.
RiskScore roy_cf_quadratic(const Cumulants& c, const Horizon& h);

// Skew-adjusted ratio snr sqrt(1 + b3 zeta_3 snr / 3); b3 is the investor's
// relative preference for third moments. Throws std::domain_error when the
// radicand is negative.
RiskScore sr3_skew_adjusted(const Cumulants& c, const Horizon& h, double b3);

}  // namespace roycrit
