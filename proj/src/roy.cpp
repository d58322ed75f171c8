#include "roycrit/roy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "roycrit/errors.hpp"
#include "roycrit/special_fn.hpp"

namespace roycrit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_zetas(const Cumulants& c, int through_order,
                   const char* operation) {
  for (int i = 3; i <= through_order; ++i) {
    if (!c.has(i)) {
      throw std::invalid_argument(std::string(operation) + " needs zeta_" +
                                  std::to_string(i));
    }
  }
}

// RHS of the implicit quantile expansion, truncated to `terms` bracket
// groups counting the leading snr term. Arguments are sqrt(n)*s in the 1/n
// and n^{-3/2} groups and -sqrt(n)*s in the n^{-2} group.
double cf_rhs(double snr0, const Cumulants& c, double n, int terms,
              double s) {
  const double rn = std::sqrt(n);
  const double z = rn * s;
  double rhs = snr0;
  const double z3 = c.zeta(3);
  rhs += z3 / 6.0 * hermite(2, z) / n;
  if (terms >= 3) {
    const double z4 = c.zeta(4);
    rhs -= (z4 / 24.0 * hermite(3, z) -
            z3 * z3 / 36.0 * (2.0 * hermite(3, z) + hermite(1, z))) /
           (n * rn);
  }
  if (terms >= 4) {
    const double z4 = c.zeta(4);
    const double z5 = c.zeta(5);
    rhs += (z5 / 120.0 * hermite(4, -z) -
            z3 * z4 / 24.0 * (hermite(4, -z) + hermite(2, -z)) +
            z3 * z3 * z3 / 324.0 *
                (12.0 * hermite(4, -z) + 19.0 * hermite(2, -z))) /
           (n * n);
  }
  return rhs;
}

double cf_rhs_deriv(const Cumulants& c, double n, int terms, double s) {
  const double rn = std::sqrt(n);
  const double z = rn * s;
  const double z3 = c.zeta(3);
  double d = z3 / 6.0 * hermite_deriv(2, z) * rn / n;
  if (terms >= 3) {
    const double z4 = c.zeta(4);
    d -= (z4 / 24.0 * hermite_deriv(3, z) -
          z3 * z3 / 36.0 * (2.0 * hermite_deriv(3, z) + hermite_deriv(1, z))) /
         n;
  }
  if (terms >= 4) {
    const double z4 = c.zeta(4);
    const double z5 = c.zeta(5);
    d += (z5 / 120.0 * hermite_deriv(4, -z) -
          z3 * z4 / 24.0 * (hermite_deriv(4, -z) + hermite_deriv(2, -z)) +
          z3 * z3 * z3 / 324.0 *
              (12.0 * hermite_deriv(4, -z) + 19.0 * hermite_deriv(2, -z))) *
         (-rn) / (n * n);
  }
  return d;
}

}  // namespace

std::string RiskScore::method_label() const {
  switch (method) {
    case ScoreMethod::sharpe:
      return "sharpe";
    case ScoreMethod::sr3:
      return "sr3";
    case ScoreMethod::exact:
      return "exact";
    case ScoreMethod::edgeworth_invert:
      return "edgeworth-" + std::to_string(order);
    case ScoreMethod::cf_newton:
      return "cf-newton-" + std::to_string(order);
    case ScoreMethod::cf_quadratic:
      return "cf-quadratic";
  }
  return "unknown";
}

CdfOracle::CdfOracle(std::function<double(double)> cdf, double probe_lo,
                     double probe_hi)
    : cdf_(std::move(cdf)), probe_lo_(probe_lo), probe_hi_(probe_hi) {
  if (!cdf_) throw std::invalid_argument("CdfOracle needs a callable");
  if (!(probe_lo_ < probe_hi_)) {
    throw std::invalid_argument("CdfOracle probe range must be nonempty");
  }
  double prev = -1.0;
  for (int i = 0; i < 20; ++i) {
    const double t =
        probe_lo_ + (probe_hi_ - probe_lo_) * static_cast<double>(i) / 19.0;
    const double p = cdf_(t);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("CdfOracle values must lie in [0,1]");
    }
    if (p < prev) {
      throw std::invalid_argument("CdfOracle must be nondecreasing");
    }
    prev = p;
  }
}

double CdfOracle::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("quantile requires 0 < q < 1");
  }
  double lo = probe_lo_;
  double hi = probe_hi_;
  double width = hi - lo;
  for (int i = 0; i < 120 && cdf_(lo) > q; ++i) {
    lo -= width;
    width *= 2.0;
  }
  width = hi - lo;
  for (int i = 0; i < 120 && cdf_(hi) < q; ++i) {
    hi += width;
    width *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_(mid) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CdfOracle CdfOracle::normal(double mean, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("normal oracle needs sigma > 0");
  }
  return CdfOracle(
      [mean, sigma](double t) { return norm_cdf((t - mean) / sigma); },
      mean - 8.0 * sigma, mean + 8.0 * sigma);
}

RiskScore sharpe(const Cumulants& c, const Horizon& h) {
  RiskScore s;
  s.method = ScoreMethod::sharpe;
  s.value = snr(c, h);
  return s;
}

RiskScore roy_exact(const CdfOracle& cdf, const Horizon& h) {
  RiskScore s;
  s.method = ScoreMethod::exact;
  const double p = cdf(h.disaster_rate());
  if (p <= 0.0) {
    s.value = kInf;
    s.saturated = true;
    return s;
  }
  if (p >= 1.0) {
    s.value = -kInf;
    s.saturated = true;
    return s;
  }
  s.value = -norm_quantile(p) / std::sqrt(h.n_periods());
  return s;
}

RiskScore roy_edgeworth_invert(const Cumulants& c, const Horizon& h,
                               int order) {
  const double cc = c_statistic(c, h);
  const EdgeworthCdf e = edgeworth_cdf(c, h.n_periods(), -cc, order);
  if (!(e.value > 0.0 && e.value < 1.0)) {
    throw ApproximationError(
        "Edgeworth probability " + std::to_string(e.value) +
            " outside (0,1); the truncation broke down for these inputs",
        e.value);
  }
  RiskScore s;
  s.method = ScoreMethod::edgeworth_invert;
  s.order = order;
  s.value = -norm_quantile(e.value) / std::sqrt(h.n_periods());
  return s;
}

RiskScore roy_cf_newton(const Cumulants& c, const Horizon& h, int terms,
                        double tol, int max_iter) {
  if (terms < 2 || terms > 4) {
    throw std::invalid_argument("cf-newton terms must lie in 2..4");
  }
  require_zetas(c, terms + 1, "roy_cf_newton");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");

  const double n = h.n_periods();
  const double snr0 = snr(c, h);

  RiskScore score;
  score.method = ScoreMethod::cf_newton;
  score.order = terms;

  double s = snr0;
  std::vector<double> trajectory{s};
  double f = 0.0;
  bool singular = false;
  for (int it = 1; it <= max_iter; ++it) {
    f = s - cf_rhs(snr0, c, n, terms, s);
    score.iterations = it;
    if (std::abs(f) <= tol) {
      score.value = s;
      score.residual = std::abs(f);
      score.converged = true;
      return score;
    }
    const double fp = 1.0 - cf_rhs_deriv(c, n, terms, s);
    if (std::abs(fp) < 1e-14) {
      singular = true;
      break;
    }
    s -= f / fp;
    trajectory.push_back(s);
  }

  // One bisection pass over the documented bracket before giving up.
  const double half_width = 3.0 * std::abs(c.zeta(3));
  double lo = snr0 - half_width;
  double hi = snr0 + half_width;
  double flo = lo - cf_rhs(snr0, c, n, terms, lo);
  double fhi = hi - cf_rhs(snr0, c, n, terms, hi);
  score.iterations += 2;
  for (auto [endpoint, fe] : {std::pair{lo, flo}, std::pair{hi, fhi}}) {
    if (std::abs(fe) <= tol) {
      score.value = endpoint;
      score.residual = std::abs(fe);
      score.converged = true;
      return score;
    }
  }
  if (flo * fhi < 0.0) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fmid = mid - cf_rhs(snr0, c, n, terms, mid);
      ++score.iterations;
      if (std::abs(fmid) <= tol || hi - lo < 1e-16 * (1.0 + std::abs(mid))) {
        score.value = mid;
        score.residual = std::abs(fmid);
        score.converged = std::abs(fmid) <= tol;
        if (score.converged) return score;
        break;
      }
      if ((fmid < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
        fhi = fmid;
      }
    }
  }
  throw SolverError(
      singular ? "cf-newton: derivative vanished and no bracketed root found"
               : "cf-newton: no convergence after max_iter and no bracketed "
                 "root found",
      score.iterations, std::abs(f), std::move(trajectory));
}

RiskScore roy_cf_quadratic(const Cumulants& c, const Horizon& h) {
  require_zetas(c, 3, "roy_cf_quadratic");
  const double z3 = c.zeta(3);
  const double snr0 = snr(c, h);
  const double n = h.n_periods();

  RiskScore s;
  s.method = ScoreMethod::cf_quadratic;
  if (z3 == 0.0) {
    s.value = snr0;
    s.root_branch = 0;  // degenerate: the truncation is linear
    return s;
  }

  const double disc = 9.0 / (z3 * z3) + 1.0 / n - 6.0 * snr0 / z3;
  if (disc < 0.0) {
    throw NoRealRootError(
        "cf-quadratic: negative discriminant " + std::to_string(disc) +
            "; the two-term truncation has no real root here",
        disc);
  }
  // 3/z3 - sign(z3) sqrt(disc), evaluated in rationalized form so the
  // zeta_3 -> 0 limit does not cancel.
  const double a = 3.0 / z3;
  const double sign = z3 > 0.0 ? 1.0 : -1.0;
  s.value = (2.0 * a * snr0 - 1.0 / n) / (a + sign * std::sqrt(disc));
  s.root_branch = z3 > 0.0 ? -1 : 1;
  return s;
}

RiskScore sr3_skew_adjusted(const Cumulants& c, const Horizon& h, double b3) {
  require_zetas(c, 3, "sr3_skew_adjusted");
  const double snr0 = snr(c, h);
  const double radicand = 1.0 + b3 * c.zeta(3) / 3.0 * snr0;
  if (radicand < 0.0) {
    throw std::domain_error(
        "sr3 adjustment undefined: 1 + b3 zeta_3 snr / 3 is negative");
  }
  RiskScore s;
  s.method = ScoreMethod::sr3;
  s.value = snr0 * std::sqrt(radicand);
  return s;
}

}  // namespace roycrit
