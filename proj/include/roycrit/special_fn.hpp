#pragma once

namespace roycrit {

// Highest supported Hermite order. The expansions use orders 1-8; two
// orders of headroom are kept so callers can probe one level deeper.
inline constexpr int kMaxHermiteOrder = 10;

// Probabilist's Hermite polynomial He_k(x), evaluated with the three-term
// recurrence He_{k+1}(x) = x He_k(x) - k He_{k-1}(x).
// Throws std::invalid_argument for k < 0 or k > kMaxHermiteOrder.
double hermite(int k, double x);

// He'_k(x) = k He_{k-1}(x). Throws std::invalid_argument unless
// 1 <= k <= kMaxHermiteOrder.
double hermite_deriv(int k, double x);

// Standard normal density.
double norm_pdf(double x);

// Standard normal CDF, accurate to a few ulp via the complementary error
// function.
double norm_cdf(double x);

// Inverse standard normal CDF: AS 241 rational approximation polished by a
// single Halley step. Throws std::domain_error unless 0 < q < 1.
double norm_quantile(double q);

}  // namespace roycrit
