#include "roycrit/special_fn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace roycrit {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

void check_hermite_order(int k, int min_order) {
  if (k < min_order || k > kMaxHermiteOrder) {
    throw std::invalid_argument("unsupported Hermite order " +
                                std::to_string(k) + " (supported: " +
                                std::to_string(min_order) + ".." +
                                std::to_string(kMaxHermiteOrder) + ")");
  }
}

// AS 241 (Wichura, 1988), the double-precision PPND16 variant. Accurate to
// about one part in 1e16 on its own; callers polish with one Halley step.
double as241(double q) {
  const double p = q - 0.5;
  if (std::abs(p) <= 0.425) {
    const double r = 0.180625 - p * p;
    return p *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = p < 0.0 ? q : 1.0 - q;
  r = std::sqrt(-std::log(r));
  double z;
  if (r <= 5.0) {
    r -= 1.6;
    z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
            3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
          4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
          2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
          5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return p < 0.0 ? -z : z;
}

}  // namespace

double hermite(int k, double x) {
  check_hermite_order(k, 0);
  double prev = 1.0;  // He_0
  if (k == 0) return prev;
  double cur = x;  // He_1
  for (int i = 1; i < k; ++i) {
    const double next = x * cur - static_cast<double>(i) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_deriv(int k, double x) {
  check_hermite_order(k, 1);
  return static_cast<double>(k) * hermite(k - 1, x);
}

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::domain_error("norm_quantile requires 0 < q < 1");
  }
  // Work in the lower half: for q in [1/2, 1], 1-q is exact (Sterbenz), and
  // Phi(z) for z <= 0 evaluates without cancellation.
  if (q > 0.5) return -norm_quantile(1.0 - q);

  double z = as241(q);
  // One Halley step on f(z) = Phi(z) - q: z <- z - u / (1 + z u / 2),
  // u = f/phi.
  const double u = (norm_cdf(z) - q) / norm_pdf(z);
  z -= u / (1.0 + 0.5 * z * u);
  return z;
}

}  // namespace roycrit
