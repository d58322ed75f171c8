#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "roycrit/roy.hpp"

namespace roycrit {

// Sorted sample of per-period returns (or horizon means) together with the
// seed that produced it.
class EmpiricalSample {
 public:
  EmpiricalSample(std::vector<double> values, std::uint64_t seed);

  const std::vector<double>& values() const { return values_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t size() const { return values_.size(); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // Fraction of values <= t.
  double cdf(double t) const;

 private:
  std::vector<double> values_;
  std::uint64_t seed_;
};

struct NormalSpec {
  double mean = 0.0;
  double sigma = 1.0;
};

struct ShiftedGammaSpec {
  double shape = 1.0;
  double rate = 1.0;
  double shift = 0.0;
};

// Normal(mu, sigma^2) base plus a constant bonus with probability p. At
// horizon 1 the base draw of path i coincides with NormalSpec{mu, sigma}
// under the same seed, so base/bonus samples are pathwise coupled.
struct BonusMixtureSpec {
  double mu = 0.0;
  double sigma = 1.0;
  double p = 0.0;
  double bonus = 0.0;
};

// Family parameters plus the horizon: when horizon > 1 each generated value
// is the mean of `horizon` i.i.d. per-period draws.
struct GeneratorSpec {
  std::variant<NormalSpec, ShiftedGammaSpec, BonusMixtureSpec> family;
  int horizon = 1;
};

// Name of the pseudo-random scheme, for reproducibility reports.
const char* rng_algorithm();

// Deterministic in (spec, paths, seed); n_threads only partitions the work
// (0 = pick automatically) and never changes the result, because every path
// draws from its own counter-derived substream.
EmpiricalSample simulate(const GeneratorSpec& spec, std::size_t paths,
                         std::uint64_t seed, int n_threads = 0);

struct LossProbability {
  double p = 0.0;
  double se = 0.0;  // binomial standard error sqrt(p(1-p)/N)
};

LossProbability empirical_loss_probability(const EmpiricalSample& s,
                                           double r0);

enum class FosdVerdict {
  a_dominates,
  b_dominates,
  tie,  // mutual non-strict dominance within slack
  incomparable,
};

std::string to_string(FosdVerdict v);

// First-order dominance on the merged sample grid, with additive slack
// absorbing Monte Carlo noise.
FosdVerdict fosd_check(const EmpiricalSample& a, const EmpiricalSample& b,
                       double slack);

// Default slack 4 * sqrt(1 / (4 min(N_a, N_b))).
FosdVerdict fosd_check(const EmpiricalSample& a, const EmpiricalSample& b);

// Step-function CDF oracle over a (shared, immutable) copy of the sample.
CdfOracle empirical_cdf_oracle(const EmpiricalSample& s);

// Single-column text export, one value per line, full precision.
void write_values(const EmpiricalSample& s, std::ostream& out);
void write_values(const EmpiricalSample& s, const std::string& path);

}  // namespace roycrit
