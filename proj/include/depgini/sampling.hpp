#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>

#include <Eigen/Dense>

#include "depgini/gini.hpp"
#include "depgini/systems.hpp"

namespace depgini {

/// Counter-based uniform stream: uniform(i) depends only on
/// (seed, stream_id, i), so draws are reproducible bit for bit and
/// substreams can be consumed in any order or in parallel.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed, std::uint64_t stream_id = 0) : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  /// One uniform in (0, 1).
  double uniform(std::uint64_t index) const;
  /// Two independent uniforms from one generator block.
  std::pair<double, double> uniform_pair(std::uint64_t index) const;

  SeededStream substream(std::uint64_t stream_id) const { return SeededStream(seed_, stream_id); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

struct PairSample {
  Eigen::ArrayXd x;
  Eigen::ArrayXd y;

  Eigen::Index n() const { return x.size(); }
  Eigen::ArrayXd l() const { return x.min(y); }
  Eigen::ArrayXd u() const { return x.max(y); }
  Eigen::ArrayXd z() const { return (x - y).abs(); }
};

/// Draws (X_i, Y_i) by conditional inversion: U and Z uniform, V the
/// conditional inverse of Z given U. A cdf-oriented model maps through the
/// quantile functions; a survival-oriented one through the inverse
/// survival functions, so the family is the survival copula of the sample.
PairSample sample_pairs(const BivariateModel& model, std::int64_t n, const SeededStream& stream);

struct EmpiricalIndices {
  double gmd_hat;
  double gini_hat;
};

/// gmd_hat = mean |X - Y|, gini_hat = sum |X - Y| / sum (X + Y).
EmpiricalIndices empirical_indices(const PairSample& s);

/// Fraction of pairs with |X - Y| < a.
double proportion_within(const PairSample& s, double a);

/// Fills `out` with one component vector for draw number `draw`.
using ComponentSampler = std::function<void(const SeededStream&, std::uint64_t draw, std::span<double> out)>;

/// Independent components with common law `m`.
ComponentSampler iid_sampler(const MarginalDistribution& m);

/// Per draw: system lifetime T, and the smallest and largest of the n
/// component lifetimes.
struct SystemSample {
  Eigen::ArrayXd first;
  Eigen::ArrayXd t;
  Eigen::ArrayXd last;
};

SystemSample simulate_system(const SystemSpec& sys, const ComponentSampler& sampler, std::int64_t n,
                             const SeededStream& stream);

/// mean(T - X_{1:n}) / mean(X_{n:n} - X_{1:n}).
double empirical_efficiency(const SystemSample& s);
double empirical_efficiency(const SystemSpec& sys, const ComponentSampler& sampler, std::int64_t n,
                            const SeededStream& stream);

/// Deterministic GMD oracle: copula cell masses on a grid x grid partition,
/// each placed at the quantile image of its cell center.
double grid_oracle_gmd(const BivariateModel& model, int grid);

}  // namespace depgini
