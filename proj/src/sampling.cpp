#include "depgini/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "depgini/error.hpp"
#include "depgini/philox.hpp"

namespace depgini {

namespace {

PhiloxCounter block(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  const PhiloxKey key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return philox4x32_10(ctr, key);
}

std::uint64_t join(std::uint32_t lo, std::uint32_t hi) { return (static_cast<std::uint64_t>(hi) << 32) | lo; }

}  // namespace

double SeededStream::uniform(std::uint64_t index) const {
  const auto w = block(seed_, stream_, index);
  return uniform_from_bits(join(w[0], w[1]));
}

std::pair<double, double> SeededStream::uniform_pair(std::uint64_t index) const {
  const auto w = block(seed_, stream_, index);
  return {uniform_from_bits(join(w[0], w[1])), uniform_from_bits(join(w[2], w[3]))};
}

PairSample sample_pairs(const BivariateModel& model, std::int64_t n, const SeededStream& stream) {
  if (n < 1) throw ArgumentError("sample size must be positive");
  const auto& c = model.copula();
  const auto& mx = model.marginal_x();
  const auto& my = model.marginal_y();
  const bool survival = model.orientation() == CopulaOrientation::given_survival_copula;
  PairSample s;
  s.x.resize(n);
  s.y.resize(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto [u, z] = stream.uniform_pair(static_cast<std::uint64_t>(i));
    const double v = c.conditional_inverse(z, u);
    if (survival) {
      s.x(i) = mx.sf_quantile(u);
      s.y(i) = my.sf_quantile(v);
    } else {
      s.x(i) = mx.quantile(u);
      s.y(i) = my.quantile(v);
    }
  }
  return s;
}

EmpiricalIndices empirical_indices(const PairSample& s) {
  if (s.n() < 1) throw ArgumentError("empty sample");
  const double z = s.z().sum();
  const double denom = s.x.sum() + s.y.sum();
  if (!(denom > 0.0)) throw NumericalError("all sampled lifetimes are zero");
  return {z / static_cast<double>(s.n()), z / denom};
}

double proportion_within(const PairSample& s, double a) {
  if (s.n() < 1) throw ArgumentError("empty sample");
  return static_cast<double>((s.z() < a).count()) / static_cast<double>(s.n());
}

ComponentSampler iid_sampler(const MarginalDistribution& m) {
  return [m](const SeededStream& stream, std::uint64_t draw, std::span<double> out) {
    const std::uint64_t base = draw * out.size();
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = m.quantile(stream.uniform(base + j));
  };
}

SystemSample simulate_system(const SystemSpec& sys, const ComponentSampler& sampler, std::int64_t n,
                             const SeededStream& stream) {
  if (n < 1) throw ArgumentError("sample size must be positive");
  SystemSample s;
  s.first.resize(n);
  s.t.resize(n);
  s.last.resize(n);
  std::vector<double> x(static_cast<std::size_t>(sys.order));
  for (std::int64_t i = 0; i < n; ++i) {
    sampler(stream, static_cast<std::uint64_t>(i), x);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    s.first(i) = *lo;
    s.last(i) = *hi;
    s.t(i) = structure_evaluate(sys, x);
  }
  return s;
}

double empirical_efficiency(const SystemSample& s) {
  const double range = (s.last - s.first).sum();
  if (!(range > 0.0)) throw NumericalError("sampled component lifetimes have zero range");
  return (s.t - s.first).sum() / range;
}

double empirical_efficiency(const SystemSpec& sys, const ComponentSampler& sampler, std::int64_t n,
                            const SeededStream& stream) {
  return empirical_efficiency(simulate_system(sys, sampler, n, stream));
}

double grid_oracle_gmd(const BivariateModel& model, int grid) {
  if (grid < 32) throw ArgumentError("grid oracle needs grid >= 32");
  const int g = grid;
  Eigen::MatrixXd C(g + 1, g + 1);
  for (int i = 0; i <= g; ++i) {
    for (int j = 0; j <= g; ++j) C(i, j) = model.cdf_copula(static_cast<double>(i) / g, static_cast<double>(j) / g);
  }
  Eigen::ArrayXd xs(g);
  Eigen::ArrayXd ys(g);
  for (int i = 0; i < g; ++i) {
    const double p = (i + 0.5) / g;
    xs(i) = model.marginal_x().quantile(p);
    ys(i) = model.marginal_y().quantile(p);
  }
  double total = 0.0;
  for (int j = 0; j < g; ++j) {
    for (int i = 0; i < g; ++i) {
      const double mass = (C(i + 1, j + 1) - C(i, j + 1)) - (C(i + 1, j) - C(i, j));
      total += std::abs(xs(i) - ys(j)) * mass;
    }
  }
  return total;
}

}  // namespace depgini
