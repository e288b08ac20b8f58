#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "depgini/quadrature.hpp"

namespace depgini {

/// Uniform law on [a, b], 0 <= a < b.
struct Uniform {
  double a = 0.0;
  double b = 1.0;
  bool operator==(const Uniform&) const = default;
};

/// Exponential law with rate lambda > 0.
struct Exponential {
  double rate = 1.0;
  bool operator==(const Exponential&) const = default;
};

/// Piecewise-linear quantile function through (p_i, x_i).
///
/// p runs strictly from 0 to 1 and x is nondecreasing; repeated x values are
/// atoms, so a constant grid is a point mass.
struct TabulatedQuantile {
  std::vector<double> p;
  std::vector<double> x;
  bool operator==(const TabulatedQuantile&) const = default;
};

enum class MarginalKind { uniform, exponential, tabulated };

/// A lifetime law on [0, inf). Immutable once constructed.
class MarginalDistribution {
 public:
  using Law = std::variant<Uniform, Exponential, TabulatedQuantile>;

  /// Validates the parameters; throws ConstructionError.
  explicit MarginalDistribution(Law law);

  static MarginalDistribution uniform(double a, double b);
  static MarginalDistribution exponential(double rate);
  static MarginalDistribution tabulated(std::vector<double> p, std::vector<double> x);

  MarginalKind kind() const;
  const Law& law() const { return law_; }

  double cdf(double t) const;
  double sf(double t) const;
  /// Generalized inverse of the cdf; quantile(0) and quantile(1) are the
  /// ends of the support (the latter is +inf for the exponential).
  double quantile(double p) const;
  /// Inverse of the survival function, sf_quantile(q) = quantile(1 - q),
  /// evaluated without the cancellation in 1 - q where a closed form exists.
  double sf_quantile(double q) const;
  /// Throws UnsupportedOperation for a tabulated law.
  double density(double t) const;
  /// dQ/dp. For a tabulated law this is the slope of the segment holding p.
  double quantile_derivative(double p) const;

  bool has_density() const { return kind() != MarginalKind::tabulated; }
  double mean() const { return mean_; }
  double median() const { return quantile(0.5); }

  double support_lower() const;
  double support_upper() const;
  /// Points where the cdf is not smooth (support ends, tabulated knots).
  std::vector<double> kinks() const;

  QuantileMap quantile_map() const;

  /// Grammar form, e.g. "uniform:0,1" or "exp:2".
  std::string describe() const;

  bool operator==(const MarginalDistribution& other) const { return law_ == other.law_; }

 private:
  Law law_;
  double mean_;
};

enum class Evaluation { cdf, sf, quantile, density };

double evaluate(const MarginalDistribution& dist, Evaluation which, double arg);

struct Moments {
  double mean;
  double median;
};

Moments moments(const MarginalDistribution& dist);

/// Tabulates the quantile function of `dist` on the given probability grid.
/// The last point maps to `tail_cutoff` when the upper support is infinite.
MarginalDistribution tabulate(const MarginalDistribution& dist, const std::vector<double>& probs,
                              double tail_cutoff);

/// Law of X + lambda (lambda >= 0). Exponential laws become tabulated.
MarginalDistribution shifted(const MarginalDistribution& dist, double lambda, int grid = 4001);

/// Law of lambda * X (lambda > 0).
MarginalDistribution scaled(const MarginalDistribution& dist, double lambda);

/// Reads a two-column CSV with header `p,x`.
MarginalDistribution read_tabulated_csv(std::istream& in);
MarginalDistribution read_tabulated_csv(const std::string& path);

}  // namespace depgini
