#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "depgini/copulas.hpp"
#include "depgini/marginals.hpp"
#include "depgini/quadrature.hpp"

namespace depgini {

/// Which joint function the copula of a BivariateModel couples:
/// F(x, y) = C(F_X(x), F_Y(y)) or Fbar(x, y) = C(Fbar_X(x), Fbar_Y(y)).
enum class CopulaOrientation { given_cdf_copula, given_survival_copula };

class BivariateModel {
 public:
  BivariateModel(Copula copula, MarginalDistribution marginal_x, MarginalDistribution marginal_y,
                 CopulaOrientation orientation = CopulaOrientation::given_cdf_copula);

  const Copula& copula() const { return copula_; }
  const MarginalDistribution& marginal_x() const { return mx_; }
  const MarginalDistribution& marginal_y() const { return my_; }
  CopulaOrientation orientation() const { return orientation_; }

  /// C(u, v), the copula of the joint cdf.
  double cdf_copula(double u, double v) const;
  /// C^(u, v), the copula of the joint survival function.
  double survival_copula(double u, double v) const;
  /// Partial derivatives of C^.
  double survival_copula_d1(double u, double v) const;
  double survival_copula_d2(double u, double v) const;

  /// Joint survival Pr(X > x, Y > y).
  double joint_sf(double x, double y) const;

  bool identically_distributed() const { return mx_ == my_; }

 private:
  Copula copula_;
  MarginalDistribution mx_;
  MarginalDistribution my_;
  CopulaOrientation orientation_;
};

enum class GmdMethod { sf_integral, cdf_integral, covariance_repr };

enum class IntegralForm { sf, cdf };

std::string to_string(GmdMethod method);

struct Diagnostics {
  int panels = 0;
  double error_estimate = 0.0;
  bool converged = true;

  void absorb(const QuadResult& r);
};

/// E(L) = e_min and E(U) = e_max are the means of min(X, Y) and max(X, Y).
struct GiniReport {
  double gmd = 0.0;
  double gini = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
  GmdMethod method = GmdMethod::sf_integral;
  Diagnostics diagnostics;
};

double gmd_univariate(const MarginalDistribution& m, const QuadratureConfig& cfg = {});
double gini_univariate(const MarginalDistribution& m, const QuadratureConfig& cfg = {});

GiniReport gmd_bivariate(const BivariateModel& model, IntegralForm form = IntegralForm::sf,
                         const QuadratureConfig& cfg = {});

struct GammaValues {
  double gamma1;
  double gamma2;
};

/// gamma_1(t) = d1 C^(Fbar_X(t), Fbar_Y(t)), gamma_2(t) = d2 C^(...).
GammaValues gamma_functions(const BivariateModel& model, double t);

/// Pieces of the covariance representation, kept for inspection.
struct CovarianceTerms {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double e_gamma1 = 0.0;    ///< E gamma_1(X) = Pr(Y > X)
  double e_gamma2 = 0.0;    ///< E gamma_2(Y) = Pr(X > Y)
  double e_x_gamma1 = 0.0;  ///< E X gamma_1(X)
  double e_y_gamma2 = 0.0;  ///< E Y gamma_2(Y)
  double cov_x_gamma1 = 0.0;
  double cov_y_gamma2 = 0.0;
};

struct CovarianceReport {
  GiniReport summary;
  CovarianceTerms terms;
};

/// Assembles GMD, E(L) and E(U) from the covariance terms. Shared by the
/// copula models and the exponential-conditionals model.
CovarianceReport assemble_covariance_report(const CovarianceTerms& terms, Diagnostics diagnostics);

/// GMD through moments of X gamma_1(X) and Y gamma_2(Y). Needs marginal
/// densities and an absolutely continuous copula: tabulated marginals and
/// the singular M and W throw UnsupportedOperation.
CovarianceReport covariance_representation(const BivariateModel& model,
                                           const QuadratureConfig& cfg = {});

/// gamma_C = 4 (int C(u, 1 - u) du - int (u - C(u, u)) du).
double gini_association(const Copula& c, const QuadratureConfig& cfg = {});

/// n identically distributed lifetimes summarized by the diagonal sections
/// delta(u) = C(u, ..., u) and hat-delta(u) = C^(u, ..., u).
class MultivariateIdModel {
 public:
  using Diagonal = std::function<double(double)>;

  MultivariateIdModel(int n, MarginalDistribution marginal, Diagonal delta, Diagonal survival_delta);

  static MultivariateIdModel iid(int n, MarginalDistribution marginal);
  static MultivariateIdModel comonotone(int n, MarginalDistribution marginal);

  int n() const { return n_; }
  const MarginalDistribution& marginal() const { return marginal_; }
  double delta(double u) const { return delta_(u); }
  double survival_delta(double u) const { return survival_delta_(u); }

 private:
  int n_;
  MarginalDistribution marginal_;
  Diagonal delta_;
  Diagonal survival_delta_;
};

/// e_min = E X_{1:n}, e_max = E X_{n:n}, gmd = E(X_{n:n} - X_{1:n}).
GiniReport gmd_multivariate(const MultivariateIdModel& model, const QuadratureConfig& cfg = {});

struct BoundsReport {
  double gmd = 0.0;
  double jensen_lower = 0.0;
  double fh_lower = 0.0;
  double fh_upper = 0.0;
  std::optional<double> id_median_upper;
  /// Every bound that the computed GMD breaks, as text. Empty unless the
  /// library is wrong.
  std::vector<std::string> violations;
  Diagnostics diagnostics;

  /// Lower bound 1 - GMD / a on Pr(X - a < Y < X + a); a must be positive.
  double markov(double a) const;
};

BoundsReport bounds_report(const BivariateModel& model, const QuadratureConfig& cfg = {});

/// 1 - gmd / a; throws ArgumentError unless a > 0.
double markov_lower_bound(double gmd, double a);

struct SandwichReport {
  double lower = 0.0;   ///< GMD(Y, Y~) - 2 (EY - EX)
  double middle = 0.0;  ///< GMD(X, Y)
  double upper = 0.0;   ///< GMD(X, X~) + 2 (EY - EX)
  bool holds = false;
};

/// For X <=st Y sharing one survival copula. `model_xx` couples two copies
/// of X and `model_yy` two copies of Y. Throws PreconditionError when the
/// stochastic order fails on the check grid or the models do not match.
SandwichReport ordered_sandwich(const BivariateModel& model_xy, const BivariateModel& model_xx,
                                const BivariateModel& model_yy, const QuadratureConfig& cfg = {});

/// Integral over [0, inf) of a function of t, split at the kinks of the
/// given marginals and truncated beyond their common support.
QuadResult integrate_over_lifetimes(const Integrand& f,
                                    const std::vector<const MarginalDistribution*>& marginals,
                                    const QuadratureConfig& cfg);

}  // namespace depgini
