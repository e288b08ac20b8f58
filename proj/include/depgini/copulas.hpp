#pragma once

#include <functional>
#include <string>

#include "depgini/marginals.hpp"

namespace depgini {

enum class CopulaFamily { independence, upper_fh, lower_fh, fgm, clayton, frank };

enum class DiagonalKind { cdf, survival };

/// A bivariate copula from one of the supported exchangeable families.
///
/// Legal parameters: FGM theta in [-1, 1]; Clayton theta in (-1, 0) or
/// (0, inf); Frank theta != 0. Pi, M and W take no parameter. The limits of
/// Clayton at -1, 0, inf are the W, Pi, M objects and are not accepted as
/// Clayton parameters.
class Copula {
 public:
  static Copula independence();
  static Copula upper_fh();
  static Copula lower_fh();
  static Copula fgm(double theta);
  static Copula clayton(double theta);
  static Copula frank(double theta);
  /// Family by CLI name: pi, m, w, fgm, clayton, frank.
  static Copula from_name(const std::string& name, double theta = 0.0);

  CopulaFamily family() const { return family_; }
  double theta() const { return theta_; }
  std::string name() const;
  /// Absolutely continuous (M and W are singular).
  bool has_density() const;

  /// C(u, v).
  double cdf(double u, double v) const;
  /// Survival copula u + v - 1 + C(1 - u, 1 - v), evaluated without the
  /// cancellation near the origin.
  double survival(double u, double v) const;
  double diagonal(double u, DiagonalKind which = DiagonalKind::cdf) const;

  /// dC/du on the closed square; at kinks of M and W the right-continuous
  /// conditional value is returned.
  double d1(double u, double v) const;
  double d2(double u, double v) const { return d1(v, u); }
  /// d/du of the survival copula: 1 - d1(1 - u, 1 - v).
  double survival_d1(double u, double v) const { return 1.0 - d1(1.0 - u, 1.0 - v); }
  double survival_d2(double u, double v) const { return survival_d1(v, u); }

  /// C_{2|1}(v | u) = dC/du (u, v) for u in (0, 1).
  double conditional(double v, double given_u) const;
  /// The v in [0, 1] with conditional(v, u) = z.
  double conditional_inverse(double z, double given_u) const;

  bool operator==(const Copula&) const = default;

 private:
  Copula(CopulaFamily family, double theta) : family_(family), theta_(theta) {}

  CopulaFamily family_;
  double theta_;
};

inline double cdf_value(const Copula& c, double u, double v) { return c.cdf(u, v); }
inline double survival_value(const Copula& c, double u, double v) { return c.survival(u, v); }
inline double diagonal(const Copula& c, double u, DiagonalKind which) { return c.diagonal(u, which); }
inline double conditional(const Copula& c, double v, double given_u) { return c.conditional(v, given_u); }
inline double conditional_inverse(const Copula& c, double z, double given_u) {
  return c.conditional_inverse(z, given_u);
}

using CopulaFunction = std::function<double(double, double)>;

/// dC/du by central differences with step h, one-sided within h of the
/// boundary so the stencil stays in the unit square.
double partial_u_fd(const CopulaFunction& c, double u, double v, double h = 1e-6);

/// Solves conditional(v, u) = z by bisection on [0, 1] to 1e-12. Works for
/// any family; the member function uses closed forms instead.
double conditional_inverse_bisection(const Copula& c, double z, double given_u);

/// Diagonal sections of the 4-variate FGM survival copula whose only
/// interaction term is the top-order one: hat-delta_i(u) = u^i for i < 4 and
/// hat-delta_4(u) = u^4 (1 + theta (1 - u)^4).
struct Fgm4Diagonal {
  double theta = 0.0;

  explicit Fgm4Diagonal(double t);
  static constexpr int order() { return 4; }
  double operator()(int i, double u) const;
};

struct SchurReport {
  bool schur_concave = false;
  bool schur_convex = false;
  bool weakly_schur_concave = false;
  bool schur_constant_sf = false;
};

/// Grid checks of Schur properties of the joint survival
/// H(x, y) = C^(F(x), F(y)) built from `survival_copula` and the common
/// marginal `m`. The grid covers the support of `m` (up to its 99% quantile
/// when unbounded) with `grid_size` points per axis; tolerance 1e-9.
SchurReport schur_predicates(const Copula& survival_copula, const MarginalDistribution& m,
                             int grid_size = 64);

}  // namespace depgini
