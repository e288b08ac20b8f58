#pragma once

#include "depgini/gini.hpp"
#include "depgini/quadrature.hpp"

namespace depgini {

/// Bivariate law with exponential conditionals and joint density
/// exp(-c11 - c12 x - c21 y - c22 x y) on [0, inf)^2.
///
/// c11 normalizes the density and is found by quadrature. c22 = 0 gives
/// independent exponentials; c12 = c21 gives an exchangeable pair.
class ExponentialConditionalsModel {
 public:
  ExponentialConditionalsModel(double c12, double c21, double c22, const QuadratureConfig& cfg = {});

  double c11() const { return c11_; }
  double c12() const { return c12_; }
  double c21() const { return c21_; }
  double c22() const { return c22_; }

  double joint_density(double x, double y) const;
  /// exp(-c11 - c12 x) / (c21 + c22 x)
  double density_x(double x) const;
  double density_y(double y) const;

  /// Pr(Y > t | X = t) = exp(-(c21 + c22 t) t)
  double gamma1(double t) const;
  /// Pr(X > t | Y = t) = exp(-(c12 + c22 t) t)
  double gamma2(double t) const;

  double mean_x() const { return mean_x_; }
  double mean_y() const { return mean_y_; }

  /// Pr(X > x, Y > y) by a one-dimensional integral over the X density.
  double joint_sf(double x, double y) const;

  bool exchangeable() const { return c12_ == c21_; }

 private:
  double c12_;
  double c21_;
  double c22_;
  double c11_ = 0.0;
  double mean_x_ = 0.0;
  double mean_y_ = 0.0;
  QuadratureConfig cfg_;
};

CovarianceReport covariance_representation(const ExponentialConditionalsModel& model,
                                           const QuadratureConfig& cfg = {});

}  // namespace depgini
