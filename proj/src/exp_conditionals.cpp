#include "depgini/exp_conditionals.hpp"

#include <cmath>

#include "depgini/error.hpp"

namespace depgini {

namespace {

QuadResult halfline_or_throw(const Integrand& f, const QuadratureConfig& cfg, const char* what) {
  const auto r = integrate_halfline(f, cfg);
  if (!r.converged) throw NumericalError(std::string(what) + " did not converge");
  return r;
}

}  // namespace

ExponentialConditionalsModel::ExponentialConditionalsModel(double c12, double c21, double c22,
                                                           const QuadratureConfig& cfg)
    : c12_(c12), c21_(c21), c22_(c22), cfg_(cfg) {
  if (!(c12 > 0.0) || !(c21 > 0.0) || !(c22 >= 0.0) || !std::isfinite(c12) || !std::isfinite(c21) ||
      !std::isfinite(c22)) {
    throw ConstructionError("exponential conditionals need c12 > 0, c21 > 0, c22 >= 0");
  }
  cfg_.validate();
  const double k = c22_ / (c12_ * c21_);
  const auto norm =
      halfline_or_throw([k](double u) { return std::exp(-u) / (1.0 + k * u); }, cfg_, "normalizing constant");
  c11_ = std::log(norm.value / (c12_ * c21_));
  mean_x_ = halfline_or_throw([this](double x) { return x * density_x(x); }, cfg_, "mean of X").value;
  mean_y_ = halfline_or_throw([this](double y) { return y * density_y(y); }, cfg_, "mean of Y").value;
}

double ExponentialConditionalsModel::joint_density(double x, double y) const {
  if (x < 0.0 || y < 0.0) return 0.0;
  return std::exp(-c11_ - c12_ * x - c21_ * y - c22_ * x * y);
}

double ExponentialConditionalsModel::density_x(double x) const {
  if (x < 0.0) return 0.0;
  return std::exp(-c11_ - c12_ * x) / (c21_ + c22_ * x);
}

double ExponentialConditionalsModel::density_y(double y) const {
  if (y < 0.0) return 0.0;
  return std::exp(-c11_ - c21_ * y) / (c12_ + c22_ * y);
}

double ExponentialConditionalsModel::gamma1(double t) const {
  if (t < 0.0) throw ArgumentError("gamma functions need t >= 0");
  return std::exp(-(c21_ + c22_ * t) * t);
}

double ExponentialConditionalsModel::gamma2(double t) const {
  if (t < 0.0) throw ArgumentError("gamma functions need t >= 0");
  return std::exp(-(c12_ + c22_ * t) * t);
}

double ExponentialConditionalsModel::joint_sf(double x, double y) const {
  if (x < 0.0 || y < 0.0) throw ArgumentError("joint survival needs nonnegative arguments");
  // Pr(Y > y | X = s) = exp(-(c21 + c22 s) y).
  const auto r = integrate_halfline(
      [this, x, y](double u) {
        const double s = x + u;
        return density_x(s) * std::exp(-(c21_ + c22_ * s) * y);
      },
      cfg_);
  return r.value;
}

CovarianceReport covariance_representation(const ExponentialConditionalsModel& model,
                                           const QuadratureConfig& cfg) {
  Diagnostics diag;
  auto run = [&](const Integrand& f) {
    const auto r = integrate_halfline(f, cfg);
    diag.absorb(r);
    return r.value;
  };
  CovarianceTerms t;
  t.mean_x = model.mean_x();
  t.mean_y = model.mean_y();
  t.e_gamma1 = run([&](double s) { return model.gamma1(s) * model.density_x(s); });
  t.e_gamma2 = run([&](double s) { return model.gamma2(s) * model.density_y(s); });
  t.e_x_gamma1 = run([&](double s) { return s * model.gamma1(s) * model.density_x(s); });
  t.e_y_gamma2 = run([&](double s) { return s * model.gamma2(s) * model.density_y(s); });
  return assemble_covariance_report(t, diag);
}

}  // namespace depgini
