#include "depgini/gini.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "depgini/error.hpp"

namespace depgini {

namespace {

// Integrands written in terms of cdfs approach 1 - 1 in the tail and carry
// rounding noise that does not decay; they are cut where every survival
// function is below this level, which drops at most ~1e-18 * mean.
constexpr double kTailSurvival = 1e-18;

constexpr double kBoundTol = 1e-8;

QuadResult integrate_lifetimes(const Integrand& f, const std::vector<const MarginalDistribution*>& ms,
                               const QuadratureConfig& cfg, bool truncate) {
  bool same = true;
  for (const auto* m : ms) same = same && (*m == *ms.front());
  if (cfg.halfline_substitution == HalflineSubstitution::marginal_quantile && same &&
      ms.front()->has_density()) {
    return integrate_halfline(f, cfg, ms.front()->quantile_map());
  }

  std::vector<double> breaks;
  bool bounded = true;
  for (const auto* m : ms) {
    const auto k = m->kinks();
    breaks.insert(breaks.end(), k.begin(), k.end());
    bounded = bounded && std::isfinite(m->support_upper());
  }
  if (truncate && !bounded) {
    double cut = 0.0;
    for (const auto* m : ms) cut = std::max(cut, m->sf_quantile(kTailSurvival));
    breaks.push_back(cut);
    bounded = true;
  }
  return integrate_halfline_split(f, breaks, bounded, cfg);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

QuadResult integrate_over_lifetimes(const Integrand& f,
                                    const std::vector<const MarginalDistribution*>& marginals,
                                    const QuadratureConfig& cfg) {
  if (marginals.empty()) throw ArgumentError("at least one marginal is required");
  return integrate_lifetimes(f, marginals, cfg, false);
}

// --- BivariateModel ----------------------------------------------------------

BivariateModel::BivariateModel(Copula copula, MarginalDistribution marginal_x,
                               MarginalDistribution marginal_y, CopulaOrientation orientation)
    : copula_(copula), mx_(std::move(marginal_x)), my_(std::move(marginal_y)), orientation_(orientation) {}

// The survival transform is an involution, so whichever joint function the
// family is attached to, the other one is its survival copula.
double BivariateModel::cdf_copula(double u, double v) const {
  return orientation_ == CopulaOrientation::given_cdf_copula ? copula_.cdf(u, v) : copula_.survival(u, v);
}

double BivariateModel::survival_copula(double u, double v) const {
  return orientation_ == CopulaOrientation::given_cdf_copula ? copula_.survival(u, v) : copula_.cdf(u, v);
}

double BivariateModel::survival_copula_d1(double u, double v) const {
  return orientation_ == CopulaOrientation::given_cdf_copula ? copula_.survival_d1(u, v) : copula_.d1(u, v);
}

double BivariateModel::survival_copula_d2(double u, double v) const {
  return orientation_ == CopulaOrientation::given_cdf_copula ? copula_.survival_d2(u, v) : copula_.d2(u, v);
}

double BivariateModel::joint_sf(double x, double y) const {
  return survival_copula(mx_.sf(x), my_.sf(y));
}

std::string to_string(GmdMethod method) {
  switch (method) {
    case GmdMethod::sf_integral: return "sf_integral";
    case GmdMethod::cdf_integral: return "cdf_integral";
    case GmdMethod::covariance_repr: return "covariance_repr";
  }
  return "?";
}

void Diagnostics::absorb(const QuadResult& r) {
  panels += r.panels;
  error_estimate += r.error_estimate;
  converged = converged && r.converged;
}

// --- univariate ----------------------------------------------------------------

double gmd_univariate(const MarginalDistribution& m, const QuadratureConfig& cfg) {
  const auto r = integrate_lifetimes([&m](double t) { return m.cdf(t) * m.sf(t); }, {&m}, cfg, false);
  if (!r.converged) throw NumericalError("univariate GMD integral did not converge");
  return std::max(0.0, 2.0 * r.value);
}

double gini_univariate(const MarginalDistribution& m, const QuadratureConfig& cfg) {
  return gmd_univariate(m, cfg) / (2.0 * m.mean());
}

// --- bivariate -----------------------------------------------------------------

GiniReport gmd_bivariate(const BivariateModel& model, IntegralForm form, const QuadratureConfig& cfg) {
  const auto& mx = model.marginal_x();
  const auto& my = model.marginal_y();
  const std::vector<const MarginalDistribution*> ms{&mx, &my};
  GiniReport rep;
  QuadResult gmd;
  QuadResult lo;
  QuadResult hi;
  if (form == IntegralForm::sf) {
    rep.method = GmdMethod::sf_integral;
    auto joint = [&](double t) { return model.survival_copula(mx.sf(t), my.sf(t)); };
    gmd = integrate_lifetimes([&](double t) { return mx.sf(t) + my.sf(t) - 2.0 * joint(t); }, ms, cfg, false);
    lo = integrate_lifetimes(joint, ms, cfg, false);
    hi = integrate_lifetimes([&](double t) { return mx.sf(t) + my.sf(t) - joint(t); }, ms, cfg, false);
  } else {
    rep.method = GmdMethod::cdf_integral;
    auto joint = [&](double t) { return model.cdf_copula(mx.cdf(t), my.cdf(t)); };
    gmd = integrate_lifetimes([&](double t) { return mx.cdf(t) + my.cdf(t) - 2.0 * joint(t); }, ms, cfg, true);
    lo = integrate_lifetimes([&](double t) { return 1.0 - mx.cdf(t) - my.cdf(t) + joint(t); }, ms, cfg, true);
    hi = integrate_lifetimes([&](double t) { return 1.0 - joint(t); }, ms, cfg, true);
  }
  rep.gmd = std::max(0.0, gmd.value);
  rep.e_min = lo.value;
  rep.e_max = hi.value;
  rep.gini = rep.gmd / (rep.e_min + rep.e_max);
  rep.diagnostics.absorb(gmd);
  rep.diagnostics.absorb(lo);
  rep.diagnostics.absorb(hi);
  return rep;
}

GammaValues gamma_functions(const BivariateModel& model, double t) {
  if (std::isnan(t) || t < 0.0) throw ArgumentError("gamma functions need t >= 0");
  const double u = model.marginal_x().sf(t);
  const double v = model.marginal_y().sf(t);
  return {model.survival_copula_d1(u, v), model.survival_copula_d2(u, v)};
}

CovarianceReport assemble_covariance_report(const CovarianceTerms& in, Diagnostics diagnostics) {
  CovarianceReport out;
  out.terms = in;
  auto& t = out.terms;
  t.cov_x_gamma1 = t.e_x_gamma1 - t.mean_x * t.e_gamma1;
  t.cov_y_gamma2 = t.e_y_gamma2 - t.mean_y * t.e_gamma2;
  auto& r = out.summary;
  r.method = GmdMethod::covariance_repr;
  r.gmd = std::max(0.0, 2.0 * (t.mean_x - t.mean_y) * (0.5 - t.e_gamma1) - 2.0 * t.cov_x_gamma1 -
                            2.0 * t.cov_y_gamma2);
  r.e_min = t.e_x_gamma1 + t.e_y_gamma2;
  r.e_max = t.mean_x + t.mean_y - r.e_min;
  r.gini = r.gmd / (r.e_min + r.e_max);
  r.diagnostics = diagnostics;
  return out;
}

CovarianceReport covariance_representation(const BivariateModel& model, const QuadratureConfig& cfg) {
  const auto& mx = model.marginal_x();
  const auto& my = model.marginal_y();
  if (!mx.has_density() || !my.has_density()) {
    throw UnsupportedOperation("covariance representation needs marginal densities");
  }
  if (!model.copula().has_density()) {
    throw UnsupportedOperation("covariance representation needs an absolutely continuous copula");
  }
  const std::vector<const MarginalDistribution*> ms{&mx, &my};
  Diagnostics diag;
  auto run = [&](const Integrand& f) {
    const auto r = integrate_lifetimes(f, ms, cfg, false);
    diag.absorb(r);
    return r.value;
  };
  CovarianceTerms t;
  t.mean_x = mx.mean();
  t.mean_y = my.mean();
  t.e_gamma1 = run([&](double s) { return gamma_functions(model, s).gamma1 * mx.density(s); });
  t.e_gamma2 = run([&](double s) { return gamma_functions(model, s).gamma2 * my.density(s); });
  t.e_x_gamma1 = run([&](double s) { return s * gamma_functions(model, s).gamma1 * mx.density(s); });
  t.e_y_gamma2 = run([&](double s) { return s * gamma_functions(model, s).gamma2 * my.density(s); });
  return assemble_covariance_report(t, diag);
}

double gini_association(const Copula& c, const QuadratureConfig& cfg) {
  const auto anti = integrate_unit([&c](double u) { return c.cdf(u, 1.0 - u); }, cfg);
  const auto diag = integrate_unit([&c](double u) { return u - c.cdf(u, u); }, cfg);
  return 4.0 * (anti.value - diag.value);
}

// --- multivariate --------------------------------------------------------------

MultivariateIdModel::MultivariateIdModel(int n, MarginalDistribution marginal, Diagonal delta,
                                         Diagonal survival_delta)
    : n_(n), marginal_(std::move(marginal)), delta_(std::move(delta)), survival_delta_(std::move(survival_delta)) {
  if (n_ < 2) throw ConstructionError("multivariate model needs n >= 2");
  if (!delta_ || !survival_delta_) throw ConstructionError("diagonal sections are required");
  for (const auto* d : {&delta_, &survival_delta_}) {
    if (std::abs((*d)(0.0)) > 1e-12 || std::abs((*d)(1.0) - 1.0) > 1e-12) {
      throw ConstructionError("diagonal sections must fix 0 and 1");
    }
    for (int i = 1; i < 64; ++i) {
      const double v = (*d)(i / 64.0);
      if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw ConstructionError("diagonal sections must map into [0, 1]");
    }
  }
}

MultivariateIdModel MultivariateIdModel::iid(int n, MarginalDistribution marginal) {
  auto power = [n](double u) { return std::pow(u, n); };
  return {n, std::move(marginal), power, power};
}

MultivariateIdModel MultivariateIdModel::comonotone(int n, MarginalDistribution marginal) {
  auto identity = [](double u) { return u; };
  return {n, std::move(marginal), identity, identity};
}

GiniReport gmd_multivariate(const MultivariateIdModel& model, const QuadratureConfig& cfg) {
  const auto& m = model.marginal();
  const std::vector<const MarginalDistribution*> ms{&m};
  const auto lo = integrate_lifetimes([&](double t) { return model.survival_delta(m.sf(t)); }, ms, cfg, false);
  const auto hi = integrate_lifetimes([&](double t) { return 1.0 - model.delta(m.cdf(t)); }, ms, cfg, true);
  const auto gmd = integrate_lifetimes(
      [&](double t) { return 1.0 - model.delta(m.cdf(t)) - model.survival_delta(m.sf(t)); }, ms, cfg, true);
  GiniReport rep;
  rep.method = GmdMethod::sf_integral;
  rep.gmd = std::max(0.0, gmd.value);
  rep.e_min = lo.value;
  rep.e_max = hi.value;
  rep.gini = rep.gmd / (rep.e_min + rep.e_max);
  rep.diagnostics.absorb(lo);
  rep.diagnostics.absorb(hi);
  rep.diagnostics.absorb(gmd);
  return rep;
}

// --- bounds ------------------------------------------------------------------

double markov_lower_bound(double gmd, double a) {
  if (!(a > 0.0)) throw ArgumentError("Markov bound needs a > 0");
  return 1.0 - gmd / a;
}

double BoundsReport::markov(double a) const { return markov_lower_bound(gmd, a); }

BoundsReport bounds_report(const BivariateModel& model, const QuadratureConfig& cfg) {
  const auto& mx = model.marginal_x();
  const auto& my = model.marginal_y();
  const std::vector<const MarginalDistribution*> ms{&mx, &my};
  BoundsReport rep;
  const auto base = gmd_bivariate(model, IntegralForm::sf, cfg);
  rep.gmd = base.gmd;
  rep.diagnostics = base.diagnostics;
  rep.jensen_lower = std::abs(mx.mean() - my.mean());

  const auto lower = integrate_lifetimes([&](double t) { return std::abs(mx.sf(t) - my.sf(t)); }, ms, cfg, false);
  // 1 - |s - 1| written as min(s, 2 - s) so it decays with the survivals.
  const auto upper = integrate_lifetimes(
      [&](double t) {
        const double s = mx.sf(t) + my.sf(t);
        return std::min(s, 2.0 - s);
      },
      ms, cfg, false);
  rep.fh_lower = lower.value;
  rep.fh_upper = upper.value;
  rep.diagnostics.absorb(lower);
  rep.diagnostics.absorb(upper);

  if (model.identically_distributed()) {
    const double mu = mx.mean();
    const double med = mx.median();
    auto breaks = mx.kinks();
    breaks.push_back(med);
    const auto below = integrate_halfline_split([&](double t) { return t < med ? mx.cdf(t) : 0.0; }, breaks,
                                                true, cfg);
    rep.diagnostics.absorb(below);
    rep.id_median_upper = 2.0 * (mu - med) + 4.0 * below.value;
  }

  const double tol = kBoundTol * std::max(1.0, rep.gmd);
  auto flag = [&](bool bad, const std::string& what) {
    if (bad) rep.violations.push_back(what);
  };
  flag(rep.gmd < rep.jensen_lower - tol, "GMD " + fmt(rep.gmd) + " below Jensen bound " + fmt(rep.jensen_lower));
  flag(rep.gmd < rep.fh_lower - tol, "GMD " + fmt(rep.gmd) + " below FH lower bound " + fmt(rep.fh_lower));
  flag(rep.gmd > rep.fh_upper + tol, "GMD " + fmt(rep.gmd) + " above FH upper bound " + fmt(rep.fh_upper));
  flag(rep.jensen_lower > rep.fh_lower + tol, "Jensen bound exceeds FH lower bound");
  if (rep.id_median_upper) {
    flag(rep.gmd > *rep.id_median_upper + tol,
         "GMD " + fmt(rep.gmd) + " above median bound " + fmt(*rep.id_median_upper));
  }
  return rep;
}

SandwichReport ordered_sandwich(const BivariateModel& model_xy, const BivariateModel& model_xx,
                                const BivariateModel& model_yy, const QuadratureConfig& cfg) {
  if (!(model_xy.copula() == model_xx.copula()) || !(model_xy.copula() == model_yy.copula()) ||
      model_xy.orientation() != model_xx.orientation() || model_xy.orientation() != model_yy.orientation()) {
    throw PreconditionError("all three models must share one survival copula");
  }
  const auto& fx = model_xy.marginal_x();
  const auto& fy = model_xy.marginal_y();
  if (!(model_xx.marginal_x() == fx) || !(model_xx.marginal_y() == fx)) {
    throw PreconditionError("model_xx must couple two copies of X");
  }
  if (!(model_yy.marginal_x() == fy) || !(model_yy.marginal_y() == fy)) {
    throw PreconditionError("model_yy must couple two copies of Y");
  }
  for (int i = 0; i <= 1000; ++i) {
    const double u = i / 1001.0;
    const double t = u / (1.0 - u);
    if (fx.sf(t) > fy.sf(t) + 1e-12) {
      throw PreconditionError("X is not stochastically smaller than Y: survival of X exceeds that of Y at t = " +
                              fmt(t));
    }
  }
  const double shift = 2.0 * (fy.mean() - fx.mean());
  SandwichReport rep;
  rep.middle = gmd_bivariate(model_xy, IntegralForm::sf, cfg).gmd;
  rep.lower = gmd_bivariate(model_yy, IntegralForm::sf, cfg).gmd - shift;
  rep.upper = gmd_bivariate(model_xx, IntegralForm::sf, cfg).gmd + shift;
  rep.holds = rep.lower <= rep.middle + kBoundTol && rep.middle <= rep.upper + kBoundTol;
  return rep;
}

}  // namespace depgini
