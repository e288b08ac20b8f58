#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "depgini/depgini.hpp"
#include "model_matrix.hpp"

using namespace depgini;
using depgini::testing::model_matrix;
using doctest::Approx;

namespace {

const auto kU = MarginalDistribution::uniform(0, 1);
const auto kE = MarginalDistribution::exponential(1);

// Composite Simpson rule on [0, 1], independent of the library quadrature.
template <class F>
double simpson_unit(F f, int n = 20000) {
  const double h = 1.0 / n;
  double s = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("univariate GMD and index") {
  CHECK(gmd_univariate(kU) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(gini_univariate(kU) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(gmd_univariate(kE) == Approx(1.0).epsilon(1e-12));
  CHECK(gini_univariate(kE) == Approx(0.5).epsilon(1e-12));
  CHECK(gmd_univariate(MarginalDistribution::uniform(0, 4)) == Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("report identities hold across the model matrix") {
  for (const auto& [label, model] : model_matrix()) {
    CAPTURE(label);
    const auto sf = gmd_bivariate(model, IntegralForm::sf);
    const auto cdf = gmd_bivariate(model, IntegralForm::cdf);
    CHECK(sf.diagnostics.converged);
    CHECK(cdf.diagnostics.converged);
    CHECK(std::abs(sf.gmd - cdf.gmd) <= 1e-8);
    CHECK(std::abs(sf.gmd - (sf.e_max - sf.e_min)) <= 1e-8);
    CHECK(std::abs(sf.gini - sf.gmd / (sf.e_min + sf.e_max)) <= 1e-10);
    const double means = model.marginal_x().mean() + model.marginal_y().mean();
    CHECK(sf.e_min + sf.e_max == Approx(means).epsilon(1e-9));
    CHECK(sf.gmd >= -1e-12);
    CHECK(sf.gini <= 1.0 + 1e-12);
  }
}

TEST_CASE("FGM with uniform marginals has GMD 1/3 - theta/15") {
  // E|U - V| = 2 int (t - C(t, t)) dt with C(t, t) = t^2 (1 + theta (1 - t)^2).
  for (double th : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    const auto r = gmd_bivariate(BivariateModel(Copula::fgm(th), kU, kU));
    const double oracle = 2.0 * simpson_unit([&](double t) { return t - t * t * (1 + th * (1 - t) * (1 - t)); });
    CHECK(r.gmd == Approx(oracle).epsilon(1e-10));
    CHECK(r.gmd == Approx(1.0 / 3.0 - th / 15.0).epsilon(1e-12));
  }
}

TEST_CASE("extreme copulas") {
  CHECK(gmd_bivariate(BivariateModel(Copula::upper_fh(), kE, kE)).gmd == Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(gmd_bivariate(BivariateModel(Copula::lower_fh(), kU, kU)).gmd == Approx(0.5).epsilon(1e-12));
  const auto w = gmd_bivariate(BivariateModel(Copula::lower_fh(), kE, kE));
  CHECK(w.gini == Approx(std::log(2.0)).epsilon(1e-9));
  const auto pi = gmd_bivariate(BivariateModel(Copula::independence(), kE, kE));
  CHECK(pi.gmd == Approx(1.0).epsilon(1e-12));
  CHECK(pi.gini == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("orientation: radially symmetric families do not care") {
  for (const auto& c : {Copula::fgm(0.8), Copula::frank(-3.0), Copula::independence()}) {
    const auto a = gmd_bivariate(BivariateModel(c, kE, kU, CopulaOrientation::given_cdf_copula));
    const auto b = gmd_bivariate(BivariateModel(c, kE, kU, CopulaOrientation::given_survival_copula));
    CHECK(a.gmd == Approx(b.gmd).epsilon(1e-10));
  }
  const auto a = gmd_bivariate(BivariateModel(Copula::clayton(1), kE, kE, CopulaOrientation::given_cdf_copula));
  const auto b = gmd_bivariate(BivariateModel(Copula::clayton(1), kE, kE, CopulaOrientation::given_survival_copula));
  CHECK(std::abs(a.gmd - b.gmd) > 1e-3);
}

TEST_CASE("gamma functions") {
  const BivariateModel pi(Copula::independence(), kE, kU, CopulaOrientation::given_cdf_copula);
  const auto g = gamma_functions(pi, 0.4);
  CHECK(g.gamma1 == Approx(kU.sf(0.4)));
  CHECK(g.gamma2 == Approx(kE.sf(0.4)));
}

TEST_CASE("covariance representation matches the integral route") {
  for (const auto& [label, model] : model_matrix(true)) {
    CAPTURE(label);
    const auto cov = covariance_representation(model);
    const auto integral = gmd_bivariate(model);
    CHECK(std::abs(cov.summary.gmd - integral.gmd) <= 1e-6);
    CHECK(std::abs(cov.summary.e_min - integral.e_min) <= 1e-6);
    CHECK(cov.terms.e_gamma1 + cov.terms.e_gamma2 == Approx(1.0).epsilon(1e-7));
    CHECK(cov.summary.method == GmdMethod::covariance_repr);
  }
}

TEST_CASE("covariance representation refuses singular or density-free inputs") {
  CHECK_THROWS_AS(covariance_representation(BivariateModel(Copula::upper_fh(), kE, kE)), UnsupportedOperation);
  CHECK_THROWS_AS(covariance_representation(BivariateModel(Copula::lower_fh(), kU, kU)), UnsupportedOperation);
  const auto tab = MarginalDistribution::tabulated({0, 0.5, 1}, {0, 1, 2});
  CHECK_THROWS_AS(covariance_representation(BivariateModel(Copula::fgm(0.5), tab, tab)), UnsupportedOperation);
}

TEST_CASE("exponential-conditionals model") {
  const ExponentialConditionalsModel ec(1, 1, 1);
  CHECK(ec.exchangeable());
  CHECK(ec.c11() == Approx(-0.516932).epsilon(1e-5));
  // Density integrates to one: marginal density check.
  QuadratureConfig cfg;
  CHECK(integrate_halfline([&](double x) { return ec.density_x(x); }, cfg).value == Approx(1.0).epsilon(1e-9));
  const auto cov = covariance_representation(ec);
  CHECK(cov.summary.gini == Approx(0.599843).epsilon(1e-4));
  CHECK(cov.terms.e_gamma1 == Approx(0.5).epsilon(1e-8));
  // Integral route on the joint survival function.
  QuadratureConfig loose;
  loose.abs_tol = 1e-9;
  loose.rel_tol = 1e-8;
  const auto lhs = integrate_halfline(
      [&](double t) { return 2.0 * ec.joint_sf(t, 0.0) - 2.0 * ec.joint_sf(t, t); }, loose);
  CHECK(lhs.value == Approx(cov.summary.gmd).epsilon(1e-6));
}

TEST_CASE("Gini association coefficient") {
  CHECK(gini_association(Copula::independence()) == Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(gini_association(Copula::upper_fh()) == Approx(1.0).epsilon(1e-10));
  CHECK(gini_association(Copula::lower_fh()) == Approx(-1.0).epsilon(1e-10));
  const auto c = Copula::clayton(1.0);
  const double oracle = 4.0 * (simpson_unit([&](double u) { return c.cdf(u, 1 - u); }) -
                               simpson_unit([&](double u) { return u - c.cdf(u, u); }));
  CHECK(gini_association(c) == Approx(oracle).epsilon(1e-8));
}

TEST_CASE("multivariate i.d. GMD") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const auto u = gmd_multivariate(MultivariateIdModel::iid(n, kU));
    CHECK(u.gini == Approx((n - 1.0) / (n + 1.0)).epsilon(1e-10));
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    const auto e = gmd_multivariate(MultivariateIdModel::iid(n, kE));
    CHECK(e.gmd == Approx(h - 1.0 / n).epsilon(1e-10));
    CHECK(e.gini == Approx((n * h - 1) / (n * h + 1)).epsilon(1e-10));
    CHECK(gmd_multivariate(MultivariateIdModel::comonotone(n, kE)).gmd == Approx(0.0).scale(1).epsilon(1e-10));
  }
  // n = 2 agrees with the bivariate route.
  const auto c = Copula::clayton(2.0);
  const MultivariateIdModel two(
      2, kE, [&](double u) { return c.cdf(u, u); }, [&](double u) { return c.survival(u, u); });
  CHECK(gmd_multivariate(two).gmd == Approx(gmd_bivariate(BivariateModel(c, kE, kE)).gmd).epsilon(1e-9));
  CHECK_THROWS(MultivariateIdModel::iid(1, kE));
}

TEST_CASE("bounds hold across the model matrix") {
  for (const auto& [label, model] : model_matrix()) {
    CAPTURE(label);
    const auto b = bounds_report(model);
    CHECK(b.violations.empty());
    CHECK(b.jensen_lower <= b.gmd + 1e-8);
    CHECK(b.fh_lower <= b.gmd + 1e-8);
    CHECK(b.gmd <= b.fh_upper + 1e-8);
    if (b.id_median_upper) CHECK(b.gmd <= *b.id_median_upper + 1e-8);
    CHECK(b.markov(2.0 * b.gmd + 1e-3) >= 0.0);
  }
}

TEST_CASE("closed-form bound values") {
  const auto uu = bounds_report(BivariateModel(Copula::independence(), kU, kU));
  CHECK(uu.fh_upper == Approx(0.5).epsilon(1e-9));
  CHECK(uu.fh_lower == Approx(0.0).scale(1).epsilon(1e-12));
  CHECK(*uu.id_median_upper == Approx(0.5).epsilon(1e-12));
  // Uniform(0, b): median bound b/2.
  const auto u3 = MarginalDistribution::uniform(0, 3);
  CHECK(*bounds_report(BivariateModel(Copula::fgm(0.2), u3, u3)).id_median_upper == Approx(1.5));
  // Exponential with mean mu: 2 mu ln 2.
  const auto e2 = MarginalDistribution::exponential(0.5);
  CHECK(*bounds_report(BivariateModel(Copula::frank(2), e2, e2)).id_median_upper ==
        Approx(4.0 * std::log(2.0)).epsilon(1e-12));
  // Exponential(1) against Uniform(0,1): M attains the lower bound and W
  // the upper one, where Y = exp(-X) and E|X - exp(-X)| = 2 w + w^2 - 1/2
  // with w = exp(-w).
  const auto eu = bounds_report(BivariateModel(Copula::independence(), kE, kU));
  CHECK(eu.fh_lower == Approx(0.5).epsilon(1e-9));
  double w = 0.5;
  for (int i = 0; i < 50; ++i) w -= (w - std::exp(-w)) / (1 + std::exp(-w));
  CHECK(eu.fh_upper == Approx(2 * w + w * w - 0.5).epsilon(1e-9));
  CHECK(std::abs(eu.fh_upper - 0.955937) <= 1e-5);
  CHECK_FALSE(eu.id_median_upper.has_value());
}

TEST_CASE("Markov lower bound") {
  CHECK(markov_lower_bound(1.0, 2.0) == Approx(0.5));
  CHECK_THROWS_AS(markov_lower_bound(1.0, 0.0), ArgumentError);
}

TEST_CASE("ordered sandwich") {
  const auto u2 = MarginalDistribution::uniform(0, 2);
  const auto pi = Copula::independence();
  const auto s = ordered_sandwich(BivariateModel(pi, kU, u2), BivariateModel(pi, kU, kU), BivariateModel(pi, u2, u2));
  CHECK(s.holds);
  // E|X - Y| with X ~ U(0,1), Y ~ U(0,2) independent: int_0^1 (x^2 + (2 - x)^2) / 4 dx.
  CHECK(s.middle == Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(s.lower <= s.middle);
  CHECK(s.middle <= s.upper);
  for (double th : {-0.7, 0.4, 1.0}) {
    const auto c = Copula::fgm(th);
    const auto e2 = MarginalDistribution::exponential(0.5);
    const auto r = ordered_sandwich(BivariateModel(c, kE, e2, CopulaOrientation::given_survival_copula),
                                    BivariateModel(c, kE, kE, CopulaOrientation::given_survival_copula),
                                    BivariateModel(c, e2, e2, CopulaOrientation::given_survival_copula));
    CHECK(r.holds);
  }
  CHECK_THROWS_AS(
      ordered_sandwich(BivariateModel(pi, u2, kU), BivariateModel(pi, u2, u2), BivariateModel(pi, kU, kU)),
      PreconditionError);
}

TEST_CASE("translation and scale laws") {
  for (const auto& c : {Copula::clayton(1.5), Copula::frank(-2.0), Copula::fgm(0.5)}) {
    const double lambda = 0.75;
    const auto u2 = MarginalDistribution::uniform(0, 2);
    const auto base = gmd_bivariate(BivariateModel(c, kU, u2));
    const auto moved = gmd_bivariate(BivariateModel(c, shifted(kU, lambda), shifted(u2, lambda)));
    CHECK(std::abs(moved.gmd - base.gmd) <= 1e-8);
    // Means 1/2 and 1: G scales by 1.5 / (1.5 + 2 lambda).
    CHECK(moved.gini == Approx(base.gini * 1.5 / (1.5 + 2 * lambda)).epsilon(1e-8));
    const auto big = gmd_bivariate(BivariateModel(c, scaled(kE, 2.5), scaled(kU, 2.5)));
    const auto small = gmd_bivariate(BivariateModel(c, kE, kU));
    CHECK(std::abs(big.gmd - 2.5 * small.gmd) <= 1e-8);
    CHECK(std::abs(big.gini - small.gini) <= 1e-8);
  }
}

TEST_CASE("translation of a tabulated exponential law") {
  std::vector<double> probs;
  for (int i = 0; i <= 400; ++i) probs.push_back(i / 400.0);
  const auto tab = tabulate(kE, probs, 12.0);
  const auto c = Copula::clayton(1.0);
  const auto base = gmd_bivariate(BivariateModel(c, tab, tab, CopulaOrientation::given_survival_copula));
  const auto moved =
      gmd_bivariate(BivariateModel(c, shifted(tab, 2.0), shifted(tab, 2.0), CopulaOrientation::given_survival_copula));
  CHECK(std::abs(moved.gmd - base.gmd) <= 1e-8);
  const double m = 2.0 * tab.mean();
  CHECK(moved.gini == Approx(base.gini * m / (m + 4.0)).epsilon(1e-8));
  // The shifted exponential itself stays close to the exact law.
  const auto exact = gmd_bivariate(BivariateModel(c, kE, kE, CopulaOrientation::given_survival_copula));
  const auto approx = gmd_bivariate(
      BivariateModel(c, shifted(kE, 2.0), shifted(kE, 2.0), CopulaOrientation::given_survival_copula));
  CHECK(approx.gmd == Approx(exact.gmd).epsilon(1e-5));
}

TEST_CASE("concordance ordering decreases the GMD") {
  const std::vector<std::vector<Copula>> chains{
      {Copula::fgm(-1), Copula::fgm(-0.5), Copula::fgm(0), Copula::fgm(0.5), Copula::fgm(1)},
      {Copula::clayton(-0.8), Copula::clayton(-0.2), Copula::clayton(0.5), Copula::clayton(2), Copula::clayton(8)},
      {Copula::frank(-8), Copula::frank(-1), Copula::frank(1), Copula::frank(4), Copula::frank(20)}};
  for (const auto& chain : chains) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const double a = gmd_bivariate(BivariateModel(chain[i], kE, kE)).gmd;
      const double b = gmd_bivariate(BivariateModel(chain[i + 1], kE, kE)).gmd;
      CHECK(b < a);
    }
  }
}

TEST_CASE("a less dispersed law has a smaller GMD") {
  double prev = 0.0;
  for (double a : {0.5, 1.0, 2.0, 4.0}) {
    const auto m = MarginalDistribution::uniform(0, a);
    const double g = gmd_bivariate(BivariateModel(Copula::frank(2), m, m)).gmd;
    CHECK(g > prev);
    prev = g;
  }
}

TEST_CASE("tabulated marginals integrate across their knots") {
  const auto tab = tabulate(kE, {0, 0.25, 0.5, 0.75, 0.9, 0.99, 1}, 12.0);
  const auto sf = gmd_bivariate(BivariateModel(Copula::fgm(0.5), tab, tab), IntegralForm::sf);
  const auto cdf = gmd_bivariate(BivariateModel(Copula::fgm(0.5), tab, tab), IntegralForm::cdf);
  CHECK(sf.diagnostics.converged);
  CHECK(std::abs(sf.gmd - cdf.gmd) <= 1e-8);
}
