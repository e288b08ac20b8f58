// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "depgini/depgini.hpp"
#include "model_matrix.hpp"
#include "reference_values.hpp"

using namespace depgini;
using depgini::testing::model_matrix;

namespace {

const auto kU = MarginalDistribution::uniform(0, 1);
const auto kE = MarginalDistribution::exponential(1);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what;
      pass = false;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os.precision(10);
    os << what << " got " << got << " want " << want << " tol " << tol;
    expect(std::abs(got - want) <= tol, os.str());
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome table1_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = table1();
  const double secs = seconds_since(t0);
  for (int i = 0; i < 28; ++i) {
    for (int j = 0; j < 2; ++j) {
      o.near(t.values(i, j), depgini::testing::kIidEfficiency[i][j], 5e-4,
             "system " + std::to_string(i + 1) + " column " + std::to_string(j));
    }
  }
  o.expect(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail << "56 values within 5e-4 in " << secs << " s";
  return o;
}

Outcome table2_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = table2();
  const double secs = seconds_since(t0);
  for (int i = 0; i < 28; ++i) {
    for (int j = 0; j < 4; ++j) {
      o.near(t.values(i, j), depgini::testing::kFgmEfficiency[i][j], 5e-4,
             "system " + std::to_string(i + 1) + " column " + std::to_string(j));
    }
  }
  o.expect(secs < 20.0, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail << "112 values within 5e-4 in " << secs << " s";
  return o;
}

Outcome scalar_goldens() {
  Outcome o;
  auto g = [](const Copula& c, const MarginalDistribution& m, CopulaOrientation orient) {
    return gmd_bivariate(BivariateModel(c, m, m, orient)).gini;
  };
  const auto cdf = CopulaOrientation::given_cdf_copula;
  o.near(g(Copula::clayton(1), kU, cdf), 0.2274112, 1e-5, "Clayton 1 uniform");
  o.near(g(Copula::clayton(-0.8), kU, cdf), 0.4681062, 1e-5, "Clayton -0.8 uniform");
  o.near(g(Copula::frank(1), kU, cdf), 0.2996078, 1e-5, "Frank 1 uniform");
  o.near(g(Copula::frank(-1), kU, cdf), 0.3654952, 1e-5, "Frank -1 uniform");
  o.near(g(Copula::fgm(1), kU, cdf), 4.0 / 15.0, 1e-5, "FGM 1 uniform");
  o.near(g(Copula::fgm(-1), kU, cdf), 2.0 / 5.0, 1e-5, "FGM -1 uniform");
  o.near(g(Copula::fgm(1), kE, cdf), 0.4166667, 1e-5, "FGM 1 exponential");
  o.near(g(Copula::fgm(-1), kE, cdf), 0.5833333, 1e-5, "FGM -1 exponential");
  o.near(g(Copula::lower_fh(), kE, cdf), std::numbers::ln2, 1e-5, "W exponential");
  const double expo[] = {1.0 / 2, 9.0 / 13, 11.0 / 14, 125.0 / 149};
  for (int n = 2; n <= 5; ++n) {
    o.near(gmd_multivariate(MultivariateIdModel::iid(n, kU)).gini, (n - 1.0) / (n + 1.0), 1e-5,
           "iid uniform n=" + std::to_string(n));
    o.near(gmd_multivariate(MultivariateIdModel::iid(n, kE)).gini, expo[n - 2], 1e-5,
           "iid exponential n=" + std::to_string(n));
  }
  const ExponentialConditionalsModel ec(1, 1, 1);
  o.near(ec.c11(), -0.516932, 1e-5, "exponential conditionals c11");
  o.near(covariance_representation(ec).summary.gini, 0.599843, 1e-4, "exponential conditionals G");
  if (o.pass) o.detail << "23 golden values";
  return o;
}

Outcome dual_form_identity() {
  Outcome o;
  const auto models = model_matrix();
  double worst = 0.0;
  for (const auto& [label, model] : models) {
    const auto a = gmd_bivariate(model, IntegralForm::sf);
    const auto b = gmd_bivariate(model, IntegralForm::cdf);
    worst = std::max(worst, std::abs(a.gmd - b.gmd));
    o.near(a.gmd, b.gmd, 1e-8, label);
    o.expect(a.diagnostics.converged && b.diagnostics.converged, label + " converged");
  }
  o.expect(models.size() >= 30, "matrix size");
  if (o.pass) o.detail << models.size() << " models, worst difference " << worst;
  return o;
}

Outcome covariance_identity() {
  Outcome o;
  const auto models = model_matrix(true);
  double worst = 0.0;
  for (const auto& [label, model] : models) {
    const double a = covariance_representation(model).summary.gmd;
    const double b = gmd_bivariate(model).gmd;
    worst = std::max(worst, std::abs(a - b));
    o.near(a, b, 1e-6, label);
  }
  if (o.pass) o.detail << models.size() << " models, worst difference " << worst;
  return o;
}

Outcome bound_suite() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& [label, model] : model_matrix()) {
    const auto b = bounds_report(model);
    o.expect(b.violations.empty(), label + " violations");
    ++n;
  }
  const auto uu = bounds_report(BivariateModel(Copula::independence(), kU, kU));
  o.near(uu.fh_upper, 0.5, 1e-9, "FH upper uniform/uniform");
  const auto eu = bounds_report(BivariateModel(Copula::independence(), kE, kU));
  o.near(eu.fh_lower, 0.5, 1e-9, "FH lower exponential/uniform");
  o.near(eu.fh_upper, 0.955937, 1e-5, "FH upper exponential/uniform");
  for (double mu : {0.5, 1.0, 3.0}) {
    const auto e = MarginalDistribution::exponential(1.0 / mu);
    const auto b = bounds_report(BivariateModel(Copula::clayton(2), e, e));
    o.near(*b.id_median_upper, 2.0 * mu * std::numbers::ln2, 1e-12, "median bound exponential");
    o.expect(b.gmd <= *b.id_median_upper, "median bound exponential holds");
  }
  for (double b : {1.0, 2.5}) {
    const auto u = MarginalDistribution::uniform(0, b);
    const auto r = bounds_report(BivariateModel(Copula::lower_fh(), u, u));
    o.near(*r.id_median_upper, b / 2.0, 1e-12, "median bound uniform");
    o.expect(r.gmd <= *r.id_median_upper + 1e-9, "median bound uniform holds");
  }
  // Independent U(0,1), U(0,2): E|X - Y| = int_0^1 (x^2 + (2 - x)^2) / 4 dx = 2/3.
  const auto u2 = MarginalDistribution::uniform(0, 2);
  const auto pi = Copula::independence();
  const auto s = ordered_sandwich(BivariateModel(pi, kU, u2), BivariateModel(pi, kU, kU), BivariateModel(pi, u2, u2));
  o.expect(s.holds, "ordered sandwich holds");
  o.near(s.middle, 2.0 / 3.0, 1e-9, "ordered sandwich middle");
  for (const auto& c : {Copula::fgm(-1), Copula::clayton(2), Copula::frank(-4), Copula::upper_fh()}) {
    const auto e2 = MarginalDistribution::exponential(0.5);
    const auto orient = CopulaOrientation::given_survival_copula;
    const auto r = ordered_sandwich(BivariateModel(c, kE, e2, orient), BivariateModel(c, kE, kE, orient),
                                    BivariateModel(c, e2, e2, orient));
    o.expect(r.holds, "ordered sandwich " + c.name());
  }
  if (o.pass) o.detail << n << " models without violations, closed forms and sandwiches hold";
  return o;
}

Outcome monotonicity_and_invariance() {
  Outcome o;
  const std::vector<std::vector<double>> thetas{{-1, -0.75, -0.5, -0.25, 0, 0.25, 0.5, 0.75, 1},
                                                {-0.9, -0.6, -0.3, 0.2, 0.5, 1, 2, 5, 10},
                                                {-20, -8, -3, -1, 0.5, 1, 3, 8, 20}};
  const char* names[] = {"fgm", "clayton", "frank"};
  for (int f = 0; f < 3; ++f) {
    for (const auto& m : {kU, kE}) {
      double prev = INFINITY;
      for (double th : thetas[static_cast<std::size_t>(f)]) {
        const auto c = (f == 1 && th == 0.0) ? Copula::independence() : Copula::from_name(names[f], th);
        const double g = gmd_bivariate(BivariateModel(c, m, m)).gmd;
        o.expect(g < prev, std::string(names[f]) + " decreasing at theta " + std::to_string(th));
        prev = g;
      }
    }
  }
  for (const auto& c : {Copula::clayton(1.5), Copula::frank(-2.0), Copula::fgm(0.5), Copula::lower_fh()}) {
    const double lambda = 0.75;
    const auto u2 = MarginalDistribution::uniform(0, 2);
    const auto base = gmd_bivariate(BivariateModel(c, kU, u2));
    const auto moved = gmd_bivariate(BivariateModel(c, shifted(kU, lambda), shifted(u2, lambda)));
    o.near(moved.gmd, base.gmd, 1e-8, "translation GMD " + c.name());
    o.near(moved.gini, base.gini * 1.5 / (1.5 + 2 * lambda), 1e-8, "translation index " + c.name());
    const auto big = gmd_bivariate(BivariateModel(c, scaled(kE, 2.5), scaled(kU, 2.5)));
    const auto small = gmd_bivariate(BivariateModel(c, kE, kU));
    o.near(big.gmd, 2.5 * small.gmd, 1e-8, "homogeneity GMD " + c.name());
    o.near(big.gini, small.gini, 1e-8, "homogeneity index " + c.name());
  }
  std::vector<double> probs;
  for (int i = 0; i <= 400; ++i) probs.push_back(i / 400.0);
  const auto tab = tabulate(kE, probs, 12.0);
  const auto cl = Copula::clayton(1.0);
  const auto surv = CopulaOrientation::given_survival_copula;
  const auto tb = gmd_bivariate(BivariateModel(cl, tab, tab, surv));
  const auto tm = gmd_bivariate(BivariateModel(cl, shifted(tab, 2.0), shifted(tab, 2.0), surv));
  o.near(tm.gmd, tb.gmd, 1e-8, "translation GMD tabulated exponential");
  o.near(tm.gini, tb.gini * 2 * tab.mean() / (2 * tab.mean() + 4.0), 1e-8, "translation index tabulated exponential");
  for (const auto& m : {kU, kE, MarginalDistribution::uniform(1, 3), tab}) {
    o.expect(gmd_bivariate(BivariateModel(Copula::upper_fh(), m, m)).gmd <= 1e-10, "M zero " + m.describe());
  }
  o.near(gmd_bivariate(BivariateModel(Copula::independence(), kE, kE)).gini, 0.5, 1e-9, "Schur-constant G");
  o.expect(schur_predicates(Copula::independence(), kE).schur_constant_sf, "Schur-constant detected");
  if (o.pass) o.detail << "54 monotone steps, invariance laws, M zero and Schur-constant case";
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto cdf = CopulaOrientation::given_cdf_copula;
  const auto surv = CopulaOrientation::given_survival_copula;
  const std::vector<BivariateModel> models{
      BivariateModel(Copula::clayton(1), kU, kU, cdf),   BivariateModel(Copula::frank(-1), kU, kU, cdf),
      BivariateModel(Copula::fgm(1), kU, kU, cdf),       BivariateModel(Copula::clayton(1), kE, kE, surv),
      BivariateModel(Copula::frank(-1), kE, kE, surv),   BivariateModel(Copula::fgm(-1), kE, kE, cdf)};
  double worst = 0.0;
  std::uint64_t stream = 0;
  for (const auto& m : models) {
    const double analytic = gmd_bivariate(m).gini;
    const double hat = empirical_indices(sample_pairs(m, 1000000, SeededStream(42, stream++))).gini_hat;
    worst = std::max(worst, std::abs(hat - analytic));
    o.near(hat, analytic, 0.005, m.copula().name() + " " + m.marginal_x().describe());
  }
  const double e16 = empirical_efficiency(catalog_system(16), iid_sampler(kE), 1000000, SeededStream(42, 100));
  const double e22 = empirical_efficiency(catalog_system(22), iid_sampler(kE), 1000000, SeededStream(42, 101));
  o.near(e16, 0.273, 0.01, "system 16");
  o.near(e22, 0.409, 0.01, "system 22");
  const double secs = seconds_since(t0);
  o.expect(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  if (o.pass) o.detail << "worst pair deviation " << worst << ", systems " << e16 << " " << e22 << " in " << secs << " s";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst = 0.0;
  const auto models = model_matrix();
  for (const auto& [label, model] : models) {
    const double a = grid_oracle_gmd(model, 1024);
    const double b = gmd_bivariate(model).gmd;
    worst = std::max(worst, std::abs(a - b));
    o.near(a, b, 5e-3, label);
  }
  if (o.pass) o.detail << models.size() << " models, worst difference " << worst;
  return o;
}

Outcome signature_cross_checks() {
  Outcome o;
  int checks = 0;
  for (const auto& m : {kU, kE}) {
    for (int n = 2; n <= 4; ++n) {
      o.near(eff_gmd_signature(Signature::series(n), m), eff_gmd_iid(series_system(n), m), 1e-8, "series");
      o.near(eff_gmd_signature(Signature::parallel(n), m), eff_gmd_iid(parallel_system(n), m), 1e-8, "parallel");
      checks += 2;
      for (int k = 1; k <= n; ++k) {
        o.near(eff_gmd_signature(Signature::k_out_of_n(k, n), m), eff_gmd_iid(k_out_of_n_system(k, n), m), 1e-8,
               std::to_string(k) + "-out-of-" + std::to_string(n));
        ++checks;
      }
    }
    const auto sections = DiagonalSections::fgm4(Fgm4Diagonal(0.0));
    for (const auto& s : catalog()) {
      o.near(eff_gmd_exchangeable(s, sections, m), eff_gmd_iid(s, m), 1e-10,
             "exchangeable at theta 0, system " + std::to_string(s.id));
      ++checks;
    }
  }
  if (o.pass) o.detail << checks << " comparisons";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"efficiency table, i.i.d. components", table1_reproduction},
      {"efficiency table, FGM diagonal", table2_reproduction},
      {"scalar golden values", scalar_goldens},
      {"survival and cdf integral forms agree", dual_form_identity},
      {"covariance representation agrees", covariance_identity},
      {"bound suite", bound_suite},
      {"monotonicity and invariance", monotonicity_and_invariance},
      {"Monte Carlo convergence", monte_carlo},
      {"grid oracle equivalence", oracle_equivalence},
      {"signature cross-checks", signature_cross_checks},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
