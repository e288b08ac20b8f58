// depgini command-line front end.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure
// (including a non-converged integral or a violated bound).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "depgini/depgini.hpp"

namespace {

using namespace depgini;

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct CommonOptions {
  std::string output;
  std::string format = "json";
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;
  std::string substitution = "rational";

  QuadratureConfig quadrature() const {
    QuadratureConfig cfg;
    cfg.abs_tol = abs_tol;
    cfg.rel_tol = rel_tol;
    cfg.max_subdivisions = max_subdivisions;
    cfg.halfline_substitution =
        substitution == "quantile" ? HalflineSubstitution::marginal_quantile : HalflineSubstitution::rational;
    cfg.validate();
    return cfg;
  }
};

struct CopulaOptions {
  std::string family;
  std::optional<double> theta;
  std::string orientation = "cdf";

  Copula copula() const {
    const bool needs_theta = family == "fgm" || family == "clayton" || family == "frank";
    if (needs_theta && !theta) throw ConstructionError("--theta is required for the " + family + " family");
    if (!needs_theta && theta) throw ConstructionError("the " + family + " family takes no --theta");
    return Copula::from_name(family, theta.value_or(0.0));
  }

  CopulaOrientation oriented() const {
    return orientation == "survival" ? CopulaOrientation::given_survival_copula
                                     : CopulaOrientation::given_cdf_copula;
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, const std::string& default_format) {
  o.format = default_format;
  cmd->add_option("-o,--output", o.output, "Output file (default: $DEPGINI_OUTPUT_DIR or stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--rel-tol", o.rel_tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-subdivisions", o.max_subdivisions, "Quadrature panel budget")
      ->check(CLI::Range(10, 100000000));
  cmd->add_option("--substitution", o.substitution, "Half-line substitution")
      ->check(CLI::IsMember({"rational", "quantile"}));
}

void add_copula(CLI::App* cmd, CopulaOptions& o, bool required) {
  auto* fam = cmd->add_option("--copula", o.family, "Copula family")
                  ->check(CLI::IsMember({"pi", "m", "w", "fgm", "clayton", "frank"}));
  if (required) fam->required();
  cmd->add_option("--theta", o.theta, "Copula parameter");
  cmd->add_option("--orientation", o.orientation, "Joint function the copula couples")
      ->check(CLI::IsMember({"cdf", "survival"}));
}

// Writes to --output, else $DEPGINI_OUTPUT_DIR/<stem>.<ext>, else stdout.
void emit(const CommonOptions& o, const std::string& stem, const std::string& text) {
  std::string path = o.output;
  if (path.empty()) {
    if (const char* dir = std::getenv("DEPGINI_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      path = (std::filesystem::path(dir) / (stem + "." + o.format)).string();
    }
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write output file " + path);
  out << text;
}

std::string csv_row(const std::vector<std::pair<std::string, std::string>>& cells) {
  std::string head;
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      head += ",";
      row += ",";
    }
    head += cells[i].first;
    row += cells[i].second;
  }
  return head + "\n" + row + "\n";
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// --- bivariate -----------------------------------------------------------------

struct BivariateCmd {
  CommonOptions common;
  CopulaOptions copula;
  std::string marginal_x;
  std::string marginal_y;
  std::string form = "sf";
  std::vector<double> markov_at;
  bool covariance = false;

  int run() const {
    const auto cfg = common.quadrature();
    const BivariateModel model(copula.copula(), parse_marginal(marginal_x), parse_marginal(marginal_y),
                               copula.oriented());
    const auto rep = gmd_bivariate(model, form == "cdf" ? IntegralForm::cdf : IntegralForm::sf, cfg);
    const auto bounds = bounds_report(model, cfg);
    for (double a : markov_at) {
      if (!(a > 0.0)) throw ArgumentError("--markov values must be positive");
    }
    std::optional<CovarianceReport> cov;
    if (covariance) cov = covariance_representation(model, cfg);

    if (common.format == "json") {
      auto j = to_json(rep);
      j["bounds"] = to_json(bounds, markov_at);
      if (cov) {
        j["covariance"] = to_json(cov->terms);
        j["covariance"]["gmd"] = cov->summary.gmd;
      }
      emit(common, "bivariate", j.dump(2) + "\n");
    } else {
      std::vector<std::pair<std::string, std::string>> cells{
          {"gmd", num(rep.gmd)},
          {"gini", num(rep.gini)},
          {"e_min", num(rep.e_min)},
          {"e_max", num(rep.e_max)},
          {"method", to_string(rep.method)},
          {"jensen_lower", num(bounds.jensen_lower)},
          {"fh_lower", num(bounds.fh_lower)},
          {"fh_upper", num(bounds.fh_upper)},
          {"id_median_upper", bounds.id_median_upper ? num(*bounds.id_median_upper) : ""},
          {"panels", std::to_string(rep.diagnostics.panels)},
          {"error_estimate", num(rep.diagnostics.error_estimate)},
          {"converged", rep.diagnostics.converged ? "true" : "false"}};
      for (double a : markov_at) cells.emplace_back("markov_" + num(a), num(bounds.markov(a)));
      emit(common, "bivariate", csv_row(cells));
    }

    int code = kOk;
    if (!rep.diagnostics.converged || !bounds.diagnostics.converged) {
      std::cerr << "warning: quadrature did not reach the requested tolerance\n";
      code = kNumerical;
    }
    for (const auto& v : bounds.violations) {
      std::cerr << "error: bound violated: " << v << "\n";
      code = kNumerical;
    }
    return code;
  }
};

// --- multivariate --------------------------------------------------------------

struct MultivariateCmd {
  CommonOptions common;
  std::string iid;
  int n = 2;
  std::optional<double> fgm_theta;

  int run() const {
    const auto cfg = common.quadrature();
    const auto m = parse_marginal(iid);
    MultivariateIdModel model = MultivariateIdModel::iid(n, m);
    if (fgm_theta) {
      const double th = *fgm_theta;
      if (!(th >= -1.0 && th <= 1.0)) throw ConstructionError("--fgm-theta must lie in [-1, 1]");
      // FGM with only the top interaction term, taken as the survival copula;
      // its cdf copula is the same form with theta (-1)^n.
      const int k = n;
      const double th_cdf = (k % 2 == 0) ? th : -th;
      model = MultivariateIdModel(
          n, m, [k, th_cdf](double u) { return std::pow(u, k) * (1.0 + th_cdf * std::pow(1.0 - u, k)); },
          [k, th](double u) { return std::pow(u, k) * (1.0 + th * std::pow(1.0 - u, k)); });
    }
    const auto rep = gmd_multivariate(model, cfg);
    if (common.format == "json") {
      auto j = to_json(rep);
      j["n"] = n;
      emit(common, "multivariate", j.dump(2) + "\n");
    } else {
      emit(common, "multivariate",
           csv_row({{"n", std::to_string(n)},
                    {"gmd", num(rep.gmd)},
                    {"gini", num(rep.gini)},
                    {"e_min", num(rep.e_min)},
                    {"e_max", num(rep.e_max)},
                    {"panels", std::to_string(rep.diagnostics.panels)},
                    {"error_estimate", num(rep.diagnostics.error_estimate)},
                    {"converged", rep.diagnostics.converged ? "true" : "false"}}));
    }
    if (!rep.diagnostics.converged) {
      std::cerr << "warning: quadrature did not reach the requested tolerance\n";
      return kNumerical;
    }
    return kOk;
  }
};

// --- tables --------------------------------------------------------------------

struct TablesCmd {
  CommonOptions common;
  int which = 1;
  std::optional<double> theta;
  bool full_precision = false;

  int run() const {
    const auto cfg = common.quadrature();
    if (which == 1 && theta) throw ArgumentError("--theta applies to table 2 only");
    if (theta && !(*theta >= -1.0 && *theta <= 1.0)) throw ConstructionError("--theta must lie in [-1, 1]");
    const auto t = which == 1 ? table1(cfg) : table2(theta, cfg);
    std::string stem = "table" + std::to_string(which);
    if (theta) stem += "_theta" + num(*theta);
    if (common.format == "json") {
      emit(common, stem, to_json(t).dump(2) + "\n");
    } else {
      std::ostringstream os;
      write_table_csv(os, t, full_precision ? -1 : 3);
      emit(common, stem, os.str());
    }
    return kOk;
  }
};

// --- figure data ---------------------------------------------------------------

struct FigureCmd {
  CommonOptions common;
  CopulaOptions copula;
  std::string kind = "uniform";
  int points = 101;
  bool orientation_given = false;

  int run() const {
    const auto cfg = common.quadrature();
    const Copula c = copula.copula();
    const bool uniform = kind == "uniform";
    // The exponential curve uses the survival diagonal; by default the
    // family is taken as the survival copula there, as the cdf copula for
    // the uniform curve.
    CopulaOrientation o = uniform ? CopulaOrientation::given_cdf_copula : CopulaOrientation::given_survival_copula;
    if (orientation_given) o = copula.oriented();
    const auto m = uniform ? MarginalDistribution::uniform(0.0, 1.0) : MarginalDistribution::exponential(1.0);
    const BivariateModel model(c, m, m, o);

    auto curve = [&](double t) {
      if (uniform) return model.cdf_copula(t, t);
      return t == 0.0 ? 0.0 : model.survival_copula(t, t) / t;
    };
    const auto area = integrate_unit(
        [&](double t) { return uniform ? t - model.cdf_copula(t, t) : 1.0 - model.survival_copula(t, t) / t; }, cfg);
    const double gini = uniform ? 2.0 * area.value : area.value;

    if (common.format == "json") {
      nlohmann::json pts = nlohmann::json::array();
      for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        pts.push_back({{"t", t}, {"curve", curve(t)}});
      }
      nlohmann::json j{{"kind", kind}, {"copula", c.name()}, {"area", area.value}, {"gini", gini}, {"points", pts}};
      emit(common, "figure_" + kind, j.dump(2) + "\n");
    } else {
      std::ostringstream os;
      os << "t,curve,reference\n" << std::setprecision(17);
      for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / (points - 1);
        os << t << ',' << curve(t) << ',' << (uniform ? t : 1.0) << '\n';
      }
      emit(common, "figure_" + kind, os.str());
      std::cerr << "area " << std::setprecision(10) << area.value << " gini " << gini << "\n";
    }
    return area.converged ? kOk : kNumerical;
  }
};

// --- simulate ------------------------------------------------------------------

struct SimulateCmd {
  CommonOptions common;
  CopulaOptions copula;
  std::string marginal_x;
  std::string marginal_y;
  std::optional<int> system;
  std::string iid;
  std::int64_t n = 1000000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string samples;

  int run() const {
    const SeededStream rng(seed, stream);
    nlohmann::json j{{"n", n}, {"seed", seed}, {"stream", stream}};
    std::ostringstream sample_text;
    if (system) {
      if (iid.empty()) throw ArgumentError("--system needs --iid");
      if (!copula.family.empty()) throw ArgumentError("--system does not take a copula");
      const auto& sys = catalog_system(*system);
      const auto sample = simulate_system(sys, iid_sampler(parse_marginal(iid)), n, rng);
      j["system"] = sys.id;
      j["efficiency_gini_hat"] = empirical_efficiency(sample);
      if (!samples.empty()) write_system_csv(sample_text, sample);
    } else {
      if (copula.family.empty() || marginal_x.empty() || marginal_y.empty()) {
        throw ArgumentError("pair simulation needs --copula, --marginal-x and --marginal-y");
      }
      const BivariateModel model(copula.copula(), parse_marginal(marginal_x), parse_marginal(marginal_y),
                                 copula.oriented());
      const auto sample = sample_pairs(model, n, rng);
      const auto est = empirical_indices(sample);
      j["gmd_hat"] = est.gmd_hat;
      j["gini_hat"] = est.gini_hat;
      if (!samples.empty()) write_pairs_csv(sample_text, sample);
    }
    if (!samples.empty()) {
      std::ofstream out(samples);
      if (!out) throw ArgumentError("cannot write samples file " + samples);
      out << sample_text.str();
    }
    if (common.format == "json") {
      emit(common, "simulate", j.dump(2) + "\n");
    } else {
      std::vector<std::pair<std::string, std::string>> cells;
      for (const auto& [k, v] : j.items()) cells.emplace_back(k, v.dump());
      emit(common, "simulate", csv_row(cells));
    }
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gini mean differences and indices for dependent lifetimes"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file mirroring the command-line flags (flags win)");

  BivariateCmd bi;
  auto* c_bi = app.add_subcommand("bivariate", "GMD, Gini index and bounds of a bivariate model");
  add_common(c_bi, bi.common, "json");
  add_copula(c_bi, bi.copula, true);
  c_bi->add_option("--marginal-x", bi.marginal_x, "Law of X, e.g. uniform:0,1 or exp:1")->required();
  c_bi->add_option("--marginal-y", bi.marginal_y, "Law of Y")->required();
  c_bi->add_option("--form", bi.form, "Integral form")->check(CLI::IsMember({"sf", "cdf"}));
  c_bi->add_option("--markov", bi.markov_at, "Evaluate the Markov bound at these a > 0");
  c_bi->add_flag("--covariance", bi.covariance, "Also report the covariance representation");

  MultivariateCmd mv;
  auto* c_mv = app.add_subcommand("multivariate", "GMD and Gini index of n identically distributed lifetimes");
  add_common(c_mv, mv.common, "json");
  c_mv->add_option("--iid", mv.iid, "Common law of the components")->required();
  c_mv->add_option("--n", mv.n, "Dimension")->check(CLI::Range(2, 1000))->required();
  c_mv->add_option("--fgm-theta", mv.fgm_theta, "Couple through the top-term FGM survival copula");

  TablesCmd tb;
  auto* c_tb = app.add_subcommand("tables", "Efficiency Gini indices of the 28 catalog systems");
  add_common(c_tb, tb.common, "csv");
  c_tb->add_option("--which", tb.which, "Table 1 (i.i.d.) or 2 (FGM diagonal)")->check(CLI::IsMember({1, 2}));
  c_tb->add_option("--theta", tb.theta, "FGM parameter for table 2");
  c_tb->add_flag("--full-precision", tb.full_precision, "Print all digits in CSV output");

  FigureCmd fg;
  auto* c_fg = app.add_subcommand("figure-data", "Diagonal-section curves and their areas");
  add_common(c_fg, fg.common, "csv");
  add_copula(c_fg, fg.copula, true);
  c_fg->add_option("--kind", fg.kind, "uniform: delta(t); exponential: hat-delta(t)/t")
      ->check(CLI::IsMember({"uniform", "exponential"}));
  c_fg->add_option("--points", fg.points, "Number of curve points")->check(CLI::Range(2, 1000000));

  SimulateCmd sm;
  auto* c_sm = app.add_subcommand("simulate", "Monte Carlo estimates from seeded samples");
  add_common(c_sm, sm.common, "json");
  add_copula(c_sm, sm.copula, false);
  c_sm->add_option("--marginal-x", sm.marginal_x, "Law of X");
  c_sm->add_option("--marginal-y", sm.marginal_y, "Law of Y");
  c_sm->add_option("--system", sm.system, "Catalog system id (1-28)")->check(CLI::Range(1, 28));
  c_sm->add_option("--iid", sm.iid, "Component law for --system");
  c_sm->add_option("--n", sm.n, "Sample size")->check(CLI::Range(std::int64_t{1}, std::int64_t{1000000000}));
  c_sm->add_option("--seed", sm.seed, "Generator seed")->required();
  c_sm->add_option("--stream", sm.stream, "Substream id");
  c_sm->add_option("--samples", sm.samples, "Write the raw sample to this CSV file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  fg.orientation_given = c_fg->count("--orientation") > 0;

  try {
    if (c_bi->parsed()) return bi.run();
    if (c_mv->parsed()) return mv.run();
    if (c_tb->parsed()) return tb.run();
    if (c_fg->parsed()) return fg.run();
    if (c_sm->parsed()) return sm.run();
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
