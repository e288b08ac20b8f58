#include "depgini/systems.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "catalog_data.hpp"
#include "depgini/error.hpp"
#include "depgini/gini.hpp"

namespace depgini {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

void append_subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    append_subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::string join_components(const std::vector<int>& idx, const char* op) {
  if (idx.size() == 1) return "x" + std::to_string(idx.front());
  std::string s = std::string(op) + "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) s += ",";
    s += "x" + std::to_string(idx[i]);
  }
  return s + ")";
}

// E X_{1:i} (or its exchangeable analogue) for i = 1..n.
Eigen::VectorXd series_means(const ComponentSetting& setting, int n, const QuadratureConfig& cfg) {
  Eigen::VectorXd e(n);
  if (const auto* iid = std::get_if<IidSetting>(&setting)) {
    for (int i = 1; i <= n; ++i) e(i - 1) = cumulative_residual(iid->marginal, i, cfg);
    return e;
  }
  const auto& ex = std::get<ExchangeableSetting>(setting);
  if (ex.diagonals.order() != n) {
    throw PreconditionError("diagonal sections have order " + std::to_string(ex.diagonals.order()) +
                            ", system has order " + std::to_string(n));
  }
  const auto& m = ex.marginal;
  for (int i = 1; i <= n; ++i) {
    const auto r = integrate_over_lifetimes([&](double t) { return ex.diagonals(i, m.sf(t)); }, {&m}, cfg);
    if (!r.converged) throw NumericalError("diagonal section integral did not converge");
    e(i - 1) = r.value;
  }
  return e;
}

double efficiency_gmd(const Eigen::VectorXi& a, const Eigen::VectorXd& series) {
  return a.cast<double>().dot(series) - series(series.size() - 1);
}

double efficiency_index(const Eigen::VectorXi& a, const Eigen::VectorXd& series) {
  const int n = static_cast<int>(series.size());
  const double denom = efficiency_gmd(parallel_system(n).minimal_signature, series);
  if (!(denom > 0.0)) throw NumericalError("parallel-system GMD is zero; the joint law is degenerate");
  return efficiency_gmd(a, series) / denom;
}

}  // namespace

void SystemSpec::validate() const {
  if (order < 1) throw ConstructionError("system order must be positive");
  if (k < 1 || k > order) throw ConstructionError("system component count must lie in 1..order");
  if (minimal_signature.size() != order) {
    throw ConstructionError("minimal signature length must equal the order");
  }
  if (minimal_signature.sum() != 1) throw ConstructionError("minimal signature must sum to 1");
  if (structure.max_component() != k) {
    throw ConstructionError("structure of system " + std::to_string(id) + " uses " +
                            std::to_string(structure.max_component()) + " components, expected " +
                            std::to_string(k));
  }
}

SystemSpec make_system(int id, std::string name, int k, Eigen::VectorXi minimal_signature,
                       std::string_view structure) {
  SystemSpec s;
  s.id = id;
  s.name = std::move(name);
  s.k = k;
  s.order = static_cast<int>(minimal_signature.size());
  s.minimal_signature = std::move(minimal_signature);
  s.structure = StructureFunction::parse(structure);
  s.validate();
  return s;
}

std::vector<SystemSpec> parse_catalog(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("catalog is not valid JSON: ") + e.what());
  }
  std::vector<SystemSpec> out;
  try {
    const int order = doc.at("order").get<int>();
    for (const auto& row : doc.at("systems")) {
      const auto a = row.at("a4").get<std::vector<int>>();
      if (static_cast<int>(a.size()) != order) throw ConstructionError("catalog signature length mismatch");
      Eigen::VectorXi sig = Eigen::Map<const Eigen::VectorXi>(a.data(), order);
      out.push_back(make_system(row.at("id").get<int>(), row.at("name").get<std::string>(),
                                row.at("k").get<int>(), sig, row.at("structure").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConstructionError(std::string("malformed catalog: ") + e.what());
  }
  return out;
}

const std::vector<SystemSpec>& catalog() {
  static const std::vector<SystemSpec> systems = parse_catalog(detail::kCatalogJson);
  return systems;
}

const SystemSpec& catalog_system(int id) {
  for (const auto& s : catalog()) {
    if (s.id == id) return s;
  }
  throw ArgumentError("no catalog system with id " + std::to_string(id));
}

SystemSpec series_system(int n) { return k_out_of_n_system(n, n); }

SystemSpec parallel_system(int n) { return k_out_of_n_system(1, n); }

SystemSpec k_out_of_n_system(int k, int n) {
  if (n < 1 || k < 1 || k > n) throw ArgumentError("k-out-of-n needs 1 <= k <= n");
  // Reliability sum_{j>=k} C(n,j) p^j (1-p)^{n-j} expanded in powers of p.
  Eigen::VectorXi a = Eigen::VectorXi::Zero(n);
  for (int i = k; i <= n; ++i) {
    double c = 0.0;
    for (int j = k; j <= i; ++j) c += binomial(n, j) * binomial(n - j, i - j) * (((i - j) % 2) ? -1.0 : 1.0);
    a(i - 1) = static_cast<int>(std::lround(c));
  }
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  append_subsets(n, k, 1, cur, subsets);
  std::string expr;
  if (subsets.size() == 1) {
    expr = join_components(subsets.front(), "min");
  } else {
    expr = "max(";
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      if (i > 0) expr += ",";
      expr += join_components(subsets[i], "min");
    }
    expr += ")";
  }
  std::string name = k == n ? std::to_string(n) + "-series"
                     : k == 1 ? std::to_string(n) + "-parallel"
                              : std::to_string(k) + "-out-of-" + std::to_string(n);
  SystemSpec s;
  s.id = 0;
  s.name = std::move(name);
  s.k = n;
  s.order = n;
  s.minimal_signature = std::move(a);
  s.structure = StructureFunction::parse(expr);
  s.validate();
  return s;
}

double structure_evaluate(const SystemSpec& sys, std::span<const double> lifetimes) {
  if (static_cast<int>(lifetimes.size()) < sys.k) {
    throw ArgumentError("system " + std::to_string(sys.id) + " needs " + std::to_string(sys.k) + " lifetimes");
  }
  return sys.structure.evaluate(lifetimes);
}

// --- signatures ----------------------------------------------------------------

Signature::Signature(Eigen::VectorXd s) : s_(std::move(s)) {
  if (s_.size() < 1) throw PreconditionError("signature must be nonempty");
  if ((s_.array() < -1e-12).any() || !s_.allFinite()) throw PreconditionError("signature entries must be >= 0");
  if (std::abs(s_.sum() - 1.0) > 1e-10) throw PreconditionError("signature must sum to 1");
}

Signature Signature::series(int n) { return k_out_of_n(n, n); }

Signature Signature::parallel(int n) { return k_out_of_n(1, n); }

Signature Signature::k_out_of_n(int k, int n) {
  if (n < 1 || k < 1 || k > n) throw ArgumentError("k-out-of-n needs 1 <= k <= n");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  s(n - k) = 1.0;
  return Signature(s);
}

Eigen::VectorXd Signature::tail() const {
  const auto n = s_.size();
  Eigen::VectorXd S(n);
  double acc = 0.0;
  for (auto j = n - 1; j >= 0; --j) {
    acc += s_(j);
    S(j) = acc;
  }
  return S;
}

// --- CIGF and efficiency -------------------------------------------------------

double cigf(const MarginalDistribution& m, double alpha, double beta, const QuadratureConfig& cfg) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ArgumentError("CIGF exponents must be finite and nonnegative");
  }
  const auto r = integrate_over_lifetimes(
      [&](double t) {
        const double f = alpha == 0.0 ? 1.0 : std::pow(m.cdf(t), alpha);
        return f * std::pow(m.sf(t), beta);
      },
      {&m}, cfg);
  if (!r.converged) throw NumericalError("CIGF integral did not converge");
  return r.value;
}

double cumulative_residual(const MarginalDistribution& m, double beta, const QuadratureConfig& cfg) {
  return cigf(m, 0.0, beta, cfg);
}

DiagonalSections::DiagonalSections(std::vector<Section> sections) : sections_(std::move(sections)) {
  if (sections_.empty()) throw PreconditionError("at least one diagonal section is required");
  constexpr double tol = 1e-12;
  for (int j = 0; j <= 64; ++j) {
    const double u = j / 64.0;
    if (std::abs(sections_.front()(u) - u) > tol) {
      throw PreconditionError("the first diagonal section must be the identity");
    }
    for (std::size_t i = 1; i < sections_.size(); ++i) {
      if (sections_[i](u) > sections_[i - 1](u) + tol) {
        throw PreconditionError("diagonal sections must be nonincreasing in the dimension (index " +
                                std::to_string(i + 1) + ", u = " + std::to_string(u) + ")");
      }
    }
  }
}

DiagonalSections DiagonalSections::iid(int n) {
  if (n < 1) throw ArgumentError("order must be positive");
  std::vector<Section> s;
  for (int i = 1; i <= n; ++i) s.emplace_back([i](double u) { return std::pow(u, i); });
  return DiagonalSections(std::move(s));
}

DiagonalSections DiagonalSections::fgm4(const Fgm4Diagonal& d) {
  std::vector<Section> s;
  for (int i = 1; i <= Fgm4Diagonal::order(); ++i) s.emplace_back([d, i](double u) { return d(i, u); });
  return DiagonalSections(std::move(s));
}

double eff_gmd_iid(const SystemSpec& sys, const MarginalDistribution& m, const QuadratureConfig& cfg) {
  return efficiency_gmd(sys.minimal_signature, series_means(IidSetting{m}, sys.order, cfg));
}

double eff_gmd_exchangeable(const SystemSpec& sys, const DiagonalSections& diagonals,
                            const MarginalDistribution& m, const QuadratureConfig& cfg) {
  return efficiency_gmd(sys.minimal_signature, series_means(ExchangeableSetting{diagonals, m}, sys.order, cfg));
}

double eff_gmd(const SystemSpec& sys, const ComponentSetting& setting, const QuadratureConfig& cfg) {
  return efficiency_gmd(sys.minimal_signature, series_means(setting, sys.order, cfg));
}

double eff_gini(const SystemSpec& sys, const ComponentSetting& setting, const QuadratureConfig& cfg) {
  return efficiency_index(sys.minimal_signature, series_means(setting, sys.order, cfg));
}

double eff_gmd_signature(const Signature& sig, const MarginalDistribution& m, const QuadratureConfig& cfg) {
  const int n = sig.order();
  const Eigen::VectorXd S = sig.tail();
  double total = 0.0;
  for (int i = 1; i <= n - 1; ++i) {
    const double weight = S(n - i);  // S_{n-i+1}
    if (weight == 0.0) continue;
    total += weight * binomial(n, i) * cigf(m, n - i, i, cfg);
  }
  return total;
}

double markov_efficiency_bound(const SystemSpec& sys, const ComponentSetting& setting, double c,
                               const QuadratureConfig& cfg) {
  if (!(c > 0.0)) throw ArgumentError("Markov efficiency bound needs c > 0");
  return 1.0 - eff_gini(sys, setting, cfg) / c;
}

namespace {

EfficiencyTable catalog_table(const std::vector<std::string>& columns,
                              const std::vector<Eigen::VectorXd>& series) {
  const auto& systems = catalog();
  EfficiencyTable t;
  t.columns = columns;
  t.values.resize(static_cast<Eigen::Index>(systems.size()), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t r = 0; r < systems.size(); ++r) {
    t.ids.push_back(systems[r].id);
    t.names.push_back(systems[r].name);
    t.signatures.push_back(systems[r].minimal_signature);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      t.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          efficiency_index(systems[r].minimal_signature, series[c]);
    }
  }
  return t;
}

}  // namespace

EfficiencyTable table1(const QuadratureConfig& cfg) {
  const int n = catalog().front().order;
  const auto u = MarginalDistribution::uniform(0.0, 1.0);
  const auto e = MarginalDistribution::exponential(1.0);
  return catalog_table({"G_uniform", "G_exponential"},
                       {series_means(IidSetting{u}, n, cfg), series_means(IidSetting{e}, n, cfg)});
}

EfficiencyTable table2(std::optional<double> theta, const QuadratureConfig& cfg) {
  const int n = catalog().front().order;
  const auto u = MarginalDistribution::uniform(0.0, 1.0);
  const auto e = MarginalDistribution::exponential(1.0);
  auto setting = [](double th, const MarginalDistribution& m) {
    return ComponentSetting{ExchangeableSetting{DiagonalSections::fgm4(Fgm4Diagonal(th)), m}};
  };
  auto label = [](const char* law, double th) {
    std::ostringstream os;
    os << "G_" << law << "_theta=" << th;
    return os.str();
  };
  if (theta) {
    return catalog_table({label("uniform", *theta), label("exponential", *theta)},
                         {series_means(setting(*theta, u), n, cfg), series_means(setting(*theta, e), n, cfg)});
  }
  return catalog_table({label("uniform", 1), label("uniform", -1), label("exponential", 1), label("exponential", -1)},
                       {series_means(setting(1.0, u), n, cfg), series_means(setting(-1.0, u), n, cfg),
                        series_means(setting(1.0, e), n, cfg), series_means(setting(-1.0, e), n, cfg)});
}

}  // namespace depgini
