#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "depgini/copulas.hpp"
#include "depgini/marginals.hpp"
#include "depgini/quadrature.hpp"
#include "depgini/structure.hpp"

namespace depgini {

/// A semi-coherent system of order n.
///
/// The minimal signature a (length n, summing to 1) writes the system
/// survival as sum_i a_i Pr(X_{1:i} > t); the structure function gives the
/// lifetime from component lifetimes for simulation.
struct SystemSpec {
  int id = 0;
  std::string name;
  int k = 0;
  int order = 0;
  Eigen::VectorXi minimal_signature;
  StructureFunction structure;

  /// Throws ConstructionError on inconsistent fields.
  void validate() const;
};

SystemSpec make_system(int id, std::string name, int k, Eigen::VectorXi minimal_signature,
                       std::string_view structure);

/// The 28 systems with one to four components, as order-4 systems.
const std::vector<SystemSpec>& catalog();
const SystemSpec& catalog_system(int id);
/// Parses catalog JSON (keys: order, systems[{id, name, k, a4, structure}]).
std::vector<SystemSpec> parse_catalog(std::string_view json_text);

SystemSpec series_system(int n);
SystemSpec parallel_system(int n);
/// Works while at least k of n components work, T = X_{n-k+1:n}.
SystemSpec k_out_of_n_system(int k, int n);

double structure_evaluate(const SystemSpec& sys, std::span<const double> lifetimes);

/// Samaniego signature s_i = Pr(T = X_{i:n}).
class Signature {
 public:
  /// Throws PreconditionError unless s is a probability vector.
  explicit Signature(Eigen::VectorXd s);

  static Signature series(int n);
  static Signature parallel(int n);
  static Signature k_out_of_n(int k, int n);

  int order() const { return static_cast<int>(s_.size()); }
  const Eigen::VectorXd& probabilities() const { return s_; }
  /// S_j = sum_{i >= j} s_i for j = 1..n (entry j - 1).
  Eigen::VectorXd tail() const;

 private:
  Eigen::VectorXd s_;
};

/// G_X(alpha, beta) = int F^alpha Fbar^beta dt.
double cigf(const MarginalDistribution& m, double alpha, double beta, const QuadratureConfig& cfg = {});

/// K_X(beta) = G_X(0, beta).
double cumulative_residual(const MarginalDistribution& m, double beta, const QuadratureConfig& cfg = {});

/// Survival diagonal sections hat-delta_1..hat-delta_n of an exchangeable
/// component vector; hat-delta_i(u) is the i-variate survival copula on the
/// diagonal.
class DiagonalSections {
 public:
  using Section = std::function<double(double)>;

  /// Throws PreconditionError unless hat-delta_1 is the identity and the
  /// sections are pointwise nonincreasing in i.
  explicit DiagonalSections(std::vector<Section> sections);

  static DiagonalSections iid(int n);
  static DiagonalSections fgm4(const Fgm4Diagonal& d);

  int order() const { return static_cast<int>(sections_.size()); }
  double operator()(int i, double u) const { return sections_[static_cast<std::size_t>(i - 1)](u); }

 private:
  std::vector<Section> sections_;
};

struct IidSetting {
  MarginalDistribution marginal;
};

struct ExchangeableSetting {
  DiagonalSections diagonals;
  MarginalDistribution marginal;
};

using ComponentSetting = std::variant<IidSetting, ExchangeableSetting>;

/// E T - E X_{1:n} with i.i.d. components: sum_i a_i K(i) - K(n).
double eff_gmd_iid(const SystemSpec& sys, const MarginalDistribution& m, const QuadratureConfig& cfg = {});

/// E T - E X_{1:n} with exchangeable components through diagonal sections.
double eff_gmd_exchangeable(const SystemSpec& sys, const DiagonalSections& diagonals,
                            const MarginalDistribution& m, const QuadratureConfig& cfg = {});

double eff_gmd(const SystemSpec& sys, const ComponentSetting& setting, const QuadratureConfig& cfg = {});

/// Efficiency index GMD_n(T) / GMD_n(X_{n:n}), in [0, 1].
double eff_gini(const SystemSpec& sys, const ComponentSetting& setting, const QuadratureConfig& cfg = {});

/// Efficiency GMD from the Samaniego signature (i.i.d. continuous components).
double eff_gmd_signature(const Signature& sig, const MarginalDistribution& m, const QuadratureConfig& cfg = {});

/// 1 - G_n(T) / c, the lower bound on Pr(T < X_{1:n} + c GMD_n(X_{n:n})).
double markov_efficiency_bound(const SystemSpec& sys, const ComponentSetting& setting, double c,
                               const QuadratureConfig& cfg = {});

/// Efficiency indices of the catalog, one row per system.
struct EfficiencyTable {
  std::vector<std::string> columns;
  std::vector<int> ids;
  std::vector<std::string> names;
  std::vector<Eigen::VectorXi> signatures;
  Eigen::MatrixXd values;
};

/// Columns: i.i.d. Uniform(0,1), i.i.d. Exponential(1).
EfficiencyTable table1(const QuadratureConfig& cfg = {});

/// 4-variate FGM diagonal. With a theta, the columns are Uniform(0,1) and
/// Exponential(1) at that theta; without, all four columns in the order
/// (uniform, 1), (uniform, -1), (exponential, 1), (exponential, -1).
EfficiencyTable table2(std::optional<double> theta = std::nullopt, const QuadratureConfig& cfg = {});

}  // namespace depgini
