#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "depgini/gini.hpp"
#include "depgini/sampling.hpp"
#include "depgini/systems.hpp"

namespace depgini {

/// Parses `uniform:a,b`, `exp:rate` or `tabulated:path.csv`.
/// Throws ConstructionError on bad text or parameters.
MarginalDistribution parse_marginal(std::string_view spec);

nlohmann::json to_json(const Diagnostics& d);
nlohmann::json to_json(const GiniReport& r);
/// Bounds, with the Markov bound evaluated at each a in `markov_at`.
nlohmann::json to_json(const BoundsReport& b, const std::vector<double>& markov_at);
nlohmann::json to_json(const CovarianceTerms& t);
nlohmann::json to_json(const EfficiencyTable& t);

/// Header `i,T_i,a4,<columns>`. `decimals < 0` prints full precision.
void write_table_csv(std::ostream& out, const EfficiencyTable& t, int decimals = 3);
/// Header `x,y,l,u,z`.
void write_pairs_csv(std::ostream& out, const PairSample& s);
/// Header `x_1n,t,x_nn`.
void write_system_csv(std::ostream& out, const SystemSample& s);

}  // namespace depgini
