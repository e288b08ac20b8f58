#include "depgini/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "depgini/error.hpp"

namespace depgini {

namespace {

std::vector<double> parse_numbers(std::string_view text, std::string_view spec) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConstructionError("bad number '" + item + "' in marginal spec '" + std::string(spec) + "'");
    }
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string signature_text(const Eigen::VectorXi& a) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(a(i));
  }
  return s + ")";
}

}  // namespace

MarginalDistribution parse_marginal(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConstructionError("marginal spec must look like name:params, got '" + std::string(spec) + "'");
  }
  const auto name = spec.substr(0, colon);
  const auto rest = spec.substr(colon + 1);
  if (name == "tabulated") return read_tabulated_csv(std::string(rest));
  const auto params = parse_numbers(rest, spec);
  if (name == "uniform") {
    if (params.size() != 2) throw ConstructionError("uniform needs two parameters: uniform:a,b");
    return MarginalDistribution::uniform(params[0], params[1]);
  }
  if (name == "exp" || name == "exponential") {
    if (params.size() != 1) throw ConstructionError("exponential needs one parameter: exp:rate");
    return MarginalDistribution::exponential(params[0]);
  }
  throw ConstructionError("unknown marginal family '" + std::string(name) + "'");
}

nlohmann::json to_json(const Diagnostics& d) {
  return {{"panels", d.panels}, {"error_estimate", d.error_estimate}, {"converged", d.converged}};
}

nlohmann::json to_json(const GiniReport& r) {
  return {{"gmd", r.gmd},       {"gini", r.gini},
          {"e_min", r.e_min},   {"e_max", r.e_max},
          {"method", to_string(r.method)}, {"diagnostics", to_json(r.diagnostics)}};
}

nlohmann::json to_json(const BoundsReport& b, const std::vector<double>& markov_at) {
  nlohmann::json j{{"jensen_lower", b.jensen_lower},
                   {"fh_lower", b.fh_lower},
                   {"fh_upper", b.fh_upper},
                   {"id_median_upper", b.id_median_upper ? nlohmann::json(*b.id_median_upper) : nlohmann::json()},
                   {"violations", b.violations}};
  nlohmann::json markov = nlohmann::json::array();
  for (double a : markov_at) markov.push_back({{"a", a}, {"lower_bound", b.markov(a)}});
  j["markov"] = markov;
  return j;
}

nlohmann::json to_json(const CovarianceTerms& t) {
  return {{"mean_x", t.mean_x},         {"mean_y", t.mean_y},
          {"pr_y_greater_x", t.e_gamma1}, {"pr_x_greater_y", t.e_gamma2},
          {"e_x_gamma1", t.e_x_gamma1}, {"e_y_gamma2", t.e_y_gamma2},
          {"cov_x_gamma1", t.cov_x_gamma1}, {"cov_y_gamma2", t.cov_y_gamma2}};
}

nlohmann::json to_json(const EfficiencyTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < t.ids.size(); ++r) {
    nlohmann::json row{{"i", t.ids[r]}, {"T_i", t.names[r]}};
    const auto& a = t.signatures[r];
    row["a4"] = std::vector<int>(a.data(), a.data() + a.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      row[t.columns[c]] = t.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    rows.push_back(row);
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

void write_table_csv(std::ostream& out, const EfficiencyTable& t, int decimals) {
  out << "i,T_i,a4";
  for (const auto& c : t.columns) out << ',' << c;
  out << '\n';
  std::ostringstream fmt;
  for (std::size_t r = 0; r < t.ids.size(); ++r) {
    out << t.ids[r] << ',' << csv_quote(t.names[r]) << ',' << csv_quote(signature_text(t.signatures[r]));
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const double v = t.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      fmt.str("");
      if (decimals >= 0) {
        // Avoid printing -0.000 for values that round to zero.
        const double scale = std::pow(10.0, decimals);
        const double rounded = std::round(v * scale) / scale;
        fmt << std::fixed << std::setprecision(decimals) << (rounded == 0.0 ? 0.0 : rounded);
      } else {
        fmt << std::setprecision(17) << v;
      }
      out << ',' << fmt.str();
    }
    out << '\n';
  }
}

void write_pairs_csv(std::ostream& out, const PairSample& s) {
  out << "x,y,l,u,z\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < s.n(); ++i) {
    const double x = s.x(i);
    const double y = s.y(i);
    out << x << ',' << y << ',' << std::min(x, y) << ',' << std::max(x, y) << ',' << std::abs(x - y) << '\n';
  }
}

void write_system_csv(std::ostream& out, const SystemSample& s) {
  out << "x_1n,t,x_nn\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < s.t.size(); ++i) out << s.first(i) << ',' << s.t(i) << ',' << s.last(i) << '\n';
}

}  // namespace depgini
