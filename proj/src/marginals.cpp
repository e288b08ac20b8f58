#include "depgini/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "depgini/error.hpp"

namespace depgini {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_time(double t) {
  if (std::isnan(t) || t < 0.0) {
    throw ArgumentError("lifetime argument must be >= 0, got " + std::to_string(t));
  }
}

void check_prob(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("probability must lie in [0, 1], got " + std::to_string(p));
  }
}

void validate(const Uniform& u) {
  if (!std::isfinite(u.a) || !std::isfinite(u.b) || u.a < 0.0 || !(u.b > u.a)) {
    throw ConstructionError("uniform law needs 0 <= a < b");
  }
}

void validate(const Exponential& e) {
  if (!std::isfinite(e.rate) || !(e.rate > 0.0)) {
    throw ConstructionError("exponential rate must be positive");
  }
}

void validate(const TabulatedQuantile& q) {
  if (q.p.size() != q.x.size() || q.p.size() < 2) {
    throw ConstructionError("tabulated quantile needs at least two (p, x) pairs");
  }
  if (q.p.front() != 0.0 || q.p.back() != 1.0) {
    throw ConstructionError("tabulated quantile grid must start at p = 0 and end at p = 1");
  }
  for (std::size_t i = 0; i < q.p.size(); ++i) {
    if (!std::isfinite(q.p[i]) || !std::isfinite(q.x[i])) {
      throw ConstructionError("tabulated quantile values must be finite");
    }
    if (i > 0 && !(q.p[i] > q.p[i - 1])) {
      throw ConstructionError("tabulated p values must be strictly increasing");
    }
    if (i > 0 && q.x[i] < q.x[i - 1]) {
      throw ConstructionError("tabulated x values must be nondecreasing");
    }
  }
  if (q.x.front() < 0.0) {
    throw ConstructionError("lifetimes must be nonnegative");
  }
}

// Index i of the segment [p_i, p_{i+1}] holding p, with p_i <= p.
std::size_t segment_of(const TabulatedQuantile& q, double p) {
  auto it = std::upper_bound(q.p.begin(), q.p.end(), p);
  std::size_t i = static_cast<std::size_t>(it - q.p.begin());
  i = i == 0 ? 0 : i - 1;
  return std::min(i, q.p.size() - 2);
}

double tabulated_quantile(const TabulatedQuantile& q, double p) {
  if (p <= 0.0) return q.x.front();
  if (p >= 1.0) return q.x.back();
  const std::size_t i = segment_of(q, p);
  const double w = (p - q.p[i]) / (q.p[i + 1] - q.p[i]);
  return q.x[i] + w * (q.x[i + 1] - q.x[i]);
}

double tabulated_cdf(const TabulatedQuantile& q, double t) {
  if (t < q.x.front()) return 0.0;
  if (t >= q.x.back()) return 1.0;
  // Last knot with x <= t; the cdf is right-continuous across atoms.
  auto it = std::upper_bound(q.x.begin(), q.x.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - q.x.begin()) - 1;
  const double dx = q.x[i + 1] - q.x[i];
  if (dx <= 0.0) return q.p[i + 1];
  return q.p[i] + (t - q.x[i]) / dx * (q.p[i + 1] - q.p[i]);
}

double compute_mean(const MarginalDistribution::Law& law) {
  return std::visit(overloaded{
                        [](const Uniform& u) { return 0.5 * (u.a + u.b); },
                        [](const Exponential& e) { return 1.0 / e.rate; },
                        [](const TabulatedQuantile& q) {
                          // The quantile is piecewise linear, so the trapezoid
                          // rule on its knots is exact.
                          double s = 0.0;
                          for (std::size_t i = 0; i + 1 < q.p.size(); ++i) {
                            s += (q.p[i + 1] - q.p[i]) * 0.5 * (q.x[i] + q.x[i + 1]);
                          }
                          return s;
                        },
                    },
                    law);
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

MarginalDistribution::MarginalDistribution(Law law) : law_(std::move(law)) {
  std::visit([](const auto& l) { validate(l); }, law_);
  mean_ = compute_mean(law_);
  if (!(mean_ > 0.0) || !std::isfinite(mean_)) {
    throw ConstructionError("mean lifetime must be finite and positive");
  }
}

MarginalDistribution MarginalDistribution::uniform(double a, double b) {
  return MarginalDistribution(Uniform{a, b});
}

MarginalDistribution MarginalDistribution::exponential(double rate) {
  return MarginalDistribution(Exponential{rate});
}

MarginalDistribution MarginalDistribution::tabulated(std::vector<double> p, std::vector<double> x) {
  return MarginalDistribution(TabulatedQuantile{std::move(p), std::move(x)});
}

MarginalKind MarginalDistribution::kind() const {
  return static_cast<MarginalKind>(law_.index());
}

double MarginalDistribution::cdf(double t) const {
  check_time(t);
  return std::visit(overloaded{
                        [t](const Uniform& u) { return std::clamp((t - u.a) / (u.b - u.a), 0.0, 1.0); },
                        [t](const Exponential& e) { return -std::expm1(-e.rate * t); },
                        [t](const TabulatedQuantile& q) { return tabulated_cdf(q, t); },
                    },
                    law_);
}

double MarginalDistribution::sf(double t) const {
  if (const auto* e = std::get_if<Exponential>(&law_)) {
    check_time(t);
    return std::exp(-e->rate * t);
  }
  return 1.0 - cdf(t);
}

double MarginalDistribution::quantile(double p) const {
  check_prob(p);
  return std::visit(overloaded{
                        [p](const Uniform& u) { return p >= 1.0 ? u.b : u.a + p * (u.b - u.a); },
                        [p](const Exponential& e) { return p >= 1.0 ? kInf : -std::log1p(-p) / e.rate; },
                        [p](const TabulatedQuantile& q) { return tabulated_quantile(q, p); },
                    },
                    law_);
}

double MarginalDistribution::sf_quantile(double q) const {
  check_prob(q);
  if (const auto* e = std::get_if<Exponential>(&law_)) {
    return q <= 0.0 ? kInf : -std::log(q) / e->rate;
  }
  if (const auto* u = std::get_if<Uniform>(&law_)) {
    return u->b - q * (u->b - u->a);
  }
  return quantile(1.0 - q);
}

double MarginalDistribution::density(double t) const {
  check_time(t);
  return std::visit(overloaded{
                        [t](const Uniform& u) { return (t >= u.a && t <= u.b) ? 1.0 / (u.b - u.a) : 0.0; },
                        [t](const Exponential& e) { return e.rate * std::exp(-e.rate * t); },
                        [](const TabulatedQuantile&) -> double {
                          throw UnsupportedOperation("tabulated quantile law has no density");
                        },
                    },
                    law_);
}

double MarginalDistribution::quantile_derivative(double p) const {
  check_prob(p);
  return std::visit(overloaded{
                        [](const Uniform& u) { return u.b - u.a; },
                        [p](const Exponential& e) { return p >= 1.0 ? kInf : 1.0 / (e.rate * (1.0 - p)); },
                        [p](const TabulatedQuantile& q) {
                          const std::size_t i = segment_of(q, p);
                          return (q.x[i + 1] - q.x[i]) / (q.p[i + 1] - q.p[i]);
                        },
                    },
                    law_);
}

double MarginalDistribution::support_lower() const { return quantile(0.0); }

double MarginalDistribution::support_upper() const { return quantile(1.0); }

std::vector<double> MarginalDistribution::kinks() const {
  if (const auto* q = std::get_if<TabulatedQuantile>(&law_)) {
    std::vector<double> out = q->x;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::vector<double> out;
  if (support_lower() > 0.0) out.push_back(support_lower());
  if (std::isfinite(support_upper())) out.push_back(support_upper());
  return out;
}

QuantileMap MarginalDistribution::quantile_map() const {
  QuantileMap map;
  map.quantile = [self = *this](double u) { return self.quantile(u); };
  map.quantile_derivative = [self = *this](double u) { return self.quantile_derivative(u); };
  map.lower = support_lower();
  map.upper = support_upper();
  return map;
}

std::string MarginalDistribution::describe() const {
  return std::visit(overloaded{
                        [](const Uniform& u) { return "uniform:" + format_number(u.a) + "," + format_number(u.b); },
                        [](const Exponential& e) { return "exp:" + format_number(e.rate); },
                        [](const TabulatedQuantile& q) {
                          return "tabulated:" + std::to_string(q.p.size()) + " points";
                        },
                    },
                    law_);
}

double evaluate(const MarginalDistribution& dist, Evaluation which, double arg) {
  switch (which) {
    case Evaluation::cdf: return dist.cdf(arg);
    case Evaluation::sf: return dist.sf(arg);
    case Evaluation::quantile: return dist.quantile(arg);
    case Evaluation::density: return dist.density(arg);
  }
  throw ArgumentError("unknown evaluation");
}

Moments moments(const MarginalDistribution& dist) { return {dist.mean(), dist.median()}; }

MarginalDistribution tabulate(const MarginalDistribution& dist, const std::vector<double>& probs,
                              double tail_cutoff) {
  std::vector<double> x;
  x.reserve(probs.size());
  for (double p : probs) {
    double v = dist.quantile(p);
    if (!std::isfinite(v)) v = tail_cutoff;
    x.push_back(v);
  }
  return MarginalDistribution::tabulated(probs, std::move(x));
}

MarginalDistribution shifted(const MarginalDistribution& dist, double lambda, int grid) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("shift must be finite and nonnegative");
  }
  if (const auto* u = std::get_if<Uniform>(&dist.law())) {
    return MarginalDistribution::uniform(u->a + lambda, u->b + lambda);
  }
  TabulatedQuantile q;
  if (const auto* t = std::get_if<TabulatedQuantile>(&dist.law())) {
    q = *t;
  } else {
    if (grid < 2) throw ArgumentError("tabulation grid needs at least two points");
    // Knots evenly spaced in x up to the 1 - 1e-12 quantile, so the tail
    // is resolved as finely as the bulk.
    const double top = dist.sf_quantile(1e-12);
    for (int i = 0; i < grid - 1; ++i) {
      const double x = top * static_cast<double>(i) / (grid - 2);
      const double p = dist.cdf(x);
      if (!q.p.empty() && p <= q.p.back()) continue;
      q.p.push_back(p);
      q.x.push_back(x);
    }
    q.p.push_back(1.0);
    q.x.push_back(dist.sf_quantile(1e-16));
  }
  for (double& v : q.x) v += lambda;
  return MarginalDistribution(std::move(q));
}

MarginalDistribution scaled(const MarginalDistribution& dist, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ArgumentError("scale must be finite and positive");
  }
  return std::visit(overloaded{
                        [lambda](const Uniform& u) { return MarginalDistribution::uniform(lambda * u.a, lambda * u.b); },
                        [lambda](const Exponential& e) { return MarginalDistribution::exponential(e.rate / lambda); },
                        [lambda](const TabulatedQuantile& q) {
                          TabulatedQuantile s = q;
                          for (double& v : s.x) v *= lambda;
                          return MarginalDistribution(std::move(s));
                        },
                    },
                    dist.law());
}

MarginalDistribution read_tabulated_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConstructionError("empty quantile CSV");
  line.erase(std::remove_if(line.begin(), line.end(), ::isspace), line.end());
  if (line != "p,x") throw ConstructionError("quantile CSV header must be `p,x`");
  std::vector<double> p;
  std::vector<double> x;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string a;
    std::string b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b)) {
      throw ConstructionError("malformed quantile CSV row " + std::to_string(row));
    }
    try {
      std::size_t used = 0;
      p.push_back(std::stod(a, &used));
      x.push_back(std::stod(b, &used));
    } catch (const std::logic_error&) {
      throw ConstructionError("non-numeric quantile CSV row " + std::to_string(row));
    }
  }
  return MarginalDistribution::tabulated(std::move(p), std::move(x));
}

MarginalDistribution read_tabulated_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConstructionError("cannot open quantile CSV: " + path);
  return read_tabulated_csv(in);
}

}  // namespace depgini
