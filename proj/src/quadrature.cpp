#include "depgini/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "depgini/error.hpp"

namespace depgini {

namespace {

// Kronrod abscissae and weights for the 15-point rule, Gauss weights for the
// embedded 7-point rule (nodes xgk[1], xgk[3], xgk[5], xgk[7]).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = 2.220446049250313e-16;
constexpr double kTiny = 2.2250738585072014e-308;

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const { return lhs.error < rhs.error; }
};

double checked(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw EvaluationError("integrand is not finite", x);
  }
  return y;
}

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f, center - dx);
    f2[j] = checked(f, center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }
  const double width = std::abs(half);
  resabs *= width;
  resasc *= width;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return {a, b, resk * half, err};
}

double tolerance(const QuadratureConfig& cfg, double value) {
  return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw ConstructionError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 10) {
    throw ConstructionError("max_subdivisions must be at least 10");
  }
}

QuadResult& QuadResult::operator+=(const QuadResult& other) {
  value += other.value;
  error_estimate += other.error_estimate;
  panels += other.panels;
  evaluations += other.evaluations;
  converged = converged && other.converged;
  return *this;
}

QuadResult operator+(QuadResult lhs, const QuadResult& rhs) { return lhs += rhs; }

QuadResult operator-(QuadResult lhs, const QuadResult& rhs) {
  QuadResult neg = rhs;
  neg.value = -neg.value;
  return lhs += neg;
}

QuadResult operator*(double factor, QuadResult rhs) {
  rhs.value *= factor;
  rhs.error_estimate *= std::abs(factor);
  return rhs;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ArgumentError("integration limits must be finite");
  }
  QuadResult out;
  if (a == b) return out;

  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  Panel first = gauss_kronrod(f, a, b);
  double total = first.value;
  double total_err = first.error;
  out.evaluations = 15;
  heap.push(first);
  int panels = 1;

  while (total_err > tolerance(cfg, total) && panels < cfg.max_subdivisions) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Stop splitting once the panel is at the floating-point resolution.
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    heap.pop();
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }

  // Re-sum to shed drift from the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error_estimate = total_err;
  out.panels = panels;
  out.converged = total_err <= tolerance(cfg, total);
  return out;
}

QuadResult integrate_unit(const Integrand& f, const QuadratureConfig& cfg) {
  return integrate(f, 0.0, 1.0, cfg);
}

namespace {

QuadResult rational_tail(const Integrand& f, double start, const QuadratureConfig& cfg) {
  const Integrand g = [&f, start](double u) {
    const double w = 1.0 - u;
    const double t = start + u / w;
    const double y = checked(f, t);
    if (y == 0.0) return 0.0;
    const double scaled = y / (w * w);
    if (!std::isfinite(scaled)) throw EvaluationError("integrand is not finite", t);
    return scaled;
  };
  return integrate(g, 0.0, 1.0, cfg);
}

}  // namespace

QuadResult integrate_halfline(const Integrand& f, const QuadratureConfig& cfg) {
  return rational_tail(f, 0.0, cfg);
}

QuadResult integrate_halfline(const Integrand& f, const QuadratureConfig& cfg,
                              const QuantileMap& map) {
  if (cfg.halfline_substitution != HalflineSubstitution::marginal_quantile) {
    return integrate_halfline(f, cfg);
  }
  if (!map.quantile || !map.quantile_derivative) {
    throw ArgumentError("quantile substitution needs a quantile map");
  }
  const Integrand g = [&f, &map](double u) {
    const double t = map.quantile(u);
    const double y = checked(f, t);
    return y == 0.0 ? 0.0 : y * map.quantile_derivative(u);
  };
  QuadResult out = integrate(g, 0.0, 1.0, cfg);
  if (map.lower > 0.0) out += integrate(f, 0.0, map.lower, cfg);
  if (std::isfinite(map.upper)) out += rational_tail(f, map.upper, cfg);
  return out;
}

QuadResult integrate_halfline_split(const Integrand& f, std::span<const double> breaks,
                                    bool bounded, const QuadratureConfig& cfg) {
  std::vector<double> points{0.0};
  for (double b : breaks) {
    if (!(b >= 0.0)) throw ArgumentError("breakpoints must be nonnegative");
    if (std::isfinite(b)) points.push_back(b);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const std::size_t pieces = points.size() - 1 + (bounded ? 0 : 1);
  QuadratureConfig piece_cfg = cfg;
  if (pieces > 1) piece_cfg.abs_tol = cfg.abs_tol / static_cast<double>(pieces);

  QuadResult out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    out += integrate(f, points[i], points[i + 1], piece_cfg);
  }
  if (!bounded) out += rational_tail(f, points.back(), piece_cfg);
  return out;
}

}  // namespace depgini
