#include "depgini/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "depgini/error.hpp"

namespace depgini {

namespace {

void check_unit(double u, const char* what) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw ArgumentError(std::string(what) + " must lie in [0, 1], got " + std::to_string(u));
  }
}

void check_interior(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw ArgumentError("conditioning value must lie in (0, 1), got " + std::to_string(u));
  }
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

// Clamps to [W(u, v), M(u, v)]; u + v - 1 can round above min(u, v) at v = 1.
double clamp_fh(double c, double u, double v) {
  const double hi = std::min(u, v);
  return std::clamp(c, std::min(std::max(u + v - 1.0, 0.0), hi), hi);
}

// log(1 + e^x) without overflow.
double log1p_exp(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

// --- Clayton ---------------------------------------------------------------

// log s with s = u^-t + v^-t - 1, for t > 0 and u, v in (0, 1].
double clayton_log_s_pos(double t, double u, double v) {
  const double a = -t * std::log(u);
  const double b = -t * std::log(v);
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  // s = e^hi (1 + e^{lo - hi} - e^{-hi}) = e^hi (1 + e^{-hi} (e^lo - 1)).
  const double rest = lo < 1.0 ? std::exp(-hi) * std::expm1(lo) : std::exp(lo - hi) - std::exp(-hi);
  return hi + std::log1p(rest);
}

// s for t in (-1, 0); s <= 0 means C = 0.
double clayton_s_neg(double t, double u, double v) {
  return 1.0 + std::expm1(-t * std::log(u)) + std::expm1(-t * std::log(v));
}

double clayton_cdf(double t, double u, double v) {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  if (t > 0.0) return std::exp(-clayton_log_s_pos(t, u, v) / t);
  const double s = clayton_s_neg(t, u, v);
  return s <= 0.0 ? 0.0 : std::pow(s, -1.0 / t);
}

// u + v - 1 + C(1 - u, 1 - v), keeping the absolute error proportional to u + v.
double clayton_survival(double t, double u, double v) {
  if (u >= 1.0) return v;
  if (v >= 1.0) return u;
  const double x = std::expm1(-t * std::log1p(-u));
  const double y = std::expm1(-t * std::log1p(-v));
  if (t < 0.0 && 1.0 + x + y <= 0.0) return std::max(u + v - 1.0, 0.0);
  // C(1-u, 1-v) - 1 = expm1(-log1p(x + y) / t).
  return u + v + std::expm1(-std::log1p(x + y) / t);
}

double clayton_d1(double t, double u, double v) {
  if (v <= 0.0) return 0.0;
  if (u <= 0.0) {
    if (t > 0.0) return 1.0;
    return v >= 1.0 ? 1.0 : 0.0;
  }
  double log_s;
  if (t > 0.0) {
    log_s = clayton_log_s_pos(t, u, v);
  } else {
    const double s = clayton_s_neg(t, u, v);
    if (s <= 0.0) return 0.0;
    log_s = std::log(s);
  }
  // (C / u)^(1 + t) with log C = -log s / t.
  return clamp_unit(std::exp((1.0 + t) * (-log_s / t - std::log(u))));
}

double clayton_inverse(double t, double z, double u) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double k = -t / (1.0 + t) * std::log(z);  // w = z^{-t/(1+t)} - 1 = expm1(k)
  if (t > 0.0) {
    // v = exp(-log1p(u^-t w) / t), with u^-t w formed in log space.
    const double log_w = k > 30.0 ? k + std::log1p(-std::exp(-k)) : std::log(std::expm1(k));
    const double log_term = -t * std::log(u) + log_w;
    return clamp_unit(std::exp(-log1p_exp(log_term) / t));
  }
  const double inner = 1.0 + std::pow(u, -t) * std::expm1(k);
  return inner <= 0.0 ? 0.0 : clamp_unit(std::pow(inner, -1.0 / t));
}

// --- Frank -----------------------------------------------------------------
// For |t| <= 1 the expm1 form C = -log1p(AB / D) / t is used, with
// A = expm1(-t u), B = expm1(-t v), D = expm1(-t). For t > 1 the same
// expression is rewritten with a = e^{-tu}, b = e^{-tv}, e = e^{-t} as
// C = -(log N - log1p(-e)) / t, N = a + b (1 - a) - e, which cannot overflow.
// Negative t beyond -1 reflects through C_t(u, v) = u - C_{-t}(u, 1 - v).

double frank_cdf_pos(double t, double u, double v);

double frank_cdf(double t, double u, double v) {
  if (std::abs(t) <= 1.0) {
    const double A = std::expm1(-t * u);
    const double B = std::expm1(-t * v);
    const double D = std::expm1(-t);
    return -std::log1p(A * B / D) / t;
  }
  if (t > 0.0) return frank_cdf_pos(t, u, v);
  return u - frank_cdf_pos(-t, u, 1.0 - v);
}

double frank_cdf_pos(double t, double u, double v) {
  if (u <= 0.0 || v <= 0.0) return 0.0;
  const double a = std::exp(-t * u);
  const double b = std::exp(-t * v);
  const double e = std::exp(-t);
  const double n = a - b * std::expm1(-t * u) - e;
  return -(std::log(n) - std::log1p(-e)) / t;
}

double frank_d1_pos(double t, double u, double v) {
  const double a = std::exp(-t * u);
  const double b = std::exp(-t * v);
  const double e = std::exp(-t);
  const double n = a - b * std::expm1(-t * u) - e;
  return a * -std::expm1(-t * v) / n;
}

double frank_d1(double t, double u, double v) {
  if (std::abs(t) <= 1.0) {
    const double A = std::expm1(-t * u);
    const double B = std::expm1(-t * v);
    const double D = std::expm1(-t);
    return clamp_unit((A + 1.0) * B / (D + A * B));
  }
  if (t > 0.0) return clamp_unit(frank_d1_pos(t, u, v));
  return clamp_unit(1.0 - frank_d1_pos(-t, u, 1.0 - v));
}

double frank_inverse_pos(double t, double z, double u) {
  // From z = a (1 - b) / N: b = (a (1 - z) + z e) / (a + z (1 - a)).
  // log of the numerator is -t u + log((1 - z) + z e^{-t (1 - u)}).
  const double log_num = -t * u + std::log((1.0 - z) + z * std::exp(-t * (1.0 - u)));
  const double log_den = std::log(std::exp(-t * u) - z * std::expm1(-t * u));
  return clamp_unit(-(log_num - log_den) / t);
}

double frank_inverse(double t, double z, double u) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  if (std::abs(t) <= 1.0) {
    const double A = std::expm1(-t * u);
    const double D = std::expm1(-t);
    const double B = z * D / (1.0 + A * (1.0 - z));
    return clamp_unit(-std::log1p(B) / t);
  }
  if (t > 0.0) return frank_inverse_pos(t, z, u);
  return clamp_unit(1.0 - frank_inverse_pos(-t, 1.0 - z, u));
}

// --- FGM ---------------------------------------------------------------------

double fgm_cdf(double t, double u, double v) { return u * v * (1.0 + t * (1.0 - u) * (1.0 - v)); }

double fgm_d1(double t, double u, double v) { return v * (1.0 + t * (1.0 - v) * (1.0 - 2.0 * u)); }

double fgm_inverse(double t, double z, double u) {
  // a v^2 - (1 + a) v + z = 0 with a = t (1 - 2u); the root in [0, 1] in a
  // form that stays finite as a -> 0.
  const double a = t * (1.0 - 2.0 * u);
  const double disc = (1.0 + a) * (1.0 + a) - 4.0 * a * z;
  return clamp_unit(2.0 * z / ((1.0 + a) + std::sqrt(std::max(disc, 0.0))));
}

}  // namespace

Copula Copula::independence() { return {CopulaFamily::independence, 0.0}; }
Copula Copula::upper_fh() { return {CopulaFamily::upper_fh, 0.0}; }
Copula Copula::lower_fh() { return {CopulaFamily::lower_fh, 0.0}; }

Copula Copula::fgm(double theta) {
  if (!(theta >= -1.0 && theta <= 1.0)) throw ConstructionError("FGM parameter must lie in [-1, 1]");
  return {CopulaFamily::fgm, theta};
}

Copula Copula::clayton(double theta) {
  if (!std::isfinite(theta) || !(theta > -1.0) || theta == 0.0) {
    throw ConstructionError("Clayton parameter must lie in (-1, 0) or (0, inf); use W or Pi for the limits");
  }
  return {CopulaFamily::clayton, theta};
}

Copula Copula::frank(double theta) {
  if (!std::isfinite(theta) || theta == 0.0) {
    throw ConstructionError("Frank parameter must be finite and nonzero; use Pi for 0");
  }
  if (std::abs(theta) > 700.0) throw ConstructionError("Frank parameter magnitude above 700 is not supported");
  return {CopulaFamily::frank, theta};
}

Copula Copula::from_name(const std::string& name, double theta) {
  if (name == "pi" || name == "independence") return independence();
  if (name == "m") return upper_fh();
  if (name == "w") return lower_fh();
  if (name == "fgm") return fgm(theta);
  if (name == "clayton") return clayton(theta);
  if (name == "frank") return frank(theta);
  throw ConstructionError("unknown copula family: " + name);
}

std::string Copula::name() const {
  switch (family_) {
    case CopulaFamily::independence: return "pi";
    case CopulaFamily::upper_fh: return "m";
    case CopulaFamily::lower_fh: return "w";
    case CopulaFamily::fgm: return "fgm";
    case CopulaFamily::clayton: return "clayton";
    case CopulaFamily::frank: return "frank";
  }
  return "?";
}

bool Copula::has_density() const {
  return family_ != CopulaFamily::upper_fh && family_ != CopulaFamily::lower_fh;
}

double Copula::cdf(double u, double v) const {
  check_unit(u, "u");
  check_unit(v, "v");
  double c = 0.0;
  switch (family_) {
    case CopulaFamily::independence: c = u * v; break;
    case CopulaFamily::upper_fh: c = std::min(u, v); break;
    case CopulaFamily::lower_fh: c = std::max(u + v - 1.0, 0.0); break;
    case CopulaFamily::fgm: c = fgm_cdf(theta_, u, v); break;
    case CopulaFamily::clayton: c = clayton_cdf(theta_, u, v); break;
    case CopulaFamily::frank: c = frank_cdf(theta_, u, v); break;
  }
  return clamp_fh(c, u, v);
}

double Copula::survival(double u, double v) const {
  check_unit(u, "u");
  check_unit(v, "v");
  double c = 0.0;
  switch (family_) {
    // Pi, M, W, FGM and Frank are radially symmetric.
    case CopulaFamily::independence:
    case CopulaFamily::upper_fh:
    case CopulaFamily::lower_fh:
    case CopulaFamily::fgm:
    case CopulaFamily::frank: return cdf(u, v);
    case CopulaFamily::clayton: c = clayton_survival(theta_, u, v); break;
  }
  return clamp_fh(c, u, v);
}

double Copula::diagonal(double u, DiagonalKind which) const {
  return which == DiagonalKind::cdf ? cdf(u, u) : survival(u, u);
}

double Copula::d1(double u, double v) const {
  check_unit(u, "u");
  check_unit(v, "v");
  switch (family_) {
    case CopulaFamily::independence: return v;
    case CopulaFamily::upper_fh: return v >= u ? 1.0 : 0.0;
    case CopulaFamily::lower_fh: return u + v >= 1.0 ? 1.0 : 0.0;
    case CopulaFamily::fgm: return clamp_unit(fgm_d1(theta_, u, v));
    case CopulaFamily::clayton: return clayton_d1(theta_, u, v);
    case CopulaFamily::frank: return frank_d1(theta_, u, v);
  }
  throw InternalError("unknown copula family");
}

double Copula::conditional(double v, double given_u) const {
  check_interior(given_u);
  return d1(given_u, v);
}

double Copula::conditional_inverse(double z, double given_u) const {
  check_unit(z, "z");
  check_interior(given_u);
  switch (family_) {
    case CopulaFamily::independence: return z;
    case CopulaFamily::upper_fh: return given_u;
    case CopulaFamily::lower_fh: return 1.0 - given_u;
    case CopulaFamily::fgm: return fgm_inverse(theta_, z, given_u);
    case CopulaFamily::clayton: return clayton_inverse(theta_, z, given_u);
    case CopulaFamily::frank: return frank_inverse(theta_, z, given_u);
  }
  throw InternalError("unknown copula family");
}

double partial_u_fd(const CopulaFunction& c, double u, double v, double h) {
  check_unit(u, "u");
  check_unit(v, "v");
  if (u < h) return (c(u + h, v) - c(u, v)) / h;
  if (u > 1.0 - h) return (c(u, v) - c(u - h, v)) / h;
  return (c(u + h, v) - c(u - h, v)) / (2.0 * h);
}

double conditional_inverse_bisection(const Copula& c, double z, double given_u) {
  check_unit(z, "z");
  check_interior(given_u);
  double lo = 0.0;
  double hi = 1.0;
  if (c.conditional(lo, given_u) > z + 1e-12 || c.conditional(hi, given_u) < z - 1e-12) {
    throw InternalError("conditional distribution does not bracket the target");
  }
  // Smallest v with conditional(v) >= z.
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (c.conditional(mid, given_u) >= z) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Fgm4Diagonal::Fgm4Diagonal(double t) : theta(t) {
  if (!(t >= -1.0 && t <= 1.0)) throw ConstructionError("FGM parameter must lie in [-1, 1]");
}

double Fgm4Diagonal::operator()(int i, double u) const {
  check_unit(u, "u");
  if (i < 1 || i > 4) throw ArgumentError("diagonal index must lie in 1..4");
  const double p = std::pow(u, i);
  if (i < 4) return p;
  const double w = (1.0 - u) * (1.0 - u);
  return p * (1.0 + theta * w * w);
}

SchurReport schur_predicates(const Copula& survival_copula, const MarginalDistribution& m,
                             int grid_size) {
  if (grid_size < 16) throw ArgumentError("grid_size must be at least 16");
  constexpr double tol = 1e-9;
  const int g = grid_size;
  double upper = m.support_upper();
  if (!std::isfinite(upper)) upper = m.quantile(0.99);
  const double lower = m.support_lower();
  const double h = (upper - lower) / (g - 1);

  std::vector<double> x(static_cast<std::size_t>(g));
  std::vector<double> sf(static_cast<std::size_t>(g));
  for (int i = 0; i < g; ++i) {
    x[static_cast<std::size_t>(i)] = lower + i * h;
    sf[static_cast<std::size_t>(i)] = m.sf(x[static_cast<std::size_t>(i)]);
  }
  auto H = [&](int i, int j) {
    return survival_copula.survival(sf[static_cast<std::size_t>(i)], sf[static_cast<std::size_t>(j)]);
  };

  SchurReport r{true, true, true, true};
  // On each anti-diagonal i + j = s, points ordered by min(i, j): Schur-concave
  // means H grows with the smaller coordinate, Schur-convex that it shrinks.
  for (int s = 0; s <= 2 * (g - 1); ++s) {
    const int i_min = std::max(0, s - (g - 1));
    const int mid = s / 2;
    double prev_hi = -1.0;
    double prev_lo = 2.0;
    for (int k = i_min; k <= mid; ++k) {
      const double a = H(k, s - k);
      const double b = H(s - k, k);
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      if (hi - lo > tol) {
        r.schur_concave = false;
        r.schur_convex = false;
      }
      if (k > i_min) {
        if (lo < prev_hi - tol) r.schur_concave = false;
        if (hi > prev_lo + tol) r.schur_convex = false;
      }
      prev_hi = hi;
      prev_lo = lo;
    }
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      if ((i + j) % 2 == 0) {
        const int c = (i + j) / 2;
        if (H(i, j) > H(c, c) + tol) r.weakly_schur_concave = false;
      }
      const double sum = x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)];
      if (std::abs(H(i, j) - m.sf(sum)) > tol) r.schur_constant_sf = false;
    }
  }
  return r;
}

}  // namespace depgini
