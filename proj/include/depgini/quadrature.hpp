#pragma once

#include <functional>
#include <limits>
#include <span>

namespace depgini {

using Integrand = std::function<double(double)>;

enum class HalflineSubstitution {
  rational,           ///< t = u / (1 - u)
  marginal_quantile,  ///< t = F^{-1}(u), needs a QuantileMap
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 2000;
  HalflineSubstitution halfline_substitution = HalflineSubstitution::rational;

  /// Throws ConstructionError unless tolerances are positive and
  /// max_subdivisions >= 10.
  void validate() const;
};

/// Outcome of one (possibly composite) integration.
///
/// `converged == false` is the accuracy warning: the subdivision budget ran
/// out before the error estimate met max(abs_tol, rel_tol * |value|).
struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  long evaluations = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& other);
};

QuadResult operator+(QuadResult lhs, const QuadResult& rhs);
QuadResult operator-(QuadResult lhs, const QuadResult& rhs);
QuadResult operator*(double factor, QuadResult rhs);

/// Quantile substitution t = Q(u) for the half-line. `quantile_derivative`
/// is dQ/du = 1 / f(Q(u)). Support is [lower, upper]; upper may be +inf.
struct QuantileMap {
  std::function<double(double)> quantile;
  std::function<double(double)> quantile_derivative;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// Globally adaptive Gauss-Kronrod (7/15) integration over [a, b].
///
/// Integrand nodes are interior, so integrable endpoint singularities are
/// fine. A non-finite integrand value throws EvaluationError carrying the
/// abscissa. The integrand must be free of side effects.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadratureConfig& cfg = {});

QuadResult integrate_unit(const Integrand& f, const QuadratureConfig& cfg = {});

/// Integral over [0, inf) through t = u / (1 - u).
QuadResult integrate_halfline(const Integrand& f, const QuadratureConfig& cfg = {});

/// Integral over [0, inf). With `cfg.halfline_substitution ==
/// marginal_quantile` the support of `map` is integrated in the u variable
/// and the pieces outside the support by the rational route; otherwise this
/// is the same as the two-argument overload.
QuadResult integrate_halfline(const Integrand& f, const QuadratureConfig& cfg,
                              const QuantileMap& map);

/// Integral over [0, inf) split at the given breakpoints (kinks or support
/// ends of the integrand). Finite pieces use `integrate`, the tail beyond
/// the last breakpoint uses the rational substitution. When `bounded` is
/// true the integrand is taken to vanish beyond the last breakpoint.
QuadResult integrate_halfline_split(const Integrand& f, std::span<const double> breaks,
                                    bool bounded, const QuadratureConfig& cfg = {});

}  // namespace depgini
