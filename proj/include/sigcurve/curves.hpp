#pragma once

// Analytic test curves with hand-coded derivatives up to order 5.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "sigcurve/error.hpp"
#include "sigcurve/geom.hpp"
#include "sigcurve/random.hpp"

namespace sigcurve {

inline constexpr int kMaxDerivative = 5;

/// Planar curves live in the z = 0 plane; `dim` says which signature applies.
struct CurveModel {
  std::string name;
  int dim = 2;
  /// Position (order 0) or d^order/dt^order position, order <= 5.
  std::function<Point3(double t, int order)> eval;
  double t_lo = 0.0;
  double t_hi = 1.0;
  bool closed = false;
  /// Smallest admissible parameter; evaluation below throws
  /// SingularParametrization. -inf when the curve is regular everywhere.
  double t_min = -std::numeric_limits<double>::infinity();

  Point3 position(double t) const { return eval(t, 0); }
  Point3 derivative(double t, int order) const { return eval(t, order); }
  double period() const { return t_hi - t_lo; }
};

/// Named scalar parameters of a builtin curve (eps, k, R, a, b).
using CurveParams = std::map<std::string, double>;

namespace detail {

inline double param_or(const CurveParams& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

/// d^n/dt^n cos(w t + phase) = w^n cos(w t + phase + n pi/2).
inline double dcos(double w, double t, int n) {
  return std::pow(w, n) * std::cos(w * t + n * std::numbers::pi / 2);
}
inline double dsin(double w, double t, int n) {
  return std::pow(w, n) * std::sin(w * t + n * std::numbers::pi / 2);
}

inline void require_order(int order) {
  if (order < 0 || order > kMaxDerivative) {
    throw SignatureError(ErrorCode::InvalidArgument,
                         "derivative order " + std::to_string(order) + " not available");
  }
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw SignatureError(ErrorCode::InvalidArgument, std::string(what) + " must be positive");
  }
}

inline constexpr std::array<std::array<double, 6>, 6> kBinomial{{
    {1, 0, 0, 0, 0, 0},
    {1, 1, 0, 0, 0, 0},
    {1, 2, 1, 0, 0, 0},
    {1, 3, 3, 1, 0, 0},
    {1, 4, 6, 4, 1, 0},
    {1, 5, 10, 10, 5, 1},
}};

}  // namespace detail

/// r = 1 + eps cos(k t), closed on [0, 2 pi]; derivatives by Leibniz.
inline CurveModel polar_cos(double eps, double k) {
  if (!std::isfinite(eps) || !std::isfinite(k)) {
    throw SignatureError(ErrorCode::InvalidArgument, "polar_cos parameters must be finite");
  }
  CurveModel m;
  m.name = "polar_cos";
  m.dim = 2;
  m.t_lo = 0.0;
  m.t_hi = 2.0 * std::numbers::pi;
  m.closed = true;
  m.eval = [eps, k](double t, int order) {
    detail::require_order(order);
    double x = 0.0, y = 0.0;
    for (int j = 0; j <= order; ++j) {
      const double rj = (j == 0 ? 1.0 : 0.0) + eps * detail::dcos(k, t, j);
      const double c = detail::kBinomial[order][j];
      x += c * rj * detail::dcos(1.0, t, order - j);
      y += c * rj * detail::dsin(1.0, t, order - j);
    }
    return Point3{x, y, 0.0};
  };
  return m;
}

inline CurveModel ellipse(double a, double b) {
  detail::require_positive(a, "ellipse a");
  detail::require_positive(b, "ellipse b");
  CurveModel m;
  m.name = "ellipse";
  m.dim = 2;
  m.t_lo = 0.0;
  m.t_hi = 2.0 * std::numbers::pi;
  m.closed = true;
  m.eval = [a, b](double t, int order) {
    detail::require_order(order);
    return Point3{a * detail::dcos(1.0, t, order), b * detail::dsin(1.0, t, order), 0.0};
  };
  return m;
}

inline CurveModel circle(double radius) {
  detail::require_positive(radius, "circle R");
  CurveModel m = ellipse(radius, radius);
  m.name = "circle";
  return m;
}

/// (a cos t, a sin t, b t) on [0, 4 pi].
inline CurveModel helix(double a, double b) {
  detail::require_positive(a, "helix a");
  if (!std::isfinite(b)) throw SignatureError(ErrorCode::InvalidArgument, "helix b not finite");
  CurveModel m;
  m.name = "helix";
  m.dim = 3;
  m.t_lo = 0.0;
  m.t_hi = 4.0 * std::numbers::pi;
  m.eval = [a, b](double t, int order) {
    detail::require_order(order);
    const double z = order == 0 ? b * t : (order == 1 ? b : 0.0);
    return Point3{a * detail::dcos(1.0, t, order), a * detail::dsin(1.0, t, order), z};
  };
  return m;
}

/// (cos t, sin t, sqrt t). Not regular at t = 0; evaluation is refused
/// below t = 1e-3. Default range [pi/2, 3 pi/2].
inline CurveModel sqrt_helix() {
  CurveModel m;
  m.name = "sqrt_helix";
  m.dim = 3;
  m.t_lo = std::numbers::pi / 2;
  m.t_hi = 3.0 * std::numbers::pi / 2;
  m.t_min = 1e-3;
  m.eval = [](double t, int order) {
    detail::require_order(order);
    if (!(t >= 1e-3)) {
      throw SignatureError(ErrorCode::SingularParametrization,
                           "sqrt_helix is singular near t = 0 (t = " + std::to_string(t) + ")");
    }
    // d^n t^{1/2} = (1/2)(1/2 - 1)...(1/2 - n + 1) t^{1/2 - n}
    double coef = 1.0;
    for (int j = 0; j < order; ++j) coef *= 0.5 - j;
    return Point3{detail::dcos(1.0, t, order), detail::dsin(1.0, t, order),
                  coef * std::pow(t, 0.5 - order)};
  };
  return m;
}

/// Builtin curve by name: polar_cos(eps, k), circle(R), ellipse(a, b),
/// helix(a, b), sqrt_helix.
inline CurveModel builtin_curve(const std::string& name, const CurveParams& p = {}) {
  using detail::param_or;
  if (name == "polar_cos") return polar_cos(param_or(p, "eps", 0.1), param_or(p, "k", 1.0));
  if (name == "circle") return circle(param_or(p, "R", 1.0));
  if (name == "ellipse") return ellipse(param_or(p, "a", 2.0), param_or(p, "b", 1.0));
  if (name == "helix") return helix(param_or(p, "a", 1.0), param_or(p, "b", 1.0));
  if (name == "sqrt_helix") return sqrt_helix();
  throw SignatureError(ErrorCode::UnknownCurve, "no builtin curve named '" + name + "'");
}

/// beta(u) = alpha(scale * u): same trace, rescaled parameter.
inline CurveModel reparametrized(const CurveModel& model, double scale) {
  detail::require_positive(scale, "reparametrization scale");
  CurveModel m = model;
  m.name = model.name + "*" + std::to_string(scale);
  m.t_lo = model.t_lo / scale;
  m.t_hi = model.t_hi / scale;
  m.t_min = model.t_min / scale;
  m.eval = [inner = model.eval, scale](double u, int order) {
    return std::pow(scale, order) * inner(scale * u, order);
  };
  return m;
}

/// Largest relative mismatch between each derivative (orders 1..5) and the
/// central difference of the order below, over `trials` random parameters
/// in the model's default range.
inline double derivative_consistency(const CurveModel& model, int trials = 20,
                                     std::uint64_t seed = 1, double step = 1e-4) {
  CounterRng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const double t = rng.uniform(model.t_lo + step, model.t_hi - step);
    for (int order = 1; order <= kMaxDerivative; ++order) {
      const Point3 exact = model.eval(t, order);
      const Point3 fd = (0.5 / step) * (model.eval(t + step, order - 1) -
                                        model.eval(t - step, order - 1));
      const double rel = norm(fd - exact) / std::max(norm(exact), 1.0);
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

}  // namespace sigcurve
