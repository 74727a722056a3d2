#pragma once

// Exact invariants of analytic curves, from derivatives (and closed forms
// where the curve provides them).

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <string>

#include "sigcurve/curves.hpp"
#include "sigcurve/error.hpp"
#include "sigcurve/geom.hpp"

namespace sigcurve {

struct EuclidOracle2 {
  double kappa = 0.0;
  double kappa_s = 0.0;
};

struct AffineOracle2 {
  double kappa = 0.0;
  double kappa_s = 0.0;
};

struct EuclidOracle3 {
  double kappa = 0.0;
  double kappa_s = 0.0;
  double tau = 0.0;
  double tau_s = 0.0;
};

namespace detail {

inline Point2 xy(const Point3& p) { return {p.x, p.y}; }

inline void require_regular(double speed, double t) {
  if (!(speed > 1e-12)) {
    throw SignatureError(ErrorCode::SingularParametrization,
                         "curve speed vanishes at t = " + std::to_string(t));
  }
}

}  // namespace detail

/// Signed planar curvature and its arc-length derivative.
inline EuclidOracle2 oracle_euclid2(const CurveModel& model, double t) {
  const Point2 d1 = detail::xy(model.eval(t, 1));
  const Point2 d2 = detail::xy(model.eval(t, 2));
  const Point2 d3 = detail::xy(model.eval(t, 3));
  const double speed = norm(d1);
  detail::require_regular(speed, t);
  const double v2 = dot(d1, d1);
  const double w = cross(d1, d2);
  const double kappa = w / (v2 * speed);
  // d/dt [w |a'|^-3] = cross(a', a''') |a'|^-3 - 3 w (a'.a'') |a'|^-5
  const double kappa_t = cross(d1, d3) / (v2 * speed) - 3.0 * w * dot(d1, d2) / (v2 * v2 * speed);
  return {kappa, kappa_t / speed};
}

/// Equi-affine curvature and its derivative with respect to affine arc
/// length, with D_ij = det(a^(i), a^(j)) and w = D12:
///   kappa = D23/w^{5/3} + w''/(3 w^{5/3}) - 5 w'^2/(9 w^{8/3}).
/// The arc-length element is |w|^{1/3} dt regardless of orientation.
inline AffineOracle2 oracle_affine2(const CurveModel& model, double t) {
  Point2 d[6];
  for (int k = 1; k <= 5; ++k) d[k] = detail::xy(model.eval(t, k));
  auto D = [&](int i, int j) { return cross(d[i], d[j]); };

  const double w = D(1, 2);
  const double speed = norm(d[1]);
  if (!(std::abs(w) > 1e-12 * speed * speed * speed)) {
    throw SignatureError(ErrorCode::InflectionPoint,
                         "affine arc length degenerates at t = " + std::to_string(t));
  }
  const double w1 = D(1, 3);
  const double w2 = D(2, 3) + D(1, 4);
  const double w3 = 2.0 * D(2, 4) + D(1, 5);

  const double c = std::cbrt(w);
  const double c5 = c * c * c * c * c;
  const double c8 = c5 * c * c * c;
  const double c11 = c8 * c * c * c;

  const double kappa = D(2, 3) / c5 + w2 / (3.0 * c5) - 5.0 * w1 * w1 / (9.0 * c8);
  const double kappa_t = (D(2, 4) + w3 / 3.0) / c5 -
                         (5.0 / 3.0) * (D(2, 3) + w2) * w1 / c8 +
                         (40.0 / 27.0) * w1 * w1 * w1 / c11;
  return {kappa, kappa_t / std::abs(c)};
}

enum class OraclePath { Auto, General, ClosedForm };

namespace detail {

inline EuclidOracle3 euclid3_general(const CurveModel& model, double t) {
  const Point3 d1 = model.eval(t, 1);
  const Point3 d2 = model.eval(t, 2);
  const Point3 d3 = model.eval(t, 3);
  const Point3 d4 = model.eval(t, 4);
  const double speed = norm(d1);
  require_regular(speed, t);

  const Point3 c = cross(d1, d2);
  const Point3 c_t = cross(d1, d3);
  const double cn = norm(c);
  if (!(cn > 1e-12 * speed * speed)) {
    throw SignatureError(ErrorCode::SingularParametrization,
                         "curvature vanishes at t = " + std::to_string(t));
  }
  const double s3 = speed * speed * speed;
  const double kappa = cn / s3;
  const double kappa_t = dot(c, c_t) / (cn * s3) - 3.0 * cn * dot(d1, d2) / (s3 * speed * speed);

  // tau = -N/Q with N = c . a''', Q = |c|^2; N' = c . a'''' since
  // (a' x a''') . a''' = 0.
  const double num = dot(c, d3);
  const double q = cn * cn;
  const double num_t = dot(c, d4);
  const double q_t = 2.0 * dot(c, c_t);
  const double tau = -num / q;
  const double tau_t = -(num_t * q - num * q_t) / (q * q);
  return {kappa, kappa_t / speed, tau, tau_t / speed};
}

/// Closed forms for (cos t, sin t, sqrt t).
inline EuclidOracle3 sqrt_helix_closed(double t) {
  const double p = 16.0 * t * t * t + 4.0 * t * t + 1.0;
  const double st = std::sqrt(t);
  const double u = 1.0 + 4.0 * t;
  return {
      2.0 * std::sqrt(p) / std::pow(u, 1.5),
      8.0 * (8.0 * t * t + 2.0 * t - 3.0) * st / (std::sqrt(p) * u * u * u),
      -2.0 * st * (3.0 + 4.0 * t * t) / p,
      2.0 * (64.0 * std::pow(t, 5) - 16.0 * std::pow(t, 4) + 240.0 * t * t * t + 16.0 * t * t - 3.0) /
          (std::sqrt(u) * p * p),
  };
}

}  // namespace detail

inline bool has_closed_form(const CurveModel& model) { return model.name == "sqrt_helix"; }

/// Space-curve invariants, tau = -(a' x a'' . a''')/|a' x a''|^2.
inline EuclidOracle3 oracle_euclid3(const CurveModel& model, double t,
                                    OraclePath path = OraclePath::Auto) {
  if (path == OraclePath::ClosedForm && !has_closed_form(model)) {
    throw SignatureError(ErrorCode::InvalidArgument, model.name + " has no closed form");
  }
  if (path != OraclePath::General && has_closed_form(model)) {
    if (!(t >= model.t_min)) {
      throw SignatureError(ErrorCode::SingularParametrization,
                           "sqrt_helix is singular near t = 0 (t = " + std::to_string(t) + ")");
    }
    return detail::sqrt_helix_closed(t);
  }
  return detail::euclid3_general(model, t);
}

/// Affine arc length between t0 and t1: integral of |x'y'' - y'x''|^{1/3},
/// adaptive Gauss-Kronrod. The relative tolerance of 1e-11 meets 1e-10
/// absolute on unit-size curves; asking for much less only makes the
/// recursion chase rounding noise.
inline double affine_arc_quadrature(const CurveModel& model, double t0, double t1) {
  if (t0 == t1) return 0.0;
  const double sign0 = cross(detail::xy(model.eval(t0, 1)), detail::xy(model.eval(t0, 2)));
  auto integrand = [&](double t) {
    const Point2 d1 = detail::xy(model.eval(t, 1));
    const double w = cross(d1, detail::xy(model.eval(t, 2)));
    const double s = norm(d1);
    if (!(std::abs(w) > 1e-12 * s * s * s) || (w > 0) != (sign0 > 0)) {
      throw SignatureError(ErrorCode::InflectionPoint,
                           "inflection inside affine quadrature interval near t = " +
                               std::to_string(t));
    }
    return std::cbrt(std::abs(w));
  };
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, t0, t1, 8, 1e-11, &err);
  return value;
}

}  // namespace sigcurve
