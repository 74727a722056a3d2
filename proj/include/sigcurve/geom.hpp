#pragma once

// Joint-invariant primitives: distances, triangle areas, signed parallelogram
// areas and tetrahedron volume/height. Everything here is a pure function of
// its value arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sigcurve/error.hpp"

namespace sigcurve {

/// Relative tolerance used to clamp tiny negative discriminants/determinants.
inline constexpr double kClampTol = 1e-12;

/// A triple (or quadruple) is treated as collinear (coplanar) when the sine
/// of the angle it spans, measured from coordinates, is below this value.
inline constexpr double kCollinearTol = 1e-10;

namespace detail {

inline void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw SignatureError(ErrorCode::NonFinite, std::string(what) + " is not finite");
  }
}

inline void require_side(long double v, const char* what) {
  require_finite(static_cast<double>(v), what);
  if (v < 0.0L) {
    throw SignatureError(ErrorCode::InvalidArgument, std::string(what) + " is negative");
  }
}

}  // namespace detail

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2() = default;
  Point2(double x_, double y_) : x(x_), y(y_) {
    detail::require_finite(x, "Point2.x");
    detail::require_finite(y, "Point2.y");
  }

  friend Point2 operator+(const Point2& p, const Point2& q) { return {p.x + q.x, p.y + q.y}; }
  friend Point2 operator-(const Point2& p, const Point2& q) { return {p.x - q.x, p.y - q.y}; }
  friend Point2 operator*(double s, const Point2& p) { return {s * p.x, s * p.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point3() = default;
  Point3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    detail::require_finite(x, "Point3.x");
    detail::require_finite(y, "Point3.y");
    detail::require_finite(z, "Point3.z");
  }

  friend Point3 operator+(const Point3& p, const Point3& q) {
    return {p.x + q.x, p.y + q.y, p.z + q.z};
  }
  friend Point3 operator-(const Point3& p, const Point3& q) {
    return {p.x - q.x, p.y - q.y, p.z - q.z};
  }
  friend Point3 operator*(double s, const Point3& p) { return {s * p.x, s * p.y, s * p.z}; }
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double dot(const Point2& u, const Point2& v) { return u.x * v.x + u.y * v.y; }
inline double dot(const Point3& u, const Point3& v) { return u.x * v.x + u.y * v.y + u.z * v.z; }

/// z-component of the planar cross product.
inline double cross(const Point2& u, const Point2& v) { return u.x * v.y - u.y * v.x; }
inline Point3 cross(const Point3& u, const Point3& v) {
  return {u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z, u.x * v.y - u.y * v.x};
}

inline double norm(const Point2& u) { return std::hypot(u.x, u.y); }
inline double norm(const Point3& u) { return std::hypot(u.x, u.y, u.z); }

/// det(u, v, w) = (u x v) . w
inline double triple(const Point3& u, const Point3& v, const Point3& w) {
  return dot(cross(u, v), w);
}

inline double distance(const Point2& p, const Point2& q) { return norm(p - q); }
inline double distance(const Point3& p, const Point3& q) { return norm(p - q); }

namespace detail {

// Distances in extended precision. Coordinate differences of doubles are
// exact here, so the only rounding left is that of the inputs themselves;
// quantities built from nearly cancelling chords (a + b - c on a fine
// sampling) keep several more digits.
inline long double distance_ld(const Point2& p, const Point2& q) {
  const long double dx = static_cast<long double>(p.x) - q.x;
  const long double dy = static_cast<long double>(p.y) - q.y;
  return std::sqrt(dx * dx + dy * dy);
}
inline long double distance_ld(const Point3& p, const Point3& q) {
  const long double dx = static_cast<long double>(p.x) - q.x;
  const long double dy = static_cast<long double>(p.y) - q.y;
  const long double dz = static_cast<long double>(p.z) - q.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace detail

namespace detail {

/// Kahan's sorted-operand Heron product, equal to (4 * area)^2.
template <class Real>
Real heron_product(Real a, Real b, Real c) {
  if (a < b) std::swap(a, b);
  if (a < c) std::swap(a, c);
  if (b < c) std::swap(b, c);
  return (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
}

/// Heron area in extended precision. Products within `rel_tol * scale^4` of
/// zero clamp to zero; returns a negative value for inconsistent sides.
inline long double heron_area_ld(long double a, long double b, long double c,
                                 double rel_tol = kClampTol) {
  const long double p = heron_product(a, b, c);
  const long double scale = std::max({a, b, c});
  const long double tol = rel_tol * scale * scale * scale * scale;
  if (p < -tol) return -1.0L;
  if (p <= 0.0L) return 0.0L;
  return 0.25L * std::sqrt(p);
}

}  // namespace detail

/// Three chord lengths of a (possibly degenerate) triangle.
struct TriangleSides {
  double a;
  double b;
  double c;

  TriangleSides(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
    detail::require_side(a, "side a");
    detail::require_side(b, "side b");
    detail::require_side(c, "side c");
    if (detail::heron_area_ld(a, b, c) < 0.0L) {
      throw SignatureError(ErrorCode::InvalidSides, "sides violate the triangle inequality");
    }
  }
};

/// Six mutual distances of P_{i-1}, P_i, P_{i+1}, P_{i+2}:
/// a = |P_{i-1}P_i|, b = |P_iP_{i+1}|, c = |P_{i-1}P_{i+1}|,
/// d = |P_{i+1}P_{i+2}|, e = |P_iP_{i+2}|, f = |P_{i-1}P_{i+2}|.
/// Held in extended precision when built from points.
struct TetraDistances {
  long double a, b, c, d, e, f;

  TetraDistances(long double a_, long double b_, long double c_, long double d_, long double e_,
                 long double f_)
      : a(a_), b(b_), c(c_), d(d_), e(e_), f(f_) {
    detail::require_side(a, "distance a");
    detail::require_side(b, "distance b");
    detail::require_side(c, "distance c");
    detail::require_side(d, "distance d");
    detail::require_side(e, "distance e");
    detail::require_side(f, "distance f");
  }

  static TetraDistances of(const Point3& pm, const Point3& p0, const Point3& pp,
                           const Point3& pq) {
    using detail::distance_ld;
    return {distance_ld(pm, p0), distance_ld(p0, pp), distance_ld(pm, pp),
            distance_ld(pp, pq), distance_ld(p0, pq), distance_ld(pm, pq)};
  }

  long double scale() const { return std::max({a, b, c, d, e, f}); }
};

/// Triangle area from raw side lengths. Throws NegativeDiscriminant when the
/// sides are inconsistent beyond `1e-12 * max_side^4`.
inline double heron_area(double a, double b, double c) {
  detail::require_side(a, "side a");
  detail::require_side(b, "side b");
  detail::require_side(c, "side c");
  const long double area = detail::heron_area_ld(a, b, c);
  if (area < 0.0L) {
    throw SignatureError(ErrorCode::NegativeDiscriminant, "inconsistent triangle sides");
  }
  return static_cast<double>(area);
}

inline double heron_area(const TriangleSides& s) { return heron_area(s.a, s.b, s.c); }

namespace detail {

/// |4 area / (abc)| for the triangle with the given chords: the unsigned
/// curvature of the circle through three samples.
inline double circle_curvature(long double a, long double b, long double c) {
  const long double area = heron_area_ld(a, b, c);
  if (area < 0.0L) {
    throw SignatureError(ErrorCode::NegativeDiscriminant, "inconsistent triangle sides");
  }
  return static_cast<double>(4.0L * area / (a * b * c));
}

}  // namespace detail

/// [ijk]: signed area of the parallelogram with sides Pi-Pj and Pi-Pk.
inline double signed_parallelogram3(const Point2& pi, const Point2& pj, const Point2& pk) {
  return cross(pi - pj, pi - pk);
}

/// [ijkl]: signed area of the parallelogram with sides Pi-Pj and Pk-Pl.
inline double signed_parallelogram4(const Point2& pi, const Point2& pj, const Point2& pk,
                                    const Point2& pl) {
  return cross(pi - pj, pk - pl);
}

/// Tetrahedron volume from the 5x5 Cayley-Menger determinant (288 V^2).
/// Determinants with |det| < 1e-12 * scale^6 are treated as zero.
inline double cayley_menger_volume(const TetraDistances& t) {
  using R = long double;
  // Vertices 0..3 = P_{i-1}, P_i, P_{i+1}, P_{i+2}.
  const R d01 = t.a, d12 = t.b, d02 = t.c, d23 = t.d, d13 = t.e, d03 = t.f;
  std::array<std::array<R, 5>, 5> m{{
      {0, 1, 1, 1, 1},
      {1, 0, d01 * d01, d02 * d02, d03 * d03},
      {1, d01 * d01, 0, d12 * d12, d13 * d13},
      {1, d02 * d02, d12 * d12, 0, d23 * d23},
      {1, d03 * d03, d13 * d13, d23 * d23, 0},
  }};

  R det = 1;
  for (std::size_t col = 0; col < 5; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < 5; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (m[pivot][col] == 0) {
      det = 0;
      break;
    }
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < 5; ++r) {
      const R factor = m[r][col] / m[col][col];
      for (std::size_t k = col; k < 5; ++k) m[r][k] -= factor * m[col][k];
    }
  }

  const R s2 = t.scale() * t.scale();
  const R tol = kClampTol * s2 * s2 * s2;
  if (det < -tol) {
    throw SignatureError(ErrorCode::NotRealizable,
                         "distances are not realizable in three dimensions");
  }
  if (det < tol) return 0.0;
  return static_cast<double>(std::sqrt(det / 288));
}

/// Height of P_{i+2} above the plane of P_{i-1}, P_i, P_{i+1}.
///
/// Evaluated by projecting onto the plane orthogonal to the edge P_iP_{i+1}:
/// there P_{i-1} and P_{i+2} sit at distances y1 = 2*area(a,b,c)/b and
/// rho = 2*area(e,b,d)/b from the edge line, a distance q apart, and
/// H = 2*area(y1,rho,q)/y1. Unlike 3V/area(a,b,c) with V from a determinant,
/// every step stays well conditioned on the nearly flat tetrahedra produced
/// by fine samplings of a smooth curve.
inline double tetra_height(const TetraDistances& t) {
  using R = long double;
  const R a = t.a, b = t.b, c = t.c, d = t.d, e = t.e, f = t.f;
  const R scale = t.scale();

  const R base = detail::heron_area_ld(a, b, c);
  if (base < 0) {
    throw SignatureError(ErrorCode::NotRealizable, "base triangle sides are inconsistent");
  }
  if (b <= 0 || base <= kClampTol * scale * scale) {
    throw SignatureError(ErrorCode::DegenerateBase, "base triangle is degenerate");
  }
  const R side = detail::heron_area_ld(e, b, d);
  if (side < 0) {
    throw SignatureError(ErrorCode::NotRealizable, "side triangle sides are inconsistent");
  }

  const R y1 = 2 * base / b;
  const R rho = 2 * side / b;
  const R x1 = ((a - c) * (a + c) + b * b) / (2 * b);
  const R x2 = ((e - d) * (e + d) + b * b) / (2 * b);
  const R dx = x2 - x1;
  const R q2 = (f - dx) * (f + dx);
  if (q2 < -kClampTol * scale * scale) {
    throw SignatureError(ErrorCode::NotRealizable,
                         "distances are not realizable in three dimensions");
  }
  const R q = q2 > 0 ? std::sqrt(q2) : R(0);

  // The projected triangle inherits rounding from the cancellations above;
  // it is clamped with a looser tolerance than raw sides.
  const R projected = detail::heron_area_ld(y1, rho, q, 1e-8);
  if (projected < 0) {
    throw SignatureError(ErrorCode::NotRealizable,
                         "distances are not realizable in three dimensions");
  }
  return static_cast<double>(2 * projected / y1);
}

}  // namespace sigcurve
