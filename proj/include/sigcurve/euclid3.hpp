#pragma once

// Euclidean signature (kappa, kappa_s, tau, tau_s) of space curves from
// mutual distances of consecutive samples.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sigcurve/error.hpp"
#include "sigcurve/geom.hpp"
#include "sigcurve/polycurve.hpp"
#include "sigcurve/stencil.hpp"

namespace sigcurve::euclid3 {

enum class TauVariant { T1, T2 };

constexpr std::string_view to_string(TauVariant v) noexcept {
  return v == TauVariant::T1 ? "t1" : "t2";
}

/// Torsion magnitudes come from distances; the sign is sigma * sign of
/// det(P0-Pm, Pp-P0, Pq-Pp). sigma = -1 reproduces the convention
/// tau = -(a_t x a_tt . a_ttt)/|a_t x a_tt|^2, under which the right-handed
/// helix has negative torsion.
inline constexpr double kTorsionSign = -1.0;

/// tau is not evaluated where kappa * (largest chord) falls below this.
inline constexpr double kVanishingCurvature = 1e-9;

/// Unsigned curvature 4*area/(abc) of three space samples.
inline double kappa3(const Point3& pm, const Point3& p0, const Point3& pp) {
  const long double a = sigcurve::detail::distance_ld(pm, p0);
  const long double b = sigcurve::detail::distance_ld(p0, pp);
  const long double c = sigcurve::detail::distance_ld(pm, pp);
  const long double longest = std::max({a, b, c});
  if (longest == 0.0L || std::min({a, b, c}) <= 1e-14L * longest) {
    throw SignatureError(ErrorCode::DuplicatePoints, "coincident samples in curvature triple");
  }
  const Point3 u = p0 - pm, v = pp - p0;
  if (norm(cross(u, v)) <= kCollinearTol * norm(u) * norm(v)) return 0.0;
  return sigcurve::detail::circle_curvature(a, b, c);
}

inline KappaStencil make_stencil(std::span<const Point3, 5> w) {
  KappaStencil s;
  s.g = distance(w[0], w[1]);
  s.a = distance(w[1], w[2]);
  s.b = distance(w[2], w[3]);
  s.d = distance(w[3], w[4]);
  s.c = distance(w[1], w[3]);
  s.kappa_prev = kappa3(w[0], w[1], w[2]);
  s.kappa = kappa3(w[1], w[2], w[3]);
  s.kappa_next = kappa3(w[2], w[3], w[4]);
  return s;
}

/// Same stencils as the planar case, on 3D chords.
inline double kappa_s3(std::span<const Point3, 5> w, KappaSVariant variant) {
  return kappa_s(make_stencil(w), variant);
}

namespace detail {

/// sigma * orientation of the four samples, or 0 when they are coplanar.
inline double torsion_sign(const Point3& pm, const Point3& p0, const Point3& pp,
                           const Point3& pq) {
  const Point3 u = p0 - pm;
  const Point3 v = pp - p0;
  const Point3 w = pq - pp;
  const double det = triple(u, v, w);
  if (std::abs(det) <= kCollinearTol * norm(u) * norm(v) * norm(w)) return 0.0;
  return det > 0.0 ? kTorsionSign : -kTorsionSign;
}

inline void require_curvature(double kappa, const TetraDistances& t) {
  if (!(kappa * t.scale() >= kVanishingCurvature)) {
    throw SignatureError(ErrorCode::VanishingCurvature,
                         "curvature vanishes, torsion is undefined");
  }
}

}  // namespace detail

/// tau1 = 6H/(d e f kappa) at P_i, with H the height of P_{i+2} over the
/// plane of the first three samples and kappa the curvature estimate at P_i.
inline double tau1(const Point3& pm, const Point3& p0, const Point3& pp, const Point3& pq,
                   double kappa_hint) {
  const auto t = TetraDistances::of(pm, p0, pp, pq);
  detail::require_curvature(kappa_hint, t);
  const double sign = detail::torsion_sign(pm, p0, pp, pq);
  if (sign == 0.0) return 0.0;
  return sign * 6.0 * tetra_height(t) / (t.d * t.e * t.f * kappa_hint);
}

inline double tau1(const Point3& pm, const Point3& p0, const Point3& pp, const Point3& pq) {
  return tau1(pm, p0, pp, pq, kappa3(pm, p0, pp));
}

/// tau2 = (3/2) H b / (f * area(e,b,d)).
inline double tau2(const Point3& pm, const Point3& p0, const Point3& pp, const Point3& pq) {
  const auto t = TetraDistances::of(pm, p0, pp, pq);
  detail::require_curvature(kappa3(pm, p0, pp), t);
  const long double side = sigcurve::detail::heron_area_ld(t.e, t.b, t.d);
  if (side < 0.0L) {
    throw SignatureError(ErrorCode::NotRealizable, "side triangle sides are inconsistent");
  }
  if (side <= kClampTol * t.scale() * t.scale()) {
    throw SignatureError(ErrorCode::DegenerateBase, "triangle P_i P_{i+1} P_{i+2} is degenerate");
  }
  if (t.f <= 1e-14 * t.scale()) {
    throw SignatureError(ErrorCode::DegenerateBase, "f vanishes");
  }
  const double sign = detail::torsion_sign(pm, p0, pp, pq);
  if (sign == 0.0) return 0.0;
  return sign * 1.5 * tetra_height(t) * t.b / (t.f * side);
}

/// Distances and estimates of the six-point window P_{i-2}..P_{i+3}.
struct TorsionStencil {
  double g = 0, a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, h = 0;
  double kappa = 0;
  double kappa_s = 0;
  double tau_prev = 0;  ///< tau1 at P_{i-1}, from P_{i-2}..P_{i+1}
  double tau = 0;       ///< tau1 at P_i, from P_{i-1}..P_{i+2}
  double tau_next = 0;  ///< tau1 at P_{i+1}, from P_i..P_{i+3}
  double tau_alt = 0;   ///< tau2 at P_i
  KappaSVariant kappa_variant = KappaSVariant::S5;
};

inline TorsionStencil make_torsion_stencil(std::span<const Point3, 6> w,
                                           KappaSVariant kappa_variant = KappaSVariant::S5) {
  TorsionStencil s;
  const KappaStencil ks = make_stencil(w.first<5>());
  s.g = ks.g;
  s.a = ks.a;
  s.b = ks.b;
  s.c = ks.c;
  s.d = ks.d;
  s.e = distance(w[2], w[4]);
  s.f = distance(w[1], w[4]);
  s.h = distance(w[4], w[5]);
  s.kappa = ks.kappa;
  s.kappa_s = kappa_s(ks, kappa_variant);
  s.kappa_variant = kappa_variant;
  s.tau_prev = tau1(w[0], w[1], w[2], w[3], ks.kappa_prev);
  s.tau = tau1(w[1], w[2], w[3], w[4], ks.kappa);
  s.tau_next = tau1(w[2], w[3], w[4], w[5], ks.kappa_next);
  s.tau_alt = tau2(w[1], w[2], w[3], w[4]);
  return s;
}

inline double tau_s(const TorsionStencil& s) {
  return stencil::tau_s(s.tau_prev, s.tau, s.tau_next, s.kappa, s.kappa_s, s.a, s.b, s.d, s.g,
                        s.h);
}

struct SignatureSample3 {
  std::size_t index = 0;
  double t = 0.0;
  double kappa = 0.0;
  double kappa_s = 0.0;
  double tau = 0.0;
  double tau_s = 0.0;
  KappaSVariant kappa_variant = KappaSVariant::S5;
  TauVariant tau_variant = TauVariant::T1;
};

struct SignatureCurve3 {
  std::vector<SignatureSample3> samples;
};

struct Signature3Options {
  KappaSVariant kappa_variant = KappaSVariant::S5;
  TauVariant tau_variant = TauVariant::T1;
};

/// Space-curve signature. Open curves yield samples at indices 2..n-4
/// (the torsion derivative needs P_{i-2}..P_{i+3}); closed curves wrap.
inline SignatureCurve3 euclid_signature3(const PolyCurve3& curve,
                                         const Signature3Options& options = {}) {
  if (options.kappa_variant == KappaSVariant::S1 || options.kappa_variant == KappaSVariant::S2) {
    throw SignatureError(ErrorCode::InvalidArgument,
                         "space-curve signatures use the corrected kappa_s stencils s3..s5");
  }
  const auto indices = admissible_indices(curve, 2, 3);
  require_distinct_consecutive(curve);
  const auto params = curve.all_params();

  SignatureCurve3 out;
  out.samples.reserve(indices.size());
  for (const std::size_t i : indices) {
    try {
      const auto w = curve.window<6>(i, 2);
      const TorsionStencil s = make_torsion_stencil(std::span<const Point3, 6>(w),
                                                    options.kappa_variant);
      const double tau = options.tau_variant == TauVariant::T1 ? s.tau : s.tau_alt;
      out.samples.push_back({i, params[i], s.kappa, s.kappa_s, tau, tau_s(s),
                             options.kappa_variant, options.tau_variant});
    } catch (const SignatureError& e) {
      throw e.at_index(i);
    }
  }
  return out;
}

}  // namespace sigcurve::euclid3
