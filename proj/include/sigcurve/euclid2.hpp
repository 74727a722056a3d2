#pragma once

// Euclidean signature (kappa, kappa_s) of planar point sequences.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "sigcurve/error.hpp"
#include "sigcurve/geom.hpp"
#include "sigcurve/polycurve.hpp"
#include "sigcurve/stencil.hpp"

namespace sigcurve::euclid2 {

/// Signed curvature of the circle through three samples, 4*area/(abc).
/// Positive for a counterclockwise (left) turn, exactly zero for collinear
/// samples.
inline double kappa_tilde(const Point2& pm, const Point2& p0, const Point2& pp) {
  const long double a = detail::distance_ld(pm, p0);
  const long double b = detail::distance_ld(p0, pp);
  const long double c = detail::distance_ld(pm, pp);
  const long double longest = std::max({a, b, c});
  if (longest == 0.0L || std::min({a, b, c}) <= 1e-14L * longest) {
    throw SignatureError(ErrorCode::DuplicatePoints, "coincident samples in curvature triple");
  }
  const Point2 u = p0 - pm;
  const Point2 v = pp - p0;
  const double turn = cross(u, v);
  if (std::abs(turn) <= kCollinearTol * norm(u) * norm(v)) return 0.0;
  const double magnitude = detail::circle_curvature(a, b, c);
  return turn > 0.0 ? magnitude : -magnitude;
}

/// Chords and curvature values for the five-point window P_{i-2}..P_{i+2}.
inline KappaStencil make_stencil(std::span<const Point2, 5> w) {
  KappaStencil s;
  s.g = distance(w[0], w[1]);
  s.a = distance(w[1], w[2]);
  s.b = distance(w[2], w[3]);
  s.d = distance(w[3], w[4]);
  s.c = distance(w[1], w[3]);
  s.kappa_prev = kappa_tilde(w[0], w[1], w[2]);
  s.kappa = kappa_tilde(w[1], w[2], w[3]);
  s.kappa_next = kappa_tilde(w[2], w[3], w[4]);
  return s;
}

struct SignatureSample2 {
  std::size_t index = 0;
  double t = 0.0;
  double kappa = 0.0;
  double kappa_s = 0.0;
  KappaSVariant variant = KappaSVariant::S5;
};

struct SignatureCurve2 {
  std::vector<SignatureSample2> samples;
};

/// Planar Euclidean signature. Open curves yield samples at indices
/// 2..n-3; closed curves yield one sample per point.
inline SignatureCurve2 euclid_signature2(const PolyCurve2& curve, KappaSVariant variant) {
  const auto indices = admissible_indices(curve, 2, 2);
  require_distinct_consecutive(curve);
  const auto params = curve.all_params();

  SignatureCurve2 out;
  out.samples.reserve(indices.size());
  for (const std::size_t i : indices) {
    try {
      const auto w = curve.window<5>(i, 2);
      const KappaStencil s = make_stencil(std::span<const Point2, 5>(w));
      out.samples.push_back({i, params[i], s.kappa, kappa_s(s, variant), variant});
    } catch (const SignatureError& e) {
      throw e.at_index(i);
    }
  }
  return out;
}

}  // namespace sigcurve::euclid2
