#pragma once

// Equi-affine signature (kappa, kappa_s) of convex planar point sequences,
// built from signed parallelogram areas only.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "sigcurve/error.hpp"
#include "sigcurve/geom.hpp"
#include "sigcurve/polycurve.hpp"

namespace sigcurve::affine2 {

enum class AffineVariant { Old, New };

constexpr std::string_view to_string(AffineVariant v) noexcept {
  return v == AffineVariant::Old ? "old" : "new";
}

/// How the affine length S~_j of the segment P_j P_{j+1} is estimated.
///  FourPoint: exact for samples of any parabola, from four consecutive
///    samples around the segment (default; consistent on irregular spacing).
///  TriangleForward: cbrt(|[j, j+1, j+2]|).
///  TriangleBackward: cbrt(|[j-1, j, j+1]|).
/// The triangle rules are only consistent on near-uniform spacing.
enum class SegmentRule { FourPoint, TriangleForward, TriangleBackward };

constexpr std::string_view to_string(SegmentRule r) noexcept {
  switch (r) {
    case SegmentRule::FourPoint: return "four";
    case SegmentRule::TriangleForward: return "forward";
    case SegmentRule::TriangleBackward: return "backward";
  }
  return "?";
}

namespace detail {

// Brackets are formed in extended precision: coordinate differences of
// doubles are exact there, and S is a difference of nearly equal products
// on fine samplings.
using Real = long double;

struct LPoint {
  Real x = 0, y = 0;
};

inline Real bracket(const LPoint& l, const LPoint& m, const LPoint& n) {
  return (l.x - m.x) * (l.y - n.y) - (l.y - m.y) * (l.x - n.x);
}
inline Real bracket4(const LPoint& i, const LPoint& j, const LPoint& k, const LPoint& l) {
  return (i.x - j.x) * (k.y - l.y) - (i.y - j.y) * (k.x - l.x);
}
inline Real length(const LPoint& p, const LPoint& q) { return std::hypot(p.x - q.x, p.y - q.y); }

/// Ten brackets [lmn], l<m<n, of five points, in lexicographic order.
using Brackets = std::array<Real, 10>;
using Window = std::array<LPoint, 5>;

inline constexpr std::array<std::array<int, 3>, 10> kTriples{{
    {0, 1, 2}, {0, 1, 3}, {0, 1, 4}, {0, 2, 3}, {0, 2, 4},
    {0, 3, 4}, {1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4},
}};

inline Window widen(std::span<const Point2, 5> p) {
  Window w;
  for (std::size_t k = 0; k < 5; ++k) w[k] = {p[k].x, p[k].y};
  return w;
}

inline Brackets brackets(const Window& p) {
  Brackets b{};
  for (std::size_t k = 0; k < kTriples.size(); ++k) {
    const auto [l, m, n] = kTriples[k];
    const LPoint& pl = p[static_cast<std::size_t>(l)];
    const LPoint& pm = p[static_cast<std::size_t>(m)];
    const LPoint& pn = p[static_cast<std::size_t>(n)];
    b[k] = bracket(pl, pm, pn);
    if (std::abs(b[k]) <= kCollinearTol * length(pl, pm) * length(pl, pn)) {
      throw SignatureError(ErrorCode::DegenerateConfiguration,
                           "collinear samples in affine window");
    }
  }
  return b;
}

inline void require_same_sign(const Brackets& b) {
  for (const Real v : b) {
    if ((v > 0) != (b[0] > 0)) {
      throw SignatureError(ErrorCode::DegenerateConfiguration,
                           "affine window is not locally convex");
    }
  }
}

/// Translate to P2 and divide by the largest offset, so that products of
/// ten brackets stay within range. Returns the scale.
inline Real normalize(std::span<const Point2, 5> p, Window& out) {
  const Window w = widen(p);
  Real scale = 0;
  for (const auto& q : w) scale = std::max(scale, length(q, w[2]));
  if (scale == 0) {
    throw SignatureError(ErrorCode::DegenerateConfiguration, "affine window collapses to a point");
  }
  for (std::size_t k = 0; k < 5; ++k) {
    out[k] = {(w[k].x - w[2].x) / scale, (w[k].y - w[2].y) / scale};
  }
  return scale;
}

inline Real t_from(const Brackets& b) {
  Real prod = 0.25L;
  for (const Real v : b) prod *= v;
  return prod;
}

inline Real s_from(const Window& p, const Brackets& b) {
  const Real b012 = b[0], b013 = b[1], b024 = b[4], b034 = b[5];
  const Real b123 = b[6], b124 = b[7], b134 = b[8], b234 = b[9];
  const Real b1234 = bracket4(p[1], p[2], p[3], p[4]);
  const Real b1324 = bracket4(p[1], p[3], p[2], p[4]);
  const Real s4 = b013 * b013 * b024 * b024 * b1234 * b1234 +
                  b012 * b012 * b034 * b034 * b1324 * b1324 -
                  2 * b012 * b034 * b013 * b024 * (b123 * b234 + b124 * b134);
  return 0.25L * s4;
}

}  // namespace detail

/// T = (1/4) prod_{l<m<n} [lmn].
inline double t_invariant(std::span<const Point2, 5> p) {
  const auto w = detail::widen(p);
  return static_cast<double>(detail::t_from(detail::brackets(w)));
}

/// 4S = [013]^2[024]^2[1234]^2 + [012]^2[034]^2[1324]^2
///      - 2[012][034][013][024]([123][234] + [124][134]).
inline double s_invariant(std::span<const Point2, 5> p) {
  const auto w = detail::widen(p);
  return static_cast<double>(detail::s_from(w, detail::brackets(w)));
}

/// Affine curvature at the middle of five samples, -S/T^{2/3}.
///
/// The minus sign makes the estimate converge to the affine curvature
/// det(a_ss, a_sss) (unit circle +1, unit hyperbola -1); S/T^{2/3} alone
/// converges to its negative. T^{2/3} is the squared real cube root, so
/// clockwise windows need no special handling.
inline double affine_kappa(std::span<const Point2, 5> p) {
  detail::Window q;
  const detail::Real scale = detail::normalize(p, q);
  const auto b = detail::brackets(q);
  detail::require_same_sign(b);
  const detail::Real ct = std::cbrt(detail::t_from(b));
  const detail::Real kappa = -detail::s_from(q, b) / (ct * ct);
  // S ~ scale^12, T^{2/3} ~ scale^{40/3}
  return static_cast<double>(kappa / std::cbrt(scale * scale * scale * scale));
}

/// Triangular affine length cbrt(|[j, j+1, j+2]|) = cbrt(2 * area).
inline double affine_segment_length(const Point2& pj, const Point2& pj1, const Point2& pj2) {
  const detail::LPoint a{pj.x, pj.y}, b{pj1.x, pj1.y}, c{pj2.x, pj2.y};
  const detail::Real area2 = detail::bracket(a, b, c);
  const detail::Real scale =
      std::max({detail::length(a, b), detail::length(b, c), detail::length(a, c)});
  if (std::abs(area2) <= kCollinearTol * scale * scale) {
    throw SignatureError(ErrorCode::DegenerateConfiguration,
                         "collinear samples in affine segment length");
  }
  return static_cast<double>(std::cbrt(std::abs(area2)));
}

/// Affine lengths of the three gaps between four convex samples.
///
/// On a parabola parametrized by affine arc length every bracket is
/// (s_j - s_i)(s_k - s_i)(s_k - s_j)/2. Writing the gaps as L*(u, v, w) with
/// u + v + w = 1 and A = [012], B = [123], C = [013], E = [023]:
///   v = sqrt(AB/(CE)), r = sqrt(CB/(EA)), w = (r - v)/(1 + r), u = 1 - v - w,
///   L = cbrt(2|A| / (u v (u+v))).
/// Exact for any parabola, hence O(h^3)-accurate per gap on smooth convex
/// curves regardless of spacing.
inline std::array<double, 3> affine_gaps(const Point2& p0, const Point2& p1, const Point2& p2,
                                         const Point2& p3) {
  using detail::LPoint;
  using detail::Real;
  const LPoint w0{p0.x, p0.y}, w1{p1.x, p1.y}, w2{p2.x, p2.y}, w3{p3.x, p3.y};
  Real scale = 0;
  for (const auto* q : {&w0, &w1, &w3}) scale = std::max(scale, detail::length(*q, w2));
  if (scale == 0) {
    throw SignatureError(ErrorCode::DegenerateConfiguration, "affine gaps of coincident samples");
  }
  auto rel = [&](const LPoint& q) { return LPoint{(q.x - w2.x) / scale, (q.y - w2.y) / scale}; };
  const LPoint q0 = rel(w0), q1 = rel(w1), q2{}, q3 = rel(w3);

  const Real A = detail::bracket(q0, q1, q2);
  const Real B = detail::bracket(q1, q2, q3);
  const Real C = detail::bracket(q0, q1, q3);
  const Real E = detail::bracket(q0, q2, q3);
  const Real tol = kCollinearTol;
  if (std::abs(A) <= tol || std::abs(B) <= tol || std::abs(C) <= tol || std::abs(E) <= tol ||
      (A > 0) != (B > 0) || (A > 0) != (C > 0) || (A > 0) != (E > 0)) {
    throw SignatureError(ErrorCode::DegenerateConfiguration,
                         "four samples are not in convex position");
  }
  const Real v = std::sqrt(A * B / (C * E));
  const Real r = std::sqrt(C * B / (E * A));
  const Real w = (r - v) / (1 + r);
  const Real u = 1 - v - w;
  if (!(u > 0 && v > 0 && w > 0)) {
    throw SignatureError(ErrorCode::DegenerateConfiguration,
                         "four samples admit no osculating parabola");
  }
  const Real length = std::cbrt(2 * std::abs(A) / (u * v * (u + v))) * std::cbrt(scale * scale);
  return {static_cast<double>(u * length), static_cast<double>(v * length),
          static_cast<double>(w * length)};
}

/// Seven-point window P_{i-3}..P_{i+3}: affine curvature at P_{i-1}, P_i,
/// P_{i+1} and segment lengths seg[j] of P_{i-3+j} P_{i-2+j}, j = 0..5.
struct AffineStencil {
  double kappa_prev = 0;
  double kappa = 0;
  double kappa_next = 0;
  std::array<double, 6> seg{};
};

/// Segment length of local segment j within `n` points, for the given rule.
/// Windows are clamped at the ends of the sequence.
inline double segment_in(std::span<const Point2> pts, std::size_t j, SegmentRule rule) {
  const std::size_t n = pts.size();
  auto clamp = [](std::ptrdiff_t v, std::ptrdiff_t lo, std::ptrdiff_t hi) {
    return std::max(lo, std::min(v, hi));
  };
  const auto jj = static_cast<std::ptrdiff_t>(j);
  const auto nn = static_cast<std::ptrdiff_t>(n);
  switch (rule) {
    case SegmentRule::FourPoint: {
      const auto s = static_cast<std::size_t>(clamp(jj - 1, 0, nn - 4));
      return affine_gaps(pts[s], pts[s + 1], pts[s + 2], pts[s + 3])[j - s];
    }
    case SegmentRule::TriangleForward: {
      const auto s = static_cast<std::size_t>(clamp(jj, 0, nn - 3));
      return affine_segment_length(pts[s], pts[s + 1], pts[s + 2]);
    }
    case SegmentRule::TriangleBackward: {
      const auto s = static_cast<std::size_t>(clamp(jj - 1, 0, nn - 3));
      return affine_segment_length(pts[s], pts[s + 1], pts[s + 2]);
    }
  }
  throw SignatureError(ErrorCode::InvalidArgument, "unknown segment rule");
}

inline AffineStencil make_stencil(std::span<const Point2, 7> w,
                                  SegmentRule rule = SegmentRule::FourPoint) {
  AffineStencil s;
  s.kappa_prev = affine_kappa(w.subspan<0, 5>());
  s.kappa = affine_kappa(w.subspan<1, 5>());
  s.kappa_next = affine_kappa(w.subspan<2, 5>());
  for (std::size_t j = 0; j < 6; ++j) s.seg[j] = segment_in(w, j, rule);
  return s;
}

/// (kappa(P_{i+1}) - kappa(P_{i-1})) / (S~_i + S~_{i-1}); not consistent on
/// irregular partitions.
inline double affine_kappa_s_old(const AffineStencil& s) {
  return (s.kappa_next - s.kappa_prev) / (s.seg[3] + s.seg[2]);
}

/// 5 (kappa(P_{i+1}) - kappa(P_{i-1})) / (S~_{i-3} + 2S~_{i-2} + 2S~_{i-1}
///   + 2S~_i + 2S~_{i+1} + S~_{i+2}).
/// Each five-point kappa estimate is accurate at the mean affine position of
/// its window; the weights are the sum of the two window spans.
inline double affine_kappa_s_new(const AffineStencil& s) {
  const auto& g = s.seg;
  const double span = g[0] + 2.0 * (g[1] + g[2] + g[3] + g[4]) + g[5];
  return 5.0 * (s.kappa_next - s.kappa_prev) / span;
}

inline double affine_kappa_s(const AffineStencil& s, AffineVariant v) {
  return v == AffineVariant::Old ? affine_kappa_s_old(s) : affine_kappa_s_new(s);
}

struct AffineSignatureSample {
  std::size_t index = 0;
  double t = 0.0;
  double kappa = 0.0;
  double kappa_s = 0.0;
  AffineVariant variant = AffineVariant::New;
};

struct AffineSignatureCurve {
  std::vector<AffineSignatureSample> samples;
  /// Indices dropped because their window was degenerate (collinear or not
  /// locally convex); only filled when skipping is enabled.
  std::vector<std::size_t> skipped;
};

struct AffineOptions {
  AffineVariant variant = AffineVariant::New;
  SegmentRule rule = SegmentRule::FourPoint;
  bool skip_degenerate = true;
};

/// Equi-affine signature. Open curves yield samples at indices 3..n-4;
/// closed curves wrap. Segment lengths are evaluated once per segment over
/// the whole curve (windows clamp at the ends of open curves).
inline AffineSignatureCurve affine_signature(const PolyCurve2& curve,
                                             const AffineOptions& options = {}) {
  const auto indices = admissible_indices(curve, 3, 3);
  require_distinct_consecutive(curve);
  const auto params = curve.all_params();
  const std::size_t n = curve.size();

  // Closed curves: evaluate on the points extended by 4 on each side so
  // that every stencil and every segment window is interior.
  std::vector<Point2> pts;
  std::size_t offset = 0;
  if (curve.closed) {
    offset = 4;
    pts.reserve(n + 8);
    for (std::size_t k = 0; k < n + 8; ++k) pts.push_back(curve.points[(k + 2 * n - 4) % n]);
  } else {
    pts = curve.points;
  }
  const std::span<const Point2> all(pts);

  AffineSignatureCurve out;
  out.samples.reserve(indices.size());
  for (const std::size_t i : indices) {
    try {
      const std::size_t c = i + offset;
      AffineStencil s;
      s.kappa_prev = affine_kappa(all.subspan(c - 3).first<5>());
      s.kappa = affine_kappa(all.subspan(c - 2).first<5>());
      s.kappa_next = affine_kappa(all.subspan(c - 1).first<5>());
      for (std::size_t j = 0; j < 6; ++j) s.seg[j] = segment_in(all, c - 3 + j, options.rule);
      out.samples.push_back(
          {i, params[i], s.kappa, affine_kappa_s(s, options.variant), options.variant});
    } catch (const SignatureError& e) {
      if (options.skip_degenerate && e.code() == ErrorCode::DegenerateConfiguration) {
        out.skipped.push_back(i);
        continue;
      }
      throw e.at_index(i);
    }
  }
  return out;
}

}  // namespace sigcurve::affine2
