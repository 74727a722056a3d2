#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "sigcurve/error.hpp"
#include "sigcurve/geom.hpp"

namespace sigcurve {

/// Ordered samples of a curve. Closed curves wrap indices; open curves only
/// produce signature samples where a full stencil fits.
template <class Point>
struct PolyCurve {
  std::vector<Point> points;
  bool closed = false;
  /// Optional parameter value per point (same length as `points` when set).
  std::vector<double> params;

  std::size_t size() const { return points.size(); }

  /// Parameter of sample i: `params[i]` if present, otherwise the cumulative
  /// chord length from the first sample.
  double param(std::size_t i) const {
    if (!params.empty()) return params.at(i);
    double s = 0.0;
    for (std::size_t k = 0; k < i; ++k) s += distance(points[k], points[k + 1]);
    return s;
  }

  std::vector<double> all_params() const {
    if (!params.empty()) return params;
    std::vector<double> out(points.size(), 0.0);
    for (std::size_t k = 1; k < points.size(); ++k) {
      out[k] = out[k - 1] + distance(points[k - 1], points[k]);
    }
    return out;
  }

  /// Window of N consecutive points starting `before` samples ahead of
  /// `center`, wrapping for closed curves.
  template <std::size_t N>
  std::array<Point, N> window(std::size_t center, std::size_t before) const {
    std::array<Point, N> w;
    const auto n = static_cast<std::ptrdiff_t>(points.size());
    for (std::size_t k = 0; k < N; ++k) {
      std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(center) -
                           static_cast<std::ptrdiff_t>(before) + static_cast<std::ptrdiff_t>(k);
      if (closed) idx = ((idx % n) + n) % n;
      w[k] = points.at(static_cast<std::size_t>(idx));
    }
    return w;
  }
};

using PolyCurve2 = PolyCurve<Point2>;
using PolyCurve3 = PolyCurve<Point3>;

/// Indices at which a stencil with `before` points behind and `after` ahead
/// fits. Throws TooFewPoints when the curve is shorter than the stencil.
template <class Point>
std::vector<std::size_t> admissible_indices(const PolyCurve<Point>& curve, std::size_t before,
                                            std::size_t after) {
  const std::size_t width = before + after + 1;
  const std::size_t n = curve.size();
  if (n < width) {
    throw SignatureError(ErrorCode::TooFewPoints,
                         "need at least " + std::to_string(width) + " points, got " +
                             std::to_string(n));
  }
  if (!curve.params.empty() && curve.params.size() != n) {
    throw SignatureError(ErrorCode::InvalidArgument, "params length differs from point count");
  }
  std::vector<std::size_t> out;
  if (curve.closed) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
  } else {
    for (std::size_t i = before; i + after < n; ++i) out.push_back(i);
  }
  return out;
}

/// Rejects consecutive duplicates; all stencil denominators contain chords.
template <class Point>
void require_distinct_consecutive(const PolyCurve<Point>& curve) {
  const std::size_t n = curve.size();
  const std::size_t last = curve.closed ? n : n - 1;
  for (std::size_t i = 0; i < last && n > 1; ++i) {
    if (curve.points[i] == curve.points[(i + 1) % n]) {
      throw SignatureError(ErrorCode::DuplicatePoints, "consecutive samples coincide", i);
    }
  }
}

}  // namespace sigcurve
