#pragma once

// Convergence studies of discrete signatures against exact oracles,
// Taylor-residual order fits and group-invariance checks.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "sigcurve/affine2.hpp"
#include "sigcurve/curves.hpp"
#include "sigcurve/error.hpp"
#include "sigcurve/euclid2.hpp"
#include "sigcurve/euclid3.hpp"
#include "sigcurve/format.hpp"
#include "sigcurve/oracle.hpp"
#include "sigcurve/partition.hpp"
#include "sigcurve/polycurve.hpp"
#include "sigcurve/random.hpp"

namespace sigcurve {

enum class Estimator { Euclid2, Affine2, Euclid3 };
enum class Quantity { Kappa, KappaS, Tau, TauS };

constexpr std::string_view to_string(Estimator e) noexcept {
  switch (e) {
    case Estimator::Euclid2: return "euclid2";
    case Estimator::Affine2: return "affine2";
    case Estimator::Euclid3: return "euclid3";
  }
  return "?";
}

constexpr std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::Kappa: return "kappa";
    case Quantity::KappaS: return "kappa_s";
    case Quantity::Tau: return "tau";
    case Quantity::TauS: return "tau_s";
  }
  return "?";
}

/// Printed first-order expansions whose remainders are fitted.
///  Euclid2K / Euclid3K: kappa~ = kappa + (b-a)/3 kappa_s
///  AffineK: kappa~ = kappa + (1/5) sum_{j=i-2}^{i+2} L_j kappa_s, L_j the
///    signed affine arc length from P_i to P_j
///  Tau1: tau1 = tau + tau kappa_s/(6 kappa) (a-b+3e) + tau_s/4 (b-a+e)
///  Tau2: tau2 = tau + tau kappa_s/(6 kappa) (a+b+e) + tau_s/4 (b-a+e)
///  Tau2Corrected: as Tau2 with (e-a-b) in place of (a+b+e)
enum class Expansion { Euclid2K, Euclid3K, AffineK, Tau1, Tau2, Tau2Corrected };

constexpr std::string_view to_string(Expansion e) noexcept {
  switch (e) {
    case Expansion::Euclid2K: return "EUCLID2_K";
    case Expansion::Euclid3K: return "EUCLID3_K";
    case Expansion::AffineK: return "AFFINE_K";
    case Expansion::Tau1: return "TAU1";
    case Expansion::Tau2: return "TAU2";
    case Expansion::Tau2Corrected: return "TAU2_CORRECTED";
  }
  return "?";
}

struct StudyConfig {
  CurveModel curve;
  /// Partition kind, weights and range; `dt` is replaced by each scale.
  PartitionSpec partition;
  /// Partition steps, strictly decreasing, at least two.
  std::vector<double> scales = {0.1, 0.05, 0.025, 0.0125};
  Estimator estimator = Estimator::Euclid2;
  Quantity quantity = Quantity::KappaS;
  KappaSVariant kappa_variant = KappaSVariant::S5;
  euclid3::TauVariant tau_variant = euclid3::TauVariant::T1;
  affine2::AffineVariant affine_variant = affine2::AffineVariant::New;
  affine2::SegmentRule segment_rule = affine2::SegmentRule::FourPoint;
  /// Sample the whole period of a closed curve and wrap stencils.
  bool closed = false;
  /// Parameter interval over which errors are measured, identical at every
  /// scale. Defaults to the range shrunk by a margin of 4 coarsest steps
  /// (open curves) or the full range (closed curves).
  std::optional<std::pair<double, double>> core;
};

struct ScaleResult {
  double scale = 0.0;
  std::size_t n = 0;        ///< samples entering the norms
  double max_err = 0.0;
  double l2_err = 0.0;      ///< root mean square
  std::size_t worst_index = 0;
  double worst_t = 0.0;
  std::size_t skipped = 0;  ///< degenerate windows skipped by the estimator
};

struct ConvergenceReport {
  std::string label;
  std::vector<ScaleResult> rows;
  double slope = 0.0;            ///< least-squares slope of log max_err vs log scale
  bool monotone = false;         ///< max_err strictly decreasing
  bool exact = false;            ///< errors at rounding level; slope not fitted
  bool low_confidence = false;   ///< only two scales
};

namespace detail {

inline void validate(const StudyConfig& cfg) {
  if (cfg.scales.size() < 2) {
    throw SignatureError(ErrorCode::InvalidArgument, "a study needs at least two scales");
  }
  for (std::size_t k = 0; k < cfg.scales.size(); ++k) {
    if (!(cfg.scales[k] > 0.0) || (k > 0 && !(cfg.scales[k] < cfg.scales[k - 1]))) {
      throw SignatureError(ErrorCode::InvalidArgument,
                           "scales must be positive and strictly decreasing");
    }
  }
  const bool space = cfg.estimator == Estimator::Euclid3;
  if (cfg.curve.dim != (space ? 3 : 2)) {
    throw SignatureError(ErrorCode::InvalidArgument,
                         "estimator and curve dimension do not match");
  }
  if (!space && (cfg.quantity == Quantity::Tau || cfg.quantity == Quantity::TauS)) {
    throw SignatureError(ErrorCode::InvalidArgument, "planar curves have no torsion");
  }
}

inline std::pair<double, double> core_of(const StudyConfig& cfg) {
  if (cfg.core) return *cfg.core;
  if (cfg.closed) {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
  const double margin = 4.0 * cfg.scales.front() * cfg.partition.max_weight();
  return {cfg.partition.t_lo + margin, cfg.partition.t_hi - margin};
}

inline std::vector<double> params_at(const StudyConfig& cfg, double scale) {
  PartitionSpec spec = cfg.partition;
  spec.dt = scale;
  return cfg.closed ? generate_closed_partition(spec) : generate_partition(spec);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += std::log(x[k]);
    my += std::log(y[k]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = std::log(x[k]) - mx;
    sxy += dx * (std::log(y[k]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

/// Pointwise (t, estimate, exact) triples accumulated into one ScaleResult.
struct ErrorAccumulator {
  ScaleResult row;
  double sum_sq = 0.0;
  double oracle_scale = 0.0;

  void add(std::size_t index, double t, double estimate, double exact) {
    const double err = std::abs(estimate - exact);
    if (!std::isfinite(err)) {
      throw SignatureError(ErrorCode::NonFinite, "non-finite estimate or oracle value", index);
    }
    if (row.n == 0 || err > row.max_err) {
      row.max_err = err;
      row.worst_index = index;
      row.worst_t = t;
    }
    sum_sq += err * err;
    oracle_scale = std::max(oracle_scale, std::abs(exact));
    ++row.n;
  }

  ScaleResult finish() {
    if (row.n == 0) {
      throw SignatureError(ErrorCode::EmptyRange, "no samples fall inside the error core");
    }
    row.l2_err = std::sqrt(sum_sq / static_cast<double>(row.n));
    return row;
  }
};

inline ConvergenceReport finish_report(std::string label, std::vector<ScaleResult> rows,
                                       double oracle_scale) {
  ConvergenceReport rep;
  rep.label = std::move(label);
  rep.rows = std::move(rows);
  rep.low_confidence = rep.rows.size() == 2;
  rep.monotone = true;
  for (std::size_t k = 1; k < rep.rows.size(); ++k) {
    if (!(rep.rows[k].max_err < rep.rows[k - 1].max_err)) rep.monotone = false;
  }
  const double floor = 1e-11 * std::max(1.0, oracle_scale);
  rep.exact = std::all_of(rep.rows.begin(), rep.rows.end(),
                          [&](const ScaleResult& r) { return r.max_err <= floor; });
  if (!rep.exact) {
    std::vector<double> x, y;
    for (const auto& r : rep.rows) {
      x.push_back(r.scale);
      y.push_back(std::max(r.max_err, std::numeric_limits<double>::min()));
    }
    rep.slope = loglog_slope(x, y);
  }
  return rep;
}

inline std::string study_label(const StudyConfig& cfg) {
  std::string s = cfg.curve.name + " " + std::string(to_string(cfg.estimator)) + " " +
                  std::string(to_string(cfg.quantity)) + " " +
                  std::string(to_string(cfg.partition.kind));
  if (cfg.estimator == Estimator::Affine2) {
    s += " " + std::string(affine2::to_string(cfg.affine_variant));
  } else if (cfg.quantity == Quantity::KappaS || cfg.quantity == Quantity::TauS) {
    s += " " + std::string(to_string(cfg.kappa_variant));
  }
  if (cfg.estimator == Estimator::Euclid3 &&
      (cfg.quantity == Quantity::Tau || cfg.quantity == Quantity::TauS)) {
    s += " " + std::string(euclid3::to_string(cfg.tau_variant));
  }
  return s;
}

}  // namespace detail

inline PolyCurve2 sample_curve2(const CurveModel& model, const std::vector<double>& t,
                                bool closed) {
  PolyCurve2 c;
  c.closed = closed;
  c.params = t;
  c.points.reserve(t.size());
  for (const double ti : t) {
    const Point3 p = model.position(ti);
    c.points.emplace_back(p.x, p.y);
  }
  return c;
}

inline PolyCurve3 sample_curve3(const CurveModel& model, const std::vector<double>& t,
                                bool closed) {
  PolyCurve3 c;
  c.closed = closed;
  c.params = t;
  c.points.reserve(t.size());
  for (const double ti : t) c.points.push_back(model.position(ti));
  return c;
}

/// Error of one estimator against its oracle at every scale, measured at
/// the shared sample parameters inside the core.
inline ConvergenceReport run_convergence(const StudyConfig& cfg) {
  detail::validate(cfg);
  const auto [core_lo, core_hi] = detail::core_of(cfg);
  auto in_core = [&](double t) { return t >= core_lo && t <= core_hi; };

  std::vector<ScaleResult> rows;
  double oracle_scale = 0.0;
  for (const double scale : cfg.scales) {
    try {
      const auto t = detail::params_at(cfg, scale);
      detail::ErrorAccumulator acc;
      acc.row.scale = scale;
      switch (cfg.estimator) {
        case Estimator::Euclid2: {
          const auto sig = euclid2::euclid_signature2(sample_curve2(cfg.curve, t, cfg.closed),
                                                      cfg.kappa_variant);
          for (const auto& s : sig.samples) {
            if (!in_core(s.t)) continue;
            const auto o = oracle_euclid2(cfg.curve, s.t);
            acc.add(s.index, s.t, cfg.quantity == Quantity::Kappa ? s.kappa : s.kappa_s,
                    cfg.quantity == Quantity::Kappa ? o.kappa : o.kappa_s);
          }
          break;
        }
        case Estimator::Affine2: {
          affine2::AffineOptions opt;
          opt.variant = cfg.affine_variant;
          opt.rule = cfg.segment_rule;
          const auto sig =
              affine2::affine_signature(sample_curve2(cfg.curve, t, cfg.closed), opt);
          for (const auto& s : sig.samples) {
            if (!in_core(s.t)) continue;
            const auto o = oracle_affine2(cfg.curve, s.t);
            acc.add(s.index, s.t, cfg.quantity == Quantity::Kappa ? s.kappa : s.kappa_s,
                    cfg.quantity == Quantity::Kappa ? o.kappa : o.kappa_s);
          }
          for (const std::size_t i : sig.skipped) {
            if (in_core(t[i])) ++acc.row.skipped;
          }
          break;
        }
        case Estimator::Euclid3: {
          euclid3::Signature3Options opt;
          opt.kappa_variant = cfg.kappa_variant;
          opt.tau_variant = cfg.tau_variant;
          const auto sig =
              euclid3::euclid_signature3(sample_curve3(cfg.curve, t, cfg.closed), opt);
          for (const auto& s : sig.samples) {
            if (!in_core(s.t)) continue;
            const auto o = oracle_euclid3(cfg.curve, s.t);
            double est = 0.0, exact = 0.0;
            switch (cfg.quantity) {
              case Quantity::Kappa: est = s.kappa; exact = o.kappa; break;
              case Quantity::KappaS: est = s.kappa_s; exact = o.kappa_s; break;
              case Quantity::Tau: est = s.tau; exact = o.tau; break;
              case Quantity::TauS: est = s.tau_s; exact = o.tau_s; break;
            }
            acc.add(s.index, s.t, est, exact);
          }
          break;
        }
      }
      oracle_scale = std::max(oracle_scale, acc.oracle_scale);
      rows.push_back(acc.finish());
    } catch (const SignatureError& e) {
      throw e.with_context("scale " + format_double(scale));
    }
  }
  return detail::finish_report(detail::study_label(cfg), std::move(rows), oracle_scale);
}

namespace detail {

inline double euclid_k_remainder(double kappa_est, double a, double b, double kappa,
                                 double kappa_s) {
  return kappa_est - kappa - (b - a) / 3.0 * kappa_s;
}

}  // namespace detail

/// Order of the remainder after subtracting a printed first-order expansion
/// from the estimator; the estimator is taken from `expansion`, other
/// estimator fields of `cfg` are ignored.
inline ConvergenceReport residual_order(const StudyConfig& cfg, Expansion expansion) {
  const auto [core_lo, core_hi] = detail::core_of(cfg);
  auto in_core = [&](double t) { return t >= core_lo && t <= core_hi; };
  const bool space = expansion == Expansion::Euclid3K || expansion == Expansion::Tau1 ||
                     expansion == Expansion::Tau2 || expansion == Expansion::Tau2Corrected;
  if (cfg.scales.size() < 2) {
    throw SignatureError(ErrorCode::InvalidArgument, "a study needs at least two scales");
  }
  if (cfg.curve.dim != (space ? 3 : 2)) {
    throw SignatureError(ErrorCode::InvalidArgument, "expansion does not match curve dimension");
  }

  std::vector<ScaleResult> rows;
  for (const double scale : cfg.scales) {
    try {
      const auto t = detail::params_at(cfg, scale);
      const std::size_t n = t.size();
      detail::ErrorAccumulator acc;
      acc.row.scale = scale;

      if (!space) {
        const auto curve = sample_curve2(cfg.curve, t, cfg.closed);
        const std::size_t before = expansion == Expansion::AffineK ? 2 : 1;
        for (const std::size_t i : admissible_indices(curve, before, before)) {
          if (!in_core(t[i])) continue;
          if (expansion == Expansion::Euclid2K) {
            const auto w = curve.window<3>(i, 1);
            const double a = distance(w[0], w[1]);
            const double b = distance(w[1], w[2]);
            const auto o = oracle_euclid2(cfg.curve, t[i]);
            const double est = euclid2::kappa_tilde(w[0], w[1], w[2]);
            acc.add(i, t[i], detail::euclid_k_remainder(est, a, b, o.kappa, o.kappa_s), 0.0);
          } else {
            const auto w = curve.window<5>(i, 2);
            const auto o = oracle_affine2(cfg.curve, t[i]);
            double sum_l = 0.0;
            for (int j = -2; j <= 2; ++j) {
              if (j == 0) continue;
              // Wrapped parameters of closed curves continue past the seam.
              const auto jj = static_cast<std::ptrdiff_t>(i) + j;
              const auto nn = static_cast<std::ptrdiff_t>(n);
              const double shift = jj < 0 ? -cfg.curve.period()
                                          : (jj >= nn ? cfg.curve.period() : 0.0);
              const double tj = t[static_cast<std::size_t>(((jj % nn) + nn) % nn)] + shift;
              sum_l += j > 0 ? affine_arc_quadrature(cfg.curve, t[i], tj)
                             : -affine_arc_quadrature(cfg.curve, tj, t[i]);
            }
            const double est = affine2::affine_kappa(std::span<const Point2, 5>(w));
            acc.add(i, t[i], est - o.kappa - sum_l / 5.0 * o.kappa_s, 0.0);
          }
        }
      } else {
        const auto curve = sample_curve3(cfg.curve, t, cfg.closed);
        const std::size_t after = expansion == Expansion::Euclid3K ? 1 : 2;
        for (const std::size_t i : admissible_indices(curve, 1, after)) {
          if (!in_core(t[i])) continue;
          const auto o = oracle_euclid3(cfg.curve, t[i]);
          if (expansion == Expansion::Euclid3K) {
            const auto w = curve.window<3>(i, 1);
            const double a = distance(w[0], w[1]);
            const double b = distance(w[1], w[2]);
            const double est = euclid3::kappa3(w[0], w[1], w[2]);
            acc.add(i, t[i], detail::euclid_k_remainder(est, a, b, o.kappa, o.kappa_s), 0.0);
            continue;
          }
          const auto w = curve.window<4>(i, 1);
          const auto d = TetraDistances::of(w[0], w[1], w[2], w[3]);
          double est = 0.0, coef = 0.0;
          switch (expansion) {
            case Expansion::Tau1:
              est = euclid3::tau1(w[0], w[1], w[2], w[3]);
              coef = d.a - d.b + 3.0 * d.e;
              break;
            case Expansion::Tau2:
              est = euclid3::tau2(w[0], w[1], w[2], w[3]);
              coef = d.a + d.b + d.e;
              break;
            default:
              est = euclid3::tau2(w[0], w[1], w[2], w[3]);
              coef = d.e - d.a - d.b;
              break;
          }
          const double first = o.tau * o.kappa_s / (6.0 * o.kappa) * coef +
                               o.tau_s / 4.0 * (d.b - d.a + d.e);
          acc.add(i, t[i], est - o.tau - first, 0.0);
        }
      }
      rows.push_back(acc.finish());
    } catch (const SignatureError& e) {
      throw e.with_context("scale " + format_double(scale));
    }
  }
  std::string label = cfg.curve.name + " residual " + std::string(to_string(expansion)) + " " +
                      std::string(to_string(cfg.partition.kind));
  // Remainders are compared against zero; rounding-level remainders are
  // judged relative to unit-size invariants.
  return detail::finish_report(std::move(label), std::move(rows), 1.0);
}

/// Ratio (tau1 - tau2)/(e - b) against tau kappa_s/(3 kappa) at one scale:
/// worst relative deviation over the core.
struct TauDifferenceStats {
  double scale = 0.0;
  std::size_t n = 0;
  double max_rel_dev = 0.0;
  double mean_ratio = 0.0;  ///< mean of measured/predicted
};

inline TauDifferenceStats tau_difference_ratio(const StudyConfig& cfg, double scale,
                                               bool corrected = false) {
  const auto [core_lo, core_hi] = detail::core_of(cfg);
  PartitionSpec spec = cfg.partition;
  spec.dt = scale;
  const auto t = cfg.closed ? generate_closed_partition(spec) : generate_partition(spec);
  const auto curve = sample_curve3(cfg.curve, t, cfg.closed);
  TauDifferenceStats out;
  out.scale = scale;
  double sum = 0.0;
  for (const std::size_t i : admissible_indices(curve, 1, 2)) {
    if (t[i] < core_lo || t[i] > core_hi) continue;
    const auto w = curve.window<4>(i, 1);
    const auto d = TetraDistances::of(w[0], w[1], w[2], w[3]);
    const auto o = oracle_euclid3(cfg.curve, t[i]);
    const double diff = euclid3::tau1(w[0], w[1], w[2], w[3]) - euclid3::tau2(w[0], w[1], w[2], w[3]);
    const double measured = diff / (corrected ? d.a + d.e : d.e - d.b);
    const double predicted = o.tau * o.kappa_s / (3.0 * o.kappa);
    const double ratio = measured / predicted;
    out.max_rel_dev = std::max(out.max_rel_dev, std::abs(ratio - 1.0));
    sum += ratio;
    ++out.n;
  }
  if (out.n == 0) throw SignatureError(ErrorCode::EmptyRange, "no samples in core");
  out.mean_ratio = sum / static_cast<double>(out.n);
  return out;
}

// ---------------------------------------------------------------------------
// Invariance

enum class Group { SE2, SE3, SA2 };

constexpr std::string_view to_string(Group g) noexcept {
  switch (g) {
    case Group::SE2: return "SE2";
    case Group::SE3: return "SE3";
    case Group::SA2: return "SA2";
  }
  return "?";
}

/// 2x2 or 3x3 linear part plus translation.
struct GroupElement {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::array<double, 3> v{0, 0, 0};

  Point2 apply(const Point2& p) const {
    return {m[0] * p.x + m[1] * p.y + v[0], m[3] * p.x + m[4] * p.y + v[1]};
  }
  Point3 apply(const Point3& p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z + v[0],
            m[3] * p.x + m[4] * p.y + m[5] * p.z + v[1],
            m[6] * p.x + m[7] * p.y + m[8] * p.z + v[2]};
  }
};

/// Random element: uniform rotation angle(s) for SE2/SE3 (unit quaternion
/// for SE3), unimodular matrix with entries drawn from [-2, 2] and rescaled
/// to determinant 1 for SA2 (redrawn when badly conditioned). Translations
/// in [-10, 10].
inline GroupElement random_element(Group g, CounterRng& rng) {
  GroupElement e;
  for (auto& vi : e.v) vi = rng.uniform(-10.0, 10.0);
  switch (g) {
    case Group::SE2: {
      const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
      e.m = {std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th), 0, 0, 0, 1};
      e.v[2] = 0.0;
      break;
    }
    case Group::SE3: {
      double q[4];
      double n2 = 0.0;
      do {
        n2 = 0.0;
        for (double& qi : q) {
          qi = rng.uniform(-1.0, 1.0);
          n2 += qi * qi;
        }
      } while (n2 > 1.0 || n2 < 1e-4);
      const double s = 1.0 / std::sqrt(n2);
      const double w = q[0] * s, x = q[1] * s, y = q[2] * s, z = q[3] * s;
      e.m = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
             2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
             2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
      break;
    }
    case Group::SA2: {
      for (;;) {
        double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        double c = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
        const double det = a * d - b * c;
        if (std::abs(det) < 0.1) continue;
        double s = 1.0 / std::sqrt(std::abs(det));
        a *= s, b *= s, c *= s, d *= s;
        if (det < 0) std::swap(a, b), std::swap(c, d);  // swap columns: det -> +1
        const double fro2 = a * a + b * b + c * c + d * d;
        // condition number of a unimodular 2x2: (fro2 + sqrt(fro2^2 - 4))/2
        if ((fro2 + std::sqrt(std::max(0.0, fro2 * fro2 - 4.0))) / 2.0 > 20.0) continue;
        e.m = {a, b, 0, c, d, 0, 0, 0, 1};
        break;
      }
      e.v[2] = 0.0;
      break;
    }
  }
  return e;
}

namespace detail {

/// max_k |x_k - y_k| / max_k |x_k|, per component column.
inline double column_deviation(const std::vector<std::vector<double>>& ref,
                               const std::vector<std::vector<double>>& got) {
  if (ref.size() != got.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  const std::size_t cols = ref.empty() ? 0 : ref.front().size();
  for (std::size_t c = 0; c < cols; ++c) {
    double scale = 0.0, dev = 0.0;
    for (std::size_t r = 0; r < ref.size(); ++r) {
      scale = std::max(scale, std::abs(ref[r][c]));
      dev = std::max(dev, std::abs(ref[r][c] - got[r][c]));
    }
    if (scale > 0.0) worst = std::max(worst, dev / scale);
    else worst = std::max(worst, dev);
  }
  return worst;
}

inline std::vector<std::vector<double>> signature_table(const PolyCurve2& c, Group g) {
  std::vector<std::vector<double>> out;
  if (g == Group::SA2) {
    affine2::AffineOptions o;
    o.skip_degenerate = false;
    o.variant = affine2::AffineVariant::New;
    const auto nw = affine2::affine_signature(c, o);
    o.variant = affine2::AffineVariant::Old;
    const auto old = affine2::affine_signature(c, o);
    for (std::size_t k = 0; k < nw.samples.size(); ++k) {
      out.push_back({nw.samples[k].kappa, nw.samples[k].kappa_s, old.samples[k].kappa_s});
    }
    return out;
  }
  std::vector<euclid2::SignatureCurve2> sigs;
  for (const auto v : {KappaSVariant::S1, KappaSVariant::S2, KappaSVariant::S3,
                       KappaSVariant::S4, KappaSVariant::S5}) {
    sigs.push_back(euclid2::euclid_signature2(c, v));
  }
  for (std::size_t k = 0; k < sigs.front().samples.size(); ++k) {
    std::vector<double> row{sigs.front().samples[k].kappa};
    for (const auto& s : sigs) row.push_back(s.samples[k].kappa_s);
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::vector<double>> signature_table(const PolyCurve3& c, Group) {
  std::vector<std::vector<double>> out;
  for (const auto tv : {euclid3::TauVariant::T1, euclid3::TauVariant::T2}) {
    const auto sig = euclid3::euclid_signature3(c, {KappaSVariant::S5, tv});
    for (std::size_t k = 0; k < sig.samples.size(); ++k) {
      const auto& s = sig.samples[k];
      if (tv == euclid3::TauVariant::T1) {
        out.push_back({s.kappa, s.kappa_s, s.tau, s.tau_s});
      } else {
        out[k].push_back(s.tau);
      }
    }
  }
  return out;
}

}  // namespace detail

/// Worst relative deviation of the full signature over `trials` random
/// group elements. Each output column is compared relative to its largest
/// magnitude. SE2/SA2 act on planar curves, SE3 on space curves.
template <class Point>
double invariance_check(const PolyCurve<Point>& curve, Group group, int trials,
                        std::uint64_t seed) {
  constexpr bool planar = std::is_same_v<Point, Point2>;
  if (planar == (group == Group::SE3)) {
    throw SignatureError(ErrorCode::InvalidArgument, "group does not act on this dimension");
  }
  const auto ref = detail::signature_table(curve, group);
  CounterRng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < trials; ++k) {
    const GroupElement e = random_element(group, rng);
    PolyCurve<Point> moved = curve;
    for (auto& p : moved.points) p = e.apply(p);
    worst = std::max(worst, detail::column_deviation(ref, detail::signature_table(moved, group)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Reports

inline void write_report_csv(std::ostream& os, const ConvergenceReport& rep) {
  os << "scale,n,max_err,l2_err\n";
  for (const auto& r : rep.rows) {
    os << format_double(r.scale) << ',' << r.n << ',' << format_double(r.max_err) << ','
       << format_double(r.l2_err) << '\n';
  }
}

inline std::string summary_line(const ConvergenceReport& rep) {
  std::string s = rep.label + ": ";
  if (rep.exact) {
    s += "slope=n/a EXACT";
  } else {
    s += "slope=" + format_double(rep.slope, 4);
  }
  s += rep.monotone ? " monotone" : " non-monotone";
  if (rep.low_confidence) s += " LOW_CONFIDENCE";
  return s;
}

}  // namespace sigcurve
