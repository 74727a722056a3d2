#pragma once

// Arc-length derivative stencils built from discrete curvature values and
// chord lengths. Shared by the planar and space-curve Euclidean signatures.

#include <string_view>

#include "sigcurve/error.hpp"

namespace sigcurve {

/// S1, S2: the original one-sided and symmetric difference quotients, kept
/// for comparison only (they do not converge on irregular partitions).
/// S3..S5: corrected stencils that converge for arbitrary fine partitions.
enum class KappaSVariant { S1, S2, S3, S4, S5 };

constexpr std::string_view to_string(KappaSVariant v) noexcept {
  switch (v) {
    case KappaSVariant::S1: return "s1";
    case KappaSVariant::S2: return "s2";
    case KappaSVariant::S3: return "s3";
    case KappaSVariant::S4: return "s4";
    case KappaSVariant::S5: return "s5";
  }
  return "?";
}

/// Chords and curvature values of a five-point window P_{i-2}..P_{i+2}.
struct KappaStencil {
  double g = 0;  ///< |P_{i-2} P_{i-1}|
  double a = 0;  ///< |P_{i-1} P_i|
  double b = 0;  ///< |P_i P_{i+1}|
  double d = 0;  ///< |P_{i+1} P_{i+2}|
  double c = 0;  ///< |P_{i-1} P_{i+1}|
  double kappa_prev = 0;
  double kappa = 0;
  double kappa_next = 0;
};

namespace stencil {

inline double kappa_s_v1(double kappa, double kappa_next, double b) {
  return (kappa_next - kappa) / b;
}

inline double kappa_s_v2(double kappa_prev, double kappa_next, double c) {
  return (kappa_next - kappa_prev) / c;
}

inline double kappa_s_v3(double kappa, double kappa_next, double a, double b, double d) {
  return 3.0 * (kappa_next - kappa) / (a + b + d);
}

inline double kappa_s_v4(double kappa_prev, double kappa, double kappa_next, double a, double b,
                         double d, double g) {
  return 1.5 * (kappa_next - kappa) / (a + b + d) + 1.5 * (kappa - kappa_prev) / (a + b + g);
}

inline double kappa_s_v5(double kappa_prev, double kappa_next, double a, double b, double d,
                         double g) {
  return 3.0 * (kappa_next - kappa_prev) / (2.0 * a + 2.0 * b + d + g);
}

/// Centered torsion derivative from tau1 at P_{i-1}, P_i, P_{i+1}. The term
/// in (2a+2b-2d-3h+g) cancels the first-order bias that the tau1 expansion
/// introduces at the two neighbours; h = |P_{i+2} P_{i+3}|.
inline double tau_s(double tau_prev, double tau, double tau_next, double kappa, double kappa_s,
                    double a, double b, double d, double g, double h) {
  const double correction = (2.0 * a + 2.0 * b - 2.0 * d - 3.0 * h + g) * tau * kappa_s /
                            (6.0 * kappa);
  return 4.0 * (tau_next - tau_prev + correction) / (2.0 * a + 2.0 * b + 2.0 * d + h + g);
}

}  // namespace stencil

inline double kappa_s_v1(const KappaStencil& s) {
  return stencil::kappa_s_v1(s.kappa, s.kappa_next, s.b);
}
inline double kappa_s_v2(const KappaStencil& s) {
  return stencil::kappa_s_v2(s.kappa_prev, s.kappa_next, s.c);
}
inline double kappa_s_v3(const KappaStencil& s) {
  return stencil::kappa_s_v3(s.kappa, s.kappa_next, s.a, s.b, s.d);
}
inline double kappa_s_v4(const KappaStencil& s) {
  return stencil::kappa_s_v4(s.kappa_prev, s.kappa, s.kappa_next, s.a, s.b, s.d, s.g);
}
inline double kappa_s_v5(const KappaStencil& s) {
  return stencil::kappa_s_v5(s.kappa_prev, s.kappa_next, s.a, s.b, s.d, s.g);
}

inline double kappa_s(const KappaStencil& s, KappaSVariant variant) {
  switch (variant) {
    case KappaSVariant::S1: return kappa_s_v1(s);
    case KappaSVariant::S2: return kappa_s_v2(s);
    case KappaSVariant::S3: return kappa_s_v3(s);
    case KappaSVariant::S4: return kappa_s_v4(s);
    case KappaSVariant::S5: return kappa_s_v5(s);
  }
  throw SignatureError(ErrorCode::InvalidArgument, "unknown kappa_s variant");
}

}  // namespace sigcurve
