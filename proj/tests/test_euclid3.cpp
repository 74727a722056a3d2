#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <sigcurve/curves.hpp>
#include <sigcurve/euclid3.hpp>
#include <sigcurve/oracle.hpp>
#include <sigcurve/partition.hpp>
#include <sigcurve/random.hpp>

#include "oracles.hpp"

using namespace sigcurve;
using namespace sigcurve::euclid3;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const SignatureError& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

PolyCurve3 sampled(const CurveModel& m, const std::vector<double>& t) {
  PolyCurve3 c;
  c.params = t;
  for (const double ti : t) c.points.push_back(m.position(ti));
  return c;
}

std::vector<double> regular(double lo, double hi, double dt) {
  std::vector<double> t;
  for (double v = lo; v <= hi + 1e-12; v += dt) t.push_back(v);
  return t;
}

/// Triple-product torsion of the exact helix, in the library's convention.
double helix_tau(double a, double b) { return -b / (a * a + b * b); }

}  // namespace

TEST(Kappa3, CircleInTiltedPlane) {
  // Radius 2 circle in the plane spanned by orthonormal u, v.
  const double s = 1.0 / std::sqrt(2.0), r = 1.0 / std::sqrt(6.0);
  const Point3 u{s, -s, 0}, v{r, r, -2 * r};
  auto p = [&](double th) { return 2 * std::cos(th) * u + 2 * std::sin(th) * v + Point3{1, 2, 3}; };
  EXPECT_NEAR(kappa3(p(0.1), p(0.5), p(1.7)), 0.5, 1e-13);
  EXPECT_EQ(kappa3({0, 0, 0}, {1, 1, 1}, {2, 2, 2}), 0.0);
  EXPECT_EQ(code_of([] { kappa3({0, 0, 0}, {0, 0, 0}, {1, 0, 0}); }), ErrorCode::DuplicatePoints);
}

TEST(Kappa3, HelixCloseSamples) {
  const CurveModel m = helix(1, 1);
  EXPECT_NEAR(kappa3(m.position(1.0), m.position(1.01), m.position(1.02)), 0.5, 1e-4);
}

TEST(KappaS3, HelixIsZero) {
  const CurveModel m = helix(1, 1);
  std::array<Point3, 5> w, u;
  const double t[5] = {0.3, 0.35, 0.37, 0.41, 0.5};
  for (int k = 0; k < 5; ++k) {
    w[static_cast<std::size_t>(k)] = m.position(t[k]);
    u[static_cast<std::size_t>(k)] = m.position(0.3 + 0.05 * k);
  }
  for (const auto v : {KappaSVariant::S3, KappaSVariant::S4, KappaSVariant::S5}) {
    // Equal spacing: every triple is congruent.
    EXPECT_NEAR(kappa_s3(std::span<const Point3, 5>(u), v), 0.0, 1e-10);
    // Irregular spacing: kappa~ carries O(h^2) terms, kappa_s O(h).
    EXPECT_NEAR(kappa_s3(std::span<const Point3, 5>(w), v), 0.0, 0.05 * 0.1);
  }
}

TEST(Torsion, HelixValueAndSign) {
  for (const auto& [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}, std::pair{1.0, -1.0}}) {
    const CurveModel m = helix(a, b);
    const Point3 p0 = m.position(0.4), p1 = m.position(0.41), p2 = m.position(0.42),
                 p3 = m.position(0.43);
    EXPECT_NEAR(tau1(p0, p1, p2, p3), helix_tau(a, b), 1e-4);
    EXPECT_NEAR(tau2(p0, p1, p2, p3), helix_tau(a, b), 1e-4);
    EXPECT_NEAR(oracle_euclid3(m, 0.4).tau, helix_tau(a, b), 1e-14);
  }
}

TEST(Torsion, CoplanarIsExactlyZero) {
  const Point3 p0{0, 0, 0}, p1{1, 0.1, 0}, p2{2, 0.5, 0}, p3{2.7, 1.3, 0};
  EXPECT_EQ(tau1(p0, p1, p2, p3), 0.0);
  EXPECT_EQ(tau2(p0, p1, p2, p3), 0.0);
}

TEST(Torsion, Errors) {
  // Collinear base: no curvature, torsion undefined.
  EXPECT_EQ(code_of([] { tau1({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 1, 1}); }),
            ErrorCode::VanishingCurvature);
  EXPECT_EQ(code_of([] { tau2({0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 1, 1}); }),
            ErrorCode::VanishingCurvature);
  // P_i, P_{i+1}, P_{i+2} collinear: the tau2 side triangle degenerates.
  EXPECT_EQ(code_of([] { tau2({0, 1, 0}, {0, 0, 0}, {1, 0, 0}, {2, 0, 0}); }),
            ErrorCode::DegenerateBase);
}

TEST(Torsion, ReflectionFlipsSign) {
  const CurveModel m = sqrt_helix();
  const Point3 p[4] = {m.position(2.0), m.position(2.1), m.position(2.15), m.position(2.3)};
  Point3 q[4];
  for (int k = 0; k < 4; ++k) q[k] = {p[k].x, p[k].y, -p[k].z};
  EXPECT_EQ(tau1(q[0], q[1], q[2], q[3]), -tau1(p[0], p[1], p[2], p[3]));
  EXPECT_EQ(tau2(q[0], q[1], q[2], q[3]), -tau2(p[0], p[1], p[2], p[3]));
}

TEST(Torsion, SqrtHelixFineStencil) {
  const CurveModel m = sqrt_helix();
  const double t0 = std::numbers::pi / 2, h = 1e-3;
  const double est = tau1(m.position(t0 - h), m.position(t0), m.position(t0 + h), m.position(t0 + 2 * h));
  EXPECT_NEAR(oracle_euclid3(m, t0).tau, -0.4426, 1e-4);
  EXPECT_NEAR(est, oracle_euclid3(m, t0).tau, 1e-3);
}

TEST(TauS, StencilCancelsFirstOrderBias) {
  // tau1 at the neighbours modelled by its first-order expansion with exact
  // arc-length chords (c = a + b, e = b + d, ...). The stencil must return
  // tau_s exactly.
  CounterRng rng(17);
  for (int k = 0; k < 100; ++k) {
    const double g = rng.uniform(0.01, 0.1), a = rng.uniform(0.01, 0.1), b = rng.uniform(0.01, 0.1);
    const double d = rng.uniform(0.01, 0.1), h = rng.uniform(0.01, 0.1);
    const double tau = rng.uniform(-1, 1), ts = rng.uniform(-1, 1);
    const double kappa = rng.uniform(0.5, 2), ks = rng.uniform(-1, 1);
    const double K = tau * ks / (6 * kappa);
    auto model = [&](double s, double aa, double bb, double ee) {
      return tau + ts * s + K * (aa - bb + 3 * ee) + ts / 4 * (bb - aa + ee);
    };
    const double next = model(b, b, d, d + h);
    const double prev = model(-a, g, a, a + b);
    EXPECT_NEAR(stencil::tau_s(prev, tau, next, kappa, ks, a, b, d, g, h), ts, 1e-10);
  }
}

TEST(EuclidSignature3, Helix) {
  const CurveModel m = helix(1, 1);
  const auto sig = euclid_signature3(sampled(m, regular(0, 3, 0.01)));
  ASSERT_EQ(sig.samples.size(), 301u - 5u);
  for (const auto& s : sig.samples) {
    EXPECT_NEAR(s.kappa, 0.5, 1e-4);
    EXPECT_NEAR(s.kappa_s, 0.0, 1e-8);
    EXPECT_NEAR(s.tau, -0.5, 1e-4);
    EXPECT_NEAR(s.tau_s, 0.0, 1e-6);
  }
}

TEST(EuclidSignature3, PlanarInputHasNoTorsion) {
  const CurveModel m = polar_cos(0.1, 1);
  const auto sig = euclid_signature3(sampled(m, regular(0, 2, 0.05)));
  for (const auto& s : sig.samples) {
    EXPECT_EQ(s.tau, 0.0);
    EXPECT_EQ(s.tau_s, 0.0);
  }
}

TEST(EuclidSignature3, WindowAndErrors) {
  const CurveModel m = helix(1, 1);
  const auto six = euclid_signature3(sampled(m, regular(0, 0.5, 0.1)));
  ASSERT_EQ(six.samples.size(), 1u);
  EXPECT_EQ(six.samples[0].index, 2u);
  EXPECT_EQ(code_of([&] { euclid_signature3(sampled(m, regular(0, 0.4, 0.1))); }),
            ErrorCode::TooFewPoints);
  EXPECT_EQ(code_of([&] { euclid_signature3(sampled(m, regular(0, 1, 0.1)), {KappaSVariant::S1}); }),
            ErrorCode::InvalidArgument);
  auto c = sampled(m, regular(0, 1, 0.1));
  c.points[5] = c.points[4];
  try {
    euclid_signature3(c);
    FAIL();
  } catch (const SignatureError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicatePoints);
    EXPECT_TRUE(e.index().has_value());
  }
}

TEST(EuclidSignature3, ConvergesOnSqrtHelixPattern) {
  const CurveModel m = sqrt_helix();
  std::vector<double> hs, e_tau, e_taus;
  for (const double dt : {0.1, 0.05, 0.025, 0.0125}) {
    PartitionSpec spec;
    spec.kind = PartitionKind::Pattern;
    spec.dt = dt;
    spec.t_lo = std::numbers::pi / 2;
    spec.t_hi = 3 * std::numbers::pi / 2;
    double wt = 0, wts = 0;
    for (const auto& s : euclid_signature3(sampled(m, generate_partition(spec))).samples) {
      if (s.t < 2.0 || s.t > 4.2) continue;
      const auto o = oracle_euclid3(m, s.t);
      wt = std::max(wt, std::abs(s.tau - o.tau));
      wts = std::max(wts, std::abs(s.tau_s - o.tau_s));
    }
    hs.push_back(dt);
    e_tau.push_back(wt);
    e_taus.push_back(wts);
  }
  EXPECT_GE(oracle::fit_slope(hs, e_tau), 0.8);
  EXPECT_GE(oracle::fit_slope(hs, e_taus), 0.8);
}

TEST(EuclidSignature3, RigidMotionInvariance) {
  const CurveModel m = sqrt_helix();
  const auto c = sampled(m, regular(std::numbers::pi / 2, 3 * std::numbers::pi / 2, 0.1));
  const auto ref = euclid_signature3(c);
  const double th = 1.1;
  PolyCurve3 moved = c;
  for (auto& p : moved.points) {
    p = {std::cos(th) * p.x - std::sin(th) * p.z + 0.3, p.y - 1.2,
         std::sin(th) * p.x + std::cos(th) * p.z + 2.0};
  }
  const auto got = euclid_signature3(moved);
  ASSERT_EQ(got.samples.size(), ref.samples.size());
  for (std::size_t k = 0; k < ref.samples.size(); ++k) {
    EXPECT_NEAR(got.samples[k].kappa, ref.samples[k].kappa, 1e-10);
    EXPECT_NEAR(got.samples[k].tau, ref.samples[k].tau, 1e-10);
    EXPECT_NEAR(got.samples[k].tau_s, ref.samples[k].tau_s, 1e-10);
  }
}
