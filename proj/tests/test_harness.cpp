#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <sigcurve/harness.hpp>

using namespace sigcurve;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const SignatureError& e) {
    return e.code();
  }
  return ErrorCode::NonFinite;
}

StudyConfig helix_study(Quantity q, KappaSVariant v = KappaSVariant::S5) {
  StudyConfig cfg;
  cfg.curve = sqrt_helix();
  cfg.partition.kind = PartitionKind::Pattern;
  cfg.partition.t_lo = kPi / 2;
  cfg.partition.t_hi = 3 * kPi / 2;
  cfg.estimator = Estimator::Euclid3;
  cfg.quantity = q;
  cfg.kappa_variant = v;
  return cfg;
}

StudyConfig planar_study(KappaSVariant v) {
  StudyConfig cfg;
  cfg.curve = polar_cos(0.1, 1);
  cfg.partition.kind = PartitionKind::Pattern;
  cfg.partition.t_hi = 2 * kPi;
  cfg.closed = true;
  cfg.kappa_variant = v;
  return cfg;
}

double det2(const GroupElement& e) { return e.m[0] * e.m[4] - e.m[1] * e.m[3]; }

}  // namespace

TEST(Convergence, CircleCurvatureIsExact) {
  StudyConfig cfg;
  cfg.curve = circle(1);
  cfg.partition.t_hi = 2 * kPi;
  cfg.closed = true;
  cfg.quantity = Quantity::Kappa;
  const auto rep = run_convergence(cfg);
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.slope, 0.0);
  // Rounding of the sampled points is amplified by about h^-2.
  for (const auto& r : rep.rows) EXPECT_LT(r.max_err, 1e-11);
  EXPECT_NE(summary_line(rep).find("EXACT"), std::string::npos);
}

TEST(Convergence, CorrectedStencilConvergesOnPattern) {
  const auto rep = run_convergence(helix_study(Quantity::KappaS));
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_TRUE(rep.monotone);
  EXPECT_GT(rep.slope, 0.8);
  EXPECT_LT(rep.slope, 1.5);
  EXPECT_FALSE(rep.low_confidence);
  for (std::size_t k = 1; k < rep.rows.size(); ++k) EXPECT_GT(rep.rows[k].n, rep.rows[k - 1].n);
}

TEST(Convergence, OriginalStencilStallsOnPattern) {
  const auto rep = run_convergence(planar_study(KappaSVariant::S1));
  EXPECT_LT(rep.slope, 0.3);
  EXPECT_GT(rep.rows.back().max_err, 0.01);
}

TEST(Convergence, WorstOffenderLiesInCore) {
  auto cfg = helix_study(Quantity::Tau);
  cfg.core = std::pair{2.0, 4.0};
  const auto rep = run_convergence(cfg);
  for (const auto& r : rep.rows) {
    EXPECT_GE(r.worst_t, 2.0);
    EXPECT_LE(r.worst_t, 4.0);
    EXPECT_LE(r.l2_err, r.max_err);
    EXPECT_GE(r.l2_err, 0.0);
  }
}

TEST(Convergence, Deterministic) {
  auto cfg = planar_study(KappaSVariant::S4);
  cfg.partition.kind = PartitionKind::Jitter;
  cfg.partition.seed = 9;
  const auto a = run_convergence(cfg), b = run_convergence(cfg);
  std::ostringstream sa, sb;
  write_report_csv(sa, a);
  write_report_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(summary_line(a), summary_line(b));
}

TEST(Convergence, TwoScalesAreLowConfidence) {
  auto cfg = helix_study(Quantity::Kappa);
  cfg.scales = {0.1, 0.05};
  const auto rep = run_convergence(cfg);
  EXPECT_TRUE(rep.low_confidence);
  EXPECT_NE(summary_line(rep).find("LOW_CONFIDENCE"), std::string::npos);
}

TEST(Convergence, ConfigErrors) {
  auto cfg = helix_study(Quantity::Kappa);
  cfg.scales = {0.1};
  EXPECT_EQ(code_of([&] { run_convergence(cfg); }), ErrorCode::InvalidArgument);
  cfg.scales = {0.05, 0.1};
  EXPECT_EQ(code_of([&] { run_convergence(cfg); }), ErrorCode::InvalidArgument);
  cfg.scales = {0.1, 0.05};
  cfg.estimator = Estimator::Euclid2;
  EXPECT_EQ(code_of([&] { run_convergence(cfg); }), ErrorCode::InvalidArgument);
  auto planar = planar_study(KappaSVariant::S5);
  planar.quantity = Quantity::Tau;
  EXPECT_EQ(code_of([&] { run_convergence(planar); }), ErrorCode::InvalidArgument);
}

TEST(Convergence, SingularRangeCarriesScaleContext) {
  auto cfg = helix_study(Quantity::Kappa);
  cfg.partition.t_lo = 0.0;
  try {
    run_convergence(cfg);
    FAIL() << "expected an error";
  } catch (const SignatureError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularParametrization);
    EXPECT_NE(std::string(e.what()).find("scale"), std::string::npos);
  }
}

TEST(Convergence, AffineNewConvergesOldStalls) {
  StudyConfig cfg;
  cfg.curve = polar_cos(0.1, 3);
  cfg.partition.kind = PartitionKind::Pattern;
  cfg.partition.t_lo = -0.8;
  cfg.partition.t_hi = 0.8;
  cfg.core = std::pair{-0.35, 0.35};
  cfg.estimator = Estimator::Affine2;
  const auto nw = run_convergence(cfg);
  EXPECT_GE(nw.slope, 0.8);
  EXPECT_TRUE(nw.monotone);
  cfg.affine_variant = affine2::AffineVariant::Old;
  EXPECT_LE(run_convergence(cfg).slope, 0.3);
}

TEST(Residual, EuclidPlanarIsSecondOrder) {
  const auto rep = residual_order(planar_study(KappaSVariant::S5), Expansion::Euclid2K);
  EXPECT_GE(rep.slope, 1.8);
  EXPECT_LE(rep.slope, 2.5);
}

TEST(Residual, RegularPartitionHasNoFirstOrderTerm) {
  auto cfg = planar_study(KappaSVariant::S5);
  cfg.partition.kind = PartitionKind::Regular;
  cfg.quantity = Quantity::Kappa;
  EXPECT_GE(run_convergence(cfg).slope, 1.8);
}

TEST(Residual, TorsionOneIsSecondOrder) {
  auto cfg = helix_study(Quantity::Tau);
  EXPECT_GE(residual_order(cfg, Expansion::Tau1).slope, 1.8);
  EXPECT_GE(residual_order(cfg, Expansion::Euclid3K).slope, 1.8);
}

TEST(Residual, TorsionTwoNeedsCorrectedCoefficient) {
  auto cfg = helix_study(Quantity::Tau);
  EXPECT_LT(residual_order(cfg, Expansion::Tau2).slope, 1.5);
  EXPECT_GE(residual_order(cfg, Expansion::Tau2Corrected).slope, 1.8);
}

TEST(Residual, AffineCurvature) {
  StudyConfig cfg;
  cfg.curve = polar_cos(0.1, 2);
  cfg.partition.kind = PartitionKind::Pattern;
  cfg.partition.t_hi = 2 * kPi;
  cfg.closed = true;
  EXPECT_GE(residual_order(cfg, Expansion::AffineK).slope, 1.8);
}

TEST(TauDifference, CorrectedRatioApproachesOne) {
  const auto cfg = helix_study(Quantity::Tau);
  EXPECT_LT(tau_difference_ratio(cfg, 0.0125, true).max_rel_dev, 0.1);
  const auto printed = tau_difference_ratio(cfg, 0.0125, false);
  EXPECT_GT(printed.n, 0u);
  EXPECT_GT(printed.max_rel_dev, 0.1);
}

TEST(GroupElements, Properties) {
  CounterRng rng(5);
  for (int k = 0; k < 200; ++k) {
    const auto r = random_element(Group::SE2, rng);
    EXPECT_NEAR(det2(r), 1.0, 1e-14);
    EXPECT_NEAR(r.m[0], r.m[4], 0.0);
    EXPECT_NEAR(r.m[1], -r.m[3], 0.0);
    const auto a = random_element(Group::SA2, rng);
    EXPECT_NEAR(det2(a), 1.0, 1e-13);
    const double fro2 = a.m[0] * a.m[0] + a.m[1] * a.m[1] + a.m[3] * a.m[3] + a.m[4] * a.m[4];
    EXPECT_LE((fro2 + std::sqrt(fro2 * fro2 - 4)) / 2, 20.0 + 1e-9);
    for (const double v : a.v) EXPECT_LE(std::abs(v), 10.0);
    const auto s = random_element(Group::SE3, rng);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double g = 0;
        for (int l = 0; l < 3; ++l) g += s.m[3 * l + i] * s.m[3 * l + j];
        EXPECT_NEAR(g, i == j ? 1.0 : 0.0, 1e-14);
      }
    }
    const Point3 e1{s.m[0], s.m[3], s.m[6]}, e2{s.m[1], s.m[4], s.m[7]}, e3{s.m[2], s.m[5], s.m[8]};
    EXPECT_NEAR(triple(e1, e2, e3), 1.0, 1e-14);
  }
}

TEST(Invariance, IdentityAndGroups) {
  PartitionSpec spec;
  spec.dt = 0.1;
  spec.t_hi = 2 * kPi;
  const auto t = generate_closed_partition(spec);
  const auto c2 = sample_curve2(polar_cos(0.1, 3), t, true);
  EXPECT_EQ(invariance_check(c2, Group::SE2, 0, 1), 0.0);
  EXPECT_LT(invariance_check(c2, Group::SE2, 10, 1), 1e-10);
  const auto a2 = sample_curve2(polar_cos(0.1, 2), t, true);
  EXPECT_LT(invariance_check(a2, Group::SA2, 10, 1), 1e-8);
  EXPECT_EQ(code_of([&] { invariance_check(c2, Group::SE3, 1, 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(invariance_check(c2, Group::SE2, 5, 3), invariance_check(c2, Group::SE2, 5, 3));
}

TEST(Invariance, ColumnDeviation) {
  const std::vector<std::vector<double>> ref{{1.0, 0.0}, {2.0, 1e-3}};
  EXPECT_EQ(detail::column_deviation(ref, ref), 0.0);
  EXPECT_NEAR(detail::column_deviation(ref, {{1.0, 0.0}, {2.0, 2e-3}}), 1.0, 1e-15);
  EXPECT_NEAR(detail::column_deviation(ref, {{1.2, 0.0}, {2.0, 1e-3}}), 0.1, 1e-15);
  EXPECT_TRUE(std::isinf(detail::column_deviation(ref, {{1.0, 0.0}})));
}

TEST(Reports, CsvAndSummary) {
  ConvergenceReport rep;
  rep.label = "demo";
  rep.rows = {{0.1, 10, 0.5, 0.25, 0, 0, 0}, {0.05, 20, 0.25, 0.125, 0, 0, 0}};
  rep.slope = 1.0;
  rep.monotone = true;
  rep.low_confidence = true;
  std::ostringstream os;
  write_report_csv(os, rep);
  EXPECT_EQ(os.str(), "scale,n,max_err,l2_err\n0.10000000000000001,10,0.5,0.25\n"
                      "0.050000000000000003,20,0.25,0.125\n");
  EXPECT_EQ(summary_line(rep), "demo: slope=1 monotone LOW_CONFIDENCE");
}
