#pragma once

// Command-line front end. `run` is the whole program; main() only forwards
// argv, so tests can drive it in-process.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <sigcurve.hpp>

namespace sigcurve::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kGeometry = 3, kDomain = 4 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownCurve:
      return kUsage;
    case ErrorCode::SingularParametrization:
    case ErrorCode::InflectionPoint:
    case ErrorCode::EmptyRange:
      return kDomain;
    default:
      return kGeometry;
  }
}

/// Flags shared by every subcommand.
struct Options {
  std::string input;
  std::string curve;
  double eps = 0.1;
  double k = 1.0;
  double R = 1.0;
  double a = 2.0;
  double b = 1.0;
  std::string partition = "regular";
  std::vector<double> weights = {1.0, 0.5, 1.0 / 3.0};
  double dt = 0.05;
  std::vector<double> range;
  double amplitude = 0.25;
  std::uint64_t seed = 1;
  std::string variant;
  std::string tau = "t1";
  std::string rule = "four";
  bool closed = false;
  bool plot = false;
  std::string out;

  // convergence
  std::vector<double> scales = {0.1, 0.05, 0.025, 0.0125};
  std::string quantity = "kappa_s";
  std::string estimator;
  std::string residual;
  std::vector<double> core;

  // oracle
  std::string kind = "euclid";
};

namespace detail {

inline void add_source_flags(CLI::App& app, Options& o, bool allow_file) {
  if (allow_file) app.add_option("-i,--input", o.input, "point CSV (x,y or x,y,z per line)");
  app.add_option("--curve", o.curve,
                 "builtin curve: polar_cos, circle, ellipse, helix, sqrt_helix");
  app.add_option("--eps", o.eps, "polar_cos: r = 1 + eps cos(k t)");
  app.add_option("--k", o.k, "polar_cos frequency");
  app.add_option("--R", o.R, "circle radius");
  app.add_option("--a", o.a, "ellipse/helix first parameter");
  app.add_option("--b", o.b, "ellipse/helix second parameter");
  app.add_option("--partition", o.partition, "regular | pattern | jitter")
      ->check(CLI::IsMember({"regular", "pattern", "jitter"}));
  app.add_option("--weights", o.weights, "pattern step multipliers")->delimiter(',');
  app.add_option("--dt", o.dt, "base parameter step");
  app.add_option("--range", o.range, "parameter range lo,hi")->delimiter(',')->expected(2);
  app.add_option("--amplitude", o.amplitude, "jitter amplitude relative to dt (< 0.5)");
  app.add_option("--seed", o.seed, "jitter / random-element seed");
  app.add_flag("--closed", o.closed, "treat the samples as a closed curve");
}

inline CurveModel model_of(const Options& o) {
  return builtin_curve(o.curve, {{"eps", o.eps}, {"k", o.k}, {"R", o.R}, {"a", o.a}, {"b", o.b}});
}

inline PartitionSpec partition_of(const Options& o, const CurveModel& m) {
  PartitionSpec s;
  s.kind = o.partition == "pattern"  ? PartitionKind::Pattern
           : o.partition == "jitter" ? PartitionKind::Jitter
                                     : PartitionKind::Regular;
  s.dt = o.dt;
  s.t_lo = o.range.empty() ? m.t_lo : o.range[0];
  s.t_hi = o.range.empty() ? m.t_hi : o.range[1];
  s.weights = o.weights;
  s.amplitude = o.amplitude;
  s.seed = o.seed;
  return s;
}

inline std::vector<double> params_of(const Options& o, const CurveModel& m) {
  const auto spec = partition_of(o, m);
  return o.closed ? generate_closed_partition(spec) : generate_partition(spec);
}

template <class Curve>
Curve load_points(const Options& o, int dim) {
  if (o.input.empty() == o.curve.empty()) {
    throw SignatureError(ErrorCode::InvalidArgument,
                         "give exactly one input: --input FILE or --curve NAME");
  }
  Curve c;
  c.closed = o.closed;
  if (!o.input.empty()) {
    std::ifstream in(o.input);
    if (!in) throw SignatureError(ErrorCode::InvalidArgument, "cannot open " + o.input);
    if constexpr (std::is_same_v<Curve, PolyCurve2>) {
      c.points = io::read_points2(in);
    } else {
      c.points = io::read_points3(in);
    }
    return c;
  }
  const CurveModel m = model_of(o);
  if (m.dim != dim) {
    throw SignatureError(ErrorCode::InvalidArgument,
                         o.curve + " is a " + std::to_string(m.dim) + "D curve");
  }
  const auto t = params_of(o, m);
  if constexpr (std::is_same_v<Curve, PolyCurve2>) {
    c = sample_curve2(m, t, o.closed);
  } else {
    c = sample_curve3(m, t, o.closed);
  }
  return c;
}

/// Output stream: the --out file, or `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw SignatureError(ErrorCode::InvalidArgument, "cannot write " + path);
      os_ = file_.get();
    }
  }
  std::ostream& get() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

inline std::string plot_path(const Options& o, const std::string& suffix) {
  if (o.out.empty()) {
    throw SignatureError(ErrorCode::InvalidArgument, "--plot needs --out to name the plot files");
  }
  std::filesystem::path p(o.out);
  return (p.parent_path() / (p.stem().string() + suffix + ".svg")).string();
}

inline void write_plot(const std::string& path, const io::Plot& plot) {
  std::ofstream f(path);
  if (!f) throw SignatureError(ErrorCode::InvalidArgument, "cannot write " + path);
  io::write_svg(f, plot);
}

inline KappaSVariant kappa_variant_of(const std::string& v) {
  if (v.empty() || v == "s5") return KappaSVariant::S5;
  if (v == "s1") return KappaSVariant::S1;
  if (v == "s2") return KappaSVariant::S2;
  if (v == "s3") return KappaSVariant::S3;
  if (v == "s4") return KappaSVariant::S4;
  throw SignatureError(ErrorCode::InvalidArgument, "unknown kappa_s variant '" + v + "'");
}

inline affine2::AffineVariant affine_variant_of(const std::string& v) {
  if (v.empty() || v == "new") return affine2::AffineVariant::New;
  if (v == "old") return affine2::AffineVariant::Old;
  throw SignatureError(ErrorCode::InvalidArgument, "unknown affine variant '" + v + "'");
}

inline euclid3::TauVariant tau_variant_of(const std::string& v) {
  if (v == "t1") return euclid3::TauVariant::T1;
  if (v == "t2") return euclid3::TauVariant::T2;
  throw SignatureError(ErrorCode::InvalidArgument, "unknown torsion variant '" + v + "'");
}

inline affine2::SegmentRule rule_of(const std::string& r) {
  if (r == "four") return affine2::SegmentRule::FourPoint;
  if (r == "forward") return affine2::SegmentRule::TriangleForward;
  if (r == "backward") return affine2::SegmentRule::TriangleBackward;
  throw SignatureError(ErrorCode::InvalidArgument, "unknown segment rule '" + r + "'");
}

inline Quantity quantity_of(const std::string& q) {
  if (q == "kappa") return Quantity::Kappa;
  if (q == "kappa_s") return Quantity::KappaS;
  if (q == "tau") return Quantity::Tau;
  if (q == "tau_s") return Quantity::TauS;
  throw SignatureError(ErrorCode::InvalidArgument, "unknown quantity '" + q + "'");
}

inline Expansion expansion_of(const std::string& e) {
  for (const auto x : {Expansion::Euclid2K, Expansion::Euclid3K, Expansion::AffineK,
                       Expansion::Tau1, Expansion::Tau2, Expansion::Tau2Corrected}) {
    if (e == to_string(x)) return x;
  }
  throw SignatureError(ErrorCode::InvalidArgument, "unknown expansion '" + e + "'");
}

template <class Sig>
io::Series kappa_series(const Sig& sig, const std::string& label) {
  io::Series s;
  s.label = label;
  for (const auto& x : sig.samples) s.xy.emplace_back(x.kappa, x.kappa_s);
  return s;
}

/// Replaces `--config FILE` by the flags the file lists, one key=value per
/// line with '#' comments. Flags given on the command line take precedence.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw SignatureError(ErrorCode::InvalidArgument, "cannot open config " + path);

  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::vector<std::string> extra;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = std::string(io::detail::trim(line));
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    const auto key = std::string(io::detail::trim(std::string_view(body).substr(0, eq)));
    if (eq == std::string::npos || key.empty()) {
      throw io::ParseError(lineno, path + ": expected key=value");
    }
    const auto value = std::string(io::detail::trim(std::string_view(body).substr(eq + 1)));
    if (!given(key)) extra.push_back("--" + key + "=" + value);
  }
  // Subcommand flags must follow the subcommand name.
  const auto at = args.size() > 1 ? args.begin() + 2 : args.end();
  args.insert(at, extra.begin(), extra.end());
  return args;
}

}  // namespace detail

inline int cmd_sig2d_euclid(const Options& o, std::ostream& out) {
  const auto curve = detail::load_points<PolyCurve2>(o, 2);
  const auto sig = euclid2::euclid_signature2(curve, detail::kappa_variant_of(o.variant));
  detail::Sink sink(o.out, out);
  io::write_signature(sink.get(), sig);
  if (o.plot) {
    detail::write_plot(detail::plot_path(o, ""),
                       {"Euclidean signature", "kappa", "kappa_s",
                        {detail::kappa_series(
                            sig, std::string(to_string(detail::kappa_variant_of(o.variant))))}});
  }
  return kOk;
}

inline int cmd_sig2d_affine(const Options& o, std::ostream& out, std::ostream& err) {
  const auto curve = detail::load_points<PolyCurve2>(o, 2);
  affine2::AffineOptions opt;
  opt.variant = detail::affine_variant_of(o.variant);
  opt.rule = detail::rule_of(o.rule);
  const auto sig = affine2::affine_signature(curve, opt);
  if (!sig.skipped.empty()) {
    err << "warning: skipped " << sig.skipped.size()
        << " degenerate (non-convex or collinear) windows\n";
  }
  detail::Sink sink(o.out, out);
  io::write_signature(sink.get(), sig);
  if (o.plot) {
    detail::write_plot(detail::plot_path(o, ""),
                       {"Equi-affine signature", "affine kappa", "affine kappa_s",
                        {detail::kappa_series(sig, std::string(to_string(opt.variant)))}});
  }
  return kOk;
}

inline int cmd_sig3d(const Options& o, std::ostream& out) {
  const auto curve = detail::load_points<PolyCurve3>(o, 3);
  euclid3::Signature3Options opt;
  opt.kappa_variant = detail::kappa_variant_of(o.variant);
  opt.tau_variant = detail::tau_variant_of(o.tau);
  const auto sig = euclid3::euclid_signature3(curve, opt);
  detail::Sink sink(o.out, out);
  io::write_signature(sink.get(), sig);
  if (o.plot) {
    io::Series tau;
    tau.label = std::string(euclid3::to_string(opt.tau_variant));
    for (const auto& s : sig.samples) tau.xy.emplace_back(s.tau, s.tau_s);
    detail::write_plot(detail::plot_path(o, "_kappa"),
                       {"Derivative of the Curvature vs Curvature", "kappa", "kappa_s",
                        {detail::kappa_series(sig, std::string(to_string(opt.kappa_variant)))}});
    detail::write_plot(detail::plot_path(o, "_tau"),
                       {"Derivative of the Torsion vs Torsion", "tau", "tau_s", {tau}});
  }
  return kOk;
}

inline int cmd_convergence(const Options& o, std::ostream& out) {
  if (o.curve.empty()) {
    throw SignatureError(ErrorCode::InvalidArgument, "convergence studies need --curve");
  }
  StudyConfig cfg;
  cfg.curve = detail::model_of(o);
  cfg.partition = detail::partition_of(o, cfg.curve);
  cfg.scales = o.scales;
  cfg.closed = o.closed;
  cfg.quantity = detail::quantity_of(o.quantity);
  if (o.core.size() == 2) cfg.core = std::pair{o.core[0], o.core[1]};
  else if (!o.core.empty()) throw SignatureError(ErrorCode::InvalidArgument, "--core needs lo,hi");

  const bool affine = o.estimator == "affine2" || o.variant == "old" || o.variant == "new";
  if (!o.estimator.empty() && o.estimator != "euclid2" && o.estimator != "affine2" &&
      o.estimator != "euclid3") {
    throw SignatureError(ErrorCode::InvalidArgument, "unknown estimator '" + o.estimator + "'");
  }
  cfg.estimator = cfg.curve.dim == 3 ? Estimator::Euclid3
                  : affine           ? Estimator::Affine2
                                     : Estimator::Euclid2;
  if (affine) {
    cfg.affine_variant = detail::affine_variant_of(o.variant);
    cfg.segment_rule = detail::rule_of(o.rule);
  } else {
    cfg.kappa_variant = detail::kappa_variant_of(o.variant);
  }
  cfg.tau_variant = detail::tau_variant_of(o.tau);

  const ConvergenceReport rep = o.residual.empty()
                                    ? run_convergence(cfg)
                                    : residual_order(cfg, detail::expansion_of(o.residual));
  if (o.out.empty()) {
    write_report_csv(out, rep);
    out << "# " << summary_line(rep) << '\n';
  } else {
    detail::Sink sink(o.out, out);
    write_report_csv(sink.get(), rep);
    out << summary_line(rep) << '\n';
  }
  return kOk;
}

inline int cmd_oracle(const Options& o, std::ostream& out) {
  if (o.curve.empty()) throw SignatureError(ErrorCode::InvalidArgument, "oracle needs --curve");
  const CurveModel m = detail::model_of(o);
  const auto t = detail::params_of(o, m);
  detail::Sink sink(o.out, out);
  std::ostream& os = sink.get();
  io::Series series;
  series.polyline = true;
  series.label = "exact";
  if (m.dim == 3) {
    io::Series tau = series;
    os << "index,t,kappa,kappa_s,tau,tau_s\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto s = oracle_euclid3(m, t[i]);
      os << i << ',' << format_double(t[i]) << ',' << format_double(s.kappa) << ','
         << format_double(s.kappa_s) << ',' << format_double(s.tau) << ','
         << format_double(s.tau_s) << '\n';
      series.xy.emplace_back(s.kappa, s.kappa_s);
      tau.xy.emplace_back(s.tau, s.tau_s);
    }
    if (o.plot) {
      detail::write_plot(detail::plot_path(o, "_kappa"),
                         {"Derivative of the Curvature vs Curvature", "kappa", "kappa_s", {series}});
      detail::write_plot(detail::plot_path(o, "_tau"),
                         {"Derivative of the Torsion vs Torsion", "tau", "tau_s", {tau}});
    }
    return kOk;
  }
  if (o.kind != "euclid" && o.kind != "affine") {
    throw SignatureError(ErrorCode::InvalidArgument, "--kind must be euclid or affine");
  }
  os << "index,t,kappa,kappa_s\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    double kappa = 0.0, kappa_s = 0.0;
    if (o.kind == "affine") {
      const auto s = oracle_affine2(m, t[i]);
      kappa = s.kappa, kappa_s = s.kappa_s;
    } else {
      const auto s = oracle_euclid2(m, t[i]);
      kappa = s.kappa, kappa_s = s.kappa_s;
    }
    os << i << ',' << format_double(t[i]) << ',' << format_double(kappa) << ','
       << format_double(kappa_s) << '\n';
    series.xy.emplace_back(kappa, kappa_s);
  }
  if (o.plot) {
    detail::write_plot(detail::plot_path(o, ""),
                       {o.kind == "affine" ? "Exact equi-affine signature" : "Exact signature",
                        "kappa", "kappa_s", {series}});
  }
  return kOk;
}

/// Parses argv and runs one subcommand. Exit codes: 0 success, 2 usage or
/// input parse error, 3 geometric degeneracy, 4 oracle/domain error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerically invariant signature curves of sampled planar and space curves"};
  app.require_subcommand(1);
  Options o;

  auto* e2 = app.add_subcommand("sig2d-euclid", "planar Euclidean signature (kappa, kappa_s)");
  detail::add_source_flags(*e2, o, true);
  e2->add_option("--variant", o.variant, "kappa_s stencil s1..s5 (default s5)");

  auto* a2 = app.add_subcommand("sig2d-affine", "planar equi-affine signature");
  detail::add_source_flags(*a2, o, true);
  a2->add_option("--variant", o.variant, "old | new (default new)");
  a2->add_option("--rule", o.rule, "affine segment length: four | forward | backward");

  auto* s3 = app.add_subcommand("sig3d", "space-curve signature (kappa, kappa_s, tau, tau_s)");
  detail::add_source_flags(*s3, o, true);
  s3->add_option("--variant", o.variant, "kappa_s stencil s3..s5 (default s5)");
  s3->add_option("--tau", o.tau, "torsion estimator t1 | t2");

  auto* cv = app.add_subcommand("convergence", "error norms against the exact oracle over scales");
  detail::add_source_flags(*cv, o, false);
  cv->add_option("--scales", o.scales, "decreasing partition steps")->delimiter(',');
  cv->add_option("--quantity", o.quantity, "kappa | kappa_s | tau | tau_s");
  cv->add_option("--estimator", o.estimator, "euclid2 | affine2 | euclid3 (default from curve)");
  cv->add_option("--variant", o.variant, "s1..s5 or old | new");
  cv->add_option("--tau", o.tau, "torsion estimator t1 | t2");
  cv->add_option("--rule", o.rule, "affine segment length: four | forward | backward");
  cv->add_option("--residual", o.residual,
                 "fit a printed expansion remainder: EUCLID2_K EUCLID3_K AFFINE_K TAU1 TAU2 "
                 "TAU2_CORRECTED");
  cv->add_option("--core", o.core, "parameter interval lo,hi for the error norms")
      ->delimiter(',')
      ->expected(2);

  auto* orc = app.add_subcommand("oracle", "exact signature of a builtin curve");
  detail::add_source_flags(*orc, o, false);
  orc->add_option("--kind", o.kind, "planar curves: euclid | affine");

  for (auto* sub : {e2, a2, s3, cv, orc}) {
    sub->add_option("--out", o.out, "output CSV path (default stdout)");
    sub->add_flag("--plot", o.plot, "also write SVG plot(s) next to --out");
  }

  std::string config;
  for (auto* sub : {e2, a2, s3, cv, orc}) {
    sub->add_option("--config", config, "key=value file of further flags");
  }

  try {
    auto args = detail::expand_config(std::vector<std::string>(argv, argv + argc));
    std::vector<const char*> expanded;
    for (const auto& a : args) expanded.push_back(a.c_str());
    app.parse(static_cast<int>(expanded.size()), expanded.data());
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SignatureError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (e2->parsed()) return cmd_sig2d_euclid(o, out);
    if (a2->parsed()) return cmd_sig2d_affine(o, out, err);
    if (s3->parsed()) return cmd_sig3d(o, out);
    if (cv->parsed()) return cmd_convergence(o, out);
    if (orc->parsed()) return cmd_oracle(o, out);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SignatureError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace sigcurve::cli
