// Command-line front end: tables, analyze, counterexample, plot, validate.
// Exit codes: analyze 0/1/2 = member/non-member/undecided; counterexample and
// validate 0 = pass, 1 = fail; 64 = bad usage or spec; 70 = runtime failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hardy/domain_spec.hpp"
#include "hardy/hardy.hpp"

using namespace hardy;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitFailure = 70;

struct RunConfig {
  std::string spec;
  std::string out = ".";
  std::string tables;
  double p = 1.0;
  double alpha = -1.0;
  double r0 = 0.0;  // 0: pick from the base point
  double q = std::pow(10.0, 0.25);
  int nr = 16;
  long samples = 100000;
  std::uint64_t seed = 1;
  double grid_h = 1.0 / 64;
  double table_grid_h = 1.0 / 256;
  int table_nodes = 64;
  std::string estimator = "omega_star";
  bool delta_full = false;
  // counterexample
  double c = 2.0;
  int levels = 3;
  double comb_r_max = 1e4;
  double threshold = 5.0;
  // plot / validate
  std::string profile;
};

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CanonicalTables obtain_tables(const RunConfig& cfg, bool verbose) {
  const std::string path = cfg.tables.empty() ? (fs::path(cfg.out) / "canonical_tables.csv").string() : cfg.tables;
  if (fs::exists(path)) {
    try {
      auto t = read_tables_csv(path);
      if (t.theta.size() == static_cast<std::size_t>(cfg.table_nodes) && t.grid_h == cfg.table_grid_h) {
        if (verbose) std::cerr << "using cached tables " << path << "\n";
        return t;
      }
      if (verbose) std::cerr << "cached tables " << path << " have other parameters, rebuilding\n";
    } catch (const std::exception& e) {
      if (verbose) std::cerr << "rebuilding tables: " << e.what() << "\n";
    }
  }
  auto t = build_canonical_tables(default_theta_grid(cfg.table_nodes), cfg.table_grid_h);
  fs::create_directories(fs::path(path).parent_path().empty() ? fs::path(".") : fs::path(path).parent_path());
  write_tables_csv(t, path);
  if (verbose) std::cerr << "wrote " << path << "\n";
  return t;
}

ProfileConfig profile_config(const RunConfig& cfg) {
  ProfileConfig pc;
  pc.wos.n_samples = cfg.samples;
  pc.wos.rng_seed = cfg.seed;
  pc.grid_h = cfg.grid_h;
  pc.with_delta_full = cfg.delta_full;
  return pc;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string estimate_line(const HardyEstimate& h) {
  std::ostringstream s;
  s << tag_name(h.tag) << ": h_est=" << h.h_est;
  if (h.tag == EstimatorTag::d_bracket) s << " interval=[" << h.h_low << ", " << h.h_high << "]";
  s << " se=" << h.std_err << " tail=[" << h.tail_r_min << ", " << h.tail_r_max << "]";
  if (h.low_confidence) s << " low-confidence";
  if (!h.note.empty()) s << " (" << h.note << ")";
  return s.str();
}

int cmd_tables(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  const auto t = obtain_tables(cfg, true);
  std::cout << "canonical tables: " << t.theta.size() << " nodes, grid_h=" << t.grid_h << ", checksum "
            << std::hex << t.checksum() << std::dec << "\n";
  for (const auto& v : t.violations) std::cout << "violation: " << v << "\n";
  return t.violations.empty() ? 0 : 1;
}

int cmd_analyze(const RunConfig& cfg) {
  const Domain d = load_domain_spec(cfg.spec);
  fs::create_directories(cfg.out);
  const auto tables = obtain_tables(cfg, true);
  const double r0 = cfg.r0 > 0.0 ? cfg.r0 : 2.0 * std::max(1.0, d.base_point().norm());
  const auto grid = geometric_r_grid(d, r0, cfg.q, cfg.nr);
  const auto prof = profile(d, grid, tables, profile_config(cfg));
  write_profile_csv(prof, (fs::path(cfg.out) / "profile.csv").string());
  for (const auto& row : prof.rows) {
    if (!row.valid) std::cerr << "radius " << row.r << ": " << row.error << "\n";
  }

  const auto tag = parse_tag(cfg.estimator);
  const auto h = hardy_number_estimate(prof, tag);
  const auto dec = bergman_membership(h, cfg.p, cfg.alpha);
  const auto violations = validate_profile(prof);

  std::ostringstream csv;
  csv << "# schema: decision/1\n# seed: " << cfg.seed << "\n";
  csv << "estimator,h_est,h_low,h_high,std_err,p,alpha,ratio,margin,verdict,near_boundary,low_confidence\n";
  csv << tag_name(tag) << "," << fmt_double(h.h_est) << "," << fmt_double(h.h_low) << "," << fmt_double(h.h_high)
      << "," << fmt_double(h.std_err) << "," << fmt_double(cfg.p) << "," << fmt_double(cfg.alpha) << ","
      << fmt_double(dec.ratio) << "," << fmt_double(dec.margin) << "," << verdict_name(dec.verdict) << ","
      << dec.near_boundary << "," << h.low_confidence << "\n";
  write_text(fs::path(cfg.out) / "decision.csv", csv.str());

  std::ostringstream rep;
  rep << "domain: " << prof.domain_kind << ", base point (" << prof.base_point.x << ", " << prof.base_point.y
      << "), seed " << cfg.seed << "\n";
  rep << "radii: " << grid.front() << " .. " << grid.back() << " (" << grid.size() << "), window 6, tail half\n";
  for (auto t : {EstimatorTag::omega_star, EstimatorTag::delta_star, EstimatorTag::lambda_star,
                 EstimatorTag::omega_full, EstimatorTag::d_bracket}) {
    try {
      rep << "  " << estimate_line(hardy_number_estimate(prof, t)) << "\n";
    } catch (const AnalysisError& e) {
      rep << "  " << tag_name(t) << ": " << e.what() << "\n";
    }
  }
  if (cfg.delta_full) {
    try {
      const auto q = question_integral_classifier(prof, cfg.p, cfg.alpha);
      rep << "full level-set integral: " << integral_verdict_name(q.verdict) << " (beta=" << q.beta << ")\n";
    } catch (const AnalysisError& e) {
      rep << "full level-set integral: " << e.what() << "\n";
    }
  }
  rep << "p=" << cfg.p << " alpha=" << cfg.alpha << " p/(alpha+2)=" << dec.ratio << " margin=" << dec.margin
      << " -> " << verdict_name(dec.verdict) << (dec.near_boundary ? " (near boundary)" : "") << "\n";
  rep << "profile violations: " << violations.size() << "\n";
  for (const auto& v : violations) rep << "  r=" << v.r << " " << v.check << " by " << v.margin << "\n";
  write_text(fs::path(cfg.out) / "report.txt", rep.str());
  std::cout << rep.str();
  switch (dec.verdict) {
    case Verdict::member: return 0;
    case Verdict::non_member: return 1;
    case Verdict::undecided: return 2;
  }
  return 2;
}

int cmd_counterexample(const RunConfig& cfg) {
  if (cfg.levels < 1) throw CLI::ValidationError("--levels", "must be at least 1");
  fs::create_directories(cfg.out);
  const auto tables = obtain_tables(cfg, true);
  CounterexampleConfig cc;
  cc.profile = profile_config(cfg);
  cc.r0 = cfg.r0 > 0.0 ? cfg.r0 : 10.0;
  cc.q = cfg.q;
  cc.count = cfg.nr;
  cc.r_max = cfg.comb_r_max;
  cc.h_threshold = cfg.threshold;
  const auto rep = verify_counterexample(cfg.c, cfg.levels, cfg.p, cfg.alpha, tables, cc);
  write_profile_csv(rep.profile, (fs::path(cfg.out) / "counterexample_profile.csv").string());

  std::ostringstream s;
  s << "comb c=" << cfg.c << " levels=" << cfg.levels << " R_max=" << cfg.comb_r_max << " p=" << cfg.p
    << " alpha=" << cfg.alpha << " seed=" << cfg.seed << "\n";
  if (!rep.divergence_premise) s << "note: p < alpha/2 + 1, the log-bound route to divergence does not apply\n";
  s << "(a) delta_full <= log r / (2 pi) + " << cc.question.bound_tol << " on " << rep.bound_radii
    << " radii: " << (rep.bound_ok ? "pass" : "FAIL") << " (max excess " << rep.max_bound_excess << ")\n";
  s << "(b) " << estimate_line(rep.h_star) << " > " << cfg.threshold << ": " << (rep.h_ok ? "pass" : "FAIL") << "\n";
  s << "(c) integral " << integral_verdict_name(rep.question.verdict) << " (beta=" << rep.question.beta
    << "): " << (rep.diverges_ok ? "pass" : "FAIL") << "\n";
  s << "overall: " << (rep.passed() ? "pass" : "FAIL") << "\n";
  write_text(fs::path(cfg.out) / "counterexample.txt", s.str());
  std::cout << s.str();
  return rep.passed() ? 0 : 1;
}

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> pts;  // (log r, ordinate)
  bool infinite_tail = false;
};

int cmd_plot(const RunConfig& cfg) {
  const auto prof = read_profile_csv(cfg.profile);
  if (prof.rows.empty()) throw std::runtime_error("profile has no rows");
  std::vector<Series> series = {{"log 1/omega*", "#1f77b4", {}, false},
                                {"pi lambda*", "#d62728", {}, false},
                                {"pi delta*", "#2ca02c", {}, false},
                                {"log 1/omega_full", "#9467bd", {}, false}};
  for (const auto& row : prof.rows) {
    if (!row.valid) continue;
    const double x = std::log(row.r);
    const double ys[4] = {-std::log(row.omega_star.mean), kPi * row.lambda_star, kPi * row.delta_star,
                          -std::log(row.omega_full.mean)};
    for (int i = 0; i < 4; ++i) {
      if (std::isfinite(ys[i])) {
        series[i].pts.emplace_back(x, ys[i]);
      } else {
        series[i].infinite_tail = true;
      }
    }
  }
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& s : series) {
    for (auto [x, y] : s.pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x0 > x1) throw std::runtime_error("profile has no finite ordinates to plot");
  if (x1 - x0 < 1e-9) x1 = x0 + 1.0;
  if (y1 - y0 < 1e-9) y1 = y0 + 1.0;
  const double W = 720, H = 480, L = 70, R = 220, T = 30, B = 50;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream svg;
  char buf[256];
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n", L,
                T, W - L - R, H - T - B);
  svg << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"middle\">log r (%.3g .. %.3g)</text>\n",
                (L + W - R) / 2, H - 15, x0, x1);
  svg << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"15\" y=\"%g\" font-size=\"12\">%.3g</text>\n", py(y1) + 4, y1);
  svg << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"15\" y=\"%g\" font-size=\"12\">%.3g</text>\n", py(y0), y0);
  svg << buf;
  int legend = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (auto [x, y] : s.pts) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
      svg << buf;
    }
    svg << "\"/>\n";
    std::string label = s.name;
    if (s.pts.size() >= 2) {
      const auto& a = s.pts[s.pts.size() / 2];
      const auto& b = s.pts.back();
      if (b.first > a.first) {
        std::snprintf(buf, sizeof buf, " slope %.3g", (b.second - a.second) / (b.first - a.first));
        label += buf;
      }
    }
    if (s.infinite_tail) {
      label += " +inf beyond";
      if (!s.pts.empty()) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.2f\" y=\"%.2f\" font-size=\"14\" fill=\"%s\">&#8734;</text>\n",
                      px(s.pts.back().first) + 4, py(s.pts.back().second), s.color.c_str());
        svg << buf;
      }
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%d\" font-size=\"12\" fill=\"%s\">%s</text>\n", W - R + 10,
                  static_cast<int>(T + 16 + 18 * legend++), s.color.c_str(), label.c_str());
    svg << buf;
  }
  svg << "<!-- seed " << prof.seed << " -->\n</svg>\n";
  fs::path out = cfg.out;
  if (out.extension() != ".svg") {
    fs::create_directories(out);
    out /= "profile.svg";
  }
  write_text(out, svg.str());
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  const auto prof = read_profile_csv(cfg.profile);
  const auto v = validate_profile(prof);
  for (const auto& x : v) std::cout << "r=" << x.r << " " << x.check << " by " << x.margin << "\n";
  std::cout << v.size() << " violations over " << prof.rows.size() << " radii\n";
  return v.empty() ? 0 : 1;
}

void add_run_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--out", cfg.out, "Output directory");
  sub->add_option("--tables", cfg.tables, "Canonical table CSV (cached in --out by default)");
  sub->add_option("--table-grid-h", cfg.table_grid_h, "Grid step for building the tables")
      ->check(CLI::Range(1e-4, 0.5));
  sub->add_option("--table-nodes", cfg.table_nodes, "Theta nodes for building the tables")->check(CLI::Range(2, 4096));
}

void add_profile_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--p", cfg.p, "Integrability exponent p > 0")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", cfg.alpha, "Weight exponent alpha >= -1 (-1 is the Hardy space)")
      ->check(CLI::Range(-1.0, 1e6));
  sub->add_option("--r0", cfg.r0, "First radius of the geometric grid")->check(CLI::NonNegativeNumber);
  sub->add_option("--q", cfg.q, "Grid ratio q > 1")->check(CLI::Range(1.0 + 1e-9, 1e6));
  sub->add_option("--nr", cfg.nr, "Number of radii")->check(CLI::Range(1, 10000));
  sub->add_option("--samples", cfg.samples, "Walks per estimate")->check(CLI::Range(1L, 1000000000L));
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--grid-h", cfg.grid_h, "Relative resolution of grid operations")->check(CLI::Range(1e-4, 0.5));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hardy and Bergman numbers of planar domains from level-set geometry"};
  app.set_config("--config", "", "Optional TOML/INI config file; flags win");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* tables = app.add_subcommand("tables", "Build or verify the canonical Lambda/Delta tables");
  add_run_options(tables, cfg);

  auto* analyze = app.add_subcommand("analyze", "Profile a domain and decide weighted Bergman membership");
  analyze->add_option("--spec", cfg.spec, "Domain spec JSON")->required();
  add_run_options(analyze, cfg);
  add_profile_options(analyze, cfg);
  analyze->add_option("--estimator", cfg.estimator, "omega_star, delta_star, lambda_star, omega_full or d_bracket");
  analyze->add_flag("--delta-full", cfg.delta_full, "Also compute the reduced extremal distance of the level set");

  auto* counter = app.add_subcommand("counterexample", "Verify the comb counter-example");
  add_run_options(counter, cfg);
  add_profile_options(counter, cfg);
  counter->add_option("--c", cfg.c, "Level growth exponent")->check(CLI::PositiveNumber);
  counter->add_option("--levels", cfg.levels, "Number of slit levels");
  counter->add_option("--R-max", cfg.comb_r_max, "Comb truncation radius")->check(CLI::PositiveNumber);
  counter->add_option("--threshold", cfg.threshold, "h_est above this stands in for h = inf");

  auto* plot = app.add_subcommand("plot", "SVG of the profile ordinates against log r");
  plot->add_option("--profile", cfg.profile, "Profile CSV")->required();
  plot->add_option("--out", cfg.out, "Output SVG path or directory");

  auto* validate = app.add_subcommand("validate", "Check the structural invariants of a profile CSV");
  validate->add_option("--profile", cfg.profile, "Profile CSV")->required();

  // Defaults that depend on the subcommand.
  counter->preparse_callback([&](std::size_t) {
    cfg.q = 1.392;
    cfg.nr = 12;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*tables) return cmd_tables(cfg);
    if (*analyze) return cmd_analyze(cfg);
    if (*counter) return cmd_counterexample(cfg);
    if (*plot) return cmd_plot(cfg);
    if (*validate) return cmd_validate(cfg);
  } catch (const SpecError& e) {
    std::cerr << "error: bad domain spec: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
