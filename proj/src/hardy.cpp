#include "hardy/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sample {
  double x;      // log r
  double y;      // ordinate
  double sigma;  // standard error of y
  double r;
};

struct Fit {
  std::vector<WindowSlope> windows;
  double min_slope = kInf;
  double min_se = 0.0;
  double tail_r_min = 0.0;
  double tail_r_max = 0.0;
  bool all_capped = false;
};

WindowSlope fit_window(const std::vector<Sample>& s, std::size_t first, std::size_t n) {
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = first; i < first + n; ++i) {
    xm += s[i].x;
    ym += s[i].y;
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0, noise = 0.0;
  for (std::size_t i = first; i < first + n; ++i) {
    const double dx = s[i].x - xm;
    sxx += dx * dx;
    sxy += dx * (s[i].y - ym);
    noise += dx * dx * s[i].sigma * s[i].sigma;
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = first; i < first + n; ++i) {
    const double e = s[i].y - ym - slope * (s[i].x - xm);
    ssr += e * e;
  }
  const double se_reg = n > 2 ? std::sqrt(ssr / static_cast<double>(n - 2) / sxx) : 0.0;
  const double se_noise = std::sqrt(noise) / sxx;
  return {s[first].r, s[first + n - 1].r, slope, std::max(se_reg, se_noise)};
}

Fit tail_fit(const std::vector<Sample>& s, const HardyOptions& opt) {
  Fit f;
  const std::size_t w = static_cast<std::size_t>(opt.window);
  if (s.size() < w) throw AnalysisError("too few finite ordinates for one window");
  const std::size_t nw = s.size() - w + 1;
  for (std::size_t i = 0; i < nw; ++i) f.windows.push_back(fit_window(s, i, w));
  const std::size_t tail = std::min(nw - 1, static_cast<std::size_t>(std::floor(nw * (1.0 - opt.tail_fraction))));
  f.tail_r_min = f.windows[tail].r_min;
  f.tail_r_max = f.windows.back().r_max;
  f.all_capped = true;
  for (std::size_t i = tail; i < nw; ++i) {
    const auto& win = f.windows[i];
    if (win.slope <= opt.slope_cap) f.all_capped = false;
    if (win.slope < f.min_slope) {
      f.min_slope = win.slope;
      f.min_se = win.std_err;
    }
  }
  return f;
}

bool non_monotone(const std::vector<Sample>& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double slack = 3.0 * std::hypot(s[i].sigma, s[i - 1].sigma) + 1e-9 * std::abs(s[i - 1].y);
    if (s[i].y < s[i - 1].y - slack) return true;
  }
  return false;
}

double margin_of(double se) { return std::max(0.1, 2.0 * se); }

}  // namespace

std::string tag_name(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::omega_star: return "omega_star";
    case EstimatorTag::delta_star: return "delta_star";
    case EstimatorTag::lambda_star: return "lambda_star";
    case EstimatorTag::omega_full: return "omega_full";
    case EstimatorTag::d_bracket: return "d_bracket";
  }
  return "unknown";
}

EstimatorTag parse_tag(const std::string& name) {
  for (auto t : {EstimatorTag::omega_star, EstimatorTag::delta_star, EstimatorTag::lambda_star,
                 EstimatorTag::omega_full, EstimatorTag::d_bracket}) {
    if (tag_name(t) == name) return t;
  }
  throw std::invalid_argument("unknown estimator " + name);
}

HardyEstimate hardy_number_estimate(const LevelSetProfile& p, EstimatorTag tag, const HardyOptions& opt) {
  if (opt.window < 3) throw std::invalid_argument("window needs at least 3 radii");
  HardyEstimate h;
  h.tag = tag;
  int valid = 0;
  bool emptied = false;
  std::vector<Sample> s;
  for (const auto& row : p.rows) {
    if (!row.valid) continue;
    ++valid;
    if (row.empty) {
      emptied = true;
      continue;
    }
    const auto& w = tag == EstimatorTag::omega_full ? row.omega_full : row.omega_star;
    const double sig = w.mean > 0.0 ? w.std_err / w.mean : 0.0;
    double y = 0.0;
    switch (tag) {
      case EstimatorTag::omega_star:
      case EstimatorTag::omega_full: y = -std::log(w.mean); break;
      case EstimatorTag::lambda_star: y = kPi * row.lambda_star; break;
      case EstimatorTag::delta_star: y = kPi * row.delta_star; break;
      case EstimatorTag::d_bracket: y = row.k.k; break;
    }
    if (!std::isfinite(y)) continue;
    s.push_back({std::log(row.r), y, tag == EstimatorTag::d_bracket ? 0.0 : sig, row.r});
  }
  if (valid < opt.min_radii) {
    throw AnalysisError("need at least " + std::to_string(opt.min_radii) + " valid radii, have " +
                        std::to_string(valid));
  }
  if (emptied) {
    h.h_est = h.h_low = h.h_high = kInf;
    h.half_width = margin_of(0.0);
    h.note = "level sets empty beyond some radius";
    return h;
  }
  const Fit f = tail_fit(s, opt);
  h.window_slopes = f.windows;
  h.tail_r_min = f.tail_r_min;
  h.tail_r_max = f.tail_r_max;
  h.std_err = f.min_se;
  h.half_width = margin_of(f.min_se);
  h.low_confidence = non_monotone(s);
  if (h.low_confidence) h.note = "ordinate decreases beyond 3 sigma";
  if (f.all_capped) {
    h.h_est = h.h_low = h.h_high = kInf;
    h.note = "every tail slope exceeds the cap";
    return h;
  }
  h.h_est = f.min_slope;
  h.h_low = h.h_high = f.min_slope;
  if (tag == EstimatorTag::d_bracket) {
    h.h_low = 0.5 * f.min_slope;
    h.h_high = 2.0 * f.min_slope;
  }
  return h;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::member: return "member";
    case Verdict::non_member: return "non-member";
    case Verdict::undecided: return "undecided";
  }
  return "unknown";
}

MembershipDecision bergman_membership(const HardyEstimate& h, double p, double alpha, std::optional<double> margin) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("p must be positive");
  if (!(alpha >= -1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be at least -1");
  if (std::isnan(h.h_est)) throw std::invalid_argument("Hardy estimate is not a number");
  MembershipDecision d;
  d.p = p;
  d.alpha = alpha;
  d.ratio = p / (alpha + 2.0);
  d.h_est = h.h_est;
  d.margin = margin.value_or(h.half_width);
  if (!(d.margin >= 0.0)) throw std::invalid_argument("margin must be non-negative");
  if (d.ratio < h.h_est - d.margin) {
    d.verdict = Verdict::member;
  } else if (d.ratio > h.h_est + d.margin) {
    d.verdict = Verdict::non_member;
  }
  d.near_boundary = std::abs(d.ratio - h.h_est) <= 2.0 * d.margin;
  return d;
}

std::string integral_verdict_name(IntegralVerdict v) {
  switch (v) {
    case IntegralVerdict::diverges: return "diverges";
    case IntegralVerdict::converges: return "converges";
    case IntegralVerdict::undecided: return "undecided";
  }
  return "unknown";
}

QuestionResult question_integral_classifier(const LevelSetProfile& prof, double p, double alpha,
                                            const QuestionOptions& opt) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  if (!(alpha >= -1.0)) throw std::invalid_argument("alpha must be at least -1");
  QuestionResult q;
  std::vector<Sample> s;
  bool emptied = false;
  q.max_bound_excess = -kInf;
  for (const auto& row : prof.rows) {
    if (!row.valid) continue;
    if (row.empty) {
      emptied = true;
      continue;
    }
    if (std::isnan(row.delta_full)) continue;
    s.push_back({std::log(row.r), kPi * row.delta_full, 0.0, row.r});
    q.max_bound_excess = std::max(q.max_bound_excess, row.delta_full - std::log(row.r) / kTwoPi);
  }
  q.radii_used = static_cast<int>(s.size());
  if (emptied) {
    // The integrand vanishes beyond the last nonempty level set.
    q.verdict = IntegralVerdict::converges;
    q.beta = q.beta_lower = q.beta_upper = kInf;
    return q;
  }
  if (q.radii_used < opt.fit.min_radii) {
    throw AnalysisError("delta_full is present on " + std::to_string(q.radii_used) + " radii, need " +
                        std::to_string(opt.fit.min_radii));
  }
  const Fit f = tail_fit(s, opt.fit);
  const double m = margin_of(f.min_se);
  q.beta = f.min_slope;
  q.beta_lower = f.min_slope - m;
  q.beta_upper = f.min_slope + m;
  q.log_bound_holds = q.max_bound_excess <= opt.bound_tol;
  const double a2 = alpha + 2.0;
  if ((q.log_bound_holds && p >= alpha / 2.0 + 1.0) || p >= a2 * q.beta_upper) {
    q.verdict = IntegralVerdict::diverges;
  } else if (p < a2 * q.beta_lower) {
    q.verdict = IntegralVerdict::converges;
  }
  return q;
}

Domain comb_domain(double c, int levels, double r_max) { return Domain::comb(c, levels, r_max, {0.0, 0.0}); }

CounterexampleReport verify_counterexample(double c, int levels, double p, double alpha, const CanonicalTables& tables,
                                           const CounterexampleConfig& cfg) {
  auto rep = verify_counterexample(comb_domain(c, levels, cfg.r_max), p, alpha, tables, cfg);
  rep.c = c;
  rep.levels = levels;
  return rep;
}

CounterexampleReport verify_counterexample(const Domain& d, double p, double alpha, const CanonicalTables& tables,
                                           const CounterexampleConfig& cfg) {
  CounterexampleReport rep;
  if (d.kind() == DomainKind::comb) {
    rep.c = d.comb_params().c;
    rep.levels = d.comb_params().levels;
  }
  rep.p = p;
  rep.alpha = alpha;
  rep.divergence_premise = p >= alpha / 2.0 + 1.0;
  ProfileConfig pc = cfg.profile;
  pc.with_delta_full = true;
  rep.profile = profile(d, geometric_r_grid(d, cfg.r0, cfg.q, cfg.count), tables, pc);

  rep.max_bound_excess = -kInf;
  for (const auto& row : rep.profile.rows) {
    if (!row.valid || row.empty || std::isnan(row.delta_full)) continue;
    ++rep.bound_radii;
    rep.max_bound_excess = std::max(rep.max_bound_excess, row.delta_full - std::log(row.r) / kTwoPi);
  }
  rep.bound_ok = rep.bound_radii >= 8 && rep.max_bound_excess <= cfg.question.bound_tol;

  rep.h_star = hardy_number_estimate(rep.profile, EstimatorTag::omega_star, cfg.question.fit);
  rep.h_ok = rep.h_star.h_est > cfg.h_threshold;

  rep.question = question_integral_classifier(rep.profile, p, alpha, cfg.question);
  rep.diverges_ok = rep.question.verdict == IntegralVerdict::diverges;
  return rep;
}

double starlike_hardy_oracle(const Domain& d, double r) {
  if (!d.starlike_about_origin()) throw DomainError("domain is not star-shaped about the origin");
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  double widest = 0.0;
  for (const auto& arc : d.circle_intersection(r)) widest = std::max(widest, arc.angles.width);
  if (!(widest > 0.0)) throw DomainError("circle misses the domain");
  return kPi / widest;
}

}  // namespace hardy
