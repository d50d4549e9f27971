#include "hardy/wos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace hardy {

namespace {

constexpr long kChunk = 4096;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t tag, std::uint64_t chunk) {
  return splitmix64(splitmix64(splitmix64(seed) ^ tag) + chunk);
}

enum class Step { jump, success, failure };

struct StepResult {
  Step kind;
  double radius;
};

// Runs one walk. Returns +1 success, 0 failure, -1 censored; x ends at the
// absorbing position.
template <class F>
int walk(Point& x, std::mt19937_64& rng, long max_steps, F&& step) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (long s = 0; s < max_steps; ++s) {
    const StepResult r = step(x);
    if (r.kind == Step::success) return 1;
    if (r.kind == Step::failure) return 0;
    const double a = angle(rng);
    x = x + Point{r.radius * std::cos(a), r.radius * std::sin(a)};
  }
  return -1;
}

struct Tally {
  long success = 0;
  long censored = 0;
};

// Runs starts.size() walks in fixed chunks; on_success sees every end point.
template <class F, class G>
Tally run_walks(const std::vector<Point>& starts, std::uint64_t seed, std::uint64_t tag, long max_steps, F&& step,
                G&& on_success) {
  Tally t;
  const long n = static_cast<long>(starts.size());
  for (long c0 = 0; c0 < n; c0 += kChunk) {
    std::mt19937_64 rng(mix(seed, tag, static_cast<std::uint64_t>(c0 / kChunk)));
    const long c1 = std::min(n, c0 + kChunk);
    for (long i = c0; i < c1; ++i) {
      Point x = starts[i];
      const int res = walk(x, rng, max_steps, step);
      if (res > 0) {
        ++t.success;
        on_success(x);
      } else if (res < 0) {
        ++t.censored;
      }
    }
  }
  return t;
}

std::uint64_t radius_tag(double r) { return std::bit_cast<std::uint64_t>(r) ^ 0xc3a5c85c97cb3127ULL; }

}  // namespace

MeasureEstimate harmonic_measure(const Domain& d, const std::optional<Crosscut>& extra, Point z,
                                 const AbsorptionTarget& target, const WosConfig& cfg) {
  if (!d.contains(z)) throw DomainError("walk start must lie inside the domain");
  if (!(cfg.eps_shell > 0.0) || cfg.n_samples < 1) throw DomainError("invalid walk-on-spheres configuration");
  std::optional<BoundaryPiece> arc;
  if (extra && !extra->closed) arc = CircularArc{{0.0, 0.0}, extra->radius, extra->angles};
  const double scale = std::max(z.norm(), d.distance_to_boundary(z));
  auto step = [&](Point x) -> StepResult {
    const auto near = d.nearest_piece(x);
    const double dc = arc ? distance_to_piece(*arc, x) : std::numeric_limits<double>::infinity();
    const double eps = cfg.eps_shell * std::max(x.norm(), scale);
    const double dist = std::min(near.distance, dc);
    if (dist < eps) {
      const Absorption a{dc <= near.distance, near.piece, x};
      return {target(a) ? Step::success : Step::failure, 0.0};
    }
    return {Step::jump, dist};
  };
  const std::vector<Point> starts(static_cast<std::size_t>(cfg.n_samples), z);
  const Tally t = run_walks(starts, cfg.rng_seed, 0, cfg.max_steps, step, [](Point) {});
  MeasureEstimate m;
  m.n_samples = cfg.n_samples;
  m.n_censored = t.censored;
  const double n = static_cast<double>(cfg.n_samples);
  m.mean = t.success / n;
  m.std_err = cfg.n_samples > 1 ? std::sqrt(m.mean * (1.0 - m.mean) / (n - 1.0)) : 0.0;
  return m;
}

RadialLadder::RadialLadder(const Domain& d, const WosConfig& cfg) : d_(d), cfg_(cfg) {
  if (!(cfg.eps_shell > 0.0) || cfg.n_samples < 1 || !(cfg.rung_ratio > 1.0)) {
    throw DomainError("invalid walk-on-spheres configuration");
  }
  const Point w0 = d.base_point();
  const double dist = d.distance_to_boundary(w0);
  scale_ = std::max(w0.norm(), dist);
  l0_ = std::max(w0.norm(), 0.5 * dist) * cfg.rung_ratio;
}

double RadialLadder::rung(std::size_t i) const { return l0_ * std::pow(cfg_.rung_ratio, static_cast<double>(i)); }

std::size_t RadialLadder::rungs_below(double r) const {
  // Stage i may step out to rung(i + 1); that must not cross the target circle.
  std::size_t m = 0;
  while (rung(m + 1) <= r) ++m;
  return m;
}

std::vector<Point> RadialLadder::starts(std::size_t level, std::uint64_t tag) const {
  const auto n = static_cast<std::size_t>(cfg_.n_samples);
  if (level == 0) return std::vector<Point>(n, d_.base_point());
  const auto& pool = stages_[level - 1].entries;
  if (pool.empty()) return {};
  std::mt19937_64 rng(mix(cfg_.rng_seed, tag, 0xfeedULL));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Point> out(n);
  for (auto& p : out) p = pool[pick(rng)];
  return out;
}

void RadialLadder::extend_to(std::size_t count) {
  while (stages_.size() < count) {
    const std::size_t i = stages_.size();
    const double target = rung(i);
    const double cap = rung(i + 1);
    Stage st;
    const auto from = starts(i, i + 1);
    if (!from.empty()) {
      auto step = [&](Point x) -> StepResult {
        const double n = x.norm();
        if (n >= target) return {Step::success, 0.0};
        const double dist = d_.distance_to_boundary(x);
        if (dist < cfg_.eps_shell * std::max(n, scale_)) return {Step::failure, 0.0};
        return {Step::jump, std::min(dist, cap - n)};
      };
      const Tally t = run_walks(from, cfg_.rng_seed, i + 1, cfg_.max_steps, step,
                                [&](Point x) { st.entries.push_back(x); });
      st.pass = static_cast<double>(t.success) / static_cast<double>(from.size());
      st.censored = t.censored;
    }
    stages_.push_back(std::move(st));
  }
}

MeasureEstimate RadialLadder::combine(std::size_t level, long successes, long censored) const {
  const double n = static_cast<double>(cfg_.n_samples);
  double prefix = 1.0;
  double rel_var = 0.0;
  long cens = censored;
  for (std::size_t i = 0; i < level; ++i) {
    const double p = stages_[i].pass;
    prefix *= p;
    cens += stages_[i].censored;
    if (p > 0.0) rel_var += (1.0 - p) / (n * p);
  }
  MeasureEstimate m;
  m.n_samples = cfg_.n_samples;
  m.n_censored = cens;
  const double pf = successes / n;
  m.mean = prefix * pf;
  if (pf > 0.0) {
    rel_var += (1.0 - pf) / (n * pf);
    m.std_err = m.mean * std::sqrt(rel_var);
  } else {
    m.std_err = prefix / n;
  }
  return m;
}

MeasureEstimate RadialLadder::full_measure(double r) {
  if (!(r > d_.base_point().norm())) throw DomainError("level radius must exceed |base point|");
  const std::size_t m = rungs_below(r);
  extend_to(m);
  const auto from = starts(m, m);
  if (from.empty()) return combine(m, 0, 0);
  auto step = [&](Point x) -> StepResult {
    const double n = x.norm();
    const double eps = cfg_.eps_shell * std::max(n, scale_);
    if (r - n < eps) return {Step::success, 0.0};
    const double dist = d_.distance_to_boundary(x);
    if (dist < eps) return {Step::failure, 0.0};
    return {Step::jump, std::min(dist, r - n)};
  };
  const Tally t = run_walks(from, cfg_.rng_seed, radius_tag(r), cfg_.max_steps, step, [](Point) {});
  return combine(m, t.success, t.censored);
}

MeasureEstimate RadialLadder::crosscut_measure(const Crosscut& c) {
  if (c.closed) return {1.0, 0.0, cfg_.n_samples, 0};
  const double r = c.radius;
  if (!(r > d_.base_point().norm())) throw DomainError("crosscut radius must exceed |base point|");
  const std::size_t m = rungs_below(r);
  extend_to(m);
  const auto from = starts(m, m);
  if (from.empty()) return combine(m, 0, 0);
  const BoundaryPiece arc = CircularArc{{0.0, 0.0}, r, c.angles};
  auto step = [&](Point x) -> StepResult {
    const double eps = cfg_.eps_shell * std::max(x.norm(), scale_);
    const double db = d_.distance_to_boundary(x);
    const double dc = distance_to_piece(arc, x);
    if (std::min(db, dc) < eps) return {dc <= db ? Step::success : Step::failure, 0.0};
    return {Step::jump, std::min(db, dc)};
  };
  const Tally t = run_walks(from, cfg_.rng_seed ^ static_cast<std::uint64_t>(c.id), radius_tag(r) + 1, cfg_.max_steps,
                            step, [](Point) {});
  return combine(m, t.success, t.censored);
}

ComponentMeasures RadialLadder::component_measures(const CrosscutDecomposition& dec) {
  ComponentMeasures out;
  out.radius = dec.radius;
  const std::size_t n = dec.crosscuts.size();
  out.per_crosscut.assign(n, MeasureEstimate{});
  out.pruned.assign(n, false);
  out.full = full_measure(dec.radius);
  if (n == 0) {
    out.star = {0.0, 0.0, cfg_.n_samples, 0};
    out.diagnostic = "empty level set";
    return out;
  }
  // Widest arcs first, so the running best is large early.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dec.crosscuts[a].angles.width > dec.crosscuts[b].angles.width;
  });
  const double gap = dec.radius - d_.base_point().norm();
  double best_low = -1.0;
  for (std::size_t k : order) {
    const Crosscut& c = dec.crosscuts[k];
    bool other_unbounded = false;
    for (const auto& o : dec.crosscuts) other_unbounded |= (o.id != c.id && o.far_side_unbounded);
    if (cfg_.prune && other_unbounded && best_low > 0.0) {
      const double bound = cfg_.prune_k * std::sqrt(c.length() / gap);
      if (bound < best_low) {
        out.pruned[k] = true;
        continue;
      }
    }
    const MeasureEstimate m = crosscut_measure(c);
    out.per_crosscut[k] = m;
    best_low = std::max(best_low, m.mean - 3.0 * m.std_err);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (out.pruned[k]) continue;
    if (out.star_index < 0 || out.per_crosscut[k].mean > out.star.mean) {
      out.star_index = static_cast<int>(k);
      out.star = out.per_crosscut[k];
    }
  }
  if (out.star_index < 0) {
    out.star = {0.0, 0.0, cfg_.n_samples, 0};
    out.diagnostic = "all crosscuts pruned";
  }
  return out;
}

ComponentMeasures component_measures(const Domain& d, const CrosscutDecomposition& dec, const WosConfig& cfg) {
  RadialLadder ladder(d, cfg);
  return ladder.component_measures(dec);
}

}  // namespace hardy
