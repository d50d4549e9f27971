#include "hardy/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hardy/crosscut.hpp"
#include "hardy/grid_graph.hpp"

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr const char* kProfileSchema = "profile/1";

std::vector<double> transition_radii(const Domain& d) {
  std::vector<double> t;
  for (const auto& piece : d.pieces()) {
    if (const auto* r = std::get_if<Ray>(&piece)) t.push_back(r->origin.norm());
    if (const auto* s = std::get_if<Segment>(&piece)) {
      t.push_back(s->a.norm());
      t.push_back(s->b.norm());
    }
  }
  return t;
}

double star_value(double omega, double (*fn)(double, const CanonicalTables&), const CanonicalTables& t) {
  if (!(omega > 0.0)) return kInf;
  return fn(std::min(omega, 1.0), t);
}

std::string join_flags(const RadiusRecord& row) {
  std::vector<std::string> f = row.flags;
  if (row.empty) f.emplace_back("empty");
  if (!row.valid) {
    std::string e = row.error;
    std::replace_if(e.begin(), e.end(), [](char c) { return c == ',' || c == ';' || c == '\n'; }, ' ');
    f.push_back("invalid:" + e);
  }
  if (row.bounded_far_sides > 0) f.push_back("bounded_far_sides=" + std::to_string(row.bounded_far_sides));
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? ";" : "") + f[i];
  return out;
}

}  // namespace

std::vector<double> geometric_r_grid(const Domain& d, double r0, double q, int count) {
  if (!(r0 > 0.0) || !(q > 1.0) || count < 1) throw DomainError("r grid needs r0 > 0, q > 1, count >= 1");
  const auto trans = transition_radii(d);
  std::vector<double> v;
  for (int j = 0; j < count; ++j) {
    double r = r0 * std::pow(q, j);
    for (double t : trans) {
      if (t > 0.0 && std::abs(r / t - 1.0) < 0.01) r = 1.02 * t;
    }
    v.push_back(r);
  }
  return v;
}

LevelSetProfile profile(const Domain& d, const std::vector<double>& r_grid, const CanonicalTables& tables,
                        const ProfileConfig& cfg) {
  if (r_grid.empty()) throw DomainError("empty r grid");
  for (std::size_t i = 1; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > r_grid[i - 1])) throw DomainError("r grid must be increasing");
  }
  const Point w0 = d.base_point();
  if (!(r_grid.front() > w0.norm())) throw DomainError("r grid must start beyond the base point");

  LevelSetProfile out;
  out.domain_kind = kind_name(d.kind());
  out.base_point = w0;
  out.seed = cfg.wos.rng_seed;

  GridGraph graph = GridGraph::build(d, w0, r_grid.front(), r_grid.back(), cfg.grid_h);
  check_resolution(d, graph);
  const QuasihyperbolicField field(d, w0, graph);
  RadialLadder ladder(d, cfg.wos);

  for (double r : r_grid) {
    RadiusRecord row;
    row.r = r;
    try {
      const auto dec = crosscut_decomposition(d, graph, r);
      row.n_crosscuts = static_cast<int>(dec.crosscuts.size());
      row.bounded_far_sides = dec.bounded_far_sides();
      if (dec.crosscuts.empty()) {
        row.empty = true;
        row.valid = true;
        row.omega_star = {0.0, 0.0, 0, 0};
        row.omega_full = {0.0, 0.0, 0, 0};
        row.lambda_star = kInf;
        row.delta_star = kInf;
        row.delta_full = kInf;
        row.k = MetricBracket::from_k(kInf);
        out.rows.push_back(row);
        continue;
      }
      for (const auto& c : dec.crosscuts) {
        if (c.closed) row.flags.emplace_back("closed");
      }
      const auto cm = ladder.component_measures(dec);
      row.omega_star = cm.star;
      row.omega_full = cm.full;
      row.pruned = static_cast<int>(std::count(cm.pruned.begin(), cm.pruned.end(), true));
      if (!cm.diagnostic.empty()) row.flags.push_back(cm.diagnostic);
      if (!cm.star.valid() || !cm.full.valid()) row.flags.emplace_back("censored");
      row.lambda_star = star_value(cm.star.mean, lambda_star, tables);
      row.delta_star = star_value(cm.star.mean, delta_star, tables);
      row.k = field.to_level(r);
      if (cfg.with_delta_full) {
        const auto red = reduced_extremal_distance_full(d, r, cfg.reduced);
        row.delta_full = red.delta;
        if (red.eps_warning) row.flags.emplace_back("eps_spread");
      }
      if (!(cm.star.mean > 0.0)) {
        row.error = "no walk reached the dominant crosscut";
      } else {
        row.valid = true;
      }
    } catch (const std::exception& e) {
      row.valid = false;
      row.error = e.what();
    }
    out.rows.push_back(row);
  }
  return out;
}

std::vector<Violation> validate_profile(const LevelSetProfile& p) {
  std::vector<Violation> v;
  auto sigma = [](const MeasureEstimate& a, const MeasureEstimate& b) {
    return std::sqrt(a.std_err * a.std_err + b.std_err * b.std_err);
  };
  const double tol = 1e-2;  // table interpolation
  const RadiusRecord* prev = nullptr;
  for (const auto& row : p.rows) {
    if (!row.valid) continue;
    const double r = row.r;
    const double ws = row.omega_star.mean;
    const double wf = row.omega_full.mean;
    const double s = sigma(row.omega_star, row.omega_full);
    if (ws > wf + 3.0 * s) v.push_back({r, "omega_star <= omega_full", ws - wf - 3.0 * s});
    if (row.bounded_far_sides > 1) v.push_back({r, "at most one bounded far side", row.bounded_far_sides - 1.0});
    if (!row.empty) {
      const double el = std::exp(-kPi * row.lambda_star);
      const double ed = std::exp(-kPi * row.delta_star);
      if (el < kPi / 8.0 * ws * (1 - tol)) v.push_back({r, "pi/8 omega_star <= exp(-pi lambda_star)", kPi / 8.0 * ws - el});
      if (el > ws * (1 + tol)) v.push_back({r, "exp(-pi lambda_star) <= omega_star", el - ws});
      if (ed < ws * (1 - tol)) v.push_back({r, "omega_star <= exp(-pi delta_star)", ws - ed});
      if (ed > kPi / 2.0 * ws * (1 + tol)) v.push_back({r, "exp(-pi delta_star) <= pi/2 omega_star", ed - kPi / 2.0 * ws});
      if (std::isfinite(row.k.d_high)) {
        const double bound = 2.0 / kPi * std::exp(-row.k.d_high);
        if (wf + 3.0 * row.omega_full.std_err < bound) {
          v.push_back({r, "omega_full >= 2/pi exp(-d_high)", bound - wf - 3.0 * row.omega_full.std_err});
        }
      }
    }
    if (prev) {
      const double sp = sigma(prev->omega_star, row.omega_star);
      if (ws > prev->omega_star.mean + 3.0 * sp) {
        v.push_back({r, "omega_star non-increasing", ws - prev->omega_star.mean - 3.0 * sp});
      }
      if (ws <= prev->omega_star.mean) {
        if (row.lambda_star < prev->lambda_star) v.push_back({r, "lambda_star ordered with omega_star", prev->lambda_star - row.lambda_star});
        if (row.delta_star < prev->delta_star) v.push_back({r, "delta_star ordered with omega_star", prev->delta_star - row.delta_star});
      }
    }
    prev = &row;
  }
  return v;
}

void write_profile_csv(const LevelSetProfile& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[512];
  out << "# schema: " << kProfileSchema << "\n# seed: " << p.seed << "\n# domain: " << p.domain_kind << "\n";
  std::snprintf(buf, sizeof buf, "# base_point: %.17g %.17g\n", p.base_point.x, p.base_point.y);
  out << buf;
  out << "r,omega_star_mean,omega_star_se,omega_full_mean,omega_full_se,lambda_star,delta_star,delta_full,k,d_low,"
         "d_high,n_crosscuts,pruned,flags\n";
  for (const auto& row : p.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,", row.r,
                  row.omega_star.mean, row.omega_star.std_err, row.omega_full.mean, row.omega_full.std_err,
                  row.lambda_star, row.delta_star, row.delta_full, row.k.k, row.k.d_low, row.k.d_high, row.n_crosscuts,
                  row.pruned);
    out << buf << join_flags(row) << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

LevelSetProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  LevelSetProfile p;
  std::string line, schema;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "schema:") hs >> schema;
      if (key == "seed:") hs >> p.seed;
      if (key == "domain:") hs >> p.domain_kind;
      if (key == "base_point:") hs >> p.base_point.x >> p.base_point.y;
      continue;
    }
    if (!header) {
      if (line.rfind("r,omega_star_mean,", 0) != 0) throw std::runtime_error(path + ": unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() == 13) cells.emplace_back();
    if (cells.size() != 14) throw std::runtime_error(path + ": row needs 14 columns");
    RadiusRecord rec;
    try {
      auto num = [&](int i) { return std::stod(cells[i]); };
      rec.r = num(0);
      rec.omega_star = {num(1), num(2), 0, 0};
      rec.omega_full = {num(3), num(4), 0, 0};
      rec.lambda_star = num(5);
      rec.delta_star = num(6);
      rec.delta_full = num(7);
      rec.k = {num(8), num(9), num(10)};
      rec.n_crosscuts = std::stoi(cells[11]);
      rec.pruned = std::stoi(cells[12]);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": bad number in row");
    }
    rec.valid = true;
    std::istringstream fs(cells[13]);
    std::string f;
    while (std::getline(fs, f, ';')) {
      if (f == "empty") {
        rec.empty = true;
      } else if (f.rfind("invalid:", 0) == 0) {
        rec.valid = false;
        rec.error = f.substr(8);
      } else if (f.rfind("bounded_far_sides=", 0) == 0) {
        rec.bounded_far_sides = std::stoi(f.substr(18));
      } else if (!f.empty()) {
        rec.flags.push_back(f);
      }
    }
    p.rows.push_back(rec);
  }
  if (schema != kProfileSchema) throw std::runtime_error(path + ": schema mismatch");
  return p;
}

}  // namespace hardy
