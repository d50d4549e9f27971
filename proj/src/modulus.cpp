#include "hardy/modulus.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>

#include "hardy/simd/kernels.hpp"

namespace hardy {

std::vector<double> TensorGrid::uniform(double a, double b, std::size_t n) {
  if (n < 2) throw SolverError("grid needs at least two nodes per axis");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = b;
  return v;
}

std::vector<double> TensorGrid::graded(double a, double b, double h0, double growth, double h_max, bool fine_at_b) {
  if (!(b > a) || !(h0 > 0.0) || !(growth >= 1.0) || !(h_max >= h0)) throw SolverError("bad graded grid spec");
  std::vector<double> steps;
  double len = b - a;
  double h = h0;
  double used = 0.0;
  while (used + h < len) {
    steps.push_back(h);
    used += h;
    h = std::min(h * growth, h_max);
  }
  if (steps.empty()) return {a, b};
  // Spread the remainder over all steps so the last one is not a sliver.
  const double scale = len / (used + (len - used > 0.5 * steps.back() ? h : 0.0));
  if (len - used > 0.5 * steps.back()) steps.push_back(h);
  for (auto& s : steps) s *= scale;
  std::vector<double> v{0.0};
  for (double s : steps) v.push_back(v.back() + s);
  for (auto& x : v) x = fine_at_b ? b - x : a + x;
  if (fine_at_b) std::reverse(v.begin(), v.end());
  v.front() = a;
  v.back() = b;
  return v;
}

namespace {

constexpr std::size_t kDirectLimit = 400000;

struct Conn {
  std::size_t node;
  double weight;
  double value;
};

struct Link {
  std::size_t a;
  std::size_t b;
  double weight;
};

double dual_width(const std::vector<double>& c, std::size_t i, bool periodic, double period) {
  const std::size_t n = c.size();
  double lo;
  double hi;
  if (periodic) {
    lo = (i == 0) ? c[0] - (c[n - 1] - period) : c[i] - c[i - 1];
    hi = (i + 1 == n) ? (c[0] + period) - c[n - 1] : c[i + 1] - c[i];
  } else {
    lo = (i == 0) ? 0.0 : c[i] - c[i - 1];
    hi = (i + 1 == n) ? 0.0 : c[i + 1] - c[i];
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ModulusResult extremal_distance(const ModulusProblem& p, const SolveOptions& opt) {
  const auto& g = p.grid;
  const ModulusGeometry& geo = *p.geometry;
  const std::size_t nx = g.x.size();
  const std::size_t ny = g.y.size();
  if (nx < 2 || ny < 2) throw SolverError("grid needs at least two nodes per axis");
  const std::size_t n = nx * ny;
  auto id = [nx](std::size_t i, std::size_t j) { return j * nx + i; };

  std::vector<NodeClass> cls(n);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) cls[id(i, j)] = geo.classify({g.x[i], g.y[j]});
  }

  // Per free node: diagonal, off-diagonal weights and right-hand side.
  std::vector<double> diag(n, 0.0), we(n, 0.0), ww(n, 0.0), wn(n, 0.0), ws(n, 0.0), rhs(n, 0.0);
  std::vector<Conn> conns;
  std::vector<Link> links;
  double dvals_min = std::numeric_limits<double>::infinity();
  double dvals_max = -std::numeric_limits<double>::infinity();

  auto half_edge = [&](std::size_t i, std::size_t j, int dir) {
    // dir: 0 east, 1 west, 2 north, 3 south
    const std::size_t a = id(i, j);
    std::size_t bi = i;
    std::size_t bj = j;
    Point pa{g.x[i], g.y[j]};
    Point pb = pa;
    double len;
    double dual;
    Point dual_mid;
    Point dual_dir;
    if (dir <= 1) {
      if (dir == 0 && i + 1 >= nx) return;
      if (dir == 1 && i == 0) return;
      bi = dir == 0 ? i + 1 : i - 1;
      pb = {g.x[bi], g.y[j]};
      len = std::abs(pb.x - pa.x);
      dual = dual_width(g.y, j, g.periodic_y, g.period);
      dual_mid = {0.5 * (pa.x + pb.x), g.y[j]};
      dual_dir = {0.0, 1.0};
    } else {
      bool wrap = false;
      if (dir == 2) {
        if (j + 1 >= ny) {
          if (!g.periodic_y) return;
          bj = 0;
          wrap = true;
        } else {
          bj = j + 1;
        }
      } else {
        if (j == 0) {
          if (!g.periodic_y) return;
          bj = ny - 1;
          wrap = true;
        } else {
          bj = j - 1;
        }
      }
      double yb = g.y[bj];
      if (wrap) yb += dir == 2 ? g.period : -g.period;
      pb = {g.x[i], yb};
      len = std::abs(pb.y - pa.y);
      dual = dual_width(g.x, i, false, 0.0);
      dual_mid = {g.x[i], 0.5 * (pa.y + pb.y)};
      dual_dir = {1.0, 0.0};
    }
    const std::size_t b = id(bi, bj);
    const Cut c = geo.cut(pa, pb);
    const NodeClass& cb = cls[b];
    const bool interior = c.kind == Cut::none && cb.kind == NodeClass::free && cls[a].kind == NodeClass::free;
    double frac = 1.0;
    if (!interior) {
      // Share of the dual face inside the region, sampled at 8 points. A cut
      // edge uses the face halfway to the cut.
      if (c.kind != Cut::none) dual_mid = pa + (0.5 * c.t) * (pb - pa);
      int in = 0;
      for (int k = 0; k < 8; ++k) {
        const double s = (k + 0.5) / 8.0 - 0.5;
        if (geo.inside(dual_mid + (s * dual) * dual_dir)) ++in;
      }
      frac = in / 8.0;
      if (in == 0) frac = 1.0 / 16.0;
    }
    const double w = dual * frac / len;
    if (c.kind == Cut::neumann) return;
    if (c.kind == Cut::dirichlet) {
      const double t = std::max(c.t, 1e-2);
      diag[a] += w / t;
      rhs[a] += w / t * c.value;
      conns.push_back({a, w / t, c.value});
      dvals_min = std::min(dvals_min, c.value);
      dvals_max = std::max(dvals_max, c.value);
      return;
    }
    switch (cb.kind) {
      case NodeClass::outside:
        return;
      case NodeClass::dirichlet:
        diag[a] += w;
        rhs[a] += w * cb.value;
        conns.push_back({a, w, cb.value});
        dvals_min = std::min(dvals_min, cb.value);
        dvals_max = std::max(dvals_max, cb.value);
        return;
      case NodeClass::free:
        diag[a] += w;
        (dir == 0 ? we : dir == 1 ? ww : dir == 2 ? wn : ws)[a] = w;
        if (dir == 0 || dir == 2) links.push_back({a, b, w});
        return;
    }
  };

  std::size_t n_free = 0;
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      if (cls[id(i, j)].kind != NodeClass::free) continue;
      ++n_free;
      for (int dir = 0; dir < 4; ++dir) half_edge(i, j, dir);
    }
  }
  if (n_free == 0) throw SolverError("modulus problem has no free nodes");
  if (!(dvals_max > dvals_min)) throw SolverError("modulus problem needs Dirichlet data on both E and F");

  // Every free node must see Dirichlet data, or the system is singular.
  {
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> q;
    for (const auto& c : conns) {
      if (!seen[c.node]) {
        seen[c.node] = 1;
        q.push_back(c.node);
      }
    }
    std::vector<std::size_t> start(n + 1, 0);
    for (const auto& l : links) {
      ++start[l.a + 1];
      ++start[l.b + 1];
    }
    for (std::size_t k = 0; k < n; ++k) start[k + 1] += start[k];
    std::vector<std::size_t> nb(start.back());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& l : links) {
      nb[fill[l.a]++] = l.b;
      nb[fill[l.b]++] = l.a;
    }
    std::size_t reached = q.size();
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t k = start[u]; k < start[u + 1]; ++k) {
        if (!seen[nb[k]]) {
          seen[nb[k]] = 1;
          ++reached;
          q.push_back(nb[k]);
        }
      }
    }
    if (reached != n_free) throw SolverError("modulus problem mask is disconnected from its Dirichlet data");
  }

  ModulusResult res;
  res.u.assign(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    if (cls[a].kind == NodeClass::dirichlet) res.u[a] = cls[a].value;
  }
  const bool direct = opt.method == SolveMethod::direct ||
                      (opt.method == SolveMethod::automatic && n_free <= kDirectLimit);
  if (direct) {
    // Sparse LDL^T with a fill-reducing ordering.
    std::vector<std::int64_t> col(n, -1);
    std::int64_t m = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (cls[a].kind == NodeClass::free) col[a] = m++;
    }
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n_free + 2 * links.size());
    Eigen::VectorXd bvec(m);
    for (std::size_t a = 0; a < n; ++a) {
      if (col[a] < 0) continue;
      trip.emplace_back(col[a], col[a], diag[a]);
      bvec[col[a]] = rhs[a];
    }
    for (const auto& l : links) {
      trip.emplace_back(col[l.a], col[l.b], -l.weight);
      trip.emplace_back(col[l.b], col[l.a], -l.weight);
    }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success) throw SolverError("modulus system factorisation failed");
    const Eigen::VectorXd x = ldlt.solve(bvec);
    const double bn = bvec.norm();
    const double rn = (A * x - bvec).norm();
    for (std::size_t a = 0; a < n; ++a) {
      if (col[a] >= 0) res.u[a] = x[col[a]];
    }
    res.residual = bn > 0.0 ? rn / bn : rn;
  } else {
    // Padded layout: rows of nx + 2 with zero ghost columns.
    const std::size_t stride = nx + 2;
    const std::size_t total = stride * ny;
    auto pad = [&](std::size_t i, std::size_t j) { return j * stride + i + 1; };
    std::vector<double> D(total, 0.0), WE(total, 0.0), WW(total, 0.0), WN(total, 0.0), WS(total, 0.0);
    std::vector<double> B(total, 0.0), X(total, 0.0), Minv(total, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t a = id(i, j);
        const std::size_t q = pad(i, j);
        if (cls[a].kind != NodeClass::free) {
          D[q] = 1.0;
          continue;
        }
        D[q] = diag[a];
        WE[q] = we[a];
        WW[q] = ww[a];
        WN[q] = wn[a];
        WS[q] = ws[a];
        B[q] = rhs[a];
        Minv[q] = 1.0 / diag[a];
        if (opt.warm_start && opt.warm_start->size() == n) X[q] = (*opt.warm_start)[a];
      }
    }

    const auto& K = simd::kernels();
    std::vector<double> zero(stride, 0.0);
    auto matvec = [&](const std::vector<double>& in, std::vector<double>& out) {
      for (std::size_t j = 0; j < ny; ++j) {
        const double* north;
        const double* south;
        if (j + 1 < ny) north = in.data() + (j + 1) * stride + 1;
        else north = g.periodic_y ? in.data() + 1 : zero.data() + 1;
        if (j > 0) south = in.data() + (j - 1) * stride + 1;
        else south = g.periodic_y ? in.data() + (ny - 1) * stride + 1 : zero.data() + 1;
        const std::size_t o = j * stride + 1;
        simd::StencilRow row{in.data() + o, north, south, D.data() + o, WE.data() + o, WW.data() + o,
                             WN.data() + o, WS.data() + o, out.data() + o, nx};
        K.stencil_row(row);
      }
    };

    // Non-free nodes have D = 1 and zero data, so they stay at zero.
    std::vector<double> R(total, 0.0), Z(total, 0.0), P(total, 0.0), Q(total, 0.0);
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        if (cls[id(i, j)].kind != NodeClass::free) X[pad(i, j)] = 0.0;
      }
    }
    matvec(X, Q);
    for (std::size_t k = 0; k < total; ++k) R[k] = (Minv[k] != 0.0) ? B[k] - Q[k] : 0.0;
    const double bnorm = std::sqrt(K.dot(B.data(), B.data(), total));
    K.hadamard(Minv.data(), R.data(), Z.data(), total);
    P = Z;
    double rz = K.dot(R.data(), Z.data(), total);
    double rnorm = std::sqrt(K.dot(R.data(), R.data(), total));
    int it = 0;
    while (rnorm > opt.tol * bnorm && it < opt.max_iter) {
      matvec(P, Q);
      const double alpha = rz / K.dot(P.data(), Q.data(), total);
      K.axpy(alpha, P.data(), X.data(), total);
      K.axpy(-alpha, Q.data(), R.data(), total);
      K.hadamard(Minv.data(), R.data(), Z.data(), total);
      const double rz_new = K.dot(R.data(), Z.data(), total);
      K.xpby(Z.data(), rz_new / rz, P.data(), total);
      rz = rz_new;
      rnorm = std::sqrt(K.dot(R.data(), R.data(), total));
      ++it;
    }
    if (rnorm > opt.tol * bnorm) throw SolverError("modulus solver did not converge within the iteration cap");
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        if (cls[id(i, j)].kind == NodeClass::free) res.u[id(i, j)] = X[pad(i, j)];
      }
    }
    res.iterations = it;
    res.residual = bnorm > 0.0 ? rnorm / bnorm : rnorm;
  }

  double energy = 0.0;
  for (const auto& l : links) {
    const double du = res.u[l.a] - res.u[l.b];
    energy += l.weight * du * du;
  }
  for (const auto& c : conns) {
    const double du = res.u[c.node] - c.value;
    energy += c.weight * du * du;
  }
  energy *= p.energy_scale;
  const double span = dvals_max - dvals_min;
  double wsum = 0.0;
  for (const auto& c : conns) wsum += c.weight;
  if (!(energy > 1e-12 * wsum * span * span)) throw SolverError("E and F are not joined inside the region");
  res.energy = energy;
  res.extremal_distance = span * span / energy;
  return res;
}

}  // namespace hardy
