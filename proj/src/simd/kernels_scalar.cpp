#include "hardy/simd/kernels.hpp"

#include <algorithm>
#include <limits>

namespace hardy::simd {
namespace {

void stencil_row(const StencilRow& r) {
  for (std::size_t i = 0; i < r.n; ++i) {
    r.y[i] = r.diag[i] * r.x[i] - r.we[i] * r.x[i + 1] - r.ww[i] * r.x[i - 1] -
             r.wn[i] * r.xn[i] - r.ws[i] * r.xs[i];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  // Four partial sums, matching the lane layout of the vector variants.
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int k = 0; k < 4; ++k) s[k] += a[i + k] * b[i + k];
  }
  double total = (s[0] + s[2]) + (s[1] + s[3]);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

Nearest nearest_segment(const SegmentSoA& s, double px, double py) {
  Nearest best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < s.count; ++i) {
    const double rx = px - s.ax[i];
    const double ry = py - s.ay[i];
    double t = (rx * s.dx[i] + ry * s.dy[i]) * s.inv_len2[i];
    t = std::min(std::max(t, 0.0), s.tmax[i]);
    const double qx = rx - t * s.dx[i];
    const double qy = ry - t * s.dy[i];
    const double d2 = qx * qx + qy * qy;
    if (d2 < best.dist2) best = {d2, i};
  }
  return best;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::scalar, stencil_row, dot, axpy, xpby, hadamard, nearest_segment};
  return k;
}

}  // namespace hardy::simd
