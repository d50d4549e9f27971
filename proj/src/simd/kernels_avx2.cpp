// Compiled with -mavx2. Only reached after a runtime CPU check.
#include "hardy/simd/kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

#include <limits>

namespace hardy::simd {
namespace {

void stencil_row(const StencilRow& r) {
  std::size_t i = 0;
  for (; i + 4 <= r.n; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(r.diag + i), _mm256_loadu_pd(r.x + i));
    acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(r.we + i), _mm256_loadu_pd(r.x + i + 1)));
    acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(r.ww + i), _mm256_loadu_pd(r.x + i - 1)));
    acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(r.wn + i), _mm256_loadu_pd(r.xn + i)));
    acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(r.ws + i), _mm256_loadu_pd(r.xs + i)));
    _mm256_storeu_pd(r.y + i, acc);
  }
  for (; i < r.n; ++i) {
    r.y[i] = r.diag[i] * r.x[i] - r.we[i] * r.x[i + 1] - r.ww[i] * r.x[i - 1] -
             r.wn[i] * r.xn[i] - r.ws[i] * r.xs[i];
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (s0+s2, s1+s3)
  double total = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i),
                                          _mm256_mul_pd(va, _mm256_loadu_pd(x + i))));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void xpby(const double* x, double b, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(x + i),
                                          _mm256_mul_pd(vb, _mm256_loadu_pd(y + i))));
  }
  for (; i < n; ++i) y[i] = x[i] + b * y[i];
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

Nearest nearest_segment(const SegmentSoA& s, double px, double py) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  const __m256d zero = _mm256_setzero_pd();
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  __m256d best_idx = _mm256_setzero_pd();
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d step = _mm256_set1_pd(4.0);
  for (std::size_t i = 0; i < s.count; i += kSegmentLanes) {
    const __m256d rx = _mm256_sub_pd(vpx, _mm256_loadu_pd(s.ax + i));
    const __m256d ry = _mm256_sub_pd(vpy, _mm256_loadu_pd(s.ay + i));
    const __m256d dx = _mm256_loadu_pd(s.dx + i);
    const __m256d dy = _mm256_loadu_pd(s.dy + i);
    __m256d t = _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(rx, dx), _mm256_mul_pd(ry, dy)),
                              _mm256_loadu_pd(s.inv_len2 + i));
    t = _mm256_min_pd(_mm256_max_pd(t, zero), _mm256_loadu_pd(s.tmax + i));
    const __m256d qx = _mm256_sub_pd(rx, _mm256_mul_pd(t, dx));
    const __m256d qy = _mm256_sub_pd(ry, _mm256_mul_pd(t, dy));
    const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(qx, qx), _mm256_mul_pd(qy, qy));
    // Strictly-less keeps the first (lowest-index) minimum in each lane.
    const __m256d lt = _mm256_cmp_pd(d2, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, d2, lt);
    best_idx = _mm256_blendv_pd(best_idx, idx, lt);
    idx = _mm256_add_pd(idx, step);
  }
  alignas(32) double b[4];
  alignas(32) double bi[4];
  _mm256_store_pd(b, best);
  _mm256_store_pd(bi, best_idx);
  Nearest out{b[0], static_cast<std::size_t>(bi[0])};
  for (int k = 1; k < 4; ++k) {
    const auto ik = static_cast<std::size_t>(bi[k]);
    if (b[k] < out.dist2 || (b[k] == out.dist2 && ik < out.index)) out = {b[k], ik};
  }
  return out;
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{Isa::avx2, stencil_row, dot, axpy, xpby, hadamard, nearest_segment};
  return &k;
}

}  // namespace hardy::simd

#else

namespace hardy::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace hardy::simd

#endif
