#include <random>
#include <vector>

#include "doctest.h"
#include "hardy/simd/kernels.hpp"

using namespace hardy::simd;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels compute the reference stencil") {
  // 1D row with unit weights: y = 4x - neighbours.
  std::vector<double> x{0.0, 1.0, 2.0, 3.0, 0.0};
  std::vector<double> xn{1.0, 1.0, 1.0}, xs{0.0, 0.0, 0.0};
  std::vector<double> diag(3, 4.0), w(3, 1.0), y(3);
  StencilRow row{x.data() + 1, xn.data(), xs.data(), diag.data(), w.data(), w.data(), w.data(), w.data(), y.data(), 3};
  scalar_kernels().stencil_row(row);
  CHECK(y[0] == doctest::Approx(4.0 - 2.0 - 0.0 - 1.0));
  CHECK(y[1] == doctest::Approx(8.0 - 3.0 - 1.0 - 1.0));
  CHECK(y[2] == doctest::Approx(12.0 - 0.0 - 2.0 - 1.0));
}

TEST_CASE("nearest segment ties resolve to the lowest index") {
  // Two identical segments at distance 1.
  std::vector<double> ax{0, 0, 1e150, 1e150}, ay{1, 1, 1e150, 1e150}, dx{1, 1, 1, 1}, dy{0, 0, 0, 0};
  std::vector<double> inv{1, 1, 1, 1}, tmax{1, 1, 0, 0};
  SegmentSoA s{ax.data(), ay.data(), dx.data(), dy.data(), inv.data(), tmax.data(), 4};
  const auto hit = scalar_kernels().nearest_segment(s, 0.5, 0.0);
  CHECK(hit.dist2 == doctest::Approx(1.0));
  CHECK(hit.index == 0);
}

TEST_CASE("vector kernels agree bit-exactly with the scalar reference") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  const Kernels& ref = scalar_kernels();
  const Kernels& vec = kernels_for(Isa::avx2);
  std::mt19937_64 rng(20261019);
  for (std::size_t n : {1u, 3u, 4u, 7u, 64u, 1001u}) {
    auto x = random_vec(rng, n + 2);
    auto xn = random_vec(rng, n), xs = random_vec(rng, n);
    auto d = random_vec(rng, n, 0.0, 4.0), we = random_vec(rng, n, 0.0, 1.0), ww = random_vec(rng, n, 0.0, 1.0);
    auto wn = random_vec(rng, n, 0.0, 1.0), ws = random_vec(rng, n, 0.0, 1.0);
    std::vector<double> y1(n), y2(n);
    StencilRow r1{x.data() + 1, xn.data(), xs.data(), d.data(), we.data(), ww.data(), wn.data(), ws.data(), y1.data(), n};
    StencilRow r2 = r1;
    r2.y = y2.data();
    ref.stencil_row(r1);
    vec.stencil_row(r2);
    CHECK(y1 == y2);

    auto a = random_vec(rng, n), b = random_vec(rng, n);
    CHECK(ref.dot(a.data(), b.data(), n) == vec.dot(a.data(), b.data(), n));

    auto c1 = b, c2 = b;
    ref.axpy(0.37, a.data(), c1.data(), n);
    vec.axpy(0.37, a.data(), c2.data(), n);
    CHECK(c1 == c2);
    ref.xpby(a.data(), -1.3, c1.data(), n);
    vec.xpby(a.data(), -1.3, c2.data(), n);
    CHECK(c1 == c2);
    ref.hadamard(a.data(), b.data(), c1.data(), n);
    vec.hadamard(a.data(), b.data(), c2.data(), n);
    CHECK(c1 == c2);
  }

  // Segment sets mixing rays (tmax = inf) and finite segments.
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t count = 4 * (1 + trial % 9);
    auto ax = random_vec(rng, count, -5, 5), ay = random_vec(rng, count, -5, 5);
    auto dx = random_vec(rng, count, -2, 2), dy = random_vec(rng, count, -2, 2);
    std::vector<double> inv(count), tmax(count);
    for (std::size_t i = 0; i < count; ++i) {
      inv[i] = 1.0 / (dx[i] * dx[i] + dy[i] * dy[i]);
      tmax[i] = (i % 3 == 0) ? std::numeric_limits<double>::infinity() : 1.0;
    }
    SegmentSoA s{ax.data(), ay.data(), dx.data(), dy.data(), inv.data(), tmax.data(), count};
    auto p = random_vec(rng, 2, -6, 6);
    const auto h1 = ref.nearest_segment(s, p[0], p[1]);
    const auto h2 = vec.nearest_segment(s, p[0], p[1]);
    CHECK(h1.dist2 == h2.dist2);
    CHECK(h1.index == h2.index);
  }
}

TEST_CASE("forcing the scalar ISA switches the active table") {
  const Isa before = kernels().isa;
  force_isa(Isa::scalar);
  CHECK(kernels().isa == Isa::scalar);
  force_isa(before);
  CHECK(kernels().isa == before);
}
