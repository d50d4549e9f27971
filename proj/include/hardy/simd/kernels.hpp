#pragma once

// Data-parallel inner loops shared by the modulus solver and the
// walk-on-spheres distance oracle. Every kernel has a scalar reference
// implementation; wider variants are selected at runtime and must agree
// with it (bit-exactly for the element-wise kernels, to rounding for the
// reductions).

#include <cstddef>
#include <string_view>

namespace hardy::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// One row of a variable-coefficient 5-point operator
///   y[i] = diag[i]*x[i] - we[i]*x[i+1] - ww[i]*x[i-1] - wn[i]*xn[i] - ws[i]*xs[i].
/// `x` must be readable at x[-1] and x[n].
struct StencilRow {
  const double* x;
  const double* xn;
  const double* xs;
  const double* diag;
  const double* we;
  const double* ww;
  const double* wn;
  const double* ws;
  double* y;
  std::size_t n;
};

/// Structure-of-arrays segment set. A ray is a segment with tmax = +inf.
/// Arrays are padded to a multiple of `kSegmentLanes` with far-away dummies.
struct SegmentSoA {
  const double* ax;
  const double* ay;
  const double* dx;
  const double* dy;
  const double* inv_len2;
  const double* tmax;
  std::size_t count;   // padded count
};

inline constexpr std::size_t kSegmentLanes = 4;

struct Nearest {
  double dist2;
  std::size_t index;
};

struct Kernels {
  Isa isa;
  void (*stencil_row)(const StencilRow& row);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y += a*x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// y = x + b*y
  void (*xpby)(const double* x, double b, double* y, std::size_t n);
  /// out = a .* b
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t n);
  /// Squared distance from (px,py) to the nearest segment; ties go to the lowest index.
  Nearest (*nearest_segment)(const SegmentSoA& segs, double px, double py);
};

const Kernels& scalar_kernels();
bool isa_available(Isa isa);
/// Throws std::runtime_error when the ISA is not compiled in or not supported by the CPU.
const Kernels& kernels_for(Isa isa);

/// Active kernel table. Defaults to the widest supported ISA unless the
/// environment variable HARDY_SIMD=scalar is set.
const Kernels& kernels();
void force_isa(Isa isa);

}  // namespace hardy::simd
