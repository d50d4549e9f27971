#include "hardy/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hardy::simd {

const Kernels* avx2_kernels();

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Kernels* pick_default() {
  const char* env = std::getenv("HARDY_SIMD");
  if (env != nullptr && std::string(env) == "scalar") return &scalar_kernels();
  if (isa_available(Isa::avx2)) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const Kernels*>& active() {
  static std::atomic<const Kernels*> k{pick_default()};
  return k;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return avx2_kernels() != nullptr && cpu_has_avx2();
  }
  return false;
}

const Kernels& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw std::runtime_error("SIMD ISA not available: " + std::string(isa_name(isa)));
  }
  return isa == Isa::avx2 ? *avx2_kernels() : scalar_kernels();
}

const Kernels& kernels() { return *active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) { active().store(&kernels_for(isa), std::memory_order_relaxed); }

}  // namespace hardy::simd
