#include <atomic>
#include <cstdlib>
#include <cstring>

#include "cfsgauge/simd/mode_sum.hpp"

namespace cfsgauge::simd {

namespace {

Backend detect() {
  const char* env = std::getenv("CFSGAUGE_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::scalar;
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

bool avx2_available() {
#if defined(CFSGAUGE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  current().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

ModeSums mode_sum(const ModeArrays& modes, double dt, const double dx[3]) {
#if defined(CFSGAUGE_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return mode_sum_avx2(modes, dt, dx);
#endif
  return mode_sum_scalar(modes, dt, dx);
}

}  // namespace cfsgauge::simd
