// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "corpuslens/error.hpp"
#include "corpuslens/kernel_variants.hpp"
#include "corpuslens/kernels.hpp"

namespace corpuslens::kernels {

namespace {

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(CORPUSLENS_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(CORPUSLENS_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Backend b) {
  switch (b) {
#if defined(CORPUSLENS_HAVE_AVX2)
    case Backend::Avx2:
      return avx2::table();
#endif
#if defined(CORPUSLENS_HAVE_NEON)
    case Backend::Neon:
      return neon::table();
#endif
    default:
      return scalar::table();
  }
}

Backend detect() {
  if (const char* env = std::getenv("CORPUSLENS_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_supports(Backend::Avx2)) return Backend::Avx2;
    if (v == "neon" && cpu_supports(Backend::Neon)) return Backend::Neon;
  }
  if (cpu_supports(Backend::Avx2)) return Backend::Avx2;
  if (cpu_supports(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

struct State {
  std::atomic<Backend> backend;
  std::atomic<const KernelTable*> table;
  State() {
    const Backend b = detect();
    backend.store(b);
    table.store(&table_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

inline const KernelTable& active() { return *state().table.load(std::memory_order_acquire); }

inline void check_same(std::size_t a, std::size_t b) {
  if (a != b)
    throw DomainError("vector dimension mismatch: " + std::to_string(a) + " vs " +
                      std::to_string(b));
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

Backend active_backend() { return state().backend.load(); }

bool backend_available(Backend b) { return cpu_supports(b); }

bool set_backend(Backend b) {
  if (!cpu_supports(b)) return false;
  state().table.store(&table_for(b), std::memory_order_release);
  state().backend.store(b);
  return true;
}

double dot(std::span<const float> a, std::span<const float> b) {
  check_same(a.size(), b.size());
  return active().dot_f32(a.data(), b.data(), a.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active().dot_f64(a.data(), b.data(), a.size());
}

double squared_norm(std::span<const float> a) { return active().dot_f32(a.data(), a.data(), a.size()); }

double squared_norm(std::span<const double> a) {
  return active().dot_f64(a.data(), a.data(), a.size());
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
  check_same(a.size(), b.size());
  return active().sqdist_f32(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  check_same(a.size(), b.size());
  return active().sqdist_f64(a.data(), b.data(), a.size());
}

void accumulate(std::span<double> acc, std::span<const float> x, double scale) {
  check_same(acc.size(), x.size());
  active().axpy_f32(acc.data(), x.data(), scale, x.size());
}

void accumulate(std::span<double> acc, std::span<const double> x, double scale) {
  check_same(acc.size(), x.size());
  active().axpy_f64(acc.data(), x.data(), scale, x.size());
}

}  // namespace corpuslens::kernels
