// SPDX-License-Identifier: Apache-2.0
#pragma once

// Per-ISA kernel entry points. Normal code goes through kernels.hpp; these
// are exposed so the equivalence tests can call each variant directly.

#include <cstddef>

namespace corpuslens::kernels {

struct KernelTable {
  double (*dot_f32)(const float*, const float*, std::size_t);
  double (*dot_f64)(const double*, const double*, std::size_t);
  double (*sqdist_f32)(const float*, const float*, std::size_t);
  double (*sqdist_f64)(const double*, const double*, std::size_t);
  void (*axpy_f32)(double*, const float*, double, std::size_t);
  void (*axpy_f64)(double*, const double*, double, std::size_t);
};

namespace scalar {
double dot_f32(const float* a, const float* b, std::size_t n);
double dot_f64(const double* a, const double* b, std::size_t n);
double sqdist_f32(const float* a, const float* b, std::size_t n);
double sqdist_f64(const double* a, const double* b, std::size_t n);
void axpy_f32(double* acc, const float* x, double scale, std::size_t n);
void axpy_f64(double* acc, const double* x, double scale, std::size_t n);
const KernelTable& table();
}  // namespace scalar

#if defined(CORPUSLENS_HAVE_AVX2)
namespace avx2 {
double dot_f32(const float* a, const float* b, std::size_t n);
double dot_f64(const double* a, const double* b, std::size_t n);
double sqdist_f32(const float* a, const float* b, std::size_t n);
double sqdist_f64(const double* a, const double* b, std::size_t n);
void axpy_f32(double* acc, const float* x, double scale, std::size_t n);
void axpy_f64(double* acc, const double* x, double scale, std::size_t n);
const KernelTable& table();
}  // namespace avx2
#endif

#if defined(CORPUSLENS_HAVE_NEON)
namespace neon {
double dot_f32(const float* a, const float* b, std::size_t n);
double dot_f64(const double* a, const double* b, std::size_t n);
double sqdist_f32(const float* a, const float* b, std::size_t n);
double sqdist_f64(const double* a, const double* b, std::size_t n);
void axpy_f32(double* acc, const float* x, double scale, std::size_t n);
void axpy_f64(double* acc, const double* x, double scale, std::size_t n);
const KernelTable& table();
}  // namespace neon
#endif

}  // namespace corpuslens::kernels
