// SPDX-License-Identifier: Apache-2.0
// Reference kernels. Straight loops with a single double accumulator; every
// vectorized variant is tested against these.

#include "corpuslens/kernel_variants.hpp"

namespace corpuslens::kernels::scalar {

double dot_f32(const float* a, const float* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return s;
}

double dot_f64(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sqdist_f32(const float* a, const float* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    s += d * d;
  }
  return s;
}

double sqdist_f64(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void axpy_f32(double* acc, const float* x, double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += scale * static_cast<double>(x[i]);
}

void axpy_f64(double* acc, const double* x, double scale, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += scale * x[i];
}

const KernelTable& table() {
  static const KernelTable t{dot_f32, dot_f64, sqdist_f32, sqdist_f64, axpy_f32, axpy_f64};
  return t;
}

}  // namespace corpuslens::kernels::scalar
