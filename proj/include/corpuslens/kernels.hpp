// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense vector kernels used by every embedding-based computation: dot
// products, squared Euclidean distances and scaled accumulation. Inputs may
// be single or double precision; accumulation is always in double.
//
// One implementation per instruction set is compiled in. The best one
// supported by the running CPU is picked on first use; CORPUSLENS_SIMD=scalar
// (or avx2 / neon) in the environment overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace corpuslens::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

/// Backend currently used by the dispatching entry points below.
Backend active_backend();

/// True when `b` is compiled in and supported by this CPU.
bool backend_available(Backend b);

/// Forces a backend. Returns false (and changes nothing) if unavailable.
bool set_backend(Backend b);

double dot(std::span<const float> a, std::span<const float> b);
double dot(std::span<const double> a, std::span<const double> b);

double squared_norm(std::span<const float> a);
double squared_norm(std::span<const double> a);

double squared_distance(std::span<const float> a, std::span<const float> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

/// acc[i] += scale * x[i]
void accumulate(std::span<double> acc, std::span<const float> x, double scale = 1.0);
void accumulate(std::span<double> acc, std::span<const double> x, double scale = 1.0);

}  // namespace corpuslens::kernels
