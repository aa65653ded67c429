// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "corpuslens/kernels.hpp"
#include "corpuslens/parallel.hpp"
#include "corpuslens/rng.hpp"

using namespace corpuslens;
using namespace corpuslens::kernels;

namespace {

class BackendGuard {
 public:
  BackendGuard() : saved_(active_backend()) {}
  ~BackendGuard() { set_backend(saved_); }

 private:
  Backend saved_;
};

template <class T>
std::vector<T> random_vec(Rng& rng, std::size_t n) {
  std::vector<T> v(n);
  for (auto& x : v) x = static_cast<T>(rng.normal());
  return v;
}

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  EXPECT_TRUE(backend_available(Backend::Scalar));
  EXPECT_FALSE(backend_name(active_backend()).empty());
}

TEST(Kernels, SimdMatchesScalar) {
  BackendGuard guard;
  Rng rng(70);
  std::vector<Backend> simd;
  for (auto b : {Backend::Avx2, Backend::Neon})
    if (backend_available(b)) simd.push_back(b);
  if (simd.empty()) GTEST_SKIP() << "no SIMD backend on this machine";
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = rng.below(130);
    const auto af = random_vec<float>(rng, n), bf = random_vec<float>(rng, n);
    const auto ad = random_vec<double>(rng, n), bd = random_vec<double>(rng, n);
    set_backend(Backend::Scalar);
    const double dot_f = dot(af, bf), dot_d = dot(ad, bd);
    const double nf = squared_norm(af), nd = squared_norm(ad);
    const double df = squared_distance(af, bf), dd = squared_distance(ad, bd);
    std::vector<double> acc_f(n, 1.0), acc_d(n, 1.0);
    kernels::accumulate(acc_f, af, 0.5);
    kernels::accumulate(acc_d, ad, -2.0);
    for (auto b : simd) {
      set_backend(b);
      const double tol = 1e-12 * (1.0 + static_cast<double>(n));
      EXPECT_NEAR(dot(af, bf), dot_f, tol);
      EXPECT_NEAR(dot(ad, bd), dot_d, tol);
      EXPECT_NEAR(squared_norm(af), nf, tol);
      EXPECT_NEAR(squared_norm(ad), nd, tol);
      EXPECT_NEAR(squared_distance(af, bf), df, tol);
      EXPECT_NEAR(squared_distance(ad, bd), dd, tol);
      std::vector<double> sf(n, 1.0), sd(n, 1.0);
      kernels::accumulate(sf, af, 0.5);
      kernels::accumulate(sd, ad, -2.0);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(sf[i], acc_f[i], 1e-14);
        EXPECT_NEAR(sd[i], acc_d[i], 1e-14);
      }
    }
  }
}

TEST(Kernels, HandValues) {
  const std::vector<float> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_DOUBLE_EQ(dot(a, b), 32.0);
  EXPECT_DOUBLE_EQ(squared_norm(a), 14.0);
  EXPECT_DOUBLE_EQ(squared_distance(a, b), 27.0);
}

TEST(Parallel, ResultsIndependentOfThreadCount) {
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    std::vector<std::size_t> out(103, 0);
    parallel_for(out.size(), threads, [&](std::size_t i) { out[i] = i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], i * i);
  }
  EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Rng, DeterministicAndDerived) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(derive_seed(1, "x", "y"), derive_seed(1, "y", "x"));
  EXPECT_EQ(derive_seed(1, "x", "y"), derive_seed(1, "x", "y"));
  Rng c(6);
  double sum = 0;
  for (int i = 0; i < 20000; ++i) {
    const double u = c.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(c.below(7), 7u);
}
