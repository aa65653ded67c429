// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "corpuslens/kernels.hpp"
#include "corpuslens/rng.hpp"
#include "corpuslens/similarity.hpp"

namespace corpuslens::similarity {

namespace {

std::span<const double> row_of(const RowMatrix& m, Eigen::Index r) {
  return {m.data() + r * m.cols(), static_cast<std::size_t>(m.cols())};
}

double sqdist(const RowMatrix& a, Eigen::Index i, const RowMatrix& b, Eigen::Index j) {
  return kernels::squared_distance(row_of(a, i), row_of(b, j));
}

RowMatrix plus_plus_init(const RowMatrix& x, std::size_t k, Rng& rng) {
  const auto n = x.rows();
  RowMatrix c(static_cast<Eigen::Index>(k), x.cols());
  c.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[static_cast<std::size_t>(i)] = sqdist(x, i, c, 0);
  for (std::size_t j = 1; j < k; ++j) {
    double total = 0;
    for (double v : d2) total += v;
    Eigen::Index pick = 0;
    if (total > 0) {
      double u = rng.uniform() * total;
      pick = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        u -= d2[static_cast<std::size_t>(i)];
        if (u < 0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    c.row(static_cast<Eigen::Index>(j)) = x.row(pick);
    for (Eigen::Index i = 0; i < n; ++i)
      d2[static_cast<std::size_t>(i)] = std::min(d2[static_cast<std::size_t>(i)], sqdist(x, i, c, static_cast<Eigen::Index>(j)));
  }
  return c;
}

KMeansResult lloyd(const RowMatrix& x, RowMatrix c, std::size_t max_iter) {
  const auto n = x.rows();
  const auto k = c.rows();
  KMeansResult r;
  r.labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n));
  bool first = true;
  for (std::size_t it = 0; it < max_iter; ++it) {
    bool changed = false;
    double inertia = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double bd = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < k; ++j) {
        const double d = sqdist(x, i, c, j);
        if (d < bd) bd = d, best = static_cast<std::size_t>(j);
      }
      if (best != r.labels[static_cast<std::size_t>(i)]) changed = true;
      r.labels[static_cast<std::size_t>(i)] = best;
      dist[static_cast<std::size_t>(i)] = bd;
      inertia += bd;
    }
    r.inertia_history.push_back(inertia);
    r.inertia = inertia;
    if (!changed && !first) break;
    first = false;

    RowMatrix sum = RowMatrix::Zero(k, x.cols());
    std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sum.row(static_cast<Eigen::Index>(r.labels[static_cast<std::size_t>(i)])) += x.row(i);
      ++count[r.labels[static_cast<std::size_t>(i)]];
    }
    RowMatrix next = c;
    for (Eigen::Index j = 0; j < k; ++j)
      if (count[static_cast<std::size_t>(j)] > 0) next.row(j) = sum.row(j) / static_cast<double>(count[static_cast<std::size_t>(j)]);
    for (Eigen::Index j = 0; j < k; ++j) {
      if (count[static_cast<std::size_t>(j)] > 0) continue;
      // re-seed from the point farthest from its current centroid
      Eigen::Index far = 0;
      double fd = -1;
      for (Eigen::Index i = 0; i < n; ++i)
        if (dist[static_cast<std::size_t>(i)] > fd) fd = dist[static_cast<std::size_t>(i)], far = i;
      next.row(j) = x.row(far);
      dist[static_cast<std::size_t>(far)] = 0;
    }
    if (next == c && !changed) break;
    c = std::move(next);
  }
  r.centroids = std::move(c);
  return r;
}

}  // namespace

KMeansResult kmeans(const RowMatrix& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                    std::size_t max_iter) {
  if (k == 0) throw DomainError("k-means needs k >= 1");
  if (static_cast<std::size_t>(points.rows()) < k)
    throw DomainError("k-means with k=" + std::to_string(k) + " needs at least k points");
  if (points.cols() == 0) throw DomainError("k-means on zero-dimensional points");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (std::size_t run = 0; run < std::max<std::size_t>(1, restarts); ++run) {
    Rng rng(derive_seed(seed, "kmeans", std::to_string(run)));
    KMeansResult r = lloyd(points, plus_plus_init(points, k, rng), std::max<std::size_t>(1, max_iter));
    if (r.inertia < best.inertia) best = std::move(r);
  }
  return best;
}

double fowlkes_mallows(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred) {
  if (truth.size() != pred.size())
    throw DomainError("labelings have different lengths (" + std::to_string(truth.size()) + " and " +
                      std::to_string(pred.size()) + ")");
  if (truth.size() < 2) throw DomainError("Fowlkes-Mallows needs at least 2 points");
  auto pairs = [](std::uint64_t n) { return n * (n - 1) / 2; };
  std::unordered_map<std::size_t, std::uint64_t> a, b;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> joint;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++a[truth[i]];
    ++b[pred[i]];
    ++joint[{truth[i], pred[i]}];
  }
  std::uint64_t tp = 0, tp_fn = 0, tp_fp = 0;
  for (const auto& [key, n] : joint) tp += pairs(n);
  for (const auto& [key, n] : a) tp_fn += pairs(n);
  for (const auto& [key, n] : b) tp_fp += pairs(n);
  if (tp_fp == 0 || tp_fn == 0) return 0.0;
  return static_cast<double>(tp) / std::sqrt(static_cast<double>(tp_fp) * static_cast<double>(tp_fn));
}

double fms_similarity(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed) {
  if (a.rows() < 2 || b.rows() < 2) throw DomainError("each document needs at least 2 sentence vectors");
  if (a.cols() != b.cols()) throw DomainError("sentence vectors of the two documents differ in dimension");
  RowMatrix pooled(a.rows() + b.rows(), a.cols());
  pooled << a, b;
  std::vector<std::size_t> truth(static_cast<std::size_t>(pooled.rows()), 1);
  std::fill(truth.begin(), truth.begin() + a.rows(), 0);
  const KMeansResult km = kmeans(pooled, 2, seed);
  return 1.0 - fowlkes_mallows(truth, km.labels);
}

}  // namespace corpuslens::similarity
