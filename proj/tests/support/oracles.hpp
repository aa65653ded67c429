// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference computations for tests. Each one is written from the definition
// with plain loops and shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double cosine(const Vec& a, const Vec& b) { return dot(a, b) / std::sqrt(dot(a, a) * dot(b, b)); }

// Fowlkes-Mallows by visiting every unordered pair.
inline double fowlkes_mallows(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < truth.size(); ++i)
    for (std::size_t j = i + 1; j < truth.size(); ++j) {
      const bool same_t = truth[i] == truth[j];
      const bool same_p = pred[i] == pred[j];
      if (same_t && same_p) ++tp;
      else if (same_p) ++fp;
      else if (same_t) ++fn;
    }
  if (tp + fp == 0 || tp + fn == 0) return 0.0;
  return tp / std::sqrt((tp + fp) * (tp + fn));
}

// Edit distance by memoized recursion over suffixes.
inline std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<long>> memo(a.size() + 1, std::vector<long>(b.size() + 1, -1));
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> long {
    if (i == a.size()) return static_cast<long>(b.size() - j);
    if (j == b.size()) return static_cast<long>(a.size() - i);
    long& m = memo[i][j];
    if (m >= 0) return m;
    if (a[i] == b[j]) return m = self(self, i + 1, j + 1);
    m = 1 + std::min({self(self, i + 1, j), self(self, i, j + 1), self(self, i + 1, j + 1)});
    return m;
  };
  return static_cast<std::size_t>(rec(rec, 0, 0));
}

inline double jaccard_set(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end()), all(sa);
  all.insert(sb.begin(), sb.end());
  std::size_t inter = 0;
  for (const auto& w : all) inter += (sa.count(w) != 0 && sb.count(w) != 0) ? 1 : 0;
  return static_cast<double>(inter) / static_cast<double>(all.size());
}

inline double jaccard_bag(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::map<std::string, std::pair<int, int>> counts;
  for (const auto& w : a) ++counts[w].first;
  for (const auto& w : b) ++counts[w].second;
  double lo = 0, hi = 0;
  for (const auto& [w, c] : counts) {
    lo += std::min(c.first, c.second);
    hi += std::max(c.first, c.second);
  }
  return lo / hi;
}

// Mean cosine to each positive label minus mean cosine to each negative label.
inline double aap(const Vec& w, const std::vector<Vec>& pos, const std::vector<Vec>& neg) {
  double p = 0, n = 0;
  for (const auto& v : pos) p += cosine(w, v);
  for (const auto& v : neg) n += cosine(w, v);
  return p / static_cast<double>(pos.size()) - n / static_cast<double>(neg.size());
}

// Cyclic Jacobi eigenvalue iteration for a symmetric matrix. Returns
// eigenvalues in descending order with eigenvectors as columns.
inline std::pair<Vec, Mat> jacobi_eigen(Mat a) {
  const std::size_t n = a.size();
  Mat v(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
  Vec vals(n);
  Mat vecs(n, Vec(n));
  for (std::size_t j = 0; j < n; ++j) {
    vals[j] = a[order[j]][order[j]];
    for (std::size_t i = 0; i < n; ++i) vecs[i][j] = v[i][order[j]];
  }
  return {vals, vecs};
}

// Population covariance of the rows of x.
inline Mat covariance(const std::vector<Vec>& x) {
  const std::size_t n = x.size(), d = x[0].size();
  Vec mu(d, 0.0);
  for (const auto& r : x)
    for (std::size_t j = 0; j < d; ++j) mu[j] += r[j] / static_cast<double>(n);
  Mat c(d, Vec(d, 0.0));
  for (const auto& r : x)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) c[i][j] += (r[i] - mu[i]) * (r[j] - mu[j]) / static_cast<double>(n);
  return c;
}

// Cosine between two documents' tf-idf vectors over the full vocabulary.
inline Mat tfidf_cosines(const std::vector<std::vector<std::string>>& docs) {
  const double n = static_cast<double>(docs.size());
  std::map<std::string, int> df;
  for (const auto& d : docs) {
    std::set<std::string> seen(d.begin(), d.end());
    for (const auto& w : seen) ++df[w];
  }
  std::vector<std::map<std::string, double>> vecs;
  for (const auto& d : docs) {
    std::map<std::string, double> tf;
    for (const auto& w : d) tf[w] += 1;
    for (auto& [w, x] : tf) x *= std::log((1 + n) / (1 + df[w])) + 1;
    vecs.push_back(tf);
  }
  Mat out(docs.size(), Vec(docs.size()));
  for (std::size_t i = 0; i < docs.size(); ++i)
    for (std::size_t j = 0; j < docs.size(); ++j) {
      double ab = 0, aa = 0, bb = 0;
      for (const auto& [w, x] : vecs[i]) {
        aa += x * x;
        auto it = vecs[j].find(w);
        if (it != vecs[j].end()) ab += x * it->second;
      }
      for (const auto& [w, x] : vecs[j]) bb += x * x;
      out[i][j] = ab / std::sqrt(aa * bb);
    }
  return out;
}

}  // namespace oracle
