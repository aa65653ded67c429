// SPDX-License-Identifier: Apache-2.0
#pragma once

// Hand-rolled random input generators for property tests. Every generator
// takes an explicit Rng so failures reproduce from the printed seed.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "corpuslens/rng.hpp"

namespace gen {

using corpuslens::Rng;

inline std::u32string string(Rng& rng, std::size_t max_len, const std::u32string& alphabet = U"abcdeäöüß") {
  const std::size_t len = rng.below(max_len + 1);
  std::u32string s;
  for (std::size_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
  return s;
}

inline std::vector<std::size_t> labeling(Rng& rng, std::size_t n, std::size_t clusters) {
  std::vector<std::size_t> out(n);
  for (auto& x : out) x = rng.below(clusters);
  return out;
}

inline std::vector<std::string> words(Rng& rng, std::size_t max_len, std::size_t vocab) {
  const std::size_t len = rng.below(max_len + 1);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < len; ++i) out.push_back("w" + std::to_string(rng.below(vocab)));
  return out;
}

inline Eigen::MatrixXd gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols, double sd = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = sd * rng.normal();
  return m;
}

/// Uniformly random orthogonal matrix (QR of a Gaussian matrix with the sign
/// of R's diagonal folded into Q).
inline Eigen::MatrixXd orthogonal(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(rng, n, n));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1;
  return q;
}

struct PlantedFactors {
  Eigen::MatrixXd loadings;  // features x factors
  Eigen::MatrixXd factors;   // rows x factors
  Eigen::MatrixXd data;      // rows x features
};

/// Each feature loads on exactly one factor with a loading in [0.6, 0.85];
/// features are assigned round-robin. Unique variance fills the rest, so
/// every feature has unit variance before arbitrary location/scale shifts.
inline PlantedFactors planted_factors(Rng& rng, Eigen::Index rows, Eigen::Index features, Eigen::Index k) {
  PlantedFactors p;
  p.loadings = Eigen::MatrixXd::Zero(features, k);
  for (Eigen::Index i = 0; i < features; ++i) p.loadings(i, i % k) = rng.uniform(0.6, 0.85);
  p.factors = gaussian(rng, rows, k);
  p.data = p.factors * p.loadings.transpose();
  for (Eigen::Index i = 0; i < features; ++i) {
    const double unique = std::sqrt(1.0 - p.loadings.row(i).squaredNorm());
    const double shift = rng.uniform(-5, 5), scale = rng.uniform(0.5, 3);
    for (Eigen::Index r = 0; r < rows; ++r) p.data(r, i) = shift + scale * (p.data(r, i) + unique * rng.normal());
  }
  return p;
}

/// Documents drawn from `topics` topics with disjoint vocabularies of
/// `per_topic` words each. Word frequencies within a topic follow 1/(rank+1).
struct PlantedTopics {
  std::vector<std::vector<std::uint32_t>> docs;
  std::vector<std::string> vocabulary;
  std::vector<std::size_t> word_topic;  // planted topic of each vocabulary id
};

inline PlantedTopics planted_topics(Rng& rng, std::size_t n_docs, std::size_t doc_len, std::size_t topics,
                                    std::size_t per_topic) {
  PlantedTopics p;
  for (std::size_t t = 0; t < topics; ++t)
    for (std::size_t w = 0; w < per_topic; ++w) {
      p.vocabulary.push_back("t" + std::to_string(t) + "_w" + std::to_string(w));
      p.word_topic.push_back(t);
    }
  std::vector<double> cdf(per_topic);
  double total = 0;
  for (std::size_t w = 0; w < per_topic; ++w) cdf[w] = (total += 1.0 / static_cast<double>(w + 1));
  for (auto& c : cdf) c /= total;
  for (std::size_t d = 0; d < n_docs; ++d) {
    // mostly one topic, with a minority share of another
    const std::size_t main = d % topics;
    std::vector<std::uint32_t> doc;
    for (std::size_t i = 0; i < doc_len; ++i) {
      const std::size_t t = rng.uniform() < 0.8 ? main : rng.below(topics);
      const double u = rng.uniform();
      const std::size_t w = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      doc.push_back(static_cast<std::uint32_t>(t * per_topic + std::min(w, per_topic - 1)));
    }
    p.docs.push_back(std::move(doc));
  }
  return p;
}

}  // namespace gen
