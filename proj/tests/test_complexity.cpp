// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "corpuslens/complexity.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace corpuslens;
using namespace corpuslens::complexity;

namespace {

Vectors random_chunks(Rng& rng, std::size_t n, std::size_t d, double spread = 1.0) {
  Vectors v(n, std::vector<double>(d));
  for (auto& row : v)
    for (auto& x : row) x = spread * rng.normal();
  return v;
}

}  // namespace

TEST(Itv, HandCases) {
  EXPECT_DOUBLE_EQ(itv({{0, 0}, {2, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(itv({{3, 1}, {3, 1}, {3, 1}}), 0.0);
  EXPECT_DOUBLE_EQ(itv({{7, -2}}), 0.0);
  EXPECT_THROW(itv({}), DomainError);
  EXPECT_THROW(itv({{1, 2}, {1}}), DomainError);
}

TEST(Sdw, HandCases) {
  EXPECT_DOUBLE_EQ(*sdw({{0, 0}, {3, 4}}), 5.0);
  EXPECT_DOUBLE_EQ(*sdw({{1, 1}, {1, 1}, {1, 1}}), 0.0);
  Diagnostics diag;
  EXPECT_FALSE(sdw({{1, 1}}, &diag).has_value());
  EXPECT_FALSE(diag.empty());
}

TEST(ItvSdw, InvarianceAndScalingLaws) {
  Rng rng(60);
  for (int t = 0; t < 100; ++t) {
    const auto v = random_chunks(rng, 2 + rng.below(10), 1 + rng.below(8));
    const double c = rng.uniform(-4, 4);
    Vectors shifted = v, scaled = v, reversed(v.rbegin(), v.rend());
    std::vector<double> offset(v[0].size());
    for (auto& o : offset) o = rng.normal() * 10;
    for (auto& row : shifted)
      for (std::size_t j = 0; j < row.size(); ++j) row[j] += offset[j];
    for (auto& row : scaled)
      for (auto& x : row) x *= c;
    EXPECT_NEAR(itv(shifted), itv(v), 1e-9);
    EXPECT_NEAR(*sdw(shifted), *sdw(v), 1e-9);
    EXPECT_NEAR(itv(scaled), c * c * itv(v), 1e-9);
    EXPECT_NEAR(*sdw(scaled), std::abs(c) * *sdw(v), 1e-9);
    EXPECT_NEAR(*sdw(reversed), *sdw(v), 1e-12);
    const auto cov = oracle::covariance(v);
    double trace = 0;
    for (std::size_t i = 0; i < cov.size(); ++i) trace += cov[i][i];
    EXPECT_NEAR(itv(v), trace, 1e-9);
  }
}

TEST(Pca, LineCapturesAllVariance) {
  Eigen::MatrixXd x(10, 3);
  for (int i = 0; i < 10; ++i) x.row(i) << i, 2.0 * i + 1, -0.5 * i;
  const auto p = pca_project(x, 1);
  EXPECT_NEAR(p.explained_variance_ratio[0], 1.0, 1e-12);
  EXPECT_THROW(pca_project(x, 2), DomainError);
}

TEST(Pca, CentroidOfProjectionsAndReconstructionError) {
  Rng rng(61);
  const Eigen::MatrixXd x = gen::gaussian(rng, 5, 4);
  const auto p = pca_project(x, 2);
  // linearity: projection of the mean is the mean of the projections
  const Eigen::RowVectorXd centroid_proj = (x.colwise().mean() - p.mean.transpose()) * p.components;
  EXPECT_LT((centroid_proj - p.coords.colwise().mean()).norm(), 1e-12);
  // reconstruction error equals the discarded eigenvalue mass (population form)
  const Eigen::MatrixXd centered = x.rowwise() - p.mean.transpose();
  const Eigen::MatrixXd recon = p.coords * p.components.transpose();
  const double err = (centered - recon).squaredNorm() / 5.0;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 5; ++i) rows.emplace_back(x.row(i).data(), x.row(i).data() + 0), rows.back().assign(4, 0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = x(i, j);
  const auto [vals, vecs] = oracle::jacobi_eigen(oracle::covariance(rows));
  EXPECT_NEAR(err, vals[2] + vals[3], 1e-10);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(p.eigenvalues(k), vals[k], 1e-10);
}

TEST(Report, DispersionOrderingAndSharedProjection) {
  // two documents whose words sit on tight and wide clusters
  resources::VectorStore store(3);
  Rng rng(62);
  std::vector<corpus::Token> tight, wide;
  for (int i = 0; i < 40; ++i) {
    const std::string t = "eng" + std::to_string(i), w = "weit" + std::to_string(i);
    store.insert(t, std::vector<float>{static_cast<float>(0.1 * rng.normal()), static_cast<float>(0.1 * rng.normal()),
                                       static_cast<float>(0.1 * rng.normal())});
    store.insert(w, std::vector<float>{static_cast<float>(3 * rng.normal()), static_cast<float>(3 * rng.normal()),
                                       static_cast<float>(3 * rng.normal())});
    tight.push_back(corpus::make_token(t, corpus::Pos::Noun));
    wide.push_back(corpus::make_token(w, corpus::Pos::Noun));
  }
  corpus::ParseOptions o;
  o.chunk_size = 4;
  const corpus::Corpus c{corpus::build_document("tight", {tight}, o), corpus::build_document("wide", {wide}, o)};
  const auto r = complexity_report(c, store);
  ASSERT_EQ(r.documents.size(), 2u);
  EXPECT_GT(r.documents[1].itv, r.documents[0].itv);
  ASSERT_TRUE(r.projection.has_value());
  EXPECT_EQ(r.documents[0].coords.rows(), 10);
  const auto again = complexity_report(c, store, true, 4);
  EXPECT_EQ(again.documents[1].itv, r.documents[1].itv);
  EXPECT_EQ(again.documents[1].coords, r.documents[1].coords);
}
