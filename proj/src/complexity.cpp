// SPDX-License-Identifier: Apache-2.0
#include "corpuslens/complexity.hpp"

#include <cmath>
#include <ostream>

#include "corpuslens/csv.hpp"
#include "corpuslens/kernels.hpp"
#include "corpuslens/parallel.hpp"
#include "corpuslens/similarity.hpp"

namespace corpuslens::complexity {

namespace {
void check_uniform(const Vectors& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i].size() != v[0].size())
      throw DomainError("chunk vector " + std::to_string(i) + " has dimension " + std::to_string(v[i].size()) +
                        ", expected " + std::to_string(v[0].size()));
}
}  // namespace

double itv(const Vectors& chunks) {
  if (chunks.empty()) throw DomainError("intra-textual variance of no vectors");
  check_uniform(chunks);
  std::vector<double> mu(chunks[0].size(), 0.0);
  for (const auto& c : chunks) kernels::accumulate(mu, std::span<const double>(c));
  for (double& x : mu) x /= static_cast<double>(chunks.size());
  double sum = 0;
  for (const auto& c : chunks) sum += kernels::squared_distance(std::span<const double>(c), std::span<const double>(mu));
  return sum / static_cast<double>(chunks.size());
}

std::optional<double> sdw(const Vectors& chunks, Diagnostics* diag) {
  check_uniform(chunks);
  if (chunks.size() < 2) {
    warn(diag, "stepwise distance needs at least 2 chunks, got " + std::to_string(chunks.size()));
    return std::nullopt;
  }
  double sum = 0;
  for (std::size_t i = 1; i < chunks.size(); ++i)
    sum += std::sqrt(kernels::squared_distance(std::span<const double>(chunks[i]), std::span<const double>(chunks[i - 1])));
  return sum / static_cast<double>(chunks.size() - 1);
}

Projection pca_project(const Eigen::MatrixXd& x, std::size_t dims) {
  if (dims == 0) throw DomainError("projection needs at least one dimension");
  if (static_cast<std::size_t>(x.rows()) < dims)
    throw DomainError("projection to " + std::to_string(dims) + " dimensions needs at least that many vectors");
  Projection p;
  p.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - p.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(x.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) throw NumericError("covariance eigendecomposition failed");
  const auto d = cov.rows();
  p.eigenvalues = es.eigenvalues().reverse().cwiseMax(0.0);
  const double top = p.eigenvalues.size() ? p.eigenvalues(0) : 0.0;
  const double tol = std::max(top, 1e-300) * static_cast<double>(d) * 1e-12;
  const auto rank = static_cast<std::size_t>((p.eigenvalues.array() > tol).count());
  if (dims > rank) throw DomainError("projection dimension " + std::to_string(dims) + " exceeds the data rank " + std::to_string(rank));
  const auto kd = static_cast<Eigen::Index>(dims);
  p.components.resize(d, kd);
  const double total = p.eigenvalues.sum();
  for (Eigen::Index j = 0; j < kd; ++j) {
    Eigen::VectorXd v = es.eigenvectors().col(d - 1 - j);
    Eigen::Index best = 0;
    v.cwiseAbs().maxCoeff(&best);
    if (v(best) < 0) v = -v;
    p.components.col(j) = v;
    p.explained_variance_ratio.push_back(total > 0 ? p.eigenvalues(j) / total : 0.0);
  }
  p.coords = centered * p.components;
  return p;
}

ComplexityReport complexity_report(const corpus::Corpus& corpus, const resources::VectorStore& store, bool project,
                                   unsigned threads, Diagnostics* diag) {
  ComplexityReport r;
  const std::size_t n = corpus.size();
  std::vector<similarity::ChunkEmbedding> emb(n);
  std::vector<Diagnostics> local(n);
  r.documents.resize(n);
  parallel_for(n, std::max(1u, threads), [&](std::size_t i) {
    emb[i] = similarity::chunk_centroid_embed(corpus[i], store, &local[i]);
    auto& d = r.documents[i];
    d.id = corpus[i].id;
    d.n_chunks = emb[i].centroids.size();
    d.itv = itv(emb[i].centroids);
    d.sdw = sdw(emb[i].centroids, &local[i]);
  });
  if (diag != nullptr)
    for (const auto& l : local) diag->merge(l);

  if (!project) return r;
  std::size_t total = 0;
  for (const auto& e : emb) total += e.centroids.size();
  Eigen::MatrixXd all(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(store.dimension()));
  Eigen::Index row = 0;
  for (const auto& e : emb)
    for (const auto& c : e.centroids) all.row(row++) = Eigen::Map<const Eigen::RowVectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
  try {
    r.projection = pca_project(all, 2);
  } catch (const DomainError& e) {
    warn(diag, std::string("no 2-d chunk projection: ") + e.what());
    return r;
  }
  row = 0;
  for (auto& d : r.documents) {
    d.coords = r.projection->coords.middleRows(row, static_cast<Eigen::Index>(d.n_chunks));
    d.centroid = d.coords.colwise().mean().transpose();
    row += static_cast<Eigen::Index>(d.n_chunks);
  }
  return r;
}

void write_csv(std::ostream& out, const ComplexityReport& r) {
  out << "doc_id,itv,sdw,n_chunks\n";
  for (const auto& d : r.documents)
    out << csv::escape(d.id) << ',' << csv::number(d.itv) << ',' << csv::number(d.sdw) << ',' << d.n_chunks << '\n';
}

nlohmann::json to_json(const ComplexityReport& r) {
  nlohmann::json j;
  auto docs = nlohmann::json::array();
  for (const auto& d : r.documents) {
    nlohmann::json e{{"doc_id", d.id}, {"itv", d.itv}, {"n_chunks", d.n_chunks}};
    e["sdw"] = d.sdw ? nlohmann::json(*d.sdw) : nlohmann::json();
    if (r.projection) {
      auto pts = nlohmann::json::array();
      for (Eigen::Index i = 0; i < d.coords.rows(); ++i) pts.push_back({d.coords(i, 0), d.coords(i, 1)});
      e["chunks_2d"] = std::move(pts);
      e["centroid_2d"] = {d.centroid(0), d.centroid(1)};
    }
    docs.push_back(std::move(e));
  }
  j["documents"] = std::move(docs);
  if (r.projection) j["explained_variance_ratio"] = r.projection->explained_variance_ratio;
  j["space"] = "itv and sdw in the full vector space; 2-d coordinates for display only";
  return j;
}

}  // namespace corpuslens::complexity
