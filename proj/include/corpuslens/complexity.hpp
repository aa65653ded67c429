// SPDX-License-Identifier: Apache-2.0
#pragma once

// Semantic complexity of a document from its chunk vectors: intra-textual
// variance, stepwise distance, and a PCA projection for plotting.

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"
#include "corpuslens/resources.hpp"

namespace corpuslens::complexity {

using Vectors = std::vector<std::vector<double>>;

/// (1/n) Σ |c_i - μ|². DomainError on no vectors or ragged dimensions.
double itv(const Vectors& chunks);

/// Mean Euclidean distance between consecutive vectors; nullopt (with a
/// warning) for fewer than two vectors.
std::optional<double> sdw(const Vectors& chunks, Diagnostics* diag = nullptr);

struct Projection {
  Eigen::MatrixXd coords;       // n x dims
  Eigen::MatrixXd components;   // d x dims, unit columns
  Eigen::VectorXd mean;         // d
  Eigen::VectorXd eigenvalues;  // all covariance eigenvalues, descending
  std::vector<double> explained_variance_ratio;  // per kept component
};

/// Centers the rows, eigendecomposes the population covariance and projects
/// onto the leading `dims` components, each oriented so its largest-magnitude
/// coefficient is positive. DomainError if dims exceeds the rank.
Projection pca_project(const Eigen::MatrixXd& x, std::size_t dims = 2);

struct DocumentComplexity {
  std::string id;
  double itv = 0;
  std::optional<double> sdw;
  std::size_t n_chunks = 0;
  Eigen::MatrixXd coords;  // chunk coordinates in the shared projection (may be empty)
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
};

struct ComplexityReport {
  std::vector<DocumentComplexity> documents;
  std::optional<Projection> projection;  // over all chunks of all documents
};

/// Chunk centroids per document (see similarity::chunk_centroid_embed), ITV
/// and SDW in the full vector space, and a shared 2-d projection when
/// `project` is set and the chunks span two dimensions.
ComplexityReport complexity_report(const corpus::Corpus& corpus, const resources::VectorStore& store,
                                   bool project = true, unsigned threads = 1, Diagnostics* diag = nullptr);

/// doc_id,itv,sdw,n_chunks
void write_csv(std::ostream& out, const ComplexityReport& r);
nlohmann::json to_json(const ComplexityReport& r);

}  // namespace corpuslens::complexity
