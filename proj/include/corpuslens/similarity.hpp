// SPDX-License-Identifier: Apache-2.0
#pragma once

// Document similarity: Jaccard over word types, LSA on tf-idf, chunk-centroid
// embeddings, and a clustering-based score from k-means and Fowlkes-Mallows.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"
#include "corpuslens/resources.hpp"

namespace corpuslens::similarity {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using StopWords = std::unordered_set<std::string>;

enum class JaccardMode { Set, Bag };

/// Normalized word tokens (punctuation dropped, stop words removed if given).
std::vector<std::string> normalized_words(const corpus::Document& doc, const StopWords* stop_words = nullptr);

/// Set mode: |A ∩ B| / |A ∪ B| over word types. Bag mode: Σ min(count) /
/// Σ max(count). UndefinedError when both inputs are empty.
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b, JaccardMode mode = JaccardMode::Set);
double jaccard(const corpus::Document& a, const corpus::Document& b, JaccardMode mode = JaccardMode::Set);

struct LsaResult {
  std::vector<std::string> vocabulary;  // sorted
  Eigen::MatrixXd tfidf;                // terms x documents
  Eigen::VectorXd singular_values;      // all of them, descending
  Eigen::MatrixXd coords;               // documents x dims, V * Sigma
  std::size_t rank = 0;
};

/// tf = raw count, idf = ln((1 + N) / (1 + df)) + 1.
Eigen::MatrixXd tfidf_matrix(const std::vector<std::vector<std::string>>& docs, std::vector<std::string>& vocabulary);

/// Truncated SVD of the tf-idf matrix. Each coordinate axis is oriented so
/// that its largest-magnitude document coordinate is positive. DomainError if
/// dims exceeds the matrix rank.
LsaResult lsa_embed(const std::vector<std::vector<std::string>>& docs, std::size_t dims = 2);
LsaResult lsa_embed(const corpus::Corpus& corpus, std::size_t dims = 2, const StopWords* stop_words = nullptr);

struct ChunkEmbedding {
  std::string doc_id;
  std::vector<std::size_t> chunk_index;          // chunks that had store hits
  std::vector<std::vector<double>> centroids;    // one per kept chunk
  std::vector<double> document_vector;           // mean of the centroids
};

/// Per chunk, the mean vector of its content words found in the store.
/// Chunks without hits are skipped with a warning; UndefinedError if none
/// is left.
ChunkEmbedding chunk_centroid_embed(const corpus::Document& doc, const resources::VectorStore& store,
                                    Diagnostics* diag = nullptr);

struct KMeansResult {
  std::vector<std::size_t> labels;
  RowMatrix centroids;
  double inertia = 0;
  std::vector<double> inertia_history;  // per Lloyd iteration of the kept run
};

/// k-means++ seeding and Lloyd iterations, best inertia over `restarts`
/// seeded runs. Assignment ties go to the lowest centroid index; an empty
/// cluster is re-seeded with the point farthest from its centroid.
KMeansResult kmeans(const RowMatrix& points, std::size_t k, std::uint64_t seed, std::size_t restarts = 10,
                    std::size_t max_iter = 300);

/// TP / sqrt((TP + FP)(TP + FN)) over unordered point pairs; 0 when either
/// factor is 0.
double fowlkes_mallows(const std::vector<std::size_t>& truth, const std::vector<std::size_t>& pred);

/// 1 - Fowlkes-Mallows between document identity and a 2-means clustering of
/// both documents' pooled sentence vectors.
double fms_similarity(const RowMatrix& a, const RowMatrix& b, std::uint64_t seed);

enum class Method { Jaccard, Lsa, Centroid, Fms };

std::string method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct SimilarityMatrix {
  std::string method;
  std::vector<std::string> ids;
  Eigen::MatrixXd scores;                 // NaN where undefined (FMS diagonal)
  std::vector<double> mean_similarity;    // row mean without the diagonal
  std::map<std::string, std::string> metadata;
  /// Low-dimensional document coordinates where the method has them.
  std::optional<Eigen::MatrixXd> coords;
};

struct SimilarityResources {
  const resources::VectorStore* vectors = nullptr;
  const resources::SentenceEmbeddingSet* sentence_embeddings = nullptr;
};

struct SimilarityOptions {
  JaccardMode jaccard_mode = JaccardMode::Set;
  std::size_t lsa_dims = 2;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  const StopWords* stop_words = nullptr;
};

SimilarityMatrix similarity_matrix(const corpus::Corpus& corpus, Method method, const SimilarityResources& res,
                                   const SimilarityOptions& options = {}, Diagnostics* diag = nullptr);

/// Sentence vectors of a document in sentence order; sentences without a
/// vector are skipped.
RowMatrix sentence_vectors(const corpus::Document& doc, const resources::SentenceEmbeddingSet& set);

void write_csv(std::ostream& out, const SimilarityMatrix& m);
nlohmann::json to_json(const SimilarityMatrix& m);

}  // namespace corpuslens::similarity
