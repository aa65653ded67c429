// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "corpuslens/kernels.hpp"
#include "corpuslens/similarity.hpp"

namespace corpuslens::similarity {

std::vector<std::string> normalized_words(const corpus::Document& doc, const StopWords* stop_words) {
  std::vector<std::string> out;
  out.reserve(doc.word_count());
  for (std::size_t i = 0; i < doc.word_count(); ++i) {
    const auto& w = doc.word(i).normalized;
    if (stop_words != nullptr && stop_words->count(w) != 0) continue;
    out.push_back(w);
  }
  return out;
}

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b, JaccardMode mode) {
  if (a.empty() && b.empty()) throw UndefinedError("Jaccard similarity of two empty documents is undefined");
  std::unordered_map<std::string_view, std::size_t> ca, cb;
  for (const auto& w : a) ++ca[w];
  for (const auto& w : b) ++cb[w];
  std::size_t num = 0, den = 0;
  if (mode == JaccardMode::Set) {
    for (const auto& [w, n] : ca) num += cb.count(w);
    den = ca.size() + cb.size() - num;
  } else {
    for (const auto& [w, n] : ca) {
      const auto it = cb.find(w);
      const std::size_t m = it == cb.end() ? 0 : it->second;
      num += std::min(n, m);
      den += std::max(n, m);
    }
    for (const auto& [w, m] : cb)
      if (ca.count(w) == 0) den += m;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double jaccard(const corpus::Document& a, const corpus::Document& b, JaccardMode mode) {
  return jaccard(normalized_words(a), normalized_words(b), mode);
}

Eigen::MatrixXd tfidf_matrix(const std::vector<std::vector<std::string>>& docs, std::vector<std::string>& vocabulary) {
  std::map<std::string, std::size_t> df;
  std::vector<std::map<std::string, std::size_t>> tf(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& w : docs[d]) ++tf[d][w];
    for (const auto& [w, n] : tf[d]) ++df[w];
  }
  vocabulary.clear();
  std::unordered_map<std::string, Eigen::Index> row;
  for (const auto& [w, n] : df) {
    row.emplace(w, static_cast<Eigen::Index>(vocabulary.size()));
    vocabulary.push_back(w);
  }
  const double n_docs = static_cast<double>(docs.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vocabulary.size()),
                                            static_cast<Eigen::Index>(docs.size()));
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (const auto& [w, n] : tf[d]) {
      const double idf = std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df.at(w)))) + 1.0;
      m(row.at(w), static_cast<Eigen::Index>(d)) = static_cast<double>(n) * idf;
    }
  return m;
}

LsaResult lsa_embed(const std::vector<std::vector<std::string>>& docs, std::size_t dims) {
  if (dims == 0) throw ConfigError("LSA needs at least one dimension");
  if (docs.size() < dims)
    throw DomainError("LSA with " + std::to_string(dims) + " dimensions needs at least that many documents");
  LsaResult out;
  out.tfidf = tfidf_matrix(docs, out.vocabulary);
  if (out.tfidf.rows() == 0) throw DomainError("LSA over an empty vocabulary");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(out.tfidf, Eigen::ComputeThinV);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  const double tol = smax * static_cast<double>(std::max(out.tfidf.rows(), out.tfidf.cols())) *
                     std::numeric_limits<double>::epsilon();
  out.rank = static_cast<std::size_t>((out.singular_values.array() > tol).count());
  if (dims > out.rank)
    throw DomainError("LSA dimension " + std::to_string(dims) + " exceeds the tf-idf rank " + std::to_string(out.rank));
  const auto kd = static_cast<Eigen::Index>(dims);
  out.coords = svd.matrixV().leftCols(kd) * out.singular_values.head(kd).asDiagonal();
  for (Eigen::Index j = 0; j < kd; ++j) {
    Eigen::Index best = 0;
    out.coords.col(j).cwiseAbs().maxCoeff(&best);
    if (out.coords(best, j) < 0) out.coords.col(j) *= -1.0;
  }
  return out;
}

LsaResult lsa_embed(const corpus::Corpus& corpus, std::size_t dims, const StopWords* stop_words) {
  std::vector<std::vector<std::string>> docs;
  docs.reserve(corpus.size());
  for (const auto& d : corpus) docs.push_back(normalized_words(d, stop_words));
  return lsa_embed(docs, dims);
}

ChunkEmbedding chunk_centroid_embed(const corpus::Document& doc, const resources::VectorStore& store,
                                    Diagnostics* diag) {
  ChunkEmbedding out;
  out.doc_id = doc.id;
  const std::size_t dim = store.dimension();
  out.document_vector.assign(dim, 0.0);
  for (std::size_t c = 0; c < doc.chunks.size(); ++c) {
    std::vector<double> acc(dim, 0.0);
    std::size_t hits = 0;
    for (std::size_t i = doc.chunks[c].begin; i < doc.chunks[c].end; ++i) {
      const auto& t = doc.word(i);
      if (!t.is_content()) continue;
      const auto v = store.find(store.case_folded() ? t.normalized : t.surface);
      if (!v) continue;
      kernels::accumulate(acc, *v);
      ++hits;
    }
    if (hits == 0) {
      warn(diag, "document '" + doc.id + "': chunk " + std::to_string(c) + " has no content word in the vector store, skipped");
      continue;
    }
    for (double& x : acc) x /= static_cast<double>(hits);
    kernels::accumulate(out.document_vector, std::span<const double>(acc));
    out.chunk_index.push_back(c);
    out.centroids.push_back(std::move(acc));
  }
  if (out.centroids.empty())
    throw UndefinedError("document '" + doc.id + "' has no chunk with content words in the vector store");
  for (double& x : out.document_vector) x /= static_cast<double>(out.centroids.size());
  return out;
}

}  // namespace corpuslens::similarity
