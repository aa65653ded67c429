// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "corpuslens/csv.hpp"
#include "corpuslens/parallel.hpp"
#include "corpuslens/rng.hpp"
#include "corpuslens/similarity.hpp"

namespace corpuslens::similarity {

std::string method_name(Method m) {
  switch (m) {
    case Method::Jaccard: return "jaccard";
    case Method::Lsa: return "lsa";
    case Method::Centroid: return "centroid";
    case Method::Fms: return "fms";
  }
  return "";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::Jaccard, Method::Lsa, Method::Centroid, Method::Fms})
    if (method_name(m) == name) return m;
  return std::nullopt;
}

RowMatrix sentence_vectors(const corpus::Document& doc, const resources::SentenceEmbeddingSet& set) {
  std::vector<std::span<const float>> found;
  for (const auto& s : doc.sentences)
    if (const auto v = set.find(doc.id, s.index)) found.push_back(*v);
  RowMatrix m(static_cast<Eigen::Index>(found.size()), static_cast<Eigen::Index>(set.dimension()));
  for (std::size_t r = 0; r < found.size(); ++r)
    for (std::size_t c = 0; c < found[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = found[r][c];
  return m;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double cosine_or_nan(std::span<const double> a, std::span<const double> b) {
  try {
    return resources::cosine(a, b);
  } catch (const UndefinedError&) {
    return kNaN;
  }
}

}  // namespace

SimilarityMatrix similarity_matrix(const corpus::Corpus& corpus, Method method, const SimilarityResources& res,
                                   const SimilarityOptions& options, Diagnostics* diag) {
  const std::size_t n = corpus.size();
  SimilarityMatrix out;
  out.method = method_name(method);
  for (const auto& d : corpus) out.ids.push_back(d.id);
  out.scores = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), kNaN);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  const unsigned threads = std::max(1u, options.threads);
  std::vector<double> pair_score(pairs.size(), kNaN);
  std::vector<std::string> pair_warning(pairs.size());

  switch (method) {
    case Method::Jaccard: {
      std::vector<std::vector<std::string>> words(n);
      for (std::size_t i = 0; i < n; ++i) words[i] = normalized_words(corpus[i], options.stop_words);
      parallel_for(pairs.size(), threads, [&](std::size_t p) {
        const auto [i, j] = pairs[p];
        try {
          pair_score[p] = jaccard(words[i], words[j], options.jaccard_mode);
        } catch (const UndefinedError& e) {
          pair_warning[p] = out.ids[i] + " / " + out.ids[j] + ": " + e.what();
        }
      });
      out.metadata["mode"] = options.jaccard_mode == JaccardMode::Set ? "set" : "bag";
      break;
    }
    case Method::Lsa: {
      const LsaResult lsa = lsa_embed(corpus, options.lsa_dims, options.stop_words);
      const Eigen::MatrixXd& c = lsa.coords;
      RowMatrix rows = c;
      auto row = [&](std::size_t i) {
        return std::span<const double>(rows.data() + static_cast<Eigen::Index>(i) * rows.cols(),
                                       static_cast<std::size_t>(rows.cols()));
      };
      for (std::size_t p = 0; p < pairs.size(); ++p) pair_score[p] = cosine_or_nan(row(pairs[p].first), row(pairs[p].second));
      out.coords = c;
      out.metadata["dims"] = std::to_string(options.lsa_dims);
      out.metadata["tfidf"] = "tf raw count, idf ln((1+N)/(1+df))+1";
      std::string sv;
      for (Eigen::Index i = 0; i < lsa.singular_values.size(); ++i)
        sv += (i ? " " : "") + csv::number(lsa.singular_values(i));
      out.metadata["singular_values"] = sv;
      break;
    }
    case Method::Centroid: {
      if (res.vectors == nullptr) throw ConfigError("similarity method 'centroid' requires word vectors");
      std::vector<ChunkEmbedding> emb(n);
      std::vector<Diagnostics> local(n);
      parallel_for(n, threads, [&](std::size_t i) { emb[i] = chunk_centroid_embed(corpus[i], *res.vectors, &local[i]); });
      if (diag != nullptr)
        for (const auto& d : local) diag->merge(d);
      for (std::size_t p = 0; p < pairs.size(); ++p)
        pair_score[p] = cosine_or_nan(emb[pairs[p].first].document_vector, emb[pairs[p].second].document_vector);
      out.metadata["space"] = "full word-vector dimension";
      break;
    }
    case Method::Fms: {
      if (res.sentence_embeddings == nullptr) throw ConfigError("similarity method 'fms' requires sentence embeddings");
      std::vector<RowMatrix> vecs(n);
      for (std::size_t i = 0; i < n; ++i) vecs[i] = sentence_vectors(corpus[i], *res.sentence_embeddings);
      parallel_for(pairs.size(), threads, [&](std::size_t p) {
        auto [i, j] = pairs[p];
        // canonical order makes the score independent of argument order
        if (out.ids[j] < out.ids[i]) std::swap(i, j);
        const std::uint64_t seed = derive_seed(options.seed, out.ids[i], out.ids[j]);
        try {
          pair_score[p] = fms_similarity(vecs[i], vecs[j], seed);
        } catch (const DomainError& e) {
          pair_warning[p] = out.ids[i] + " / " + out.ids[j] + ": " + e.what();
        }
      });
      out.metadata["score"] = "1 - Fowlkes-Mallows index between document identity and 2-means clusters";
      out.metadata["kmeans"] = "k=2, k-means++ init, 10 restarts";
      out.metadata["seed"] = std::to_string(options.seed);
      break;
    }
  }

  for (const auto& w : pair_warning)
    if (!w.empty()) warn(diag, w);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto i = static_cast<Eigen::Index>(pairs[p].first), j = static_cast<Eigen::Index>(pairs[p].second);
    out.scores(i, j) = out.scores(j, i) = pair_score[p];
  }
  if (method != Method::Fms)
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) out.scores(i, i) = 1.0;

  out.mean_similarity.assign(n, kNaN);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    std::size_t c = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = out.scores(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (i == j || std::isnan(v)) continue;
      s += v;
      ++c;
    }
    if (c > 0) out.mean_similarity[i] = s / static_cast<double>(c);
  }
  return out;
}

void write_csv(std::ostream& out, const SimilarityMatrix& m) {
  out << "doc_id";
  for (const auto& id : m.ids) out << ',' << csv::escape(id);
  out << ",mean_similarity\n";
  for (std::size_t i = 0; i < m.ids.size(); ++i) {
    out << csv::escape(m.ids[i]);
    for (std::size_t j = 0; j < m.ids.size(); ++j)
      out << ',' << csv::number(m.scores(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    out << ',' << csv::number(m.mean_similarity[i]) << '\n';
  }
}

nlohmann::json to_json(const SimilarityMatrix& m) {
  nlohmann::json j;
  j["method"] = m.method;
  j["ids"] = m.ids;
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.scores.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.scores.cols(); ++c) {
      const double v = m.scores(r, c);
      row.push_back(std::isnan(v) ? nlohmann::json() : nlohmann::json(v));
    }
    rows.push_back(std::move(row));
  }
  j["scores"] = std::move(rows);
  auto means = nlohmann::json::array();
  for (double v : m.mean_similarity) means.push_back(std::isnan(v) ? nlohmann::json() : nlohmann::json(v));
  j["mean_similarity"] = std::move(means);
  j["metadata"] = m.metadata;
  if (m.coords) {
    auto coords = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.coords->rows(); ++r) {
      auto row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.coords->cols(); ++c) row.push_back((*m.coords)(r, c));
      coords.push_back(std::move(row));
    }
    j["coords"] = std::move(coords);
  }
  return j;
}

}  // namespace corpuslens::similarity
