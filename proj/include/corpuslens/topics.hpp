// SPDX-License-Identifier: Apache-2.0
#pragma once

// LDA topic model fitted by collapsed Gibbs sampling.

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"

namespace corpuslens::topics {

struct LdaOptions {
  std::size_t topics = 25;
  std::optional<double> alpha;  // default 50 / topics
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::uint64_t seed = 42;
  std::size_t chunk_tokens = 200;  // filtered tokens per LDA document
};

struct TopicModel {
  std::size_t k = 0;
  double alpha = 0;
  double beta = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  std::vector<std::string> vocabulary;
  Eigen::MatrixXd phi;     // k x V
  Eigen::MatrixXd theta;   // LDA documents x k
  std::vector<std::string> unit_ids;        // LDA document labels ("<doc>#<chunk>")
  std::vector<std::string> documents;       // corpus documents
  Eigen::MatrixXd document_theta;           // documents x k, from pooled chunk counts
  std::map<std::string, std::string> metadata;
};

/// Sampler state over documents of token ids in [0, V).
class GibbsSampler {
 public:
  GibbsSampler(std::vector<std::vector<std::uint32_t>> docs, std::size_t vocab_size, std::size_t k, double alpha,
               double beta, std::uint64_t seed);

  void sweep();
  /// Count tables agree with the current assignments.
  bool counts_consistent() const;

  std::size_t k() const { return k_; }
  std::size_t vocab_size() const { return v_; }
  const std::vector<std::vector<std::uint32_t>>& documents() const { return docs_; }
  const std::vector<std::vector<std::uint32_t>>& assignments() const { return z_; }
  /// doc x topic counts, row-major
  const std::vector<std::uint32_t>& doc_topic_counts() const { return ndk_; }
  Eigen::MatrixXd phi() const;
  Eigen::MatrixXd theta() const;

 private:
  std::vector<std::vector<std::uint32_t>> docs_;
  std::vector<std::vector<std::uint32_t>> z_;
  std::size_t v_, k_;
  double alpha_, beta_;
  std::vector<std::uint32_t> ndk_;  // docs x k
  std::vector<std::uint32_t> nkw_;  // k x V
  std::vector<std::uint32_t> nk_;   // k
  std::vector<double> p_;
  std::uint64_t state_;
};

/// Fits over pre-tokenized documents of ids into `vocabulary`.
TopicModel fit_lda(const std::vector<std::vector<std::uint32_t>>& docs, std::vector<std::string> vocabulary,
                   const LdaOptions& options);

/// Noun and adjective tokens of each document, split into chunks of
/// `chunk_tokens`, with a lexicographically sorted vocabulary.
TopicModel fit_lda(const corpus::Corpus& corpus, const LdaOptions& options = {}, Diagnostics* diag = nullptr);

/// Topic ids by descending probability, ties by id. n > k is clamped.
std::vector<std::size_t> top_topics(const Eigen::VectorXd& theta, std::size_t n, Diagnostics* diag = nullptr);
std::vector<std::size_t> top_topics(const TopicModel& model, std::size_t document, std::size_t n = 10,
                                    Diagnostics* diag = nullptr);

/// Top-n terms of a topic with weights scaled so the first is 1.
std::vector<std::pair<std::string, double>> topic_terms(const TopicModel& model, std::size_t topic, std::size_t n);

nlohmann::json to_json(const TopicModel& model, std::size_t terms_per_topic = 30, std::size_t top_n = 10);
/// topic,rank,term,weight
void write_terms_csv(std::ostream& out, const TopicModel& model, std::size_t terms_per_topic = 30);
/// doc_id,topic_0,...
void write_document_topics_csv(std::ostream& out, const TopicModel& model);

}  // namespace corpuslens::topics
