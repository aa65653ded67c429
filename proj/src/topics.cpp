// SPDX-License-Identifier: Apache-2.0
#include "corpuslens/topics.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>

#include "corpuslens/csv.hpp"
#include "corpuslens/rng.hpp"

namespace corpuslens::topics {

GibbsSampler::GibbsSampler(std::vector<std::vector<std::uint32_t>> docs, std::size_t vocab_size, std::size_t k,
                           double alpha, double beta, std::uint64_t seed)
    : docs_(std::move(docs)), v_(vocab_size), k_(k), alpha_(alpha), beta_(beta), state_(seed) {
  if (k_ == 0) throw ConfigError("topic count must be positive");
  if (v_ == 0) throw DomainError("topic model over an empty vocabulary");
  if (!(alpha_ > 0) || !(beta_ > 0)) throw ConfigError("LDA hyperparameters must be positive");
  ndk_.assign(docs_.size() * k_, 0);
  nkw_.assign(k_ * v_, 0);
  nk_.assign(k_, 0);
  p_.resize(k_);
  Rng rng(derive_seed(seed, "lda-init"));
  z_.resize(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    z_[d].resize(docs_[d].size());
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t w = docs_[d][i];
      if (w >= v_) throw DomainError("token id " + std::to_string(w) + " outside the vocabulary");
      const auto t = static_cast<std::uint32_t>(rng.below(k_));
      z_[d][i] = t;
      ++ndk_[d * k_ + t];
      ++nkw_[t * v_ + w];
      ++nk_[t];
    }
  }
}

void GibbsSampler::sweep() {
  Rng rng(state_);
  state_ = rng.next();
  const double vbeta = static_cast<double>(v_) * beta_;
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    std::uint32_t* nd = &ndk_[d * k_];
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const std::uint32_t w = docs_[d][i];
      std::uint32_t t = z_[d][i];
      --nd[t];
      --nkw_[t * v_ + w];
      --nk_[t];
      double total = 0;
      for (std::size_t k = 0; k < k_; ++k) {
        total += (nd[k] + alpha_) * (nkw_[k * v_ + w] + beta_) / (nk_[k] + vbeta);
        p_[k] = total;
      }
      const double u = rng.uniform() * total;
      t = static_cast<std::uint32_t>(std::upper_bound(p_.begin(), p_.end(), u) - p_.begin());
      if (t >= k_) t = static_cast<std::uint32_t>(k_ - 1);
      z_[d][i] = t;
      ++nd[t];
      ++nkw_[t * v_ + w];
      ++nk_[t];
    }
  }
}

bool GibbsSampler::counts_consistent() const {
  std::vector<std::uint32_t> ndk(ndk_.size(), 0), nkw(nkw_.size(), 0), nk(nk_.size(), 0);
  for (std::size_t d = 0; d < docs_.size(); ++d)
    for (std::size_t i = 0; i < docs_[d].size(); ++i) {
      const auto t = z_[d][i];
      ++ndk[d * k_ + t];
      ++nkw[t * v_ + docs_[d][i]];
      ++nk[t];
    }
  return ndk == ndk_ && nkw == nkw_ && nk == nk_;
}

Eigen::MatrixXd GibbsSampler::phi() const {
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(k_), static_cast<Eigen::Index>(v_));
  const double vbeta = static_cast<double>(v_) * beta_;
  for (std::size_t k = 0; k < k_; ++k)
    for (std::size_t w = 0; w < v_; ++w)
      phi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(w)) = (nkw_[k * v_ + w] + beta_) / (nk_[k] + vbeta);
  return phi;
}

Eigen::MatrixXd GibbsSampler::theta() const {
  Eigen::MatrixXd theta(static_cast<Eigen::Index>(docs_.size()), static_cast<Eigen::Index>(k_));
  const double kalpha = static_cast<double>(k_) * alpha_;
  for (std::size_t d = 0; d < docs_.size(); ++d)
    for (std::size_t k = 0; k < k_; ++k)
      theta(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(k)) =
          (ndk_[d * k_ + k] + alpha_) / (static_cast<double>(docs_[d].size()) + kalpha);
  return theta;
}

namespace {

// Returns the model and the final doc x topic counts.
std::pair<TopicModel, std::vector<std::uint32_t>> run(const std::vector<std::vector<std::uint32_t>>& docs,
                                                      std::vector<std::string> vocabulary, const LdaOptions& o) {
  if (vocabulary.empty()) throw DomainError("topic model over an empty vocabulary");
  if (o.topics > vocabulary.size())
    throw ConfigError("cannot fit " + std::to_string(o.topics) + " topics over " + std::to_string(vocabulary.size()) +
                      " terms");
  TopicModel m;
  m.k = o.topics;
  m.alpha = o.alpha.value_or(50.0 / static_cast<double>(o.topics));
  m.beta = o.beta;
  m.seed = o.seed;
  m.iterations = o.iterations;
  GibbsSampler sampler(docs, vocabulary.size(), o.topics, m.alpha, m.beta, o.seed);
  for (std::size_t it = 0; it < o.iterations; ++it) sampler.sweep();
  m.vocabulary = std::move(vocabulary);
  m.phi = sampler.phi();
  m.theta = sampler.theta();
  return {std::move(m), sampler.doc_topic_counts()};
}

}  // namespace

TopicModel fit_lda(const std::vector<std::vector<std::uint32_t>>& docs, std::vector<std::string> vocabulary,
                   const LdaOptions& options) {
  TopicModel m = run(docs, std::move(vocabulary), options).first;
  for (std::size_t d = 0; d < docs.size(); ++d) m.unit_ids.push_back(std::to_string(d));
  m.documents = m.unit_ids;
  m.document_theta = m.theta;
  return m;
}

TopicModel fit_lda(const corpus::Corpus& corpus, const LdaOptions& options, Diagnostics* diag) {
  if (options.chunk_tokens == 0) throw ConfigError("LDA chunk size must be positive");
  std::set<std::string> terms;
  std::vector<std::vector<const std::string*>> filtered(corpus.size());
  for (std::size_t d = 0; d < corpus.size(); ++d)
    for (std::size_t i = 0; i < corpus[d].word_count(); ++i) {
      const auto& t = corpus[d].word(i);
      if (t.pos != corpus::Pos::Noun && t.pos != corpus::Pos::Adj) continue;
      filtered[d].push_back(&t.normalized);
      terms.insert(t.normalized);
    }
  std::vector<std::string> vocabulary(terms.begin(), terms.end());
  std::unordered_map<std::string, std::uint32_t> id;
  for (std::size_t i = 0; i < vocabulary.size(); ++i) id.emplace(vocabulary[i], static_cast<std::uint32_t>(i));

  std::vector<std::vector<std::uint32_t>> units;
  std::vector<std::string> unit_ids;
  std::vector<std::size_t> unit_doc;
  for (std::size_t d = 0; d < corpus.size(); ++d) {
    if (filtered[d].empty()) warn(diag, "document '" + corpus[d].id + "' has no noun or adjective tokens");
    for (std::size_t b = 0, c = 0; b < filtered[d].size(); b += options.chunk_tokens, ++c) {
      const std::size_t e = std::min(filtered[d].size(), b + options.chunk_tokens);
      std::vector<std::uint32_t> ids;
      for (std::size_t i = b; i < e; ++i) ids.push_back(id.at(*filtered[d][i]));
      units.push_back(std::move(ids));
      unit_ids.push_back(corpus[d].id + "#" + std::to_string(c));
      unit_doc.push_back(d);
    }
  }

  auto [m, ndk] = run(units, std::move(vocabulary), options);
  m.unit_ids = std::move(unit_ids);
  for (const auto& doc : corpus) m.documents.push_back(doc.id);

  // program-level theta from pooled chunk counts
  const auto k = static_cast<Eigen::Index>(m.k);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(corpus.size()), k);
  Eigen::VectorXd lengths = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(corpus.size()));
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto d = static_cast<Eigen::Index>(unit_doc[u]);
    for (std::size_t t = 0; t < m.k; ++t) counts(d, static_cast<Eigen::Index>(t)) += ndk[u * m.k + t];
    lengths(d) += static_cast<double>(units[u].size());
  }
  m.document_theta.resize(static_cast<Eigen::Index>(corpus.size()), k);
  for (Eigen::Index d = 0; d < counts.rows(); ++d)
    m.document_theta.row(d) = (counts.row(d).array() + m.alpha) / (lengths(d) + static_cast<double>(m.k) * m.alpha);

  m.metadata["unit"] = "chunks of " + std::to_string(options.chunk_tokens) + " noun/adjective tokens";
  m.metadata["sampler"] = "collapsed Gibbs, single final sample";
  m.metadata["units"] = std::to_string(m.unit_ids.size());
  return m;
}

std::vector<std::size_t> top_topics(const Eigen::VectorXd& theta, std::size_t n, Diagnostics* diag) {
  const auto k = static_cast<std::size_t>(theta.size());
  if (n > k) {
    warn(diag, "requested " + std::to_string(n) + " topics, model has " + std::to_string(k));
    n = k;
  }
  std::vector<std::size_t> ids(k);
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return theta(static_cast<Eigen::Index>(a)) > theta(static_cast<Eigen::Index>(b));
  });
  ids.resize(n);
  return ids;
}

std::vector<std::size_t> top_topics(const TopicModel& model, std::size_t document, std::size_t n, Diagnostics* diag) {
  if (document >= static_cast<std::size_t>(model.document_theta.rows())) throw DomainError("document index out of range");
  return top_topics(Eigen::VectorXd(model.document_theta.row(static_cast<Eigen::Index>(document)).transpose()), n, diag);
}

std::vector<std::pair<std::string, double>> topic_terms(const TopicModel& model, std::size_t topic, std::size_t n) {
  if (topic >= model.k) throw DomainError("topic " + std::to_string(topic) + " out of range");
  const auto row = model.phi.row(static_cast<Eigen::Index>(topic));
  std::vector<std::size_t> ids(model.vocabulary.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return row(static_cast<Eigen::Index>(a)) > row(static_cast<Eigen::Index>(b));
  });
  ids.resize(std::min(n, ids.size()));
  std::vector<std::pair<std::string, double>> out;
  if (ids.empty()) return out;
  const double top = row(static_cast<Eigen::Index>(ids[0]));
  for (std::size_t i : ids) out.emplace_back(model.vocabulary[i], row(static_cast<Eigen::Index>(i)) / top);
  return out;
}

nlohmann::json to_json(const TopicModel& m, std::size_t terms_per_topic, std::size_t top_n) {
  nlohmann::json j;
  j["k"] = m.k;
  j["alpha"] = m.alpha;
  j["beta"] = m.beta;
  j["seed"] = m.seed;
  j["iterations"] = m.iterations;
  j["metadata"] = m.metadata;
  auto topics = nlohmann::json::array();
  for (std::size_t t = 0; t < m.k; ++t) {
    auto terms = nlohmann::json::array();
    for (const auto& [term, w] : topic_terms(m, t, terms_per_topic)) terms.push_back({term, w});
    topics.push_back({{"id", t}, {"terms", std::move(terms)}});
  }
  j["topics"] = std::move(topics);
  auto docs = nlohmann::json::array();
  for (std::size_t d = 0; d < m.documents.size(); ++d) {
    std::vector<double> theta;
    for (Eigen::Index t = 0; t < m.document_theta.cols(); ++t) theta.push_back(m.document_theta(static_cast<Eigen::Index>(d), t));
    docs.push_back({{"doc_id", m.documents[d]}, {"theta", theta}, {"top_topics", top_topics(m, d, top_n)}});
  }
  j["doc_topics"] = std::move(docs);
  return j;
}

void write_terms_csv(std::ostream& out, const TopicModel& m, std::size_t terms_per_topic) {
  out << "topic,rank,term,weight\n";
  for (std::size_t t = 0; t < m.k; ++t) {
    std::size_t rank = 0;
    for (const auto& [term, w] : topic_terms(m, t, terms_per_topic))
      out << t << ',' << ++rank << ',' << csv::escape(term) << ',' << csv::number(w) << '\n';
  }
}

void write_document_topics_csv(std::ostream& out, const TopicModel& m) {
  out << "doc_id";
  for (std::size_t t = 0; t < m.k; ++t) out << ",topic_" << t;
  out << '\n';
  for (std::size_t d = 0; d < m.documents.size(); ++d) {
    out << csv::escape(m.documents[d]);
    for (std::size_t t = 0; t < m.k; ++t)
      out << ',' << csv::number(m.document_theta(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(t)));
    out << '\n';
  }
}

}  // namespace corpuslens::topics
