// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "corpuslens/features.hpp"
#include "corpuslens/kernels.hpp"

namespace corpuslens::features {

namespace {

// Adds each label's unit vector to `centroid` and returns how many were used.
std::size_t add_unit_labels(const resources::VectorStore& store, const std::vector<std::string>& labels,
                            const std::string& category, std::vector<double>& centroid, Diagnostics* diag) {
  centroid.assign(store.dimension(), 0.0);
  std::size_t used = 0;
  for (const auto& label : labels) {
    const auto v = store.find(label);
    if (!v) {
      warn(diag, category + " label '" + label + "' not in vector store, dropped");
      continue;
    }
    const double n2 = kernels::squared_norm(*v);
    if (!(n2 > 0.0)) {
      warn(diag, category + " label '" + label + "' has a zero vector, dropped");
      continue;
    }
    kernels::accumulate(centroid, *v, 1.0 / std::sqrt(n2));
    ++used;
  }
  if (used > 0)
    for (double& x : centroid) x /= static_cast<double>(used);
  return used;
}

}  // namespace

SentimentModel::SentimentModel(const resources::VectorStore& store, const resources::LabelSet& labels,
                               Diagnostics* diag)
    : store_(&store) {
  n_pos_ = add_unit_labels(store, labels.positive, "positive", pos_, diag);
  n_neg_ = add_unit_labels(store, labels.negative, "negative", neg_, diag);
  if (n_pos_ == 0) throw ConfigError("none of the positive labels is in the vector store");
  if (n_neg_ == 0) throw ConfigError("none of the negative labels is in the vector store");
  for (const auto& [name, words] : labels.emotions) {
    std::vector<double> c;
    if (add_unit_labels(store, words, name, c, diag) > 0)
      emotions_.emplace(name, std::move(c));
    else
      warn(diag, "no '" + name + "' label is in the vector store");
  }
}

std::optional<double> SentimentModel::against(std::string_view word, const std::vector<double>& centroid) const {
  const auto v = store_->find(word);
  if (!v) return std::nullopt;
  const double n2 = kernels::squared_norm(*v);
  if (!(n2 > 0.0)) return std::nullopt;
  thread_local std::vector<double> buf;
  buf.assign(v->begin(), v->end());
  return kernels::dot(std::span<const double>(buf), std::span<const double>(centroid)) / std::sqrt(n2);
}

std::optional<double> SentimentModel::aap(std::string_view word) const {
  const auto p = against(word, pos_);
  if (!p) return std::nullopt;
  return *p - *against(word, neg_);
}

std::optional<double> SentimentModel::emotion(std::string_view word, const std::string& name) const {
  const auto it = emotions_.find(name);
  if (it == emotions_.end()) throw ConfigError("no labels available for emotion '" + name + "'");
  return against(word, it->second);
}

std::optional<double> aap(std::string_view word, const resources::VectorStore& store,
                          const resources::LabelSet& labels) {
  resources::LabelSet polar;
  polar.positive = labels.positive;
  polar.negative = labels.negative;
  return SentimentModel(store, polar).aap(word);
}

namespace {
bool pos_matches(corpus::Pos p, PosFilter f) {
  switch (f) {
    case PosFilter::All: return corpus::is_content(p);
    case PosFilter::Nouns: return p == corpus::Pos::Noun;
    case PosFilter::Verbs: return p == corpus::Pos::Verb;
  }
  return false;
}

template <class Score>
std::optional<double> content_mean(const corpus::Sentence& s, PosFilter filter, Score&& score) {
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t i : s.content_words) {
    const auto& t = s.tokens[i];
    if (!pos_matches(t.pos, filter)) continue;
    if (const auto v = score(t)) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}
}  // namespace

std::optional<double> sentence_aap(const corpus::Sentence& s, const SentimentModel& model, PosFilter filter) {
  const bool fold = model.store().case_folded();
  return content_mean(s, filter, [&](const corpus::Token& t) { return model.aap(lookup_key(t, fold)); });
}

std::optional<double> pnr(const corpus::Sentence& s, const SentimentModel& model, PnrMode mode) {
  const bool fold = model.store().case_folded();
  std::size_t pos = 0, neg = 0, found = 0;
  for (std::size_t i : s.content_words) {
    const auto v = model.aap(lookup_key(s.tokens[i], fold));
    if (!v) continue;
    ++found;
    if (*v > 0) ++pos;
    if (*v < 0) ++neg;
  }
  if (found == 0) return std::nullopt;
  if (mode == PnrMode::Raw) {
    if (neg == 0) return std::nullopt;
    return static_cast<double>(pos) / static_cast<double>(neg);
  }
  return static_cast<double>(pos + 1) / static_cast<double>(neg + 1);
}

std::optional<double> emotion_score(const corpus::Sentence& s, const SentimentModel& model,
                                    const std::string& emotion) {
  const bool fold = model.store().case_folded();
  return content_mean(s, PosFilter::All,
                      [&](const corpus::Token& t) { return model.emotion(lookup_key(t, fold), emotion); });
}

std::optional<double> norms_feature(const corpus::Sentence& s, const resources::NormsLexicon& lexicon,
                                    resources::NormField field) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& t : s.tokens) {
    if (!t.is_word()) continue;
    const auto* scores = lexicon.find(t.surface);
    if (scores == nullptr) continue;
    if (const auto v = scores->get(field)) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace corpuslens::features
