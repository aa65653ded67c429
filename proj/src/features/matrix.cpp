// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "corpuslens/csv.hpp"
#include "corpuslens/features.hpp"
#include "corpuslens/parallel.hpp"

namespace corpuslens::features {

std::array<std::string, kFeatureCount> feature_names(std::string_view extra_name) {
  return {"AAP_all",        "AAP_nouns",      "AAP_verbs",       "ims_valence", "pnr",
          "arousal",        "anger",          "disgust",         "fear",        "sadness",
          "concreteness",   "imageability",   "word_length",     "syllables",   "odc",
          "sonority",       "sentence_length", "n_content_words", "phrase_density", "ssi",
          "content_word_overlap", "sentence_similarity", std::string(extra_name)};
}

const std::vector<std::string>& extra_feature_choices() {
  static const std::vector<std::string> choices{"mean_log_frequency", "type_token_ratio"};
  return choices;
}

std::optional<std::size_t> FeatureMatrix::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  return std::nullopt;
}

std::vector<std::string> FeatureMatrix::documents() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& d : doc_ids)
    if (seen.insert(d).second) out.push_back(d);
  return out;
}

FeatureMatrix aggregate_by_document(const FeatureMatrix& m) {
  FeatureMatrix out;
  out.columns = m.columns;
  out.metadata = m.metadata;
  const auto docs = m.documents();
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < docs.size(); ++i) slot.emplace(docs[i], i);
  const std::size_t c = m.cols();
  std::vector<double> sum(docs.size() * c, 0.0);
  std::vector<std::size_t> cnt(docs.size() * c, 0);
  out.doc_ids = docs;
  out.sentence_index.assign(docs.size(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::size_t d = slot.at(m.doc_ids[r]);
    ++out.sentence_index[d];
    for (std::size_t j = 0; j < c; ++j) {
      const double v = m.at(r, j);
      if (is_missing(v)) continue;
      sum[d * c + j] += v;
      ++cnt[d * c + j];
    }
  }
  out.values.resize(sum.size());
  for (std::size_t k = 0; k < sum.size(); ++k)
    out.values[k] = cnt[k] == 0 ? kMissing : sum[k] / static_cast<double>(cnt[k]);
  return out;
}

namespace {

template <class T>
double mean_or_missing(double sum, T n) {
  return n == 0 ? kMissing : sum / static_cast<double>(n);
}

double value_or_missing(const std::optional<double>& v) { return v ? *v : kMissing; }

struct WordCaches {
  // keyed by store lookup key
  std::unordered_map<std::string, std::optional<double>> aap;
  std::unordered_map<std::string, std::array<std::optional<double>, 5>> emotion;
  // keyed by normalized form
  std::unordered_map<std::string, std::optional<double>> odc;
  std::unordered_map<std::string, double> sonority;
  std::unordered_map<std::string, std::size_t> frequency;
};

template <class Map, class Fn>
void fill_parallel(Map& map, unsigned threads, Fn&& compute) {
  std::vector<typename Map::value_type*> slots;
  slots.reserve(map.size());
  for (auto& kv : map) slots.push_back(&kv);
  parallel_for(slots.size(), threads, [&](std::size_t i) { slots[i]->second = compute(slots[i]->first); });
}

}  // namespace

FeatureMatrix build_feature_matrix(const corpus::Corpus& corpus, const FeatureResources& res,
                                   const FeatureOptions& options, Diagnostics* diag) {
  const auto& choices = extra_feature_choices();
  if (std::find(choices.begin(), choices.end(), options.extra_feature) == choices.end())
    throw ConfigError("unknown extra feature '" + options.extra_feature + "'");
  const auto names = feature_names(options.extra_feature);
  for (const auto& d : options.disabled)
    if (std::find(names.begin(), names.end(), d) == names.end())
      throw ConfigError("cannot disable unknown feature '" + d + "'");

  std::array<bool, kFeatureCount> on{};
  for (std::size_t c = 0; c < kFeatureCount; ++c) on[c] = options.disabled.count(names[c]) == 0;
  auto require = [&](std::size_t c, bool ok, const char* what) {
    if (on[c] && !ok) throw ConfigError("feature '" + names[c] + "' requires " + what);
  };

  const bool have_vectors = res.vectors != nullptr;
  for (std::size_t c : {kAapAll, kAapNouns, kAapVerbs, kPnr, kArousal, kAnger, kDisgust, kFear, kSadness})
    require(c, have_vectors && res.labels != nullptr, "word vectors and label lists");
  for (std::size_t c : {kImsValence, kConcreteness, kImageability}) require(c, res.norms != nullptr, "a norms lexicon");
  require(kSentenceSimilarity, res.sentence_embeddings != nullptr || have_vectors,
          "sentence embeddings or word vectors");

  const bool need_sentiment = on[kAapAll] || on[kAapNouns] || on[kAapVerbs] || on[kPnr];
  const std::array<std::size_t, 5> emotion_cols{kArousal, kAnger, kDisgust, kFear, kSadness};
  const auto& emotion_list = resources::emotion_names();
  const bool need_emotion = std::any_of(emotion_cols.begin(), emotion_cols.end(), [&](std::size_t c) { return on[c]; });

  std::optional<SentimentModel> model;
  if (need_sentiment || need_emotion) model.emplace(*res.vectors, *res.labels, diag);
  for (std::size_t e = 0; e < 5; ++e)
    require(emotion_cols[e], !on[emotion_cols[e]] || model->has_emotion(emotion_list[e]),
            ("labels for '" + emotion_list[e] + "' found in the vector store").c_str());

  std::optional<ReferenceVocabulary> own_reference;
  const ReferenceVocabulary* reference = res.reference;
  if (on[kOdc] && reference == nullptr) {
    own_reference = ReferenceVocabulary::from_corpus(corpus, options.odc_reference_size);
    reference = &*own_reference;
  }

  // Per-type caches, filled once and then read by every sentence.
  const bool fold = have_vectors && res.vectors->case_folded();
  WordCaches cache;
  for (const auto& doc : corpus)
    for (std::size_t i = 0; i < doc.word_count(); ++i) {
      const auto& t = doc.word(i);
      ++cache.frequency[t.normalized];
      if (t.letters > 0) {
        if (on[kOdc]) cache.odc.emplace(t.normalized, std::nullopt);
        if (on[kSonority]) cache.sonority.emplace(t.normalized, 0.0);
      }
      if (t.is_content() && model) {
        if (need_sentiment) cache.aap.emplace(lookup_key(t, fold), std::nullopt);
        if (need_emotion) cache.emotion.emplace(lookup_key(t, fold), std::array<std::optional<double>, 5>{});
      }
    }
  const unsigned threads = std::max(1u, options.threads);
  if (need_sentiment) fill_parallel(cache.aap, threads, [&](const std::string& w) { return model->aap(w); });
  if (need_emotion)
    fill_parallel(cache.emotion, threads, [&](const std::string& w) {
      std::array<std::optional<double>, 5> out{};
      for (std::size_t e = 0; e < 5; ++e)
        if (on[emotion_cols[e]]) out[e] = model->emotion(w, emotion_list[e]);
      return out;
    });
  if (on[kOdc]) fill_parallel(cache.odc, threads, [&](const std::string& w) { return odc(w, *reference); });
  std::size_t unknown_graphemes = 0;
  if (on[kSonority]) {
    for (auto& [w, v] : cache.sonority) v = sonority_score(w, &unknown_graphemes);
    if (unknown_graphemes > 0)
      warn(diag, std::to_string(unknown_graphemes) + " letters without a sonority value were scored 0");
  }

  // Sentence vectors for the similarity column.
  struct RowRef {
    const corpus::Document* doc;
    std::size_t sentence;
  };
  std::vector<RowRef> rows;
  for (const auto& doc : corpus)
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) rows.push_back({&doc, s});

  const bool use_imported = res.sentence_embeddings != nullptr;
  std::vector<std::optional<std::vector<float>>> centroids;
  if (on[kSentenceSimilarity] && !use_imported) {
    centroids.resize(rows.size());
    parallel_for(rows.size(), threads, [&](std::size_t r) {
      centroids[r] = content_centroid(rows[r].doc->sentences[rows[r].sentence], *res.vectors);
    });
  }
  auto sentence_vec = [&](std::size_t r) -> std::optional<std::span<const float>> {
    if (!on[kSentenceSimilarity]) return std::nullopt;
    if (use_imported) return res.sentence_embeddings->find(rows[r].doc->id, rows[r].doc->sentences[rows[r].sentence].index);
    if (!centroids[r]) return std::nullopt;
    return std::span<const float>(*centroids[r]);
  };

  FeatureMatrix m;
  m.columns.assign(names.begin(), names.end());
  m.doc_ids.resize(rows.size());
  m.sentence_index.resize(rows.size());
  m.values.assign(rows.size() * kFeatureCount, kMissing);

  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const auto& doc = *rows[r].doc;
    const auto& s = doc.sentences[rows[r].sentence];
    const bool has_next = rows[r].sentence + 1 < doc.sentences.size();
    m.doc_ids[r] = doc.id;
    m.sentence_index[r] = s.index;
    double* row = &m.values[r * kFeatureCount];

    if (need_sentiment) {
      double sum[3] = {0, 0, 0};
      std::size_t n[3] = {0, 0, 0};
      std::size_t pos = 0, neg = 0;
      for (std::size_t i : s.content_words) {
        const auto& t = s.tokens[i];
        const auto& v = cache.aap.at(lookup_key(t, fold));
        if (!v) continue;
        sum[0] += *v;
        ++n[0];
        if (t.pos == corpus::Pos::Noun) sum[1] += *v, ++n[1];
        if (t.pos == corpus::Pos::Verb) sum[2] += *v, ++n[2];
        if (*v > 0) ++pos;
        if (*v < 0) ++neg;
      }
      row[kAapAll] = mean_or_missing(sum[0], n[0]);
      row[kAapNouns] = mean_or_missing(sum[1], n[1]);
      row[kAapVerbs] = mean_or_missing(sum[2], n[2]);
      if (n[0] > 0) {
        if (options.pnr_mode == PnrMode::Smoothed)
          row[kPnr] = static_cast<double>(pos + 1) / static_cast<double>(neg + 1);
        else if (neg > 0)
          row[kPnr] = static_cast<double>(pos) / static_cast<double>(neg);
      }
    }
    if (need_emotion) {
      for (std::size_t e = 0; e < 5; ++e) {
        if (!on[emotion_cols[e]]) continue;
        double sum = 0;
        std::size_t n = 0;
        for (std::size_t i : s.content_words) {
          const auto& v = cache.emotion.at(lookup_key(s.tokens[i], fold))[e];
          if (v) sum += *v, ++n;
        }
        row[emotion_cols[e]] = mean_or_missing(sum, n);
      }
    }
    if (res.norms != nullptr) {
      if (on[kImsValence]) row[kImsValence] = value_or_missing(norms_feature(s, *res.norms, resources::NormField::Valence));
      if (on[kConcreteness])
        row[kConcreteness] = value_or_missing(norms_feature(s, *res.norms, resources::NormField::Concreteness));
      if (on[kImageability])
        row[kImageability] = value_or_missing(norms_feature(s, *res.norms, resources::NormField::Imageability));
    }

    double letters = 0, syllables = 0, odc_sum = 0, son_sum = 0, logf = 0;
    std::size_t words = 0, odc_n = 0, son_n = 0;
    std::unordered_set<std::string_view> types;
    for (const auto& t : s.tokens) {
      if (!t.is_word()) continue;
      ++words;
      letters += t.letters;
      syllables += t.syllables;
      logf += std::log10(static_cast<double>(cache.frequency.at(t.normalized)));
      types.insert(t.normalized);
      if (t.letters == 0) continue;
      if (on[kOdc]) {
        if (const auto& v = cache.odc.at(t.normalized)) odc_sum += *v, ++odc_n;
      }
      if (on[kSonority]) son_sum += cache.sonority.at(t.normalized), ++son_n;
    }
    row[kWordLength] = mean_or_missing(letters, words);
    row[kSyllables] = mean_or_missing(syllables, words);
    row[kOdc] = mean_or_missing(odc_sum, odc_n);
    row[kSonority] = mean_or_missing(son_sum, son_n);
    if (options.extra_feature == "mean_log_frequency")
      row[kExtra] = mean_or_missing(logf, words);
    else
      row[kExtra] = mean_or_missing(static_cast<double>(types.size()), words);

    const auto sc = sentence_complexity_features(s, has_next ? &doc.sentences[rows[r].sentence + 1] : nullptr,
                                                 sentence_vec(r), has_next ? sentence_vec(r + 1) : std::nullopt);
    row[kSentenceLength] = sc.sentence_length;
    row[kContentWords] = sc.n_content_words;
    row[kPhraseDensity] = sc.phrase_density;
    row[kSsi] = sc.ssi;
    row[kOverlap] = value_or_missing(sc.content_word_overlap);
    row[kSentenceSimilarity] = value_or_missing(sc.sentence_similarity);

    for (std::size_t c = 0; c < kFeatureCount; ++c)
      if (!on[c]) row[c] = kMissing;
  });

  m.metadata["extra_feature"] = options.extra_feature;
  m.metadata["pnr_mode"] = options.pnr_mode == PnrMode::Smoothed ? "smoothed" : "raw";
  if (on[kOdc]) m.metadata["odc_reference_size"] = std::to_string(reference->size());
  if (on[kSentenceSimilarity]) {
    m.metadata["sentence_similarity_source"] = use_imported ? "imported_embeddings" : "word_vector_centroid";
    if (use_imported) m.metadata["sentence_embedding_coverage"] = csv::number(res.sentence_embeddings->coverage(corpus));
  }
  if (have_vectors) m.metadata["vector_coverage"] = csv::number(resources::coverage_report(corpus, *res.vectors).fraction);
  if (res.norms != nullptr) m.metadata["norms_coverage"] = csv::number(resources::coverage_report(corpus, *res.norms).fraction);
  return m;
}

void write_csv(std::ostream& out, const FeatureMatrix& m, bool aggregate) {
  out << "doc_id," << (aggregate ? "n_sentences" : "sentence_index");
  for (const auto& c : m.columns) out << ',' << csv::escape(c);
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << csv::escape(m.doc_ids[r]) << ',' << m.sentence_index[r];
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << csv::number(m.at(r, c));
    out << '\n';
  }
}

}  // namespace corpuslens::features
