// SPDX-License-Identifier: Apache-2.0
#pragma once

// Per-sentence text features: embedding-based sentiment and emotion scores,
// norm lookups, word-level and sentence-level complexity measures.

#include <array>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"
#include "corpuslens/resources.hpp"

namespace corpuslens::features {

inline constexpr std::size_t kFeatureCount = 23;

/// Column order of every feature matrix. The last slot is the configurable
/// extra feature.
enum Column : std::size_t {
  kAapAll, kAapNouns, kAapVerbs, kImsValence, kPnr,
  kArousal, kAnger, kDisgust, kFear, kSadness,
  kConcreteness, kImageability,
  kWordLength, kSyllables, kOdc, kSonority,
  kSentenceLength, kContentWords, kPhraseDensity, kSsi, kOverlap, kSentenceSimilarity,
  kExtra,
};

/// Names of the 22 fixed columns followed by `extra_name`.
std::array<std::string, kFeatureCount> feature_names(std::string_view extra_name = "mean_log_frequency");

/// Extra features understood by build_feature_matrix.
const std::vector<std::string>& extra_feature_choices();

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

// --- sentiment -------------------------------------------------------------

enum class PosFilter { All, Nouns, Verbs };
enum class PnrMode { Smoothed, Raw };

/// Label centroids for one vector store. The mean cosine of a word to a label
/// list equals the word's unit vector dotted with the mean of the unit label
/// vectors, so each list collapses to one centroid.
class SentimentModel {
 public:
  /// Labels absent from the store are dropped (with a warning). Throws
  /// ConfigError if every positive or every negative label is missing.
  SentimentModel(const resources::VectorStore& store, const resources::LabelSet& labels,
                 Diagnostics* diag = nullptr);

  const resources::VectorStore& store() const { return *store_; }

  /// Mean cosine to positive labels minus mean cosine to negative labels;
  /// nullopt when the word is not in the store or has a zero vector.
  std::optional<double> aap(std::string_view word) const;

  bool has_emotion(const std::string& name) const { return emotions_.count(name) != 0; }
  /// Mean cosine to the emotion's labels; nullopt if the word is missing.
  std::optional<double> emotion(std::string_view word, const std::string& name) const;

  std::size_t positive_used() const { return n_pos_; }
  std::size_t negative_used() const { return n_neg_; }

 private:
  std::optional<double> against(std::string_view word, const std::vector<double>& centroid) const;

  const resources::VectorStore* store_;
  std::vector<double> pos_;
  std::vector<double> neg_;
  std::size_t n_pos_ = 0;
  std::size_t n_neg_ = 0;
  std::map<std::string, std::vector<double>> emotions_;
};

std::optional<double> aap(std::string_view word, const resources::VectorStore& store,
                          const resources::LabelSet& labels);

/// Key used to look a token up in a store: normalized form for case-folded
/// stores, surface form otherwise.
inline const std::string& lookup_key(const corpus::Token& t, bool case_folded) {
  return case_folded ? t.normalized : t.surface;
}

std::optional<double> sentence_aap(const corpus::Sentence& s, const SentimentModel& model,
                                   PosFilter filter = PosFilter::All);
/// (positives + 1) / (negatives + 1) over content words found in the store;
/// raw mode drops the +1 and is missing when there are no negatives.
std::optional<double> pnr(const corpus::Sentence& s, const SentimentModel& model,
                          PnrMode mode = PnrMode::Smoothed);
std::optional<double> emotion_score(const corpus::Sentence& s, const SentimentModel& model,
                                    const std::string& emotion);

/// Mean of the field over the sentence's word tokens found in the lexicon.
std::optional<double> norms_feature(const corpus::Sentence& s, const resources::NormsLexicon& lexicon,
                                    resources::NormField field);

// --- word complexity -------------------------------------------------------

/// Unit-cost edit distance over Unicode code points.
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
/// Plain dynamic programming; the reference the fast path is checked against.
std::size_t levenshtein_dp(std::u32string_view a, std::u32string_view b);
/// Bit-parallel distance for patterns up to 64 code points.
std::size_t levenshtein_bitparallel(std::u32string_view pattern, std::u32string_view text);

class ReferenceVocabulary {
 public:
  ReferenceVocabulary() = default;
  explicit ReferenceVocabulary(const std::vector<std::string>& words);

  /// The `size` most frequent lowercased words of the corpus (ties broken
  /// lexicographically). Tokens without letters are ignored.
  static ReferenceVocabulary from_corpus(const corpus::Corpus& corpus, std::size_t size);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::vector<std::u32string>& words() const { return words_; }

 private:
  std::vector<std::u32string> words_;
};

/// Mean edit distance from `word` to every reference word other than itself.
/// Throws ConfigError on an empty reference; nullopt if nothing else remains.
std::optional<double> odc(std::string_view word, const ReferenceVocabulary& reference);

/// Sum of grapheme sonority values divided by the square root of the letter
/// count. "sch" and "ch" count as one fricative grapheme. Unknown letters
/// score 0 and are counted in `unknown` when given. Throws DomainError on a
/// word without letters.
double sonority_score(std::string_view word, std::size_t* unknown = nullptr);

// --- sentence complexity ---------------------------------------------------

struct SentenceComplexity {
  double sentence_length = 0;
  double n_content_words = 0;
  double phrase_density = 0;
  double ssi = 0;
  std::optional<double> content_word_overlap;
  std::optional<double> sentence_similarity;
};

/// Maximal NP (ADJ* NOUN+) and VP (VERB+) runs; any other tag breaks a run.
std::size_t phrase_count(const corpus::Sentence& s);

/// `vec` and `next_vec` are the sentence vectors of this and the following
/// sentence, when available.
SentenceComplexity sentence_complexity_features(const corpus::Sentence& s, const corpus::Sentence* next,
                                                std::optional<std::span<const float>> vec = std::nullopt,
                                                std::optional<std::span<const float>> next_vec = std::nullopt);

/// Mean vector of the sentence's content words found in the store.
std::optional<std::vector<float>> content_centroid(const corpus::Sentence& s,
                                                   const resources::VectorStore& store);

// --- matrix ----------------------------------------------------------------

struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<std::string> doc_ids;       // per row
  std::vector<std::size_t> sentence_index;  // per row; sentence count for aggregates
  std::vector<double> values;             // row-major, NaN = missing
  std::map<std::string, std::string> metadata;

  std::size_t rows() const { return doc_ids.size(); }
  std::size_t cols() const { return columns.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * columns.size() + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * columns.size() + c]; }
  std::optional<double> get(std::size_t r, std::size_t c) const {
    const double v = at(r, c);
    return is_missing(v) ? std::nullopt : std::optional<double>(v);
  }
  std::optional<std::size_t> column(std::string_view name) const;
  /// Distinct document ids in first-appearance order.
  std::vector<std::string> documents() const;
};

/// One row per document holding non-missing column means; sentence_index
/// carries the document's sentence count.
FeatureMatrix aggregate_by_document(const FeatureMatrix& m);

struct FeatureResources {
  const resources::VectorStore* vectors = nullptr;
  const resources::LabelSet* labels = nullptr;
  const resources::NormsLexicon* norms = nullptr;
  const resources::SentenceEmbeddingSet* sentence_embeddings = nullptr;
  const ReferenceVocabulary* reference = nullptr;  // nullptr: built from the corpus
};

struct FeatureOptions {
  PnrMode pnr_mode = PnrMode::Smoothed;
  std::size_t odc_reference_size = 20000;
  std::string extra_feature = "mean_log_frequency";
  std::set<std::string> disabled;  // columns left missing
  unsigned threads = 1;
};

/// Computes every enabled column for every sentence. A requested column whose
/// resource is absent raises ConfigError naming the column.
FeatureMatrix build_feature_matrix(const corpus::Corpus& corpus, const FeatureResources& res,
                                   const FeatureOptions& options = {}, Diagnostics* diag = nullptr);

/// `doc_id,sentence_index,<columns>`; aggregates use `doc_id,n_sentences,...`.
void write_csv(std::ostream& out, const FeatureMatrix& m, bool aggregate = false);

}  // namespace corpuslens::features
