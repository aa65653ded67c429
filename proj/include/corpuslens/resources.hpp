// SPDX-License-Identifier: Apache-2.0
#pragma once

// External numeric resources: word vectors, affective/semantic norms, label
// sets and imported sentence embeddings. Everything here is immutable after
// loading and safe to share between threads.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"

namespace corpuslens::resources {

enum class VectorFormat { TextHeader, Tsv };

std::optional<VectorFormat> parse_vector_format(std::string_view name);

class VectorStore {
 public:
  explicit VectorStore(std::size_t dimension, bool case_fold = true);

  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  bool case_folded() const { return fold_; }

  /// Inserts or replaces. Returns true when an existing entry was replaced.
  bool insert(std::string_view word, std::span<const float> values);

  /// Looks a word up, lowercasing it first when the store is case-folded.
  std::optional<std::span<const float>> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }

  const std::vector<std::string>& words() const { return words_; }
  std::span<const float> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

 private:
  std::string key(std::string_view word) const;

  std::size_t dim_;
  bool fold_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> words_;
  std::vector<float> data_;
};

/// Hit/miss tally for lookups. Kept outside the store so the store stays
/// immutable; callers own one counter per pass.
struct CoverageCounter {
  std::size_t hits = 0;
  std::size_t misses = 0;
  void record(bool hit) { hit ? ++hits : ++misses; }
  std::size_t total() const { return hits + misses; }
  double fraction() const { return total() == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total()); }
};

/// text-header: first line `<vocab> <dim>`, then `word v1 ... vd`.
/// tsv: `word<TAB>v1<TAB>...`, dimension taken from the first row.
/// Duplicate words: last one wins and a warning is emitted. A row with the
/// wrong number of values raises ParseError with its line number.
VectorStore load_vectors(const std::filesystem::path& path, VectorFormat format, bool case_fold = true,
                         Diagnostics* diag = nullptr);

/// u.v / (|u| |v|), clamped to [-1, 1]. Throws DomainError on dimension
/// mismatch and UndefinedError if either vector is zero.
double cosine(std::span<const float> u, std::span<const float> v);
double cosine(std::span<const double> u, std::span<const double> v);

enum class NormField { Concreteness, Imageability, Valence, Arousal };

std::string_view norm_field_name(NormField f);

struct NormScores {
  std::optional<double> concreteness;
  std::optional<double> imageability;
  std::optional<double> valence;
  std::optional<double> arousal;

  std::optional<double> get(NormField f) const;
};

class NormsLexicon {
 public:
  explicit NormsLexicon(bool case_fold = true) : fold_(case_fold) {}

  /// `word<TAB>concreteness<TAB>imageability<TAB>valence<TAB>arousal`, empty
  /// cells allowed. A header line (non-numeric score cells) is skipped.
  static NormsLexicon load(const std::filesystem::path& path, bool case_fold = true,
                           Diagnostics* diag = nullptr);

  void insert(std::string_view word, NormScores scores);
  const NormScores* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }
  /// Number of words with a value for the given field.
  std::size_t field_count(NormField f) const;

 private:
  bool fold_;
  std::unordered_map<std::string, NormScores> entries_;
};

struct LabelSet {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  std::map<std::string, std::vector<std::string>> emotions;  // arousal, anger, disgust, fear, sadness

  /// Small stand-in lists. Real analyses should supply their own files.
  static LabelSet placeholder_german();

  /// Reads positive.txt and negative.txt (required) plus any of
  /// arousal/anger/disgust/fear/sadness.txt found in `dir`.
  static LabelSet load_dir(const std::filesystem::path& dir);

  /// Labels (all categories) absent from the store, as "category:word".
  std::vector<std::string> missing_from(const VectorStore& store) const;
};

/// Reads one word per line; blank lines and '#' comments skipped.
std::vector<std::string> load_word_list(const std::filesystem::path& path);

inline const std::vector<std::string>& emotion_names() {
  static const std::vector<std::string> names{"arousal", "anger", "disgust", "fear", "sadness"};
  return names;
}

class SentenceEmbeddingSet {
 public:
  std::size_t dimension() const { return dim_; }
  std::size_t size() const { return rows_.size(); }

  /// Returns true if an entry was replaced. Throws DomainError on a
  /// dimension different from earlier rows.
  bool insert(const std::string& doc_id, std::size_t sentence_index, std::vector<float> values);
  std::optional<std::span<const float>> find(const std::string& doc_id, std::size_t sentence_index) const;

  /// Fraction of the corpus' sentences that have a vector.
  double coverage(const corpus::Corpus& corpus) const;

 private:
  std::size_t dim_ = 0;
  std::map<std::pair<std::string, std::size_t>, std::vector<float>> rows_;
};

/// JSONL rows {"doc_id", "sentence_index", "vector"}. Rows for documents not
/// in `known_docs` (when given) are dropped with a warning; duplicates keep
/// the last row with a warning; ragged rows raise ParseError.
SentenceEmbeddingSet import_sentence_embeddings(const std::filesystem::path& path,
                                                const std::vector<std::string>* known_docs = nullptr,
                                                Diagnostics* diag = nullptr);

struct DocumentCoverage {
  std::string id;
  std::size_t found = 0;
  std::size_t total = 0;
  double fraction = 0.0;
};

struct CoverageReport {
  std::size_t found = 0;
  std::size_t total = 0;
  double fraction = 0.0;
  std::vector<DocumentCoverage> documents;
};

/// Share of word tokens (punctuation excluded) found in the resource.
CoverageReport coverage_report(const corpus::Corpus& corpus, const VectorStore& store);
CoverageReport coverage_report(const corpus::Corpus& corpus, const NormsLexicon& lexicon);

}  // namespace corpuslens::resources
