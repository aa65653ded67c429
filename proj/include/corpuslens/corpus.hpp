// SPDX-License-Identifier: Apache-2.0
#pragma once

// Document ingestion: sentence splitting, tokenization, coarse POS tagging,
// letter/syllable counts and fixed-size word chunking.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corpuslens/error.hpp"

namespace corpuslens::corpus {

enum class Pos : std::uint8_t { Noun, Verb, Adj, Adv, Other, Punct };

std::string_view pos_name(Pos p);

/// Accepts the coarse names (NOUN, VERB, ADJ, ADV, OTHER, PUNCT) and the STTS
/// tag set emitted by TreeTagger and SoMaJo-based pipelines.
std::optional<Pos> parse_tag(std::string_view tag);

inline bool is_content(Pos p) {
  return p == Pos::Noun || p == Pos::Verb || p == Pos::Adj || p == Pos::Adv;
}

struct Token {
  std::string surface;
  std::string normalized;  // lowercased surface
  Pos pos = Pos::Other;
  std::uint32_t letters = 0;
  std::uint32_t syllables = 0;

  bool is_word() const { return pos != Pos::Punct; }
  bool is_content() const { return corpus::is_content(pos); }
};

struct Sentence {
  std::size_t index = 0;
  std::string text;
  std::vector<Token> tokens;
  std::vector<std::size_t> content_words;  // indices into tokens, in order

  std::size_t word_count() const;
};

/// Half-open range of word ordinals (punctuation excluded).
struct Chunk {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

struct WordRef {
  std::uint32_t sentence = 0;
  std::uint32_t token = 0;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;
  std::vector<Chunk> chunks;
  std::vector<WordRef> words;  // non-punctuation token stream

  const Token& word(std::size_t ordinal) const {
    const WordRef r = words[ordinal];
    return sentences[r.sentence].tokens[r.token];
  }
  std::size_t word_count() const { return words.size(); }
};

using Corpus = std::vector<Document>;

struct CorpusStats {
  std::string id;
  std::size_t n_sentences = 0;
  std::size_t n_words = 0;
  double mean_word_syllables = 0.0;
  double mean_sentence_words = 0.0;
};

/// Lowercased abbreviations including their trailing period ("z.b.", "usw.").
class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(std::vector<std::string> entries);

  static const AbbreviationList& german();
  /// One abbreviation per line; blank lines and '#' comments ignored.
  static AbbreviationList load(const std::filesystem::path& path);

  bool contains(std::string_view lowercase_with_period) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
};

/// word -> coarse tag lookup. Keys are lowercased.
class TagLexicon {
 public:
  static const TagLexicon& german();
  /// `word<TAB>tag` per line, tag coarse or STTS. Malformed lines raise
  /// ParseError with the line number.
  static TagLexicon load(const std::filesystem::path& path);

  void insert(std::string word, Pos tag);
  std::optional<Pos> find(std::string_view normalized) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Pos> entries_;
};

struct ParseOptions {
  std::size_t chunk_size = 1000;
  const AbbreviationList* abbreviations = nullptr;  // nullptr: built-in German list
  const TagLexicon* lexicon = nullptr;              // nullptr: built-in German lexicon
};

/// Splits at . ! ? : … runs (plus closing quotes/brackets) that are followed
/// by whitespace and an uppercase letter, or by end of text. A single period
/// after a listed abbreviation, a single letter, or a one/two-digit ordinal
/// does not end a sentence. Returned sentences are trimmed.
std::vector<std::string> split_sentences(std::string_view text, const AbbreviationList& abbreviations);
std::vector<std::string> split_sentences(std::string_view text);

/// Word tokens are maximal letter/digit runs; hyphenated compounds, digit
/// groups (1.000, 3,5), inner apostrophes and listed abbreviations stay whole.
/// Every other non-space character is a separate punctuation token, except
/// that runs of periods are kept together.
std::vector<std::string> tokenize(std::string_view sentence, const AbbreviationList& abbreviations);

/// Vowel-grapheme groups. ei ai au eu äu ie (and the long-vowel doubles aa ee
/// oo) are single groups; u after q is not a vowel. At least 1 if the word
/// contains any vowel.
std::uint32_t count_syllables(std::string_view word);

/// Coarse tag of one surface form: lexicon, then capitalization and suffix
/// heuristics, then OTHER. Punctuation-only tokens are always PUNCT.
Pos tag_word(std::string_view surface, const TagLexicon& lexicon, bool sentence_initial);

/// Tags every token in place (lexicon > heuristics > OTHER).
void pos_tag(std::vector<Token>& tokens, const TagLexicon& lexicon);

Token make_token(std::string surface, Pos pos);

/// Pre-tagged TSV (`surface<TAB>tag[<TAB>...]`, blank line = sentence break).
std::vector<std::vector<Token>> load_pretagged(const std::filesystem::path& path);

std::vector<Chunk> make_chunks(std::size_t n_words, std::size_t chunk_size);

Document build_document(std::string id, std::string_view text, const ParseOptions& options = {});
Document build_document(std::string id, std::vector<std::vector<Token>> tagged_sentences,
                        const ParseOptions& options = {});

Document load_document(const std::filesystem::path& path, std::string id,
                       const ParseOptions& options = {});
Document load_pretagged_document(const std::filesystem::path& path, std::string id,
                                 const ParseOptions& options = {});

CorpusStats global_stats(const Document& doc);

/// Hours needed to read n_words at wpm words per minute.
double reading_time_hours(std::size_t n_words, double wpm);

std::string read_file(const std::filesystem::path& path);

}  // namespace corpuslens::corpus
