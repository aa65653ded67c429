// SPDX-License-Identifier: Apache-2.0
#include <set>

#include "corpuslens/features.hpp"
#include "corpuslens/kernels.hpp"

namespace corpuslens::features {

using corpus::Pos;

std::size_t phrase_count(const corpus::Sentence& s) {
  const auto& t = s.tokens;
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < t.size()) {
    const Pos p = t[i].pos;
    if (p == Pos::Adj || p == Pos::Noun) {
      std::size_t j = i;
      while (j < t.size() && t[j].pos == Pos::Adj) ++j;
      if (j < t.size() && t[j].pos == Pos::Noun) {
        while (j < t.size() && t[j].pos == Pos::Noun) ++j;
        ++count;
      }
      i = j;
    } else if (p == Pos::Verb) {
      while (i < t.size() && t[i].pos == Pos::Verb) ++i;
      ++count;
    } else {
      ++i;
    }
  }
  return count;
}

namespace {
std::set<std::string> content_set(const corpus::Sentence& s) {
  std::set<std::string> out;
  for (std::size_t i : s.content_words) out.insert(s.tokens[i].normalized);
  return out;
}
}  // namespace

SentenceComplexity sentence_complexity_features(const corpus::Sentence& s, const corpus::Sentence* next,
                                                std::optional<std::span<const float>> vec,
                                                std::optional<std::span<const float>> next_vec) {
  SentenceComplexity r;
  std::size_t words = 0, syllables = 0;
  for (const auto& t : s.tokens) {
    if (!t.is_word()) continue;
    ++words;
    syllables += t.syllables;
  }
  r.sentence_length = static_cast<double>(words);
  r.n_content_words = static_cast<double>(s.content_words.size());
  r.phrase_density = static_cast<double>(phrase_count(s));
  // tokens x mean syllables, i.e. the syllable total
  r.ssi = words == 0 ? 0.0 : r.sentence_length * (static_cast<double>(syllables) / static_cast<double>(words));
  if (next != nullptr) {
    const auto a = content_set(s);
    const auto b = content_set(*next);
    std::size_t shared = 0;
    for (const auto& w : a) shared += b.count(w);
    r.content_word_overlap = static_cast<double>(shared);
    if (vec && next_vec) {
      try {
        r.sentence_similarity = resources::cosine(*vec, *next_vec);
      } catch (const UndefinedError&) {
      }
    }
  }
  return r;
}

std::optional<std::vector<float>> content_centroid(const corpus::Sentence& s, const resources::VectorStore& store) {
  std::vector<double> acc(store.dimension(), 0.0);
  std::size_t n = 0;
  for (std::size_t i : s.content_words) {
    const auto v = store.find(lookup_key(s.tokens[i], store.case_folded()));
    if (!v) continue;
    kernels::accumulate(acc, *v);
    ++n;
  }
  if (n == 0) return std::nullopt;
  std::vector<float> out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<float>(acc[i] / static_cast<double>(n));
  return out;
}

}  // namespace corpuslens::features
