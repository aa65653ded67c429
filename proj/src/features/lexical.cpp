// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "corpuslens/features.hpp"
#include "corpuslens/text.hpp"

namespace corpuslens::features {

std::size_t levenshtein_dp(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0u : 1u)});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

// Match masks of a pattern of at most 64 code points, with a direct table for
// the Latin-1 range that covers German text.
class BitPattern {
 public:
  explicit BitPattern(std::u32string_view p) : m_(p.size()) {
    low_.fill(0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::uint64_t bit = std::uint64_t{1} << i;
      if (p[i] < 256) {
        low_[p[i]] |= bit;
      } else {
        auto it = std::find_if(high_.begin(), high_.end(), [&](const auto& e) { return e.first == p[i]; });
        if (it == high_.end())
          high_.emplace_back(p[i], bit);
        else
          it->second |= bit;
      }
    }
  }

  std::size_t distance(std::u32string_view text) const {
    if (m_ == 0) return text.size();
    const std::uint64_t last = std::uint64_t{1} << (m_ - 1);
    std::uint64_t pv = m_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_) - 1;
    std::uint64_t mv = 0;
    std::size_t score = m_;
    for (char32_t c : text) {
      const std::uint64_t eq = mask(c);
      const std::uint64_t xv = eq | mv;
      const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
      std::uint64_t ph = mv | ~(xh | pv);
      std::uint64_t mh = pv & xh;
      if (ph & last) ++score;
      if (mh & last) --score;
      ph = (ph << 1) | 1;
      mh <<= 1;
      pv = mh | ~(xv | ph);
      mv = ph & xv;
    }
    return score;
  }

 private:
  std::uint64_t mask(char32_t c) const {
    if (c < 256) return low_[c];
    for (const auto& [k, v] : high_)
      if (k == c) return v;
    return 0;
  }

  std::size_t m_;
  std::array<std::uint64_t, 256> low_{};
  std::vector<std::pair<char32_t, std::uint64_t>> high_;
};

}  // namespace

std::size_t levenshtein_bitparallel(std::u32string_view pattern, std::u32string_view text) {
  if (pattern.size() > 64) throw DomainError("bit-parallel edit distance needs a pattern of at most 64 code points");
  return BitPattern(pattern).distance(text);
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.size() <= 64) return BitPattern(b).distance(a);
  return levenshtein_dp(a, b);
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(std::u32string_view(text::decode_utf8(a)), std::u32string_view(text::decode_utf8(b)));
}

// ---------------------------------------------------------------------------

ReferenceVocabulary::ReferenceVocabulary(const std::vector<std::string>& words) {
  words_.reserve(words.size());
  for (const auto& w : words) words_.push_back(text::to_lower(text::decode_utf8(w)));
}

ReferenceVocabulary ReferenceVocabulary::from_corpus(const corpus::Corpus& corpus, std::size_t size) {
  if (size == 0) throw ConfigError("reference vocabulary size must be positive");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& doc : corpus)
    for (std::size_t i = 0; i < doc.word_count(); ++i) {
      const auto& t = doc.word(i);
      if (t.letters > 0) ++freq[t.normalized];
    }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  if (ranked.size() > size) ranked.resize(size);
  std::vector<std::string> words;
  words.reserve(ranked.size());
  for (auto& [w, n] : ranked) words.push_back(std::move(w));
  return ReferenceVocabulary(words);
}

std::optional<double> odc(std::string_view word, const ReferenceVocabulary& reference) {
  if (reference.empty()) throw ConfigError("orthographic dissimilarity needs a non-empty reference vocabulary");
  const std::u32string w = text::to_lower(text::decode_utf8(word));
  double sum = 0;
  std::size_t n = 0;
  if (w.size() <= 64) {
    const BitPattern pattern(w);
    for (const auto& r : reference.words()) {
      if (r == w) continue;
      sum += static_cast<double>(pattern.distance(r));
      ++n;
    }
  } else {
    for (const auto& r : reference.words()) {
      if (r == w) continue;
      sum += static_cast<double>(levenshtein(std::u32string_view(w), std::u32string_view(r)));
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------

namespace {
int sonority_of(char32_t c) {
  switch (c) {
    case U'p': case U't': case U'k': case U'q': case U'c': return 1;
    case U'b': case U'd': case U'g': return 2;
    case U'f': case U's': case U'ß': case U'h': case U'x': case U'z': case U'v': case U'ç': return 3;
    case U'w': case U'j': return 4;
    case U'm': case U'n': case U'ñ': return 5;
    case U'l': return 6;
    case U'r': return 7;
    case U'i': case U'u': case U'ü': case U'y': case U'í': case U'ì': case U'î': case U'ï':
    case U'ú': case U'ù': case U'û': return 8;
    case U'e': case U'o': case U'ö': case U'ä': case U'é': case U'è': case U'ê': case U'ë':
    case U'ó': case U'ò': case U'ô': return 9;
    case U'a': case U'à': case U'á': case U'â': return 10;
    default: return 0;
  }
}
}  // namespace

double sonority_score(std::string_view word, std::size_t* unknown) {
  const std::u32string w = text::to_lower(text::decode_utf8(word));
  const std::size_t letters = text::count_letters(w);
  if (letters == 0) throw DomainError("sonority of a word without letters");
  double sum = 0;
  for (std::size_t i = 0; i < w.size();) {
    if (w.compare(i, 3, U"sch") == 0) {
      sum += 3;
      i += 3;
      continue;
    }
    if (w.compare(i, 2, U"ch") == 0) {
      sum += 3;
      i += 2;
      continue;
    }
    const char32_t c = w[i++];
    if (!text::is_letter(c)) continue;
    const int s = sonority_of(c);
    if (s == 0 && unknown != nullptr) ++*unknown;
    sum += s;
  }
  return sum / std::sqrt(static_cast<double>(letters));
}

}  // namespace corpuslens::features
