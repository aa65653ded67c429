// SPDX-License-Identifier: Apache-2.0
#include "corpuslens/corpus.hpp"

#include <algorithm>
#include <span>
#include <array>
#include <fstream>
#include <sstream>

#include "corpuslens/text.hpp"

namespace corpuslens::corpus {

namespace {

using text::is_alnum;
using text::is_digit;
using text::is_letter;
using text::is_space;
using text::is_upper;

bool is_terminal(char32_t c) { return c == '.' || c == '!' || c == '?' || c == ':' || c == 0x2026; }

bool is_closing(char32_t c) {
  switch (c) {
    case '"': case '\'': case ')': case ']': case '}':
    case 0x201D: case 0x2019: case 0x201C: case 0xBB: case 0xAB: case 0x203A: case 0x2039:
      return true;
    default:
      return false;
  }
}

bool is_opening(char32_t c) {
  switch (c) {
    case '"': case '\'': case '(': case '[': case '{':
    case 0x201E: case 0x201C: case 0x201A: case 0x2018: case 0xBB: case 0xAB: case 0x203A:
    case 0x2039:
      return true;
    default:
      return false;
  }
}

bool is_hyphen(char32_t c) { return c == '-' || c == 0x2010 || c == 0x2011; }
bool is_apostrophe(char32_t c) { return c == '\'' || c == 0x2019; }

std::string lower_with_period(std::u32string_view word) {
  std::string s = text::encode_utf8(text::to_lower(word));
  s.push_back('.');
  return s;
}

// Word immediately before position `end` (exclusive), stopping at whitespace
// and stripping leading opening punctuation.
std::u32string_view preceding_word(std::u32string_view cps, std::size_t end) {
  std::size_t b = end;
  while (b > 0 && !is_space(cps[b - 1])) --b;
  while (b < end && !is_alnum(cps[b])) ++b;
  return cps.substr(b, end - b);
}

// True when the period at `dot` closes an abbreviation, an initial or an
// ordinal. Spaced forms such as "z. B." match the listed "z.b.".
bool suppresses_break(std::u32string_view cps, std::size_t dot, const AbbreviationList& abbreviations) {
  const std::u32string_view word = preceding_word(cps, dot);
  if (word.empty()) return false;
  if (abbreviations.contains(lower_with_period(word))) return true;
  std::size_t b = dot - word.size();
  while (b > 0 && is_space(cps[b - 1])) --b;
  if (b > 0 && b < dot - word.size() && cps[b - 1] == '.') {
    const std::u32string_view prev = preceding_word(cps, b - 1);
    if (!prev.empty() && abbreviations.contains(text::encode_utf8(text::to_lower(prev)) + "." + lower_with_period(word)))
      return true;
  }
  if (word.size() == 1 && text::is_upper(word[0])) return true;  // initials
  const bool ordinal = word.size() <= 2 && std::all_of(word.begin(), word.end(), is_digit);
  return ordinal;
}

}  // namespace

std::string_view pos_name(Pos p) {
  switch (p) {
    case Pos::Noun: return "NOUN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
    case Pos::Other: return "OTHER";
    case Pos::Punct: return "PUNCT";
  }
  return "OTHER";
}

std::optional<Pos> parse_tag(std::string_view tag) {
  if (tag == "NOUN") return Pos::Noun;
  if (tag == "VERB") return Pos::Verb;
  if (tag == "ADJ") return Pos::Adj;
  if (tag == "ADV") return Pos::Adv;
  if (tag == "OTHER") return Pos::Other;
  if (tag == "PUNCT") return Pos::Punct;
  // STTS
  if (tag == "NN" || tag == "NE") return Pos::Noun;
  if (tag == "ADJA" || tag == "ADJD") return Pos::Adj;
  if (tag == "ADV") return Pos::Adv;
  if (tag == "$," || tag == "$." || tag == "$(") return Pos::Punct;
  static constexpr std::array<std::string_view, 12> verbs = {
      "VVFIN", "VVIMP", "VVINF", "VVIZU", "VVPP", "VAFIN",
      "VAIMP", "VAINF", "VAPP",  "VMFIN", "VMINF", "VMPP"};
  if (std::find(verbs.begin(), verbs.end(), tag) != verbs.end()) return Pos::Verb;
  static constexpr std::array<std::string_view, 34> other = {
      "APPR",  "APPRART", "APPO",   "APZR",  "ART",   "CARD",  "FM",    "ITJ",   "KOUI",
      "KOUS",  "KON",     "KOKOM",  "PDS",   "PDAT",  "PIS",   "PIAT",  "PIDAT", "PPER",
      "PPOSS", "PPOSAT",  "PRELS",  "PRELAT", "PRF",  "PWS",   "PWAT",  "PWAV",  "PAV",
      "PROAV", "PTKZU",   "PTKNEG", "PTKVZ", "PTKANT", "PTKA", "TRUNC"};
  if (std::find(other.begin(), other.end(), tag) != other.end()) return Pos::Other;
  if (tag == "XY") return Pos::Other;
  return std::nullopt;
}

std::size_t Sentence::word_count() const {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.is_word(); }));
}

// ---------------------------------------------------------------------------
// Abbreviations and lexicon

AbbreviationList::AbbreviationList(std::vector<std::string> entries) {
  for (auto& e : entries) {
    std::string s = text::to_lower_utf8(text::trim(e));
    if (s.empty()) continue;
    if (s.back() != '.') s.push_back('.');
    entries_.insert(std::move(s));
  }
}

AbbreviationList AbbreviationList::load(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    entries.emplace_back(t);
  }
  return AbbreviationList(std::move(entries));
}

bool AbbreviationList::contains(std::string_view s) const {
  return entries_.find(std::string(s)) != entries_.end();
}

void TagLexicon::insert(std::string word, Pos tag) {
  entries_[text::to_lower_utf8(word)] = tag;
}

std::optional<Pos> TagLexicon::find(std::string_view normalized) const {
  const auto it = entries_.find(std::string(normalized));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

TagLexicon TagLexicon::load(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  TagLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path.string(), lineno, "expected word<TAB>tag");
    std::string word(text::trim(std::string_view(line).substr(0, tab)));
    auto rest = std::string_view(line).substr(tab + 1);
    rest = rest.substr(0, rest.find('\t'));
    const auto tag = parse_tag(text::trim(rest));
    if (word.empty() || !tag)
      throw ParseError(path.string(), lineno, "malformed lexicon entry '" + line + "'");
    lex.insert(std::move(word), *tag);
  }
  return lex;
}

// ---------------------------------------------------------------------------
// Sentence splitting

std::vector<std::string> split_sentences(std::string_view input, const AbbreviationList& abbreviations) {
  const std::u32string cps = text::decode_utf8(input);
  const std::u32string_view view(cps);
  const std::size_t n = cps.size();
  std::vector<std::string> out;

  auto emit = [&](std::size_t b, std::size_t e) {
    while (b < e && is_space(cps[b])) ++b;
    while (e > b && is_space(cps[e - 1])) --e;
    if (e > b) out.push_back(text::encode_utf8(view.substr(b, e - b)));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(cps[i])) {
      ++i;
      continue;
    }
    std::size_t e = i;
    while (e < n && is_terminal(cps[e])) ++e;
    const bool single_period = (e - i == 1) && cps[i] == '.';
    while (e < n && is_closing(cps[e])) ++e;

    bool boundary = false;
    if (e == n) {
      boundary = true;
    } else if (is_space(cps[e])) {
      std::size_t k = e;
      while (k < n && is_space(cps[k])) ++k;
      if (k == n) {
        boundary = true;
      } else {
        while (k < n && is_opening(cps[k])) ++k;
        boundary = k < n && is_upper(cps[k]);
      }
    }
    if (boundary && single_period && suppresses_break(view, i, abbreviations))
      boundary = false;

    if (boundary) {
      emit(start, e);
      start = e;
    }
    i = e;
  }
  emit(start, n);
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  return split_sentences(text, AbbreviationList::german());
}

// ---------------------------------------------------------------------------
// Tokenization

std::vector<std::string> tokenize(std::string_view sentence, const AbbreviationList& abbreviations) {
  const std::u32string cps = text::decode_utf8(sentence);
  const std::u32string_view view(cps);
  const std::size_t n = cps.size();
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < n) {
    const char32_t c = cps[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_alnum(c)) {
      std::size_t e = i + 1;
      for (;;) {
        while (e < n && is_alnum(cps[e])) ++e;
        if (e + 1 < n && is_alnum(cps[e + 1])) {
          const char32_t sep = cps[e];
          const bool joins = is_hyphen(sep) || (is_apostrophe(sep) && is_letter(cps[e - 1])) ||
                             ((sep == '.' || sep == ',') && is_digit(cps[e - 1]) && is_digit(cps[e + 1])) ||
                             // inner periods of dotted abbreviations like z.B.
                             (sep == '.' && is_letter(cps[e - 1]) && e - i == 1);
          if (joins) {
            e += 1;
            continue;
          }
        }
        break;
      }
      // Truncated compound ("Klima- und Umweltkosten").
      if (e < n && is_hyphen(cps[e]) && (e + 1 == n || is_space(cps[e + 1])) && is_letter(cps[e - 1]))
        ++e;
      if (e < n && cps[e] == '.') {
        const auto word = view.substr(i, e - i);
        if (abbreviations.contains(lower_with_period(word)) && word.size() > 1) ++e;
        else if (word.find('.') != std::u32string_view::npos) ++e;  // z.B. with final period
      }
      out.push_back(text::encode_utf8(view.substr(i, e - i)));
      i = e;
      continue;
    }
    std::size_t e = i + 1;
    if (c == '.')
      while (e < n && cps[e] == '.') ++e;
    out.push_back(text::encode_utf8(view.substr(i, e - i)));
    i = e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Syllables

namespace {

bool is_vowel(char32_t c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
    case 0xE4: case 0xF6: case 0xFC:                       // ä ö ü
    case 0xE0: case 0xE1: case 0xE2: case 0xE8: case 0xE9:  // à á â è é
    case 0xEA: case 0xEB: case 0xEE: case 0xEF: case 0xF4: case 0xFB:
      return true;
    default:
      return false;
  }
}

bool is_vowel_pair(char32_t a, char32_t b) {
  switch (a) {
    case 'e': return b == 'i' || b == 'u' || b == 'e';
    case 'a': return b == 'i' || b == 'u' || b == 'a';
    case 0xE4: return b == 'u';  // äu
    case 'i': return b == 'e';
    case 'o': return b == 'o';
    default: return false;
  }
}

}  // namespace

std::uint32_t count_syllables(std::string_view word) {
  const std::u32string w = text::to_lower(text::decode_utf8(word));
  std::uint32_t groups = 0;
  bool any_vowel = false;
  std::size_t i = 0;
  while (i < w.size()) {
    const char32_t c = w[i];
    if (!is_vowel(c)) {
      ++i;
      continue;
    }
    any_vowel = true;
    if (c == 'u' && i > 0 && w[i - 1] == 'q') {
      ++i;
      continue;
    }
    ++groups;
    i += (i + 1 < w.size() && is_vowel_pair(c, w[i + 1])) ? 2 : 1;
  }
  if (groups == 0 && any_vowel) groups = 1;
  return groups;
}

// ---------------------------------------------------------------------------
// Tagging

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool any_suffix(std::string_view w, std::span<const std::string_view> suffixes) {
  for (auto s : suffixes)
    if (ends_with(w, s)) return true;
  return false;
}

// Inflected adjective forms: base, -e, -en, -er, -es, -em.
std::vector<std::string_view> adjective_stems(std::string_view w) {
  std::vector<std::string_view> out{w};
  for (std::string_view inf : {"en", "er", "es", "em", "e"})
    if (ends_with(w, inf) && w.size() > inf.size() + 2) out.push_back(w.substr(0, w.size() - inf.size()));
  return out;
}

constexpr std::string_view kNounSuffixes[] = {
    "ungen", "ung",   "heiten", "heit",  "keiten", "keit", "schaften", "schaft", "tionen",
    "tion",  "täten", "tät",    "ismus", "nisse",  "nis",  "linge",    "ling",   "tum",
    "ment",  "enz",   "anz",    "ik",    "ität"};
constexpr std::string_view kAdjSuffixes[] = {
    "lich", "ig", "isch", "bar", "sam", "los", "voll", "haft", "iv", "al", "ell", "ös", "är", "end"};
constexpr std::string_view kAdvSuffixes[] = {"weise", "mals", "wärts", "lings",
                                                                 "dings"};
constexpr std::string_view kVerbSuffixes[] = {"ieren", "ierte", "ierten", "iert",
                                                                  "ierst"};
constexpr std::string_view kInfinitiveSuffixes[] = {"en", "ern", "eln"};

}  // namespace

Pos tag_word(std::string_view surface, const TagLexicon& lexicon, bool sentence_initial) {
  const std::u32string cps = text::decode_utf8(surface);
  if (cps.empty() || std::none_of(cps.begin(), cps.end(), [](char32_t c) { return is_alnum(c); }))
    return Pos::Punct;
  if (std::none_of(cps.begin(), cps.end(), [](char32_t c) { return is_letter(c); })) return Pos::Other;

  const std::string norm = text::encode_utf8(text::to_lower(cps));
  if (auto hit = lexicon.find(norm)) return *hit;
  for (auto stem : adjective_stems(norm)) {
    if (stem.size() == norm.size()) continue;
    if (auto hit = lexicon.find(stem); hit && *hit == Pos::Adj) return Pos::Adj;
  }

  const bool capitalized = is_upper(cps.front());
  if (capitalized && !sentence_initial) return Pos::Noun;
  if (any_suffix(norm, kNounSuffixes)) return Pos::Noun;
  if (capitalized) return Pos::Noun;
  if (any_suffix(norm, kAdvSuffixes)) return Pos::Adv;
  if (any_suffix(norm, kVerbSuffixes)) return Pos::Verb;
  for (auto stem : adjective_stems(norm))
    if (any_suffix(stem, kAdjSuffixes)) return Pos::Adj;
  if (any_suffix(norm, kInfinitiveSuffixes)) return Pos::Verb;
  return Pos::Other;
}

void pos_tag(std::vector<Token>& tokens, const TagLexicon& lexicon) {
  bool initial = true;
  for (auto& t : tokens) {
    t.pos = tag_word(t.surface, lexicon, initial);
    if (t.pos == Pos::Punct) {
      t.syllables = 0;
    } else {
      initial = false;
    }
  }
}

Token make_token(std::string surface, Pos pos) {
  Token t;
  const std::u32string cps = text::decode_utf8(surface);
  t.normalized = text::encode_utf8(text::to_lower(cps));
  t.letters = static_cast<std::uint32_t>(text::count_letters(cps));
  t.pos = pos;
  t.syllables = pos == Pos::Punct ? 0 : count_syllables(surface);
  t.surface = std::move(surface);
  return t;
}

std::vector<std::vector<Token>> load_pretagged(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  text::decode_utf8(content);  // validates
  std::istringstream in(content);
  std::vector<std::vector<Token>> sentences(1);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      if (!sentences.back().empty()) sentences.emplace_back();
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw ParseError(path.string(), lineno, "expected surface<TAB>tag");
    auto rest = std::string_view(line).substr(tab + 1);
    rest = rest.substr(0, rest.find('\t'));
    const auto tag = parse_tag(text::trim(rest));
    if (!tag) throw ParseError(path.string(), lineno, "unknown tag '" + std::string(rest) + "'");
    sentences.back().push_back(make_token(line.substr(0, tab), *tag));
  }
  if (sentences.back().empty()) sentences.pop_back();
  return sentences;
}

// ---------------------------------------------------------------------------
// Documents

std::vector<Chunk> make_chunks(std::size_t n_words, std::size_t chunk_size) {
  if (chunk_size == 0) throw ConfigError("chunk_size must be positive");
  std::vector<Chunk> chunks;
  for (std::size_t b = 0; b < n_words; b += chunk_size) chunks.push_back({b, std::min(n_words, b + chunk_size)});
  return chunks;
}

namespace {

void finalize(Document& doc, std::size_t chunk_size) {
  doc.words.clear();
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    auto& sent = doc.sentences[s];
    sent.index = s;
    sent.content_words.clear();
    for (std::size_t t = 0; t < sent.tokens.size(); ++t) {
      const Token& tok = sent.tokens[t];
      if (tok.is_content()) sent.content_words.push_back(t);
      if (tok.is_word())
        doc.words.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t)});
    }
  }
  doc.chunks = make_chunks(doc.words.size(), chunk_size);
}

}  // namespace

Document build_document(std::string id, std::string_view content, const ParseOptions& options) {
  const auto& abbreviations = options.abbreviations ? *options.abbreviations : AbbreviationList::german();
  const auto& lexicon = options.lexicon ? *options.lexicon : TagLexicon::german();
  text::decode_utf8(content);  // reports the byte offset of bad input up front

  Document doc;
  doc.id = std::move(id);
  for (auto& sentence_text : split_sentences(content, abbreviations)) {
    Sentence s;
    for (auto& surface : tokenize(sentence_text, abbreviations)) s.tokens.push_back(make_token(std::move(surface), Pos::Other));
    pos_tag(s.tokens, lexicon);
    s.text = std::move(sentence_text);
    doc.sentences.push_back(std::move(s));
  }
  finalize(doc, options.chunk_size);
  if (doc.words.empty()) throw EmptyDocumentError(doc.id);
  return doc;
}

Document build_document(std::string id, std::vector<std::vector<Token>> tagged, const ParseOptions& options) {
  Document doc;
  doc.id = std::move(id);
  for (auto& tokens : tagged) {
    if (tokens.empty()) continue;
    Sentence s;
    for (const auto& t : tokens) {
      if (!s.text.empty()) s.text.push_back(' ');
      s.text += t.surface;
    }
    s.tokens = std::move(tokens);
    doc.sentences.push_back(std::move(s));
  }
  finalize(doc, options.chunk_size);
  if (doc.words.empty()) throw EmptyDocumentError(doc.id);
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ResourceError("read failure on '" + path.string() + "'");
  return ss.str();
}

Document load_document(const std::filesystem::path& path, std::string id, const ParseOptions& options) {
  const std::string content = read_file(path);
  return build_document(std::move(id), content, options);
}

Document load_pretagged_document(const std::filesystem::path& path, std::string id,
                                 const ParseOptions& options) {
  return build_document(std::move(id), load_pretagged(path), options);
}

CorpusStats global_stats(const Document& doc) {
  CorpusStats st;
  st.id = doc.id;
  st.n_sentences = doc.sentences.size();
  st.n_words = doc.words.size();
  std::size_t syllables = 0;
  for (std::size_t i = 0; i < doc.words.size(); ++i) syllables += doc.word(i).syllables;
  if (st.n_words > 0) st.mean_word_syllables = static_cast<double>(syllables) / static_cast<double>(st.n_words);
  if (st.n_sentences > 0)
    st.mean_sentence_words = static_cast<double>(st.n_words) / static_cast<double>(st.n_sentences);
  return st;
}

double reading_time_hours(std::size_t n_words, double wpm) {
  if (!(wpm > 0.0)) throw DomainError("reading rate must be positive");
  return (static_cast<double>(n_words) / wpm) / 60.0;
}

}  // namespace corpuslens::corpus
