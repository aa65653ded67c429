// SPDX-License-Identifier: Apache-2.0
#include "corpuslens/resources.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <set>
#include <sstream>

#include "corpuslens/kernels.hpp"
#include "corpuslens/text.hpp"

namespace corpuslens::resources {

namespace {

// std::from_chars for floating point is not available in every libstdc++ we
// target; strtod on a NUL-terminated copy is the portable fallback.
bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  std::string tmp(s);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tmp.c_str(), &end);
  return end == tmp.c_str() + tmp.size() && errno != ERANGE && std::isfinite(out);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t b = 0;
  for (;;) {
    const auto t = line.find('\t', b);
    out.push_back(line.substr(b, t == std::string_view::npos ? std::string_view::npos : t - b));
    if (t == std::string_view::npos) break;
    b = t + 1;
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::optional<VectorFormat> parse_vector_format(std::string_view name) {
  if (name == "text-header" || name == "text" || name == "word2vec") return VectorFormat::TextHeader;
  if (name == "tsv") return VectorFormat::Tsv;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

VectorStore::VectorStore(std::size_t dimension, bool case_fold) : dim_(dimension), fold_(case_fold) {
  if (dimension == 0) throw DomainError("vector dimension must be positive");
}

std::string VectorStore::key(std::string_view word) const {
  return fold_ ? text::to_lower_utf8(word) : std::string(word);
}

bool VectorStore::insert(std::string_view word, std::span<const float> values) {
  if (values.size() != dim_)
    throw DomainError("vector for '" + std::string(word) + "' has " + std::to_string(values.size()) +
                      " values, expected " + std::to_string(dim_));
  std::string k = key(word);
  if (auto it = index_.find(k); it != index_.end()) {
    std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    return true;
  }
  index_.emplace(k, words_.size());
  words_.push_back(std::move(k));
  data_.insert(data_.end(), values.begin(), values.end());
  return false;
}

std::optional<std::span<const float>> VectorStore::find(std::string_view word) const {
  const auto it = index_.find(key(word));
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

VectorStore load_vectors(const std::filesystem::path& path, VectorFormat format, bool case_fold,
                         Diagnostics* diag) {
  std::istringstream in(corpus::read_file(path));
  const std::string src = path.string();
  std::string line;
  std::size_t lineno = 0;
  std::size_t declared_vocab = 0;
  std::size_t dim = 0;

  if (format == VectorFormat::TextHeader) {
    if (!std::getline(in, line)) throw ParseError(src, 1, "missing '<vocab> <dim>' header");
    ++lineno;
    strip_cr(line);
    const auto f = split_ws(line);
    double v = 0, d = 0;
    if (f.size() != 2 || !parse_double(f[0], v) || !parse_double(f[1], d) || d < 1 || v < 0 ||
        d != std::floor(d) || v != std::floor(v))
      throw ParseError(src, 1, "malformed header, expected '<vocab> <dim>'");
    declared_vocab = static_cast<std::size_t>(v);
    dim = static_cast<std::size_t>(d);
  }

  std::optional<VectorStore> store;
  if (dim > 0) store.emplace(dim, case_fold);
  std::vector<float> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (text::trim(line).empty()) continue;
    const auto fields = format == VectorFormat::Tsv ? split_tabs(line) : split_ws(line);
    if (fields.size() < 2) throw ParseError(src, lineno, "row has no values");
    if (!store) store.emplace(fields.size() - 1, case_fold);
    if (fields.size() - 1 != store->dimension())
      throw ParseError(src, lineno,
                       "row has " + std::to_string(fields.size() - 1) + " values, expected " +
                           std::to_string(store->dimension()));
    values.resize(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      double x = 0;
      if (!parse_double(text::trim(fields[i]), x)) throw ParseError(src, lineno, "non-numeric value");
      values[i - 1] = static_cast<float>(x);
    }
    const std::string word(text::trim(fields[0]));
    if (store->insert(word, values)) warn(diag, src + ":" + std::to_string(lineno) + ": duplicate word '" + word + "', last entry kept");
    ++rows;
  }
  if (!store) throw ParseError(src, lineno, "no vectors found");
  if (format == VectorFormat::TextHeader && rows != declared_vocab)
    warn(diag, src + ": header declares " + std::to_string(declared_vocab) + " words, found " + std::to_string(rows));
  return std::move(*store);
}

namespace {
template <class T>
double cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size())
    throw DomainError("cosine of vectors with dimensions " + std::to_string(u.size()) + " and " +
                      std::to_string(v.size()));
  const double uu = kernels::squared_norm(u);
  const double vv = kernels::squared_norm(v);
  if (!(uu > 0.0) || !(vv > 0.0)) throw UndefinedError("cosine similarity with a zero vector is undefined");
  const double c = kernels::dot(u, v) / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}
}  // namespace

double cosine(std::span<const float> u, std::span<const float> v) { return cosine_impl(u, v); }
double cosine(std::span<const double> u, std::span<const double> v) { return cosine_impl(u, v); }

// ---------------------------------------------------------------------------

std::string_view norm_field_name(NormField f) {
  switch (f) {
    case NormField::Concreteness: return "concreteness";
    case NormField::Imageability: return "imageability";
    case NormField::Valence: return "valence";
    case NormField::Arousal: return "arousal";
  }
  return "";
}

std::optional<double> NormScores::get(NormField f) const {
  switch (f) {
    case NormField::Concreteness: return concreteness;
    case NormField::Imageability: return imageability;
    case NormField::Valence: return valence;
    case NormField::Arousal: return arousal;
  }
  return std::nullopt;
}

void NormsLexicon::insert(std::string_view word, NormScores scores) {
  entries_[fold_ ? text::to_lower_utf8(word) : std::string(word)] = scores;
}

const NormScores* NormsLexicon::find(std::string_view word) const {
  const auto it = entries_.find(fold_ ? text::to_lower_utf8(word) : std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t NormsLexicon::field_count(NormField f) const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                [f](const auto& e) { return e.second.get(f).has_value(); }));
}

NormsLexicon NormsLexicon::load(const std::filesystem::path& path, bool case_fold, Diagnostics* diag) {
  std::istringstream in(corpus::read_file(path));
  const std::string src = path.string();
  NormsLexicon lex(case_fold);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 5) throw ParseError(src, lineno, "expected 5 tab-separated columns");
    std::optional<double> scores[4];
    bool numeric = true;
    for (int i = 0; i < 4; ++i) {
      const auto cell = text::trim(fields[static_cast<std::size_t>(i) + 1]);
      if (cell.empty()) continue;
      double v = 0;
      if (!parse_double(cell, v)) {
        numeric = false;
        break;
      }
      scores[i] = v;
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw ParseError(src, lineno, "non-numeric or non-finite score");
    }
    first = false;
    const std::string word(text::trim(fields[0]));
    if (word.empty()) throw ParseError(src, lineno, "empty word");
    if (lex.find(word) != nullptr) warn(diag, src + ":" + std::to_string(lineno) + ": duplicate word '" + word + "', last entry kept");
    lex.insert(word, NormScores{scores[0], scores[1], scores[2], scores[3]});
  }
  return lex;
}

// ---------------------------------------------------------------------------

std::vector<std::string> load_word_list(const std::filesystem::path& path) {
  std::istringstream in(corpus::read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

LabelSet LabelSet::placeholder_german() {
  LabelSet s;
  s.positive = {"liebe",   "freude",   "glück",     "frieden",      "hoffnung",
                "vertrauen", "freundschaft", "harmonie", "wärme",    "zuneigung",
                "begeisterung", "lachen", "schönheit", "erfolg",     "geborgenheit"};
  s.negative = {"hass",    "angst",    "tod",      "krieg",      "schmerz",
                "wut",     "ekel",     "trauer",   "gewalt",     "elend",
                "bosheit", "verbrechen", "leid",  "katastrophe", "hässlich"};
  s.emotions["arousal"] = {"aufregung", "erregung", "spannung", "leidenschaft", "panik"};
  s.emotions["anger"] = {"wut", "zorn", "ärger", "empörung"};
  s.emotions["disgust"] = {"ekel", "abscheu", "widerwille"};
  s.emotions["fear"] = {"angst", "furcht", "panik", "schrecken"};
  s.emotions["sadness"] = {"trauer", "kummer", "traurigkeit", "leid"};
  return s;
}

LabelSet LabelSet::load_dir(const std::filesystem::path& dir) {
  LabelSet s;
  s.positive = load_word_list(dir / "positive.txt");
  s.negative = load_word_list(dir / "negative.txt");
  if (s.positive.empty() || s.negative.empty())
    throw ConfigError("label lists in '" + dir.string() + "' must each contain at least one word");
  for (const auto& name : emotion_names()) {
    const auto p = dir / (name + ".txt");
    if (std::filesystem::exists(p)) s.emotions[name] = load_word_list(p);
  }
  return s;
}

std::vector<std::string> LabelSet::missing_from(const VectorStore& store) const {
  std::vector<std::string> out;
  auto check = [&](const std::string& cat, const std::vector<std::string>& words) {
    for (const auto& w : words)
      if (!store.contains(w)) out.push_back(cat + ":" + w);
  };
  check("positive", positive);
  check("negative", negative);
  for (const auto& [name, words] : emotions) check(name, words);
  return out;
}

// ---------------------------------------------------------------------------

bool SentenceEmbeddingSet::insert(const std::string& doc_id, std::size_t sentence_index, std::vector<float> values) {
  if (values.empty()) throw DomainError("empty sentence vector");
  if (dim_ == 0) dim_ = values.size();
  if (values.size() != dim_)
    throw DomainError("sentence vector has " + std::to_string(values.size()) + " values, expected " +
                      std::to_string(dim_));
  auto [it, inserted] = rows_.insert_or_assign({doc_id, sentence_index}, std::move(values));
  return !inserted;
}

std::optional<std::span<const float>> SentenceEmbeddingSet::find(const std::string& doc_id,
                                                                 std::size_t sentence_index) const {
  const auto it = rows_.find({doc_id, sentence_index});
  if (it == rows_.end()) return std::nullopt;
  return std::span<const float>(it->second);
}

double SentenceEmbeddingSet::coverage(const corpus::Corpus& corpus) const {
  std::size_t total = 0, found = 0;
  for (const auto& doc : corpus)
    for (const auto& s : doc.sentences) {
      ++total;
      if (find(doc.id, s.index)) ++found;
    }
  return total == 0 ? 0.0 : static_cast<double>(found) / static_cast<double>(total);
}

SentenceEmbeddingSet import_sentence_embeddings(const std::filesystem::path& path,
                                                const std::vector<std::string>* known_docs,
                                                Diagnostics* diag) {
  std::istringstream in(corpus::read_file(path));
  const std::string src = path.string();
  std::set<std::string> known;
  if (known_docs) known.insert(known_docs->begin(), known_docs->end());
  SentenceEmbeddingSet set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (text::trim(line).empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(src, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!row.is_object() || !row.contains("doc_id") || !row["doc_id"].is_string() ||
        !row.contains("sentence_index") || !row["sentence_index"].is_number_unsigned() ||
        !row.contains("vector") || !row["vector"].is_array())
      throw ParseError(src, lineno, "row must have string doc_id, unsigned sentence_index and vector array");
    const std::string doc = row["doc_id"].get<std::string>();
    const auto idx = row["sentence_index"].get<std::size_t>();
    std::vector<float> values;
    values.reserve(row["vector"].size());
    for (const auto& x : row["vector"]) {
      if (!x.is_number()) throw ParseError(src, lineno, "non-numeric vector component");
      const double v = x.get<double>();
      if (!std::isfinite(v)) throw ParseError(src, lineno, "non-finite vector component");
      values.push_back(static_cast<float>(v));
    }
    if (values.empty()) throw ParseError(src, lineno, "empty vector");
    if (set.dimension() != 0 && values.size() != set.dimension())
      throw ParseError(src, lineno,
                       "vector has " + std::to_string(values.size()) + " values, expected " +
                           std::to_string(set.dimension()));
    if (known_docs && known.count(doc) == 0) {
      warn(diag, src + ":" + std::to_string(lineno) + ": unknown document '" + doc + "', row ignored");
      continue;
    }
    if (set.insert(doc, idx, std::move(values)))
      warn(diag, src + ":" + std::to_string(lineno) + ": duplicate row for (" + doc + ", " +
                     std::to_string(idx) + "), last row kept");
  }
  return set;
}

// ---------------------------------------------------------------------------

namespace {
CoverageReport coverage_impl(const corpus::Corpus& corpus, const std::function<bool(const corpus::Token&)>& has) {
  CoverageReport r;
  for (const auto& doc : corpus) {
    DocumentCoverage dc;
    dc.id = doc.id;
    for (std::size_t i = 0; i < doc.word_count(); ++i) {
      ++dc.total;
      if (has(doc.word(i))) ++dc.found;
    }
    dc.fraction = dc.total == 0 ? 0.0 : static_cast<double>(dc.found) / static_cast<double>(dc.total);
    r.found += dc.found;
    r.total += dc.total;
    r.documents.push_back(std::move(dc));
  }
  r.fraction = r.total == 0 ? 0.0 : static_cast<double>(r.found) / static_cast<double>(r.total);
  return r;
}
}  // namespace

CoverageReport coverage_report(const corpus::Corpus& corpus, const VectorStore& store) {
  return coverage_impl(corpus, [&](const corpus::Token& t) { return store.contains(t.surface); });
}

CoverageReport coverage_report(const corpus::Corpus& corpus, const NormsLexicon& lexicon) {
  return coverage_impl(corpus, [&](const corpus::Token& t) { return lexicon.find(t.surface) != nullptr; });
}

}  // namespace corpuslens::resources
