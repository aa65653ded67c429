// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "corpuslens/corpus.hpp"
#include "corpuslens/resources.hpp"
#include "support/files.hpp"
#include "support/generators.hpp"

using namespace corpuslens;
using namespace corpuslens::resources;

namespace {

std::vector<float> fv(std::initializer_list<float> v) { return std::vector<float>(v); }

bool has_warning(const Diagnostics& d, const std::string& needle) {
  for (const auto& w : d.warnings())
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(VectorStore, ParsesTextHeader) {
  testfs::TempDir dir;
  const auto p = dir.write("v.txt", "2 3\na 1 0 0\nb 0 1 0\n");
  const auto s = load_vectors(p, VectorFormat::TextHeader);
  EXPECT_EQ(s.dimension(), 3u);
  EXPECT_EQ(s.size(), 2u);
  const auto b = s.find("b");
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ((*b)[1], 1.0f);
}

TEST(VectorStore, ParsesTsvAndCaseFolds) {
  testfs::TempDir dir;
  const auto p = dir.write("v.tsv", "Haus\t0.5\t1\nBaum\t2\t-1\n");
  const auto folded = load_vectors(p, VectorFormat::Tsv, true);
  EXPECT_TRUE(folded.contains("HAUS"));
  const auto exact = load_vectors(p, VectorFormat::Tsv, false);
  EXPECT_TRUE(exact.contains("Haus"));
  EXPECT_FALSE(exact.contains("haus"));
}

TEST(VectorStore, RaggedRowReportsLine) {
  testfs::TempDir dir;
  const auto p = dir.write("v.txt", "2 3\na 1 0 0\nb 0 1\n");
  try {
    load_vectors(p, VectorFormat::TextHeader);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(load_vectors(dir.write("w.txt", "1 2\na 1 x\n"), VectorFormat::TextHeader), ParseError);
  EXPECT_THROW(load_vectors(dir.write("h.txt", "two 2\na 1 1\n"), VectorFormat::TextHeader), ParseError);
  EXPECT_THROW(load_vectors(dir.path() / "missing.txt", VectorFormat::TextHeader), ResourceError);
}

TEST(VectorStore, DuplicateLastWinsWithWarning) {
  testfs::TempDir dir;
  Diagnostics diag;
  const auto s = load_vectors(dir.write("v.txt", "2 2\na 1 0\na 0 1\n"), VectorFormat::TextHeader, true, &diag);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ((*s.find("a"))[1], 1.0f);
  EXPECT_TRUE(has_warning(diag, "duplicate"));
}

TEST(VectorStore, LoadingIsIdempotent) {
  testfs::TempDir dir;
  const auto p = dir.write("v.txt", "3 2\nx 0.25 1\ny -3 2\nz 7 0.125\n");
  const auto a = load_vectors(p, VectorFormat::TextHeader);
  const auto b = load_vectors(p, VectorFormat::TextHeader);
  ASSERT_EQ(a.words(), b.words());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_TRUE(std::equal(a.row(i).begin(), a.row(i).end(), b.row(i).begin()));
}

TEST(VectorStore, DimensionMismatchOnInsert) {
  VectorStore s(2);
  const auto v = fv({1, 2, 3});
  EXPECT_THROW(s.insert("a", v), DomainError);
}

TEST(Coverage, CounterRecordsMisses) {
  VectorStore s(1);
  const auto v = fv({1});
  s.insert("da", v);
  CoverageCounter c;
  c.record(s.contains("da"));
  c.record(s.contains("absent"));
  EXPECT_EQ(c.hits, 1u);
  EXPECT_EQ(c.misses, 1u);
  EXPECT_DOUBLE_EQ(c.fraction(), 0.5);
}

TEST(Coverage, FractionOfWordTokens) {
  std::string text;
  for (int i = 0; i < 20; ++i) text += "w" + std::to_string(i) + " ";
  text += ".";
  const corpus::Corpus c{corpus::build_document("d", text)};
  VectorStore s(1);
  const auto v = fv({1});
  for (int i = 0; i < 11; ++i) s.insert("w" + std::to_string(i), v);
  const auto r = coverage_report(c, s);
  EXPECT_EQ(r.total, 20u);
  EXPECT_EQ(r.found, 11u);
  EXPECT_DOUBLE_EQ(r.fraction, 0.55);

  VectorStore none(1), all(1);
  for (int i = 0; i < 20; ++i) all.insert("w" + std::to_string(i), v);
  EXPECT_DOUBLE_EQ(coverage_report(c, none).fraction, 0.0);
  EXPECT_DOUBLE_EQ(coverage_report(c, all).fraction, 1.0);
}

TEST(Cosine, HandValues) {
  const auto a = fv({1, 0}), b = fv({0, 1}), c = fv({1, 1});
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine(a, b), 0.0);
  EXPECT_NEAR(cosine(c, a), 0.70710678118654752, 1e-7);
  const auto z = fv({0, 0});
  EXPECT_THROW(cosine(a, z), UndefinedError);
  const auto three = fv({1, 0, 0});
  EXPECT_THROW(cosine(a, three), DomainError);
}

TEST(Cosine, Properties) {
  Rng rng(21);
  for (int t = 0; t < 500; ++t) {
    const std::size_t d = 1 + rng.below(40);
    std::vector<double> u(d), v(d);
    for (auto& x : u) x = rng.normal() * std::pow(10.0, rng.uniform(-3, 3));
    for (auto& x : v) x = rng.normal();
    EXPECT_NEAR(cosine(std::span<const double>(u), std::span<const double>(u)), 1.0, 1e-12);
    const double uv = cosine(std::span<const double>(u), std::span<const double>(v));
    EXPECT_EQ(uv, cosine(std::span<const double>(v), std::span<const double>(u)));
    EXPECT_LE(std::abs(uv), 1.0 + 1e-12);
  }
}

TEST(Norms, LoadsWithHeaderAndEmptyCells) {
  testfs::TempDir dir;
  Diagnostics diag;
  const auto p = dir.write("n.tsv", "word\tconc\timg\tval\taro\nHaus\t6.5\t6\t\t2\nBaum\t7\t\t5\t\nhaus\t1\t1\t1\t1\n");
  const auto lex = NormsLexicon::load(p, true, &diag);
  EXPECT_EQ(lex.size(), 2u);
  const auto* h = lex.find("HAUS");
  ASSERT_NE(h, nullptr);
  EXPECT_EQ(h->concreteness, 1.0);  // later duplicate wins
  EXPECT_TRUE(has_warning(diag, "duplicate"));
  const auto* b = lex.find("baum");
  ASSERT_NE(b, nullptr);
  EXPECT_FALSE(b->imageability.has_value());
  EXPECT_EQ(b->get(NormField::Valence), 5.0);
  EXPECT_EQ(lex.field_count(NormField::Imageability), 1u);
  EXPECT_THROW(NormsLexicon::load(dir.write("bad.tsv", "a\t1\t2\t2\t3\nb\t1\tx\t2\t3\n")), ParseError);
}

TEST(Labels, LoadDirectory) {
  testfs::TempDir dir;
  dir.write("labels/positive.txt", "liebe\n# comment\n\nglück\n");
  dir.write("labels/negative.txt", "hass\n");
  dir.write("labels/fear.txt", "angst\n");
  const auto l = LabelSet::load_dir(dir.path() / "labels");
  EXPECT_EQ(l.positive, (std::vector<std::string>{"liebe", "glück"}));
  EXPECT_EQ(l.emotions.count("fear"), 1u);
  EXPECT_EQ(l.emotions.count("anger"), 0u);
  dir.write("empty/positive.txt", "\n");
  dir.write("empty/negative.txt", "hass\n");
  EXPECT_THROW(LabelSet::load_dir(dir.path() / "empty"), ConfigError);
  EXPECT_THROW(LabelSet::load_dir(dir.path() / "nowhere"), Error);
}

TEST(Labels, PlaceholderHasAllCategories) {
  const auto l = LabelSet::placeholder_german();
  EXPECT_FALSE(l.positive.empty());
  EXPECT_FALSE(l.negative.empty());
  for (const auto& e : emotion_names()) EXPECT_EQ(l.emotions.count(e), 1u) << e;
  VectorStore s(1);
  EXPECT_EQ(l.missing_from(s).size(),
            l.positive.size() + l.negative.size() + l.emotions.at("arousal").size() + l.emotions.at("anger").size() +
                l.emotions.at("disgust").size() + l.emotions.at("fear").size() + l.emotions.at("sadness").size());
}

namespace {

std::string row(const std::string& doc, std::size_t idx, std::size_t dim, float base) {
  std::string s = "{\"doc_id\":\"" + doc + "\",\"sentence_index\":" + std::to_string(idx) + ",\"vector\":[";
  for (std::size_t i = 0; i < dim; ++i) s += (i ? "," : "") + std::to_string(base + static_cast<float>(i) * 0.001f);
  return s + "]}\n";
}

}  // namespace

TEST(SentenceEmbeddings, ImportsUniformRows) {
  testfs::TempDir dir;
  const auto p = dir.write("e.jsonl", row("a", 0, 768, 0.1f) + row("a", 1, 768, 0.2f));
  Diagnostics diag;
  const auto set = import_sentence_embeddings(p, nullptr, &diag);
  EXPECT_EQ(set.size(), 2u);
  EXPECT_EQ(set.dimension(), 768u);
  EXPECT_TRUE(diag.empty());
  EXPECT_TRUE(set.find("a", 1).has_value());
  EXPECT_FALSE(set.find("a", 2).has_value());
}

TEST(SentenceEmbeddings, RaggedRowIsAnError) {
  testfs::TempDir dir;
  const auto p = dir.write("e.jsonl", row("a", 0, 768, 0.1f) + row("a", 1, 767, 0.2f));
  try {
    import_sentence_embeddings(p);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(SentenceEmbeddings, DuplicateLastWinsAndUnknownDocsDropped) {
  testfs::TempDir dir;
  const auto p = dir.write("e.jsonl", row("a", 0, 4, 0.1f) + "\n" + row("a", 0, 4, 0.5f) + row("zzz", 0, 4, 0.3f));
  Diagnostics diag;
  const std::vector<std::string> known{"a"};
  const auto set = import_sentence_embeddings(p, &known, &diag);
  EXPECT_EQ(set.size(), 1u);
  EXPECT_FLOAT_EQ((*set.find("a", 0))[0], 0.5f);
  EXPECT_TRUE(has_warning(diag, "duplicate"));
  EXPECT_TRUE(has_warning(diag, "zzz"));
}

TEST(SentenceEmbeddings, MalformedRows) {
  testfs::TempDir dir;
  EXPECT_THROW(import_sentence_embeddings(dir.write("a.jsonl", "{not json}\n")), ParseError);
  EXPECT_THROW(import_sentence_embeddings(dir.write("b.jsonl", "{\"doc_id\":\"a\",\"vector\":[1]}\n")), ParseError);
  EXPECT_THROW(import_sentence_embeddings(dir.write("c.jsonl", "{\"doc_id\":\"a\",\"sentence_index\":-1,\"vector\":[1]}\n")),
               ParseError);
  EXPECT_THROW(import_sentence_embeddings(dir.write("d.jsonl", "{\"doc_id\":\"a\",\"sentence_index\":0,\"vector\":[]}\n")),
               ParseError);
  EXPECT_THROW(
      import_sentence_embeddings(dir.write("e.jsonl", "{\"doc_id\":\"a\",\"sentence_index\":0,\"vector\":[\"x\"]}\n")),
      ParseError);
}

TEST(SentenceEmbeddings, CoverageOfSentences) {
  const corpus::Corpus c{corpus::build_document("a", "Eins ist hier. Zwei ist da. Drei auch.")};
  SentenceEmbeddingSet set;
  set.insert("a", 0, {1.0f, 0.0f});
  set.insert("a", 2, {0.0f, 1.0f});
  EXPECT_NEAR(set.coverage(c), 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(set.insert("a", 2, {1.0f, 1.0f}));
  EXPECT_THROW(set.insert("a", 1, {1.0f}), DomainError);
}
