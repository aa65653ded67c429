// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"
#include "corpuslens/text.hpp"
#include "support/generators.hpp"

using namespace corpuslens;
using namespace corpuslens::corpus;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("corpuslens_test_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

}  // namespace

TEST(Utf8, RoundTripAndRejects) {
  const std::string s = "Grüße aus Köln – ß";
  EXPECT_EQ(text::encode_utf8(text::decode_utf8(s)), s);
  EXPECT_THROW(text::decode_utf8("ab\xC3"), EncodingError);
  EXPECT_THROW(text::decode_utf8("\xC0\xAF"), EncodingError);  // overlong
  EXPECT_THROW(text::decode_utf8("\xED\xA0\x80"), EncodingError);  // surrogate
  try {
    text::decode_utf8("abc\xFF");
  } catch (const EncodingError& e) {
    EXPECT_EQ(e.byte_offset(), 3u);
  }
}

TEST(Utf8, CaseFolding) {
  EXPECT_EQ(text::to_lower_utf8("ÄÖÜ Straße"), "äöü straße");
  EXPECT_EQ(text::count_letters(text::decode_utf8("Öl-2x")), 3u);
}

TEST(SplitSentences, TwoTerminalMarks) {
  EXPECT_EQ(split_sentences("A b. C d!"), (std::vector<std::string>{"A b.", "C d!"}));
}

TEST(SplitSentences, AbbreviationSuppressesSplit) {
  EXPECT_EQ(split_sentences("z. B. hier.").size(), 1u);
  EXPECT_EQ(split_sentences("Das gilt z. B. für Kinder. Und mehr.").size(), 2u);
  EXPECT_EQ(split_sentences("Wir sind am 3. Oktober da. Gut.").size(), 2u);
  EXPECT_EQ(split_sentences("Wir nennen z. B. Kinder und d. h. Eltern.").size(), 1u);
  EXPECT_EQ(split_sentences("Das sagte J. Schmidt gestern.").size(), 1u);
}

TEST(SplitSentences, EmptyAndWhitespace) {
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_TRUE(split_sentences("   \n ").empty());
}

TEST(SplitSentences, NoSplitBeforeLowercase) {
  EXPECT_EQ(split_sentences("Es gibt 3.5 Mio. das ist gut. Ja").size(), 2u);
}

TEST(SplitSentences, RoundTripModuloWhitespace) {
  Rng rng(5);
  const std::vector<std::string> pieces{"Das", "Haus", "ist", "groß.", "Wir", "bauen!", "Warum?", "z.", "B.",
                                        "Kinder", "\n", "und", "usw.", "Ende:", "„Zitat.“", "Mehr"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t n = rng.below(30);
    for (std::size_t i = 0; i < n; ++i) text += pieces[rng.below(pieces.size())] + (rng.below(4) == 0 ? "  " : " ");
    std::string joined;
    for (const auto& s : split_sentences(text)) joined += s + " ";
    EXPECT_EQ(text::collapse_whitespace(joined), text::collapse_whitespace(text)) << "trial " << trial;
  }
}

TEST(Tokenize, CompoundsNumbersAbbreviations) {
  const auto& abbr = AbbreviationList::german();
  EXPECT_EQ(tokenize("Die CDU/CSU-Fraktion zahlt 1.000,50 Euro, z.B. heute.", abbr),
            (std::vector<std::string>{"Die", "CDU", "/", "CSU-Fraktion", "zahlt", "1.000,50", "Euro", ",", "z.B.",
                                      "heute", "."}));
  EXPECT_EQ(tokenize("Warte...", abbr), (std::vector<std::string>{"Warte", "..."}));
}

TEST(Syllables, RuleTraces) {
  EXPECT_EQ(count_syllables("Haus"), 1u);
  EXPECT_EQ(count_syllables("Partei"), 2u);
  EXPECT_EQ(count_syllables("Bundestagswahl"), 4u);
  EXPECT_EQ(count_syllables("Bier"), 1u);
  EXPECT_EQ(count_syllables("Quelle"), 2u);
  EXPECT_EQ(count_syllables("Häuser"), 2u);
  EXPECT_EQ(count_syllables("Boot"), 1u);
  EXPECT_EQ(count_syllables("xyz"), 1u);
  EXPECT_EQ(count_syllables("pst"), 0u);
}

TEST(Tagging, LexiconHeuristicsPunct) {
  TagLexicon lex;
  lex.insert("haus", Pos::Noun);
  EXPECT_EQ(tag_word("Haus", lex, true), Pos::Noun);
  const Pos schnell = tag_word("schnell", TagLexicon::german(), false);
  EXPECT_TRUE(schnell == Pos::Adj || schnell == Pos::Adv);
  EXPECT_EQ(tag_word(",", lex, false), Pos::Punct);
  EXPECT_EQ(tag_word("Freiheit", lex, false), Pos::Noun);
  EXPECT_EQ(tag_word("arbeiten", lex, false), Pos::Verb);
  EXPECT_EQ(tag_word("freundlich", lex, false), Pos::Adj);
}

TEST(Tagging, TotalAndDeterministic) {
  Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    const auto w = text::encode_utf8(gen::string(rng, 10, U"abcdefghijklmnopqrstuvwxyzäöüßABCÄ.,;-"));
    if (w.empty()) continue;
    EXPECT_EQ(tag_word(w, TagLexicon::german(), i % 2 == 0), tag_word(w, TagLexicon::german(), i % 2 == 0));
  }
}

TEST(Tagging, ParseTagNames) {
  EXPECT_EQ(parse_tag("NN"), Pos::Noun);
  EXPECT_EQ(parse_tag("NE"), Pos::Noun);
  EXPECT_EQ(parse_tag("VVFIN"), Pos::Verb);
  EXPECT_EQ(parse_tag("ADJA"), Pos::Adj);
  EXPECT_EQ(parse_tag("$."), Pos::Punct);
  EXPECT_EQ(parse_tag("ADV"), Pos::Adv);
  EXPECT_EQ(parse_tag("ART"), Pos::Other);
  EXPECT_FALSE(parse_tag("bogus").has_value());
}

TEST(Document, TwoSentencesSixWords) {
  const auto d = build_document("d", "Das Haus ist groß. Wir bauen.");
  ASSERT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(d.word_count(), 6u);
  std::size_t tokens = 0;
  for (const auto& s : d.sentences) tokens += s.tokens.size();
  EXPECT_EQ(tokens, 8u);
}

TEST(Document, EmptyFileIsAnError) {
  EXPECT_THROW(load_document(temp_file("empty.txt", ""), "e"), EmptyDocumentError);
  EXPECT_THROW(load_document(temp_file("blank.txt", " \n\t"), "e"), EmptyDocumentError);
  EXPECT_THROW(load_document("/nonexistent/x.txt", "x"), ResourceError);
}

TEST(Document, LoadsFromFile) {
  const auto d = load_document(temp_file("doc.txt", "Der Hund bellt. Die Katze schläft."), "doc");
  EXPECT_EQ(d.id, "doc");
  EXPECT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(d.sentences[1].index, 1u);
}

TEST(Chunks, PartitionSizes) {
  const auto c = make_chunks(2500, 1000);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].size(), 1000u);
  EXPECT_EQ(c[1].size(), 1000u);
  EXPECT_EQ(c[2].size(), 500u);
  EXPECT_TRUE(make_chunks(0, 10).empty());
  EXPECT_THROW(make_chunks(5, 0), ConfigError);
}

TEST(Chunks, PartitionProperty) {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = rng.below(5000), size = 1 + rng.below(700);
    const auto c = make_chunks(n, size);
    std::size_t sum = 0, expect_begin = 0;
    for (const auto& ch : c) {
      EXPECT_EQ(ch.begin, expect_begin);
      expect_begin = ch.end;
      sum += ch.size();
    }
    EXPECT_EQ(sum, n);
    EXPECT_EQ(c.size(), (n + size - 1) / size);
  }
}

TEST(Document, ChunksCoverWordsOnly) {
  std::string text;
  for (int i = 0; i < 30; ++i) text += "Wir bauen ein Haus, sagt sie. ";
  ParseOptions o;
  o.chunk_size = 7;
  const auto d = build_document("x", text, o);
  std::size_t sum = 0;
  for (const auto& c : d.chunks) sum += c.size();
  EXPECT_EQ(sum, d.word_count());
  EXPECT_EQ(d.word_count(), 180u);
  EXPECT_EQ(d.chunks.size(), 26u);
}

TEST(Stats, MatchesBruteForceRecount) {
  const auto d = build_document("x", "Das Haus ist groß. Wir bauen heute ein neues Haus! Warum?");
  const auto s = global_stats(d);
  std::size_t words = 0, syl = 0;
  for (const auto& sent : d.sentences)
    for (const auto& t : sent.tokens)
      if (t.pos != Pos::Punct) {
        ++words;
        syl += count_syllables(t.surface);
      }
  EXPECT_EQ(s.n_sentences, 3u);
  EXPECT_EQ(s.n_words, words);
  EXPECT_DOUBLE_EQ(s.mean_word_syllables, static_cast<double>(syl) / static_cast<double>(words));
  EXPECT_DOUBLE_EQ(s.mean_sentence_words, static_cast<double>(words) / 3.0);
}

TEST(ReadingTime, Identities) {
  EXPECT_EQ(reading_time_hours(69000, 200), 5.75);
  EXPECT_EQ(reading_time_hours(0, 200), 0.0);
  EXPECT_NEAR(reading_time_hours(23000, 200), 1.9167, 1e-4);
  EXPECT_THROW(reading_time_hours(10, 0), DomainError);
}

TEST(Pretagged, LoadsSentencesAndRejectsBadTags) {
  const auto p = temp_file("tagged.tsv", "Das\tART\nHaus\tNN\n.\t$.\n\nWir\tPPER\nbauen\tVVFIN\n");
  const auto d = load_pretagged_document(p, "t");
  ASSERT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(d.sentences[0].tokens[1].pos, Pos::Noun);
  EXPECT_EQ(d.sentences[1].tokens[1].pos, Pos::Verb);
  EXPECT_EQ(d.word_count(), 4u);
  const auto bad = temp_file("bad.tsv", "Das\tART\nHaus\n");
  try {
    load_pretagged(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Abbreviations, LoadFromFile) {
  const auto p = temp_file("abbr.txt", "# comment\nvgl.\n\nBzw.\n");
  const auto a = AbbreviationList::load(p);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(a.contains("bzw."));
  EXPECT_EQ(split_sentences("Siehe vgl. Anhang.", a).size(), 1u);
}
