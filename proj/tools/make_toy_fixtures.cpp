// SPDX-License-Identifier: Apache-2.0
// Regenerates the synthetic resources of the bundled toy corpus: word
// vectors, norms, label lists, sentence embeddings and a config file.
//
//   make_toy_fixtures <toy-dir>
//
// The documents in <toy-dir>/docs are read; everything else is overwritten.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <json.hpp>

#include "corpuslens/corpus.hpp"
#include "corpuslens/resources.hpp"
#include "corpuslens/rng.hpp"

namespace fs = std::filesystem;
using namespace corpuslens;

namespace {

constexpr std::size_t kWordDim = 16;
constexpr std::size_t kSentenceDim = 12;

// Axis 0 carries valence, axes 1..5 the emotion categories.
const std::map<std::string, double>& corpus_valence() {
  static const std::map<std::string, double> v{
      {"zukunft", 0.6},  {"zuversicht", 0.8}, {"freiheit", 0.7},   {"solidarität", 0.5}, {"sicherheit", 0.4},
      {"würde", 0.5},    {"respekt", 0.5},    {"mut", 0.6},        {"gesund", 0.5},      {"gesunde", 0.5},
      {"gute", 0.5},     {"gut", 0.5},        {"fair", 0.4},       {"wohlstand", 0.5},   {"chancen", 0.4},
      {"geschenk", 0.7}, {"zusammenhalt", 0.5}, {"krise", -0.7},   {"klimakrise", -0.6}, {"armut", -0.8},
      {"schande", -0.8}, {"bedroht", -0.6},   {"willkür", -0.6},   {"stich", -0.3},      {"verdrängung", -0.5},
      {"straftätern", -0.7}, {"profit", -0.2}, {"abschiebung", -0.5}, {"wende", -0.1},
  };
  return v;
}

std::vector<double> gaussian(std::uint64_t seed, std::string_view key, std::size_t dim, double scale) {
  Rng rng(derive_seed(seed, key));
  std::vector<double> v(dim);
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

void write_list(const fs::path& p, const std::vector<std::string>& words) {
  std::ofstream out(p);
  for (const auto& w : words) out << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_toy_fixtures <toy-dir>\n";
    return 2;
  }
  const fs::path dir = argv[1];
  std::vector<fs::path> doc_paths;
  for (const auto& e : fs::directory_iterator(dir / "docs"))
    if (e.path().extension() == ".txt") doc_paths.push_back(e.path());
  std::sort(doc_paths.begin(), doc_paths.end());

  corpus::Corpus corpus;
  for (const auto& p : doc_paths) corpus.push_back(corpus::load_document(p, p.stem().string()));

  const auto labels = resources::LabelSet::placeholder_german();
  fs::create_directories(dir / "labels");
  write_list(dir / "labels" / "positive.txt", labels.positive);
  write_list(dir / "labels" / "negative.txt", labels.negative);
  for (const auto& [name, words] : labels.emotions) write_list(dir / "labels" / (name + ".txt"), words);

  std::map<std::string, std::vector<double>> vectors;
  auto ensure = [&](const std::string& w) -> std::vector<double>& {
    auto it = vectors.find(w);
    if (it == vectors.end()) it = vectors.emplace(w, gaussian(7, w, kWordDim, 0.4)).first;
    return it->second;
  };
  std::set<std::string> vocab;
  for (const auto& d : corpus)
    for (std::size_t i = 0; i < d.word_count(); ++i) vocab.insert(d.word(i).normalized);
  for (const auto& w : vocab)
    if (derive_seed(11, w) % 10 != 0) ensure(w);  // roughly 90 % coverage
  for (const auto& w : labels.positive) ensure(w)[0] += 2.0;
  for (const auto& w : labels.negative) ensure(w)[0] -= 2.0;
  std::size_t axis = 1;
  for (const auto& name : resources::emotion_names())
    if (labels.emotions.count(name) != 0) {
      for (const auto& w : labels.emotions.at(name)) ensure(w)[axis] += 2.0;
      ++axis;
    }
  for (const auto& [w, val] : corpus_valence())
    if (vectors.count(w) != 0) vectors[w][0] += 2.0 * val;

  {
    std::ofstream out(dir / "vectors.txt");
    out << vectors.size() << ' ' << kWordDim << '\n';
    for (const auto& [w, v] : vectors) {
      out << w;
      for (double x : v) out << ' ' << fmt(x);
      out << '\n';
    }
  }

  {
    std::ofstream out(dir / "norms.tsv");
    out << "word\tconcreteness\timageability\tvalence\tarousal\n";
    for (const auto& w : vocab) {
      Rng rng(derive_seed(13, w));
      if (rng.uniform() < 0.3) continue;
      const double conc = rng.uniform(1.0, 9.0);
      const double imag = std::clamp(conc + rng.normal(), 1.0, 9.0);
      const auto it = corpus_valence().find(w);
      const double val = std::clamp(5.0 + (it != corpus_valence().end() ? 3.0 * it->second : 0.0) + 0.5 * rng.normal(),
                                    1.0, 9.0);
      const double aro = rng.uniform(1.0, 9.0);
      out << w << '\t' << fmt(conc) << '\t' << fmt(imag) << '\t' << fmt(val) << '\t';
      if (rng.uniform() > 0.1) out << fmt(aro);
      out << '\n';
    }
  }

  {
    std::ofstream out(dir / "sentence_embeddings.jsonl");
    for (const auto& d : corpus) {
      const auto offset = gaussian(17, d.id, kSentenceDim, 1.0);
      for (const auto& s : d.sentences) {
        std::vector<double> v(offset);
        std::size_t n = 0;
        for (const auto& t : s.tokens) {
          if (!t.is_word()) continue;
          const auto w = gaussian(19, t.normalized, kSentenceDim, 1.0);
          for (std::size_t i = 0; i < kSentenceDim; ++i) v[i] += w[i];
          ++n;
        }
        std::string row = "{\"doc_id\":" + nlohmann::json(d.id).dump() +
                          ",\"sentence_index\":" + std::to_string(s.index) + ",\"vector\":[";
        for (std::size_t i = 0; i < kSentenceDim; ++i) {
          if (i != 0) row += ',';
          row += fmt(n == 0 ? v[i] : offset[i] + (v[i] - offset[i]) / std::sqrt(static_cast<double>(n)));
        }
        out << row << "]}\n";
      }
    }
  }

  {
    nlohmann::json docs = nlohmann::json::array();
    for (const auto& p : doc_paths) docs.push_back({{"id", p.stem().string()}, {"path", "docs/" + p.filename().string()}});
    nlohmann::json cfg = {
        {"documents", docs},
        {"resources",
         {{"vectors", "vectors.txt"},
          {"vector_format", "text-header"},
          {"norms", "norms.tsv"},
          {"labels", "labels"},
          {"sentence_embeddings", "sentence_embeddings.jsonl"}}},
        {"chunk_size", 25},
        {"topics", {{"k", 4}, {"iterations", 200}, {"top_n", 3}, {"terms", 10}, {"chunk_tokens", 20}}},
        {"factors", {{"k", 5}}},
        {"features", {{"odc_reference_size", 300}}},
        {"similarity", {{"methods", {"jaccard", "lsa", "centroid", "fms"}}}},
        {"seed", 42},
        {"out", "out"},
    };
    std::ofstream out(dir / "config.json");
    out << cfg.dump(2) << '\n';
  }
  std::cout << "wrote " << vectors.size() << " word vectors for " << corpus.size() << " documents\n";
  return 0;
}
