// SPDX-License-Identifier: Apache-2.0
// corpuslens command-line driver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "corpuslens/pipeline.hpp"

namespace cp = corpuslens::pipeline;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> threads;
  bool data_only = false;
  std::vector<std::string> docs;
  std::optional<std::string> vectors;
  std::vector<std::string> methods;
  std::optional<std::string> jaccard_mode;
  std::optional<std::size_t> lsa_dims;
  std::optional<std::size_t> topics;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> factors;
  std::optional<std::size_t> chunk_size;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "JSON configuration file");
  cmd->add_option("--seed", o.seed, "Global random seed");
  cmd->add_option("-o,--out", o.out, "Output directory");
  cmd->add_option("-j,--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--data-only", o.data_only, "Write CSV/JSON only, no SVG figures");
  cmd->add_option("--doc", o.docs, "Extra document as ID=PATH (repeatable)");
  cmd->add_option("--vectors", o.vectors, "Word vector file (text-header format)");
  cmd->add_option("--chunk-size", o.chunk_size, "Words per chunk")->check(CLI::PositiveNumber);
}

cp::PipelineConfig build_config(const Overrides& o) {
  cp::PipelineConfig cfg;
  if (!o.config.empty()) cfg = cp::load_config(o.config);
  else cfg.base_dir = std::filesystem::current_path();
  for (const auto& d : o.docs) {
    const auto eq = d.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == d.size())
      throw corpuslens::ConfigError("--doc expects ID=PATH, got '" + d + "'");
    cfg.documents.push_back({d.substr(0, eq), std::filesystem::absolute(d.substr(eq + 1)).string(), false});
  }
  if (o.vectors) cfg.vectors = std::filesystem::absolute(*o.vectors).string();
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  if (o.threads) cfg.threads = *o.threads;
  if (o.data_only) cfg.data_only = true;
  if (o.chunk_size) cfg.chunk_size = *o.chunk_size;
  if (o.topics) cfg.topics = *o.topics;
  if (o.iterations) cfg.lda_iterations = *o.iterations;
  if (o.factors) cfg.factors = *o.factors;
  if (o.lsa_dims) cfg.lsa_dims = *o.lsa_dims;
  if (o.jaccard_mode) {
    if (*o.jaccard_mode == "set") cfg.jaccard_mode = corpuslens::similarity::JaccardMode::Set;
    else if (*o.jaccard_mode == "bag") cfg.jaccard_mode = corpuslens::similarity::JaccardMode::Bag;
    else throw corpuslens::ConfigError("--jaccard-mode must be 'set' or 'bag'");
  }
  if (!o.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : o.methods) {
      const auto parsed = corpuslens::similarity::parse_method(m);
      if (!parsed) throw corpuslens::ConfigError("unknown similarity method '" + m + "'");
      cfg.methods.push_back(*parsed);
    }
  }
  return cfg;
}

// Sentence rows for the external embedding exporter.
int export_sentences(const cp::PipelineConfig& cfg, const std::string& path) {
  corpuslens::Diagnostics diag;
  cp::Pipeline p(cfg, &diag);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw corpuslens::ResourceError("cannot write '" + path + "'");
  for (const auto& d : p.corpus())
    for (const auto& s : d.sentences)
      out << nlohmann::json{{"doc_id", d.id}, {"sentence_index", s.index}, {"text", s.text}}.dump() << '\n';
  for (const auto& w : diag.warnings()) std::cerr << "warning: " << w << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Corpus analytics: statistics, topics, similarity, features, factors and complexity"};
  app.set_version_flag("--version", CORPUSLENS_VERSION);
  app.require_subcommand(1);
  Overrides o;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"stats", "Per-document counts and reading time"},
      {"topics", "LDA topic model over nouns and adjectives"},
      {"similarity", "Pairwise document similarity matrices"},
      {"features", "Per-sentence feature matrix"},
      {"factors", "Factor model and factor scores"},
      {"complexity", "Intra-textual variance and stepwise distance"},
      {"report", "All stages plus a manifest"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, o);
    if (name == "similarity" || name == "report") {
      cmd->add_option("-m,--method,--methods", o.methods, "jaccard, lsa, centroid, fms")->delimiter(',');
      cmd->add_option("--jaccard-mode", o.jaccard_mode, "set or bag");
      cmd->add_option("--lsa-dims", o.lsa_dims, "LSA dimensions")->check(CLI::PositiveNumber);
    }
    if (name == "topics" || name == "report") {
      cmd->add_option("-k,--topics", o.topics, "Number of topics")->check(CLI::PositiveNumber);
      cmd->add_option("--iterations", o.iterations, "Gibbs sweeps");
    }
    if (name == "factors" || name == "report")
      cmd->add_option("--factors", o.factors, "Number of factors")->check(CLI::PositiveNumber);
  }
  std::string sentences_out;
  auto* exp = app.add_subcommand("export-sentences", "Write sentence rows for an external embedding exporter");
  add_common(exp, o);
  exp->add_option("--to", sentences_out, "Output JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto cfg = build_config(o);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "export-sentences") return export_sentences(cfg, sentences_out);
    return cp::run_command(name, cfg, std::cerr);
  } catch (const corpuslens::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cp::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
