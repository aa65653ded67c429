// SPDX-License-Identifier: Apache-2.0
#pragma once

// Configuration, staged execution and artifact writing for the command-line
// driver.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpuslens/complexity.hpp"
#include "corpuslens/corpus.hpp"
#include "corpuslens/error.hpp"
#include "corpuslens/factors.hpp"
#include "corpuslens/features.hpp"
#include "corpuslens/resources.hpp"
#include "corpuslens/similarity.hpp"
#include "corpuslens/topics.hpp"

namespace corpuslens::pipeline {

struct DocumentSpec {
  std::string id;
  std::string path;        // as written in the config
  bool pretagged = false;  // surface<TAB>tag file
};

struct PipelineConfig {
  std::vector<DocumentSpec> documents;

  std::optional<std::string> vectors;
  resources::VectorFormat vector_format = resources::VectorFormat::TextHeader;
  std::optional<std::string> norms;
  std::optional<std::string> labels;  // directory
  std::optional<std::string> sentence_embeddings;
  std::optional<std::string> abbreviations;
  std::optional<std::string> lexicon;
  std::optional<std::string> reference_vocabulary;
  std::optional<std::string> stop_words;
  bool case_fold = true;

  std::size_t chunk_size = 1000;
  double words_per_minute = 200;

  std::size_t topics = 25;
  std::size_t lda_iterations = 1000;
  std::optional<double> lda_alpha;
  double lda_beta = 0.01;
  std::size_t lda_chunk_tokens = 200;
  std::size_t top_topics = 10;
  std::size_t topic_terms = 30;

  std::size_t factors = 5;

  features::PnrMode pnr_mode = features::PnrMode::Smoothed;
  std::size_t odc_reference_size = 20000;
  std::string extra_feature = "mean_log_frequency";
  std::set<std::string> disabled_features;

  std::vector<similarity::Method> methods{similarity::Method::Jaccard, similarity::Method::Lsa,
                                          similarity::Method::Centroid, similarity::Method::Fms};
  similarity::JaccardMode jaccard_mode = similarity::JaccardMode::Set;
  std::size_t lsa_dims = 2;

  std::uint64_t seed = 42;

  // Not part of the analysis identity, so excluded from the config hash.
  unsigned threads = 1;
  std::string out = "corpuslens-out";
  bool data_only = false;
  std::filesystem::path base_dir;  // relative paths resolve against this
};

/// Strict parse: unknown keys and wrongly typed values raise ConfigError.
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

/// Analysis-relevant settings with sorted keys.
nlohmann::json canonical_json(const PipelineConfig& cfg);
std::string config_hash(const PipelineConfig& cfg);

/// Checks ids are unique and non-empty and that every referenced path exists.
void validate(const PipelineConfig& cfg);

std::filesystem::path resolve(const PipelineConfig& cfg, const std::string& path);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct OutputFile {
  std::string name;
  std::string content;
};

struct StageResult {
  std::string stage;
  std::vector<OutputFile> files;
  bool nonconverged = false;
};

struct InputRecord {
  std::string role;
  std::string path;
  std::string sha256;
};

class Pipeline {
 public:
  Pipeline(PipelineConfig cfg, Diagnostics* diag);
  ~Pipeline();

  const PipelineConfig& config() const { return cfg_; }
  const std::string& hash() const { return hash_; }

  const corpus::Corpus& corpus();

  StageResult stats();
  StageResult topics();
  StageResult similarity();
  StageResult features();
  StageResult factors();
  StageResult complexity();
  /// Inputs, seeds, version, coverage and per-file checksums of `stages`.
  StageResult manifest(const std::vector<StageResult>& stages);

  /// Writes all files of a stage under cfg.out via temporary names and
  /// renames, so a failed stage leaves earlier outputs untouched.
  void commit(const StageResult& stage) const;

  const std::vector<InputRecord>& inputs() const { return inputs_; }

 private:
  struct Loaded;

  const resources::VectorStore& vectors(const std::string& needed_by);
  const resources::VectorStore* vectors_if_configured();
  const resources::LabelSet& labels();
  const resources::NormsLexicon* norms();
  const resources::SentenceEmbeddingSet* sentence_embeddings();
  const similarity::StopWords* stop_words();
  const features::FeatureMatrix& feature_matrix();
  void record_input(const std::string& role, const std::string& path);

  std::string csv_header() const;
  nlohmann::json meta() const;
  std::string svg_comment() const;
  std::string dump(nlohmann::json j) const;

  PipelineConfig cfg_;
  Diagnostics* diag_;
  std::string hash_;
  std::vector<InputRecord> inputs_;
  std::unique_ptr<Loaded> loaded_;
};

/// Runs one subcommand (stats, topics, similarity, features, factors,
/// complexity, report) and commits its outputs. Returns the process exit
/// code: 0 ok, 2 configuration, 3 resource, 4 numeric non-convergence.
int run_command(const std::string& command, const PipelineConfig& cfg, std::ostream& log);

int exit_code(const Error& e);

}  // namespace corpuslens::pipeline
