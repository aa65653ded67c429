// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "corpuslens/pipeline.hpp"
#include "corpuslens/svg.hpp"
#include "support/files.hpp"

using namespace corpuslens;
using namespace corpuslens::pipeline;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kToy = CORPUSLENS_TOY_DIR;

// Copy of the bundled toy corpus in a scratch directory.
struct ToyCopy {
  testfs::TempDir dir;
  ToyCopy() {
    for (const auto& e : fs::directory_iterator(kToy)) {
      if (e.path().filename() == "out") continue;
      fs::copy(e.path(), dir.path() / e.path().filename(), fs::copy_options::recursive);
    }
  }
  fs::path config() const { return dir.path() / "config.json"; }
  PipelineConfig load(const std::string& out = "out") const {
    auto c = load_config(config());
    c.out = (dir.path() / out).string();
    return c;
  }
};

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) files[e.path().filename().string()] = testfs::slurp(e.path());
  return files;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CORPUSLENS_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, StrictKeysAndTypes) {
  EXPECT_THROW(config_from_json(json{{"documentz", json::array()}}, "."), ConfigError);
  EXPECT_THROW(config_from_json(json{{"topics", {{"k", "five"}}}}, "."), ConfigError);
  EXPECT_THROW(config_from_json(json{{"topics", {{"k", 0}}}}, "."), ConfigError);
  EXPECT_THROW(config_from_json(json{{"similarity", {{"methods", {"cosine"}}}}}, "."), ConfigError);
  EXPECT_THROW(config_from_json(json{{"features", {{"pnr", "odd"}}}}, "."), ConfigError);
  EXPECT_THROW(config_from_json(json{{"documents", {{{"id", "a"}}}}}, "."), ConfigError);
  const auto c = config_from_json(json{{"documents", {{{"path", "x/prog.txt"}}}}, {"seed", 9}}, "/base");
  EXPECT_EQ(c.documents[0].id, "prog");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(resolve(c, "x/prog.txt"), fs::path("/base/x/prog.txt"));
}

TEST(Config, HashIgnoresRunSettings) {
  ToyCopy toy;
  auto a = toy.load("one");
  auto b = toy.load("two");
  b.threads = 4;
  b.data_only = true;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed = 43;
  EXPECT_NE(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 64u);
}

TEST(Config, ValidationNamesMissingPaths) {
  ToyCopy toy;
  auto c = toy.load();
  c.norms = "nowhere.tsv";
  try {
    validate(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("nowhere.tsv"), std::string::npos);
  }
  c = toy.load();
  c.documents.push_back(c.documents.front());
  EXPECT_THROW(validate(c), ConfigError);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Svg, WellFormedPieces) {
  const auto s = svg::bar_chart("A & B", {"x<1"}, {{"s", {1.5}}}, "hash=1");
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("<!-- hash=1 -->"), std::string::npos);
  EXPECT_NE(s.find("A &amp; B"), std::string::npos);
  EXPECT_NE(s.find("x&lt;1"), std::string::npos);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  const auto h = svg::heatmap("h", {"a"}, {"b"}, {{std::nan("")}});
  EXPECT_NE(h.find("</svg>"), std::string::npos);
  const auto p = svg::scatter("p", {{"g", {{0, 0}, {1, 2}}, {"u", "v"}}});
  EXPECT_NE(p.find("<circle"), std::string::npos);
}

TEST(Pipeline, StatsOnTwoDocuments) {
  ToyCopy toy;
  auto c = toy.load();
  c.documents.resize(2);
  Pipeline p(c, nullptr);
  const auto r = p.stats();
  const auto& csv = r.files.at(0).content;
  EXPECT_EQ(r.files.at(0).name, "stats.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);  // hash line, header, 2 rows
  EXPECT_EQ(csv.rfind("# config_sha256=" + p.hash(), 0), 0u);
}

TEST(Pipeline, ReportIsDeterministicAndStamped) {
  ToyCopy toy;
  EXPECT_EQ(run_command("report", toy.load("run1"), std::cerr), 0);
  auto threaded = toy.load("run2");
  threaded.threads = 3;
  EXPECT_EQ(run_command("report", threaded, std::cerr), 0);
  const auto a = read_tree(toy.dir.path() / "run1");
  const auto b = read_tree(toy.dir.path() / "run2");
  ASSERT_EQ(a.size(), b.size());
  const std::string hash = config_hash(toy.load());
  for (const auto& [name, content] : a) {
    EXPECT_EQ(content, b.at(name)) << name;
    EXPECT_NE(content.find(hash), std::string::npos) << name << " lacks the config hash";
  }
  EXPECT_EQ(a.count("similarity_fms.csv"), 1u);
  EXPECT_EQ(a.count("complexity.svg"), 1u);

  const auto manifest = json::parse(a.at("manifest.json"));
  std::set<std::string> listed;
  for (const auto& in : manifest["inputs"]) {
    listed.insert(in["path"].get<std::string>());
    EXPECT_EQ(in["sha256"], sha256_hex(testfs::slurp(toy.dir.path() / in["path"].get<std::string>())));
  }
  for (const char* f : {"vectors.txt", "norms.tsv", "sentence_embeddings.jsonl", "docs/gruen.txt", "labels/positive.txt"})
    EXPECT_EQ(listed.count(f), 1u) << f;
  for (const auto& out : manifest["outputs"])
    EXPECT_EQ(out["sha256"], sha256_hex(a.at(out["file"].get<std::string>())));
  EXPECT_EQ(manifest["seeds"]["global"], 42);
  EXPECT_TRUE(manifest["coverage"].contains("vectors"));
}

TEST(Pipeline, InputsAreNotModified) {
  ToyCopy toy;
  std::map<std::string, std::string> before;
  for (const auto& e : fs::recursive_directory_iterator(toy.dir.path()))
    if (e.is_regular_file()) before[e.path().string()] = testfs::slurp(e.path());
  ASSERT_EQ(run_command("report", toy.load(), std::cerr), 0);
  for (const auto& [path, content] : before) EXPECT_EQ(testfs::slurp(path), content) << path;
}

TEST(Pipeline, DataOnlySkipsFigures) {
  ToyCopy toy;
  auto c = toy.load();
  c.data_only = true;
  ASSERT_EQ(run_command("report", c, std::cerr), 0);
  for (const auto& [name, content] : read_tree(c.out)) EXPECT_NE(fs::path(name).extension(), ".svg") << name;
}

TEST(Pipeline, SimilarityWritesOneSetPerMethod) {
  ToyCopy toy;
  auto c = toy.load();
  ASSERT_EQ(run_command("similarity", c, std::cerr), 0);
  const auto files = read_tree(c.out);
  for (const char* m : {"jaccard", "lsa", "centroid", "fms"})
    for (const char* ext : {".csv", ".json", ".svg"})
      EXPECT_EQ(files.count(std::string("similarity_") + m + ext), 1u) << m << ext;
}

TEST(Pipeline, FailedStageLeavesEarlierOutputs) {
  ToyCopy toy;
  auto c = toy.load();
  ASSERT_EQ(run_command("stats", c, std::cerr), 0);
  const auto before = read_tree(c.out);
  c.vectors.reset();
  std::ostringstream log;
  EXPECT_EQ(run_command("complexity", c, log), 2);
  EXPECT_NE(log.str().find("vector store"), std::string::npos);
  EXPECT_EQ(read_tree(c.out), before);
}

TEST(Pipeline, ExitCodes) {
  ToyCopy toy;
  auto c = toy.load();
  c.norms = "missing.tsv";
  EXPECT_EQ(run_command("features", c, std::cerr), 2);
  c = toy.load();
  toy.dir.write("broken.txt", "2 16\nword 1 2\n");
  c.vectors = "broken.txt";
  EXPECT_EQ(run_command("complexity", c, std::cerr), 3);
  EXPECT_EQ(run_command("nonsense", toy.load(), std::cerr), 2);
}

TEST(Cli, SubcommandsAndFlags) {
  ToyCopy toy;
  const std::string cfg = "--config " + toy.config().string();
  const std::string out = " --out " + (toy.dir.path() / "cli").string();
  EXPECT_EQ(run_cli("stats " + cfg + out), 0);
  EXPECT_TRUE(fs::exists(toy.dir.path() / "cli" / "stats.csv"));
  EXPECT_EQ(run_cli("similarity " + cfg + out + " --method jaccard,lsa --data-only"), 0);
  EXPECT_TRUE(fs::exists(toy.dir.path() / "cli" / "similarity_lsa.csv"));
  EXPECT_FALSE(fs::exists(toy.dir.path() / "cli" / "similarity_lsa.svg"));
  EXPECT_EQ(run_cli("topics " + cfg + out + " --topics 3 --iterations 20 --seed 5"), 0);
  EXPECT_EQ(run_cli("similarity " + cfg + out + " --method bogus"), 2);
  EXPECT_EQ(run_cli("stats --config " + (toy.dir.path() / "nope.json").string()), 2);
  EXPECT_EQ(run_cli("stats --doc a=" + (toy.dir.path() / "docs" / "gruen.txt").string() + out), 0);
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("export-sentences " + cfg + " --to " + (toy.dir.path() / "rows.jsonl").string()), 0);
  const auto rows = testfs::slurp(toy.dir.path() / "rows.jsonl");
  EXPECT_NE(rows.find("\"sentence_index\":0"), std::string::npos);
}

TEST(Bridge, ExportedRowsRoundTripThroughImport) {
  testfs::TempDir dir;
  const auto doc = dir.write("d.txt", "Die Stadt wächst. Wir bauen Häuser! Ist das genug?");
  const auto cfg_path = dir.write("c.json", R"({"documents": [{"id": "d", "path": "d.txt"}]})");
  const auto rows_path = dir.path() / "rows.jsonl";
  ASSERT_EQ(run_cli("export-sentences --config " + cfg_path.string() + " --to " + rows_path.string()), 0);

  // Stand-in for the embedding bridge: one fixed-width vector per exported row.
  std::istringstream rows(testfs::slurp(rows_path));
  std::string out;
  std::size_t n = 0;
  for (std::string line; std::getline(rows, line); ++n) {
    const auto r = json::parse(line);
    EXPECT_TRUE(r.contains("text"));
    json v = {{"doc_id", r["doc_id"]}, {"sentence_index", r["sentence_index"]},
              {"vector", std::vector<double>(4, 0.25 * static_cast<double>(n + 1))}};
    out += v.dump() + "\n";
  }
  EXPECT_EQ(n, 3u);
  const auto emb = dir.write("emb.jsonl", out);
  const corpus::Corpus c{corpus::load_document(doc, "d")};
  const std::vector<std::string> ids{"d"};
  Diagnostics diag;
  const auto set = resources::import_sentence_embeddings(emb, &ids, &diag);
  EXPECT_TRUE(diag.empty());
  EXPECT_EQ(set.size(), 3u);
  EXPECT_DOUBLE_EQ(set.coverage(c), 1.0);
  EXPECT_EQ(set.dimension(), 4u);
}
