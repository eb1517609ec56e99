#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "support/fixtures.hpp"

using namespace vista;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into the captured output.
CliResult cli(const std::string& args) {
  const std::string cmd = std::string("\"") + VISTA_CLI_PATH + "\" " + args + " 2>&1";
  CliResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const fs::path kSamples = fs::path(VISTA_SOURCE_DIR) / "samples";

struct OneShotFiles {
  vt::TempDir tmp;
  fs::path gold_dir, pred_dir, graph;
  OneShotFiles() {
    gold_dir = tmp.path / "gold";
    pred_dir = tmp.path / "pred";
    fs::create_directories(gold_dir);
    fs::create_directories(pred_dir);
    const auto g = vt::oneshot_graph();
    graph = gold_dir / "oneshot.json";
    write_file(graph, serialize_graph(g));
    write_file(pred_dir / "oneshot.tsv", serialize_prediction_table(vt::rows_from_graph(g)));
  }
};

}  // namespace

TEST(Cli, ValidateReportsChainEdgesInStrictMode) {
  OneShotFiles f;
  const auto strict = cli("validate --mode strict " + q(f.graph));
  EXPECT_EQ(strict.code, 1);
  EXPECT_NE(strict.out.find("PauseHeadPause"), std::string::npos);
  EXPECT_NE(strict.out.find("ResonanceHeadResonance"), std::string::npos);
  const auto relaxed = cli("validate --mode relaxed " + q(f.graph));
  EXPECT_EQ(relaxed.code, 0) << relaxed.out;
}

TEST(Cli, ScoreGoldAgainstItself) {
  OneShotFiles f;
  const auto r = cli("score --pred " + q(f.pred_dir) + " --gold " + q(f.gold_dir));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("harmonic\t1.0000"), std::string::npos) << r.out;
  const auto csv = cli("score --format csv --model self --pred " + q(f.pred_dir) + " --gold " + q(f.gold_dir));
  EXPECT_NE(csv.out.find("self,1.0000,1.0000,1.0000,1.0000,1.0000,1.0000,1.0000"), std::string::npos);
}

TEST(Cli, OutFlagWritesFile) {
  OneShotFiles f;
  const auto dest = f.tmp.path / "scores.json";
  const auto r = cli("score --format json --pred " + q(f.pred_dir) + " --gold " + q(f.gold_dir) +
                     " --out " + q(dest));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(read_file(dest)).at("harmonic").get<double>(), 1.0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("score --pred x").code, 2);
  EXPECT_EQ(cli("validate --mode sloppy x.json").code, 2);
}

TEST(Cli, MissingInputsExitThree) {
  vt::TempDir tmp;
  EXPECT_EQ(cli("stats --data " + q(tmp.path / "nowhere") + " --split test").code, 3);
  EXPECT_EQ(cli("validate " + q(tmp.path / "absent.json")).code, 3);
}

TEST(Cli, InvalidGoldGraphExitsOne) {
  vt::TempDir tmp;
  auto g = vt::oneshot_graph();
  g.anchors[3].head = g.anchors[3].id;
  fs::create_directories(tmp.path / "test");
  write_file(tmp.path / "test" / "bad.json", serialize_graph(g));
  const auto r = cli("stats --data " + q(tmp.path) + " --split test");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("InvalidGoldGraph"), std::string::npos) << r.out;
}

TEST(Cli, StatsOnSampleDataset) {
  const auto r = cli("stats --data " + q(kSamples / "dataset") + " --split all");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind(kCorpusStatsCsvHeader, 0), 0u);
  EXPECT_NE(r.out.find("\ntrain,2,"), std::string::npos);
  EXPECT_NE(r.out.find("\nval,1,"), std::string::npos);
  EXPECT_NE(r.out.find("\ntest,2,"), std::string::npos);
}

TEST(Cli, ConvertRoundTripsThroughInline) {
  vt::TempDir tmp;
  const auto src = kSamples / "dataset" / "test" / "garden.json";
  const auto inl = tmp.path / "garden.txt";
  const auto back = tmp.path / "garden.json";
  ASSERT_EQ(cli("convert --from graph --to inline " + q(src) + " --out " + q(inl)).code, 0);
  ASSERT_EQ(cli("convert --from inline --to graph --doc-id garden " + q(inl) + " --out " + q(back)).code, 0);
  const auto a = read_graph_file(src);
  const auto b = read_graph_file(back);
  EXPECT_EQ(a.text, b.text);
  ASSERT_EQ(a.anchors.size(), b.anchors.size());
  for (std::size_t i = 0; i < a.anchors.size(); ++i) {
    EXPECT_EQ(a.anchors[i].span, b.anchors[i].span);
    EXPECT_EQ(a.anchors[i].role, b.anchors[i].role);
    EXPECT_EQ(a.anchors[i].head, b.anchors[i].head);
  }
}

TEST(Cli, BaselineRunWritesArtifacts) {
  vt::TempDir tmp;
  const auto run_dir = tmp.path / "run";
  const auto r = cli("run --model " + q(kSamples / "models" / "baseline.json") + " --data " +
                     q(kSamples / "dataset") + " --split test --cache " + q(tmp.path / "cache") +
                     " --run-dir " + q(run_dir) + " --format csv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(run_dir / "manifest.json"));
  EXPECT_TRUE(fs::exists(run_dir / "scores.json"));
  EXPECT_TRUE(fs::exists(run_dir / "predictions" / "garden.tsv"));
  const auto manifest = nlohmann::json::parse(read_file(run_dir / "manifest.json"));
  EXPECT_EQ(manifest.at("documents").size(), 2u);
  EXPECT_NE(r.out.find("baseline,"), std::string::npos) << r.out;
}

TEST(Cli, AnalyzeExports) {
  vt::TempDir tmp;
  const auto data = q(kSamples / "dataset");
  const auto svg = tmp.path / "d.svg";
  const auto d = cli("analyze distances --data " + data + " --split all --svg " + q(svg));
  ASSERT_EQ(d.code, 0) << d.out;
  EXPECT_EQ(d.out.rfind("type,", 0), 0u);
  EXPECT_NE(read_file(svg).find("<svg"), std::string::npos);
  const auto lex = cli("analyze lexicon --data " + data + " --split train");
  ASSERT_EQ(lex.code, 0);
  EXPECT_EQ(lex.out.rfind(kLexiconCsvHeader, 0), 0u);
  const auto shape = cli("analyze shape " + q(kSamples / "dataset" / "test" / "garden.json"));
  ASSERT_EQ(shape.code, 0);
  EXPECT_EQ(shape.out.rfind("anchor_id,word,role,x,y,z", 0), 0u);
  EXPECT_EQ(cli("analyze distances --data " + data + " --buckets 5,10").code, 1);
}
