#include <gtest/gtest.h>

#include <sstream>

#include "cli/cli.hpp"
#include "oracles.hpp"
#include "scratch.hpp"

using ontoekg::cli::run;

namespace {

const std::string kFixtures = ONTOEKG_FIXTURES_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ontoekg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> replay(const std::string& cassette) {
  return {"--llm-mode", "replay", "--cassette", kFixtures + "/data/" + cassette};
}

std::vector<std::string> operator+(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(CliBuild, ReplayMatchesGoldenTwice) {
  oracle::ScratchDir dir;
  const auto input = kFixtures + "/corpus/data/data.txt";
  const auto golden = oracle::read_file(kFixtures + "/data/data.golden.ttl");
  for (const char* name : {"a.ttl", "b.ttl"}) {
    const auto r = invoke(replay("data.cassette.jsonl") + std::vector<std::string>{
                               "build", input, "-o", (dir / name).string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(oracle::read_file(dir / name), golden) << name;
  }
  const auto repairs = lines(oracle::read_file(dir / "a.repairs.jsonl"));
  ASSERT_EQ(repairs.size(), 1u);
  EXPECT_EQ(repairs[0],
            R"({"document":"data","kind":"AUTO_ADD","property":"reportedBy","missing":"Reporter"})");
  EXPECT_EQ(oracle::read_file(dir / "a.conflicts.jsonl"), "");
  EXPECT_TRUE(std::filesystem::exists(dir / "a.extraction.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "a.verdicts.json"));

  const auto manifest = nlohmann::json::parse(oracle::read_file(dir / "a.manifest.json"));
  EXPECT_EQ(manifest["llm_mode"], "replay");
  EXPECT_EQ(manifest["cassette"], "data.cassette.jsonl");
  EXPECT_EQ(manifest["prompts"].size(), 2u);
  // Manifests carry no timestamps, so equal runs give equal manifests
  // apart from the output name.
  auto other = nlohmann::json::parse(oracle::read_file(dir / "b.manifest.json"));
  other["command"] = manifest["command"];
  EXPECT_EQ(other, manifest);
}

TEST(CliBuild, StrictCycleFailsAndLogsConflicts) {
  oracle::ScratchDir dir;
  const auto out = dir / "cycle.ttl";
  const auto r = invoke(replay("cycle.cassette.jsonl") + std::vector<std::string>{
                             "--strict", "build", kFixtures + "/corpus/data/data.txt", "-o",
                             out.string()});
  EXPECT_EQ(r.code, 2) << r.err;
  EXPECT_FALSE(std::filesystem::exists(out));
  const auto conflicts = lines(oracle::read_file(dir / "cycle.conflicts.jsonl"));
  ASSERT_EQ(conflicts.size(), 2u);
  EXPECT_EQ(nlohmann::json::parse(conflicts[0])["kind"], "MUTUAL");
  EXPECT_EQ(nlohmann::json::parse(conflicts[1])["kind"], "CYCLE_REJECTED");
  EXPECT_TRUE(std::filesystem::exists(dir / "cycle.manifest.json"));

  // Without --strict the same run succeeds and keeps the safe edges.
  const auto lenient = invoke(replay("cycle.cassette.jsonl") + std::vector<std::string>{
                                   "build", kFixtures + "/corpus/data/data.txt", "-o",
                                   out.string()});
  EXPECT_EQ(lenient.code, 0) << lenient.err;
  EXPECT_TRUE(std::filesystem::exists(out));
}

TEST(CliBuild, ExtractThenEntailEqualsBuild) {
  oracle::ScratchDir dir;
  const auto input = kFixtures + "/corpus/data/data.txt";
  const auto json = (dir / "stage.json").string();
  const auto ttl = (dir / "stage.ttl").string();
  auto r = invoke(replay("data.cassette.jsonl") + std::vector<std::string>{"extract", input, "-o", json});
  ASSERT_EQ(r.code, 0) << r.err;
  r = invoke(replay("data.cassette.jsonl") + std::vector<std::string>{"entail", json, "-o", ttl});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(oracle::read_file(ttl), oracle::read_file(kFixtures + "/data/data.golden.ttl"));
}

TEST(CliBuild, MockCorpusRunIsReproducible) {
  oracle::ScratchDir dir;
  const std::vector<std::string> args = {"--llm-mode", "mock", "--mock-answers",
                                         kFixtures + "/data/answers.json", "build",
                                         kFixtures + "/corpus", "-o", (dir / "all.ttl").string()};
  ASSERT_EQ(invoke(args).code, 0);
  const auto first = oracle::read_file(dir / "all.ttl");
  const auto manifest = oracle::read_file(dir / "all.manifest.json");
  ASSERT_EQ(invoke(args).code, 0);
  EXPECT_EQ(oracle::read_file(dir / "all.ttl"), first);
  EXPECT_EQ(oracle::read_file(dir / "all.manifest.json"), manifest);
  EXPECT_FALSE(first.empty());
}

TEST(CliBuild, ReplayMissIsPipelineError) {
  oracle::ScratchDir dir;
  dir.write("other.txt", "A completely different document about Vessels and Ports.");
  const auto r = invoke(replay("data.cassette.jsonl") + std::vector<std::string>{
                             "build", (dir / "other.txt").string(), "-o", (dir / "o.ttl").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("CASSETTE_MISS"), std::string::npos) << r.err;
}

TEST(CliUsage, ExitCodes) {
  oracle::ScratchDir dir;
  EXPECT_EQ(invoke({}).code, 3);
  EXPECT_EQ(invoke({"frobnicate"}).code, 3);
  EXPECT_EQ(invoke({"--llm-mode", "psychic", "validate", "x.ttl"}).code, 3);
  EXPECT_EQ(invoke({"--llm-mode", "mock", "build", "/nonexistent/input", "-o",
                     (dir / "x.ttl").string()})
                .code,
            3);
  EXPECT_EQ(invoke({"--llm-mode", "replay", "build", kFixtures + "/corpus/data/data.txt", "-o",
                     (dir / "x.ttl").string()})
                .code,
            3);  // replay needs a cassette
  const auto conf = dir.write("bad.conf", "fuzzy_threshold = 7\n");
  EXPECT_EQ(invoke({"--config", conf.string(), "validate", kFixtures + "/validate/clean.ttl"}).code, 3);
  // Live mode under the test-suite network guard.
  ::setenv("ONTOEKG_FORBID_NETWORK", "1", 1);
  ::setenv("ONTOEKG_LLM_API_KEY", "dummy", 1);
  const auto live = invoke({"build", kFixtures + "/corpus/data/data.txt", "-o", (dir / "x.ttl").string()});
  EXPECT_EQ(live.code, 3);
  EXPECT_NE(live.err.find("NETWORK_FORBIDDEN"), std::string::npos) << live.err;
  EXPECT_EQ(invoke({"--version"}).code, 0);
}

TEST(CliEvaluate, IdenticalFilesScoreOne) {
  oracle::ScratchDir dir;
  const auto gold = kFixtures + "/eval/gold.ttl";
  const auto report = (dir / "r.json").string();
  const auto r = invoke({"evaluate", gold, gold, "--use-case", "Data", "-o", report});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| Data     |     1.000 |  1.000 | 1.000 |"), std::string::npos) << r.out;
  const auto j = nlohmann::json::parse(oracle::read_file(report));
  EXPECT_EQ(j["mode"], "exact");
  EXPECT_TRUE(j["threshold"].is_null());
  EXPECT_TRUE(j["unmatched_pred"].empty());
}

TEST(CliEvaluate, ExactFixture) {
  oracle::ScratchDir dir;
  const auto r = invoke({"evaluate", kFixtures + "/eval/pred.ttl", kFixtures + "/eval/gold.ttl",
                          "-o", (dir / "r.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("| gold     |     0.316 |  0.333 | 0.324 |"), std::string::npos) << r.out;
}

TEST(CliEvaluate, FuzzyFixtureMatchesIndependentReport) {
  oracle::ScratchDir dir;
  const auto report = (dir / "fuzzy.json").string();
  const auto r = invoke({"--llm-mode", "mock", "--threshold", "0.94", "evaluate",
                          kFixtures + "/eval/pred.ttl", kFixtures + "/eval/gold.ttl", "--mode",
                          "fuzzy", "--use-case", "Data", "-o", report});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto got = nlohmann::json::parse(oracle::read_file(report));
  const auto want = nlohmann::json::parse(oracle::read_file(kFixtures + "/eval/fuzzy_report.json"));
  for (const char* k : {"precision", "recall", "f1", "threshold"}) {
    EXPECT_NEAR(got[k].get<double>(), want[k].get<double>(), 1e-9) << k;
  }
  ASSERT_EQ(got["matches"].size(), want["matches"].size());
  for (std::size_t i = 0; i < got["matches"].size(); ++i) {
    EXPECT_EQ(got["matches"][i]["pred"], want["matches"][i]["pred"]);
    EXPECT_EQ(got["matches"][i]["gold"], want["matches"][i]["gold"]);
    EXPECT_NEAR(got["matches"][i]["score"].get<double>(),
                want["matches"][i]["score"].get<double>(), 1e-9);
  }
  EXPECT_EQ(got["unmatched_pred"], want["unmatched_pred"]);
  EXPECT_EQ(got["unmatched_gold"], want["unmatched_gold"]);
  EXPECT_NE(r.out.find("| Data     |     0.789 |  0.833 | 0.811 |"), std::string::npos) << r.out;
}

TEST(CliEvaluate, DefaultReportPathAndMissingGold) {
  oracle::ScratchDir dir;
  const auto pred = dir.write("pred.ttl", oracle::read_file(kFixtures + "/eval/pred.ttl"));
  ASSERT_EQ(invoke({"evaluate", pred.string(), kFixtures + "/eval/gold.ttl"}).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "pred.report.json"));
  EXPECT_EQ(invoke({"evaluate", pred.string(), (dir / "absent.ttl").string()}).code, 3);
}

TEST(CliValidate, Fig3AndClean) {
  const auto fig3 = invoke({"validate", kFixtures + "/validate/fig3.ttl"});
  EXPECT_EQ(fig3.code, 0);
  const auto out = lines(fig3.out);
  ASSERT_EQ(out.size(), 2u) << fig3.out;
  EXPECT_TRUE(out[0].starts_with(
      "CYCLE https://example.org/onto#GovernanceStandard https://example.org/onto#Policy  # "));
  EXPECT_TRUE(out[1].starts_with("AMBIGUOUS_PROPERTY https://example.org/onto#isTypeOf  # "));

  EXPECT_EQ(invoke({"--strict", "validate", kFixtures + "/validate/fig3.ttl"}).code, 2);

  const auto clean = invoke({"validate", "--json", kFixtures + "/validate/clean.ttl"});
  EXPECT_EQ(clean.code, 0);
  EXPECT_EQ(nlohmann::json::parse(clean.out), nlohmann::json::array());
  EXPECT_NE(clean.err.find("no violations"), std::string::npos);
}

TEST(CliValidate, SyntaxErrorIsPipelineError) {
  oracle::ScratchDir dir;
  const auto bad = dir.write("bad.ttl", "@prefix : <https://e.org/#> .\n:A a :B");
  const auto r = invoke({"validate", bad.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SYNTAX_ERROR"), std::string::npos) << r.err;
}
