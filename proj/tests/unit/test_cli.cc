#include "doctest.h"

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "cli_pipeline.h"
#include "test_support.h"

using namespace skbforge::testing;

namespace {

std::string fixture(const std::string& rel) { return data_path(rel).string(); }

}  // namespace

TEST_CASE("full pipeline on the wordnet fixture") {
  TempDir dir;
  const auto start = std::chrono::steady_clock::now();
  PipelineRun run = run_pipeline("wordnet", dir.path(), "4");
  const auto elapsed = std::chrono::steady_clock::now() - start;
  CHECK(run.ok());
  CHECK(elapsed < std::chrono::seconds(10));
  for (const char* f : {"inventory.json", "full.skb", "distilled.skb", "eval.json",
                        "distilled.tsv", "stats.full.json", "used.json"}) {
    CAPTURE(f);
    CHECK_FALSE(run.outputs[f].empty());
  }
  auto full = nlohmann::json::parse(run.outputs["stats.full.json"]);
  auto dist = nlohmann::json::parse(run.outputs["stats.distilled.json"]);
  CHECK(dist["mean_substitutes"].get<double>() > full["mean_substitutes"].get<double>());
  auto plain = nlohmann::json::parse(run.outputs["stats.plain.json"]);
  CHECK(plain["senses"].get<int>() >= 2000);
  auto eval = nlohmann::json::parse(run.outputs["eval.json"]);
  CHECK(eval["map"].get<double>() >= 0.0);
  CHECK(eval["per_sense"].size() == eval["evaluated"].get<std::size_t>());
}

TEST_CASE("reruns and worker counts give identical bytes") {
  TempDir a, b, c;
  PipelineRun r1 = run_pipeline("toy", a.path(), "1");
  PipelineRun r2 = run_pipeline("toy", b.path(), "8");
  PipelineRun r3 = run_pipeline("toy", c.path(), "1");
  REQUIRE(r1.ok());
  REQUIRE(r2.ok());
  CHECK(r1.outputs == r2.outputs);
  CHECK(r1.outputs == r3.outputs);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const std::string out = (dir / "inv.json").string();
  // missing required --cdv
  CHECK(run_cli({"build-sememe-set", "--dict", fixture("toy/dict.jsonl"), "--out", out}) == 2);
  // unreadable input
  CHECK(run_cli({"build-sememe-set", "--dict", (dir / "nope.jsonl").string(), "--cdv",
                 fixture("toy/cdv.txt"), "--out", out}) == 1);
  // malformed dictionary
  spit(dir / "bad.jsonl", "{not json\n");
  CHECK(run_cli({"build-sememe-set", "--dict", (dir / "bad.jsonl").string(), "--cdv",
                 fixture("toy/cdv.txt"), "--out", out}) == 2);
  // trims that leave nothing
  CHECK(run_cli({"build-sememe-set", "--dict", fixture("toy/dict.jsonl"), "--cdv",
                 fixture("toy/cdv.txt"), "--top-trim", "0.6", "--bottom-trim", "0.5",
                 "--out", out}) == 2);
  CHECK(run_cli({"distill", "--skb", "x", "--conllu", "y", "--m", "1", "--out", "z"}) == 2);
  CHECK(run_cli({"no-such-command"}) == 2);
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"build-sememe-set", "--dict", fixture("toy/dict.jsonl"), "--cdv",
                 fixture("toy/cdv.txt"), "--out", out}) == 0);
  // refuses to overwrite its input
  CHECK(run_cli({"export", "--skb", out, "--out", out}) == 2);
}

TEST_CASE("substitutes command") {
  TempDir dir;
  REQUIRE(run_cli({"annotate", "--dict", fixture("beautiful/dict.jsonl"), "--inventory",
                   fixture("beautiful/inventory.json"), "--conllu",
                   fixture("beautiful/dict.conllu"), "--out",
                   (dir / "b.skb").string()}) == 0);
  CHECK(run_cli({"substitutes", "beautiful", "--skb", (dir / "b.skb").string()}, "",
                dir / "subs.txt") == 0);
  CHECK(slurp(dir / "subs.txt").empty());
  CHECK(run_cli({"substitutes", "absent", "--skb", (dir / "b.skb").string()}) == 2);
}

TEST_CASE("config file, later flags and the jobs variable") {
  TempDir dir;
  spit(dir / "run.conf",
       "# distill settings\nt = 5\nm = 2\nout = " + (dir / "from_conf.skb").string() + "\n");
  // build a usable SKB from the toy fixture first
  REQUIRE(run_cli({"build-sememe-set", "--dict", fixture("toy/dict.jsonl"), "--cdv",
                   fixture("toy/cdv.txt"), "--conllu", fixture("toy/dict.conllu"), "--out",
                   (dir / "inv.json").string()}) == 0);
  REQUIRE(run_cli({"annotate", "--dict", fixture("toy/dict.jsonl"), "--inventory",
                   (dir / "inv.json").string(), "--conllu", fixture("toy/dict.conllu"),
                   "--out", (dir / "toy.skb").string()}) == 0);

  const std::string skb = (dir / "toy.skb").string();
  const std::string conllu = fixture("toy/dict.conllu");
  CHECK(run_cli({"distill", "--config", (dir / "run.conf").string(), "--skb", skb,
                 "--conllu", conllu, "--manifest", (dir / "m1.json").string()}) == 0);
  auto m1 = nlohmann::json::parse(slurp(dir / "m1.json"));
  CHECK(m1["config"]["--t"] == "5");
  CHECK(m1["config"]["--m"] == "2");
  CHECK_FALSE(slurp(dir / "from_conf.skb").empty());

  CHECK(run_cli({"distill", "--config", (dir / "run.conf").string(), "--skb", skb,
                 "--conllu", conllu, "--t", "0", "--out", (dir / "flag.skb").string(),
                 "--manifest", (dir / "m2.json").string()}) == 0);
  auto m2 = nlohmann::json::parse(slurp(dir / "m2.json"));
  CHECK(m2["config"]["--t"] == "0");
  CHECK(m2["config"]["--out"] == (dir / "flag.skb").string());

  // worker count is not part of the configuration digest
  CHECK(run_cli({"distill", "--skb", skb, "--conllu", conllu, "--out",
                 (dir / "j.skb").string(), "--manifest", (dir / "j1.json").string()},
                "SKB_FORGE_JOBS=1") == 0);
  CHECK(run_cli({"distill", "--skb", skb, "--conllu", conllu, "--out",
                 (dir / "j.skb").string(), "--manifest", (dir / "j8.json").string()},
                "SKB_FORGE_JOBS=8") == 0);
  auto j1 = nlohmann::json::parse(slurp(dir / "j1.json"));
  auto j8 = nlohmann::json::parse(slurp(dir / "j8.json"));
  CHECK(j1["config_digest"] == j8["config_digest"]);
  CHECK(j1["inputs"] == j8["inputs"]);
  CHECK(run_cli({"stats", "--skb", skb}, "SKB_FORGE_JOBS=zero") == 2);
}
