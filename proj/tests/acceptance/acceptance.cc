// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli_pipeline.h"
#include "oracles.h"
#include "skbforge/consistency.h"
#include "skbforge/distill.h"
#include "skbforge/error.h"
#include "skbforge/ingestion.h"
#include "skbforge/sememe_set.h"
#include "skbforge/substitution.h"
#include "test_support.h"

using namespace skbforge;
using namespace skbforge::testing;

namespace {

constexpr double kOracleTolerance = 1e-9;
constexpr double kTwinMinMap = 0.99;
constexpr double kTwinMinF1 = 0.95;
constexpr double kChanceTolerance = 0.05;
constexpr double kWorkedExampleSeconds = 1.0;
constexpr double kEvalSeconds = 60.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c, d);
  return buf;
}

Outcome worked_example() {
  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream inv_in(data_path("beautiful/inventory.json"));
  const SememeInventory inv = read_inventory(inv_in);
  const ParseMap parses = load_conllu("beautiful/dict.conllu");
  const auto entries = load_dictionary("beautiful/dict.jsonl");
  const SkbBuildResult full = build_skb(entries, inv, &parses, nullptr);
  const SkbBuildResult dist = distill_skb(full.skb, parses, DistillConfig{});
  const double secs = seconds_since(t0);

  const auto* f1 = full.skb.find_sense("beautiful%adj%1");
  const auto* f2 = full.skb.find_sense("beautiful%adj%2");
  const auto* d1 = dist.skb.find_sense("beautiful%adj%1");
  const auto* d2 = dist.skb.find_sense("beautiful%adj%2");
  const ImportanceScores sc =
      importance_scores(parses.at("beautiful%adj%1"), f1 ? f1->sememes : SememeSet{});
  const bool ok = f1 && f2 && d1 && d2 &&
                  f1->sememes == set_of({"beautiful", "extremely", "attractive", "look"}) &&
                  f2->sememes == set_of({"good", "give", "pleasure"}) &&
                  sc.at(Lemma("beautiful")) == 2 && sc.at(Lemma("extremely")) == 0 &&
                  sc.at(Lemma("attractive")) == 6 && sc.at(Lemma("look")) == 0 &&
                  d1->sememes == set_of({"attractive"}) && d2->sememes == f2->sememes &&
                  secs < kWorkedExampleSeconds;
  return {ok, fmt("exact sets and scores 2/0/6/0, %.3f s (limit %.0f s)", secs, kWorkedExampleSeconds)};
}

std::vector<Lemma> slice_oracle(const FrequencyTable& table, std::size_t tp,
                                std::size_t bp, std::size_t q) {
  std::vector<std::pair<Lemma, std::uint64_t>> rows(table.begin(), table.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  const std::size_t n = rows.size();
  const std::size_t top = (tp * n + q - 1) / q, bottom = (bp * n + q - 1) / q;
  std::vector<Lemma> out;
  for (std::size_t i = top; i + bottom < n; ++i)
    if (rows[i].second > 0) out.push_back(rows[i].first);
  std::sort(out.begin(), out.end());
  return out;
}

Outcome trimming() {
  // 100 lemmas, ties everywhere: ranks fall back to lemma order
  FrequencyTable table;
  for (int i = 0; i < 100; ++i) {
    char name[8];
    std::snprintf(name, sizeof(name), "w%03d", i);
    table[Lemma(name)] = i < 50 ? 9 : 4;
  }
  const SememeInventory inv = trim_by_frequency(table, SememeSetConfig{});
  bool fixed = inv.size() == 89 && !inv.contains(Lemma("w000")) &&
               inv.contains(Lemma("w001")) && inv.contains(Lemma("w089")) &&
               !inv.contains(Lemma("w090"));

  std::mt19937_64 rng(20240611);
  std::size_t mismatches = 0;
  for (int inst = 0; inst < 500; ++inst) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
    std::uniform_int_distribution<std::uint64_t> cd(
        0, std::uniform_int_distribution<std::uint64_t>(0, 30)(rng));
    FrequencyTable t;
    while (t.size() < n) {
      std::string name;
      const int len = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < len; ++k) name += static_cast<char>('a' + rng() % 26);
      t[Lemma(name)] = cd(rng);
    }
    const std::size_t tp = rng() % 21, bp = rng() % 31;
    SememeSetConfig cfg;
    cfg.top_trim_fraction = static_cast<double>(tp) / 100;
    cfg.bottom_trim_fraction = static_cast<double>(bp) / 100;
    const auto want = slice_oracle(t, tp, bp, 100);
    std::vector<Lemma> got;
    bool degenerate = false;
    try {
      const auto s = trim_by_frequency(t, cfg).sememes();
      got.assign(s.begin(), s.end());
    } catch (const Error& e) {
      degenerate = e.code() == ErrorCode::kDegenerateTrim;
    }
    if (want.empty() ? !degenerate : got != want) ++mismatches;
  }
  return {fixed && mismatches == 0,
          fmt("100-lemma table keeps %.0f; %.0f/500 oracle mismatches",
              static_cast<double>(inv.size()), static_cast<double>(mismatches))};
}

std::vector<TokenAnnotation> random_parse(std::mt19937_64& rng, int n, int v) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<TokenAnnotation> toks(n);
  for (int i = 0; i < n; ++i) {
    TokenAnnotation& t = toks[order[i] - 1];
    t.index = order[i];
    t.lemma = Lemma("l" + std::to_string(rng() % v));
    t.head = i == 0 ? 0 : order[rng() % i];
  }
  return toks;
}

Outcome distillation() {
  std::mt19937_64 rng(7);
  SememeInventory inv;
  for (int i = 0; i < 30; i += 2) inv.add(Lemma("l" + std::to_string(i)), 1);
  std::size_t violations = 0, senses = 0;
  while (senses < 1000) {
    const auto toks = random_parse(rng, 1 + static_cast<int>(rng() % 25), 30);
    const SememeSet s = extract_sense_sememes(toks, inv);
    if (s.empty()) continue;
    ++senses;
    DistillConfig cfg;
    cfg.t = static_cast<int>(rng() % 4);
    cfg.m = 2 + static_cast<int>(rng() % 5);
    const ImportanceScores sc = importance_scores(toks, s);
    const SememeSet out = distill_sense(s, sc, cfg);
    bool ok = !out.empty() && std::includes(s.begin(), s.end(), out.begin(), out.end());
    if (static_cast<int>(s.size()) < cfg.m) {
      ok = ok && out == s;
    } else {
      int best = 0;
      for (const auto& x : s) best = std::max(best, sc.at(x));
      for (const auto& x : out) ok = ok && sc.at(x) >= best - cfg.t;
    }
    ok = ok && distill_sense(out, importance_scores(toks, out), cfg) == out;
    if (!ok) ++violations;
  }
  return {violations == 0,
          fmt("%.0f random senses, %.0f violations", static_cast<double>(senses),
              static_cast<double>(violations))};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(11);
  std::size_t mismatches = 0, queries = 0;
  long double worst = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t words = 2 + rng() % 9;
    const std::size_t dim = 1 + rng() % 4;
    SyntheticCorpus c = random_corpus(rng, words, 8, 4, dim);
    EvalConfig cfg;
    cfg.k_neighbors = 1 + static_cast<int>(rng() % 12);
    cfg.rank_decay_c = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    for (const auto& w : c.skb.headwords()) {
      ++queries;
      const SkbRecord* target = c.skb.find_headword(w).front();
      const auto got = predict_sememes(*target, c.skb, c.embeddings, cfg);
      const auto want = oracle_predict(w, c.skb, c.embeddings, cfg);
      bool ok = got.size() == want.size();
      for (std::size_t i = 0; ok && i < got.size(); ++i) {
        const long double diff = std::fabs(got[i].score - want[i].score);
        worst = std::max(worst, diff);
        ok = got[i].sememe == want[i].sememe && diff <= kOracleTolerance;
      }
      std::vector<Lemma> order;
      for (const auto& r : want) order.push_back(r.sememe);
      for (const SkbRecord* rec : c.skb.find_headword(w)) {
        const long double diff = std::fabs(average_precision(got, rec->sememes) -
                                           oracle_ap(order, rec->sememes));
        worst = std::max(worst, diff);
        ok = ok && diff <= kOracleTolerance;
      }
      if (!ok) ++mismatches;
    }
  }
  return {mismatches == 0,
          fmt("200 instances, %.0f queries, %.0f mismatches, max |diff| %.2e (tol 1e-9)",
              static_cast<double>(queries), static_cast<double>(mismatches),
              static_cast<double>(worst))};
}

Outcome eval_sanity() {
  const auto t0 = std::chrono::steady_clock::now();
  // twin synonyms: the precondition is that every held-out sense keeps its
  // twin in the training half
  SyntheticCorpus twins = twin_corpus(50, 1);
  EvalConfig cfg;
  const HoldoutSplit split = split_holdout(twins.skb, cfg);
  bool twins_intact = true;
  for (const auto& r : split.test) {
    std::string twin = r.headword.str();
    twin.back() = twin.back() == 'a' ? 'b' : 'a';
    if (!split.train.has_headword(Lemma(twin))) twins_intact = false;
  }
  const EvalReport twin_report = evaluate_consistency(twins.skb, twins.embeddings, cfg, 4);

  // independent random sets over 20 sememes, 3 per sense
  const std::size_t v = 20, g = 3;
  SyntheticCorpus rnd = chance_corpus(2000, v, g, 2);
  const EvalReport rnd_report = evaluate_consistency(rnd.skb, rnd.embeddings, cfg, 4);
  const HoldoutSplit rnd_split = split_holdout(rnd.skb, cfg);
  const SememePredictor predictor(rnd_split.train, rnd.embeddings, cfg);
  double chance = 0;
  for (const auto& r : rnd_split.test)
    chance += chance_ap(v, g, predictor.predict(r.headword).size());
  chance /= static_cast<double>(rnd_split.test.size());
  const double secs = seconds_since(t0);

  const bool ok = twins_intact && twin_report.map_score >= kTwinMinMap &&
                  twin_report.f1_score >= kTwinMinF1 &&
                  std::fabs(rnd_report.map_score - chance) <= kChanceTolerance &&
                  secs < kEvalSeconds;
  return {ok, fmt("twins MAP %.4f F1 %.4f; random MAP %.4f vs chance %.4f", twin_report.map_score,
                  twin_report.f1_score, rnd_report.map_score, chance) +
                  fmt(" (tol %.2f); %.2f s", kChanceTolerance, secs) +
                  (twins_intact ? "" : "; twin precondition violated")};
}

Outcome substitution() {
  std::mt19937_64 rng(17);
  const char* tags[] = {"", "noun", "verb"};
  std::size_t violations = 0;
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t senses = 1 + rng() % 100, words = 1 + rng() % 40, v = 1 + rng() % 6;
    Skb skb(numbered_inventory(v));
    for (std::size_t i = 0; i < senses; ++i)
      skb.insert({Lemma(word_name(rng() % words)), PosTag(tags[rng() % 3]),
                  "x" + std::to_string(i), random_sememes(rng, v, 3)});
    const SubstitutionIndex idx(skb);
    for (const auto& w : skb.headwords()) {
      const auto got = idx.substitutes(w);
      if (got != oracle_substitutes(skb, w, true) || got.contains(w)) ++violations;
      for (const auto& u : got)
        if (!idx.substitutes(u).contains(w)) ++violations;
    }
  }
  return {violations == 0, fmt("200 instances, %.0f violations", static_cast<double>(violations))};
}

Outcome substitute_gap(const PipelineRun& run) {
  if (!run.ok()) return {false, "fixture pipeline failed"};
  const auto full = nlohmann::json::parse(run.outputs.at("stats.full.json"));
  const auto dist = nlohmann::json::parse(run.outputs.at("stats.distilled.json"));
  const auto plain = nlohmann::json::parse(run.outputs.at("stats.plain.json"));
  const double mf = full["mean_substitutes"], md = dist["mean_substitutes"];
  const double senses = plain["senses"];
  return {md > mf && senses >= 2000,
          fmt("distilled %.4f > full %.4f over %.0f senses", md, mf, senses)};
}

Outcome determinism(const PipelineRun& first) {
  TempDir again, eight;
  const PipelineRun r2 = run_pipeline("wordnet", again.path(), "1");
  const PipelineRun r8 = run_pipeline("wordnet", eight.path(), "8");
  std::size_t differing = 0;
  for (const auto& [file, bytes] : first.outputs) {
    if (r2.outputs.count(file) == 0 || r2.outputs.at(file) != bytes) ++differing;
    if (r8.outputs.count(file) == 0 || r8.outputs.at(file) != bytes) ++differing;
  }
  const bool ok = first.ok() && r2.ok() && r8.ok() && differing == 0 &&
                  first.outputs.size() == r8.outputs.size();
  return {ok, fmt("%.0f output files x 3 runs (jobs 1, 1, 8), %.0f differ",
                  static_cast<double>(first.outputs.size()), static_cast<double>(differing))};
}

}  // namespace

int main() {
  TempDir work;
  const PipelineRun fixture_run = run_pipeline("wordnet", work.path(), "1");

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"worked example extraction and distillation", worked_example},
      {"frequency trimming arithmetic", trimming},
      {"distillation properties", distillation},
      {"consistency eval oracle equivalence", oracle_equivalence},
      {"consistency eval sanity", eval_sanity},
      {"substitution index", substitution},
      {"distilled SKB has more substitutes", [&] { return substitute_gap(fixture_run); }},
      {"determinism", [&] { return determinism(fixture_run); }},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
