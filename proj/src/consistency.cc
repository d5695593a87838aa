#include "skbforge/consistency.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <cstdio>
#include <optional>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "skbforge/error.h"
#include "skbforge/parallel.h"
#include "skbforge/sememe_set.h"

namespace skbforge {
namespace {

double norm_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Uniform integer in [0, range) by rejection, independent of the standard
// library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t range) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % range;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % range;
}

bool by_score(const RankedSememe& a, const RankedSememe& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.sememe < b.sememe;
}

}  // namespace

void EvalConfig::validate() const {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "holdout fraction must be in (0,1)");
  }
  if (k_neighbors < 1) {
    throw Error(ErrorCode::kInvalidConfig, "k must be positive");
  }
  if (!(rank_decay_c > 0.0 && rank_decay_c < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "c must be in (0,1)");
  }
  if (!(f1_score_ratio > 0.0 && f1_score_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "F1 score ratio must be in (0,1]");
  }
}

HoldoutSplit split_holdout(const Skb& skb, const EvalConfig& cfg) {
  cfg.validate();
  const std::size_t n = skb.size();
  if (n < 10) {
    throw Error(ErrorCode::kTooSmall,
                "need at least 10 senses, have " + std::to_string(n));
  }
  std::vector<const SkbRecord*> order;
  order.reserve(n);
  for (const auto& r : skb.records()) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const SkbRecord* a, const SkbRecord* b) {
              return a->sense_id < b->sense_id;
            });
  const std::size_t k = std::min(n, trim_count(cfg.holdout_fraction, n));
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(order[i], order[i + bounded(rng, n - i)]);
  }
  HoldoutSplit split{Skb(skb.inventory()), {}};
  std::set<std::string> held;
  for (std::size_t i = 0; i < k; ++i) {
    split.test.push_back(*order[i]);
    held.insert(order[i]->sense_id);
  }
  std::sort(split.test.begin(), split.test.end(),
            [](const SkbRecord& a, const SkbRecord& b) {
              return a.sense_id < b.sense_id;
            });
  for (const auto& r : skb.records()) {
    if (!held.contains(r.sense_id)) split.train.insert(r);
  }
  return split;
}

SememePredictor::SememePredictor(const Skb& train,
                                 const EmbeddingTable& embeddings,
                                 const EvalConfig& cfg)
    : embeddings_(embeddings), cfg_(cfg) {
  cfg_.validate();
  if (train.empty()) throw Error(ErrorCode::kEmptyTrain, "no training senses");
  for (const auto& word : train.headwords()) {
    const auto vec = embeddings.find(word);
    if (!vec) continue;
    SememeSet pool;
    for (const SkbRecord* r : train.find_headword(word)) {
      pool.insert(r->sememes.begin(), r->sememes.end());
    }
    candidates_.push_back(
        {word, *vec, norm_of(*vec), std::vector<Lemma>(pool.begin(), pool.end())});
  }
}

std::vector<RankedSememe> SememePredictor::predict(const Lemma& headword) const {
  const auto target = embeddings_.find(headword);
  if (!target) throw Error(ErrorCode::kNoEmbedding, headword.str());
  const double target_norm = norm_of(*target);

  struct Neighbor {
    double cos;
    const Candidate* cand;
  };
  std::vector<Neighbor> neighbors;
  neighbors.reserve(candidates_.size());
  for (const auto& c : candidates_) {
    if (c.word == headword) continue;
    double dot = 0.0;
    for (std::size_t i = 0; i < target->size(); ++i) dot += (*target)[i] * c.vec[i];
    const double denom = target_norm * c.norm;
    neighbors.push_back({denom == 0.0 ? 0.0 : dot / denom, &c});
  }
  const std::size_t k =
      std::min(neighbors.size(), static_cast<std::size_t>(cfg_.k_neighbors));
  std::partial_sort(neighbors.begin(), neighbors.begin() + k, neighbors.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      if (a.cos != b.cos) return a.cos > b.cos;
                      return a.cand->word < b.cand->word;
                    });
  std::map<Lemma, double> scores;
  double decay = 1.0;
  for (std::size_t r = 0; r < k; ++r) {
    decay *= cfg_.rank_decay_c;
    const double weight = neighbors[r].cos * decay;
    for (const auto& s : neighbors[r].cand->pool) scores[s] += weight;
  }
  std::vector<RankedSememe> ranked;
  for (const auto& [s, score] : scores) {
    if (score > 0.0) ranked.push_back({s, score});
  }
  std::sort(ranked.begin(), ranked.end(), by_score);
  return ranked;
}

std::vector<RankedSememe> predict_sememes(const SkbRecord& target,
                                          const Skb& train,
                                          const EmbeddingTable& embeddings,
                                          const EvalConfig& cfg) {
  return SememePredictor(train, embeddings, cfg).predict(target.headword);
}

double average_precision(std::span<const Lemma> ranked, const SememeSet& gold) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyGold, "empty gold set");
  double sum = 0.0;
  std::size_t found = 0;
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    if (gold.contains(ranked[r])) {
      ++found;
      sum += static_cast<double>(found) / static_cast<double>(r + 1);
    }
  }
  return sum / static_cast<double>(gold.size());
}

double average_precision(std::span<const RankedSememe> ranked,
                         const SememeSet& gold) {
  std::vector<Lemma> lemmas;
  lemmas.reserve(ranked.size());
  for (const auto& r : ranked) lemmas.push_back(r.sememe);
  return average_precision(lemmas, gold);
}

SememeSet select_predicted(std::span<const RankedSememe> ranked,
                           const EvalConfig& cfg) {
  SememeSet out;
  if (ranked.empty()) return out;
  double top = ranked.front().score;
  for (const auto& r : ranked) top = std::max(top, r.score);
  const double threshold = cfg.f1_score_ratio * top;
  for (const auto& r : ranked) {
    if (r.score >= threshold) out.insert(r.sememe);
  }
  return out;
}

double f1_of(const SememeSet& predicted, const SememeSet& gold) {
  if (predicted.empty() || gold.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& p : predicted) hits += gold.contains(p) ? 1 : 0;
  if (hits == 0) return 0.0;
  const double precision = static_cast<double>(hits) / predicted.size();
  const double recall = static_cast<double>(hits) / gold.size();
  return 2.0 * precision * recall / (precision + recall);
}

EvalReport evaluate_consistency(const Skb& skb, const EmbeddingTable& embeddings,
                                const EvalConfig& cfg, int jobs) {
  HoldoutSplit split = split_holdout(skb, cfg);
  const SememePredictor predictor(split.train, embeddings, cfg);
  const auto& test = split.test;
  auto results = parallel_map(test.size(), jobs, [&](std::size_t i) {
    std::optional<SenseEvaluation> out;
    if (!embeddings.find(test[i].headword)) return out;
    const auto ranked = predictor.predict(test[i].headword);
    SenseEvaluation ev;
    ev.sense_id = test[i].sense_id;
    ev.gold = test[i].sememes;
    ev.ap = average_precision(ranked, ev.gold);
    ev.predicted = select_predicted(ranked, cfg);
    ev.f1 = f1_of(ev.predicted, ev.gold);
    out = std::move(ev);
    return out;
  });
  EvalReport report;
  double ap_sum = 0.0, f1_sum = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      ++report.excluded;
      report.excluded_ids.push_back(test[i].sense_id);
      continue;
    }
    ap_sum += results[i]->ap;
    f1_sum += results[i]->f1;
    report.per_sense.push_back(std::move(*results[i]));
  }
  if (report.per_sense.empty()) {
    throw Error(ErrorCode::kNoUsableSenses,
                "no held-out sense has an embedding");
  }
  const double n = static_cast<double>(report.per_sense.size());
  report.map_score = ap_sum / n;
  report.f1_score = f1_sum / n;
  return report;
}

std::string EvalReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["map"] = map_score;
  doc["f1"] = f1_score;
  doc["evaluated"] = per_sense.size();
  doc["excluded"] = excluded;
  doc["excluded_ids"] = excluded_ids;
  doc["per_sense"] = nlohmann::ordered_json::array();
  for (const auto& ev : per_sense) {
    nlohmann::ordered_json item;
    item["sense_id"] = ev.sense_id;
    item["ap"] = ev.ap;
    item["f1"] = ev.f1;
    item["predicted"] = nlohmann::ordered_json::array();
    for (const auto& s : ev.predicted) item["predicted"].push_back(s.str());
    item["gold"] = nlohmann::ordered_json::array();
    for (const auto& s : ev.gold) item["gold"].push_back(s.str());
    doc["per_sense"].push_back(std::move(item));
  }
  return doc.dump() + "\n";
}

std::string EvalReport::summary() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "MAP %.4f  F1 %.4f  (%zu senses, %zu excluded)",
                map_score, f1_score, per_sense.size(), excluded);
  return buf;
}

}  // namespace skbforge
