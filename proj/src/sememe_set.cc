#include "skbforge/sememe_set.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "skbforge/error.h"
#include "skbforge/parallel.h"

namespace skbforge {

void SememeSetConfig::validate() const {
  const auto in_range = [](double f) { return f >= 0.0 && f < 1.0; };
  if (!in_range(top_trim_fraction) || !in_range(bottom_trim_fraction) ||
      top_trim_fraction + bottom_trim_fraction >= 1.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "trim fractions must lie in [0,1) and sum below 1");
  }
}

std::size_t trim_count(double fraction, std::size_t n) {
  const double x = fraction * static_cast<double>(n);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(x));
}

WordList filter_stopwords(const WordList& cdv, const SememeSetConfig& cfg) {
  if (cdv.empty()) throw Error(ErrorCode::kEmptyList, "empty CDV");
  std::vector<Lemma> kept;
  for (const auto& w : cdv.words()) {
    if (!cfg.stopwords.contains(w) || cfg.negators.contains(w)) kept.push_back(w);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyResult, "every CDV word is a stop word");
  }
  return WordList(cdv.kind(), std::move(kept));
}

FrequencyTable count_defining_frequencies(
    std::span<const DictionaryEntry> entries, const WordList& vocab,
    const Normalizer* normalizer, int jobs) {
  // Shard by entry; shard tables merge by addition.
  auto shards = parallel_map(entries.size(), jobs, [&](std::size_t i) {
    std::map<Lemma, std::uint64_t> local;
    for (const auto& sense : entries[i].senses) {
      std::vector<TokenAnnotation> normalized;
      const std::vector<TokenAnnotation>* tokens = nullptr;
      if (sense.tokens) {
        tokens = &*sense.tokens;
      } else if (normalizer != nullptr) {
        normalized = normalizer->normalize(sense.definition);
        tokens = &normalized;
      } else {
        throw Error(ErrorCode::kNoAnnotations, "sense " + sense.sense_id);
      }
      for (const auto& t : *tokens) {
        if (vocab.contains(t.lemma)) ++local[t.lemma];
      }
    }
    return local;
  });
  FrequencyTable table;
  for (const auto& w : vocab.words()) table.emplace(w, 0);
  for (const auto& shard : shards) {
    for (const auto& [lemma, count] : shard) table[lemma] += count;
  }
  return table;
}

SememeInventory trim_by_frequency(const FrequencyTable& table,
                                  const SememeSetConfig& cfg) {
  cfg.validate();
  if (table.empty()) throw Error(ErrorCode::kDegenerateTrim, "empty table");
  std::vector<std::pair<Lemma, std::uint64_t>> ranked(table.begin(),
                                                      table.end());
  // The map is lemma-sorted, so a stable sort on count alone breaks ties
  // lexicographically.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const std::size_t n = ranked.size();
  const std::size_t top = trim_count(cfg.top_trim_fraction, n);
  const std::size_t bottom = trim_count(cfg.bottom_trim_fraction, n);
  SememeInventory inventory;
  for (std::size_t i = top; i + bottom < n; ++i) {
    if (ranked[i].second > 0) inventory.add(ranked[i].first, ranked[i].second);
  }
  if (inventory.empty()) {
    throw Error(ErrorCode::kDegenerateTrim,
                "no lemma survives trimming " + std::to_string(n) + " entries");
  }
  return inventory;
}

SememeInventory build_sememe_set(std::span<const DictionaryEntry> entries,
                                 const WordList& cdv,
                                 const SememeSetConfig& cfg,
                                 const Normalizer* normalizer, int jobs) {
  cfg.validate();
  const WordList vocab = filter_stopwords(cdv, cfg);
  const FrequencyTable table =
      count_defining_frequencies(entries, vocab, normalizer, jobs);
  return trim_by_frequency(table, cfg);
}

}  // namespace skbforge
