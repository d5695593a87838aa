#include "skbforge/distill.h"

#include <algorithm>
#include <cstdint>
#include <optional>

#include "skbforge/error.h"
#include "skbforge/parallel.h"

namespace skbforge {

void DistillConfig::validate() const {
  if (t < 0) throw Error(ErrorCode::kInvalidConfig, "t must be >= 0");
  if (m < 2) throw Error(ErrorCode::kInvalidConfig, "m must be >= 2");
}

SememeSet extract_sense_sememes(std::span<const TokenAnnotation> tokens,
                                const SememeInventory& inventory) {
  SememeSet out;
  for (const auto& t : tokens) {
    if (inventory.contains(t.lemma)) out.insert(t.lemma);
  }
  return out;
}

ImportanceScores importance_scores(std::span<const TokenAnnotation> tokens,
                                   const SememeSet& sememes) {
  if (!has_parse(tokens)) {
    throw Error(ErrorCode::kMissingParse, "tokens carry no dependency heads");
  }
  validate_tokens(tokens);
  std::vector<int> dependents(tokens.size() + 1, 0);
  for (const auto& t : tokens) ++dependents[static_cast<std::size_t>(*t.head)];
  ImportanceScores scores;
  for (const auto& t : tokens) {
    if (!sememes.contains(t.lemma)) continue;
    const int d = dependents[static_cast<std::size_t>(t.index)];
    auto [it, inserted] = scores.emplace(t.lemma, d);
    if (!inserted) it->second = std::max(it->second, d);
  }
  for (const auto& s : sememes) {
    if (!scores.contains(s)) {
      throw Error(ErrorCode::kSememeNotInTokens, "'" + s.str() + "'");
    }
  }
  return scores;
}

SememeSet distill_sense(const SememeSet& sememes, const ImportanceScores& scores,
                        const DistillConfig& cfg) {
  if (sememes.size() < static_cast<std::size_t>(cfg.m)) return sememes;
  const auto score_of = [&](const Lemma& s) -> std::int64_t {
    const auto it = scores.find(s);
    if (it == scores.end()) {
      throw Error(ErrorCode::kSememeNotInTokens, "no score for '" + s.str() + "'");
    }
    return it->second;
  };
  std::int64_t best = 0;
  for (const auto& s : sememes) best = std::max(best, score_of(s));
  SememeSet kept;
  for (const auto& s : sememes) {
    if (score_of(s) + cfg.t >= best) kept.insert(s);
  }
  return kept;
}

namespace {

struct SenseOutcome {
  std::optional<SkbRecord> record;
  std::optional<Diagnostic> diagnostic;
};

}  // namespace

SkbBuildResult build_skb(std::span<const DictionaryEntry> entries,
                         const SememeInventory& inventory,
                         const ParseMap* parses, const Normalizer* normalizer,
                         int jobs) {
  struct SenseRef {
    const DictionaryEntry* entry;
    const Sense* sense;
  };
  std::vector<SenseRef> senses;
  for (const auto& e : entries) {
    for (const auto& s : e.senses) senses.push_back({&e, &s});
  }
  auto outcomes = parallel_map(senses.size(), jobs, [&](std::size_t i) {
    const auto& [entry, sense] = senses[i];
    SenseOutcome out;
    std::vector<TokenAnnotation> normalized;
    std::span<const TokenAnnotation> tokens;
    const auto parsed =
        parses != nullptr ? parses->find(sense->sense_id) : ParseMap::const_iterator();
    if (parses != nullptr && parsed != parses->end()) {
      tokens = parsed->second;
    } else if (sense->tokens) {
      tokens = *sense->tokens;
    } else if (normalizer != nullptr) {
      try {
        normalized = normalizer->normalize(sense->definition);
      } catch (const Error& e) {
        out.diagnostic = Diagnostic{sense->sense_id, std::string(e.what())};
        return out;
      }
      tokens = normalized;
    } else {
      out.diagnostic = Diagnostic{sense->sense_id, "NoAnnotations: no tokens"};
      return out;
    }
    SememeSet sememes = extract_sense_sememes(tokens, inventory);
    if (sememes.empty()) {
      out.diagnostic =
          Diagnostic{sense->sense_id, "no sememes extracted; sense dropped"};
      return out;
    }
    out.record = SkbRecord{entry->headword, entry->pos, sense->sense_id,
                           std::move(sememes)};
    return out;
  });
  SkbBuildResult result{Skb(inventory), {}};
  for (auto& o : outcomes) {
    if (o.record) result.skb.insert(std::move(*o.record));
    if (o.diagnostic) result.diagnostics.push_back(std::move(*o.diagnostic));
  }
  return result;
}

SkbBuildResult distill_skb(const Skb& skb, const ParseMap& parses,
                           const DistillConfig& cfg, int jobs) {
  cfg.validate();
  const auto& records = skb.records();
  auto outcomes = parallel_map(records.size(), jobs, [&](std::size_t i) {
    const SkbRecord& rec = records[i];
    SenseOutcome out;
    out.record = rec;
    if (rec.sememes.size() < static_cast<std::size_t>(cfg.m)) return out;
    const auto it = parses.find(rec.sense_id);
    if (it == parses.end()) {
      out.diagnostic = Diagnostic{rec.sense_id, "MissingParse: no parse for sense"};
      return out;
    }
    try {
      const auto scores = importance_scores(it->second, rec.sememes);
      out.record->sememes = distill_sense(rec.sememes, scores, cfg);
    } catch (const Error& e) {
      out.diagnostic = Diagnostic{rec.sense_id, std::string(e.what())};
    }
    return out;
  });
  SkbBuildResult result{Skb(skb.inventory()), {}};
  for (auto& o : outcomes) {
    result.skb.insert(std::move(*o.record));
    if (o.diagnostic) result.diagnostics.push_back(std::move(*o.diagnostic));
  }
  return result;
}

}  // namespace skbforge
