#ifndef SKBFORGE_DISTILL_H_
#define SKBFORGE_DISTILL_H_

#include <map>
#include <span>
#include <vector>

#include "skbforge/ingestion.h"
#include "skbforge/lexicon.h"
#include "skbforge/normalizer.h"

namespace skbforge {

struct DistillConfig {
  // Score slack: keep sememes scoring at least max - t.
  int t = 1;
  // Only senses with at least m sememes are distilled.
  int m = 4;

  // Throws kInvalidConfig unless t >= 0 and m >= 2.
  void validate() const;
};

// Sememe -> number of direct dependents of its source token.
using ImportanceScores = std::map<Lemma, int>;

// {lemma of each token} intersected with the inventory. May be empty.
SememeSet extract_sense_sememes(std::span<const TokenAnnotation> tokens,
                                const SememeInventory& inventory);

// A sememe seen at several positions takes the largest dependent count.
// Throws kMissingParse if the tokens carry no heads and kSememeNotInTokens
// if a sememe has no source token.
ImportanceScores importance_scores(std::span<const TokenAnnotation> tokens,
                                   const SememeSet& sememes);

// Identity when |sememes| < m; otherwise keeps every sememe whose score is
// at least the maximum score minus t. Never returns an empty set for a
// non-empty input.
SememeSet distill_sense(const SememeSet& sememes, const ImportanceScores& scores,
                        const DistillConfig& cfg);

struct SkbBuildResult {
  Skb skb;
  std::vector<Diagnostic> diagnostics;
};

// Token source per sense: `parses` entry, then Sense::tokens, then the
// normalizer. Senses with no tokens or an empty extraction are reported in
// the diagnostics and left out.
SkbBuildResult build_skb(std::span<const DictionaryEntry> entries,
                         const SememeInventory& inventory,
                         const ParseMap* parses, const Normalizer* normalizer,
                         int jobs = 1);

// Rewrites every record through distill_sense. Records without a usable
// parse keep their sememes and get a diagnostic. The inventory is carried
// over unchanged; sememes that lose every record show up as unused.
SkbBuildResult distill_skb(const Skb& skb, const ParseMap& parses,
                           const DistillConfig& cfg, int jobs = 1);

}  // namespace skbforge

#endif  // SKBFORGE_DISTILL_H_
