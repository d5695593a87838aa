#ifndef SKBFORGE_SEMEME_SET_H_
#define SKBFORGE_SEMEME_SET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "skbforge/ingestion.h"
#include "skbforge/lexicon.h"
#include "skbforge/normalizer.h"

namespace skbforge {

struct SememeSetConfig {
  double top_trim_fraction = 0.01;
  double bottom_trim_fraction = 0.10;
  WordList stopwords{WordListKind::kStopword, {}};
  WordList negators{WordListKind::kNegator, {}};

  // Throws kInvalidConfig unless both fractions are in [0,1) and sum below 1.
  void validate() const;
};

// Definition-token occurrences of vocabulary lemmas. Vocabulary words that
// never occur are present with count 0.
using FrequencyTable = std::map<Lemma, std::uint64_t>;

// ceil(fraction * n), treating products within 1e-9 of an integer as exact
// so 0.07 * 100 trims 7 rather than 8.
std::size_t trim_count(double fraction, std::size_t n);

// cdv minus stop words, keeping negators that are in the cdv. Order
// preserved. Throws kEmptyList for an empty cdv, kEmptyResult if nothing
// survives.
WordList filter_stopwords(const WordList& cdv, const SememeSetConfig& cfg);

// Uses Sense::tokens when present, else `normalizer` on the raw definition.
// Throws kNoAnnotations when a sense has no tokens and normalizer is null.
FrequencyTable count_defining_frequencies(
    std::span<const DictionaryEntry> entries, const WordList& vocab,
    const Normalizer* normalizer, int jobs = 1);

// Ranks distinct lemmas by (count desc, lemma asc), drops the top
// ceil(top*N) and bottom ceil(bottom*N), then any zero counts.
// Throws kDegenerateTrim when nothing remains.
SememeInventory trim_by_frequency(const FrequencyTable& table,
                                  const SememeSetConfig& cfg);

SememeInventory build_sememe_set(std::span<const DictionaryEntry> entries,
                                 const WordList& cdv,
                                 const SememeSetConfig& cfg,
                                 const Normalizer* normalizer, int jobs = 1);

}  // namespace skbforge

#endif  // SKBFORGE_SEMEME_SET_H_
