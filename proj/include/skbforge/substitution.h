#ifndef SKBFORGE_SUBSTITUTION_H_
#define SKBFORGE_SUBSTITUTION_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skbforge/lexicon.h"

namespace skbforge {

// Canonical form of a sememe set: sorted, deduplicated, non-empty.
class SememeKey {
 public:
  // Throws kInvalidConfig for an empty set.
  explicit SememeKey(const SememeSet& sememes);

  const std::vector<Lemma>& sememes() const { return sememes_; }
  std::string str() const;  // space-joined

  friend auto operator<=>(const SememeKey&, const SememeKey&) = default;
  friend bool operator==(const SememeKey&, const SememeKey&) = default;

 private:
  std::vector<Lemma> sememes_;
};

struct IndexedSense {
  Lemma headword{"_"};
  PosTag pos;
  std::string sense_id;

  friend auto operator<=>(const IndexedSense&, const IndexedSense&) = default;
  friend bool operator==(const IndexedSense&, const IndexedSense&) = default;
};

struct SubstitutionOptions {
  // Require equal POS when both senses carry a known tag.
  bool match_pos = true;
};

// Two words substitute for each other when a sense of each carries exactly
// the same sememe set.
class SubstitutionIndex {
 public:
  // Throws kEmptySkb.
  explicit SubstitutionIndex(const Skb& skb, SubstitutionOptions options = {});

  const std::map<SememeKey, std::vector<IndexedSense>>& buckets() const {
    return buckets_;
  }

  // Substitutes of `word`, never including `word`. When `pos` is given, only
  // senses of `word` with that POS (or unknown POS) are queried.
  // Throws kUnknownWord.
  std::set<Lemma> substitutes(const Lemma& word,
                              const std::optional<PosTag>& pos = std::nullopt) const;

  const std::vector<Lemma>& headwords() const { return headwords_; }

 private:
  SubstitutionOptions options_;
  std::map<SememeKey, std::vector<IndexedSense>> buckets_;
  std::map<Lemma, std::vector<std::pair<PosTag, const SememeKey*>>> senses_of_;
  std::vector<Lemma> headwords_;
};

SubstitutionIndex build_index(const Skb& skb, SubstitutionOptions options = {});

struct SubstituteStats {
  double mean = 0.0;
  std::size_t word_count = 0;
  // Buckets "0", "1", "2-5", "6-20", ">20" in that order.
  std::vector<std::pair<std::string, std::size_t>> histogram;

  std::string to_json() const;
};

// Mean of |substitutes(w)| over every headword of the index.
SubstituteStats substitute_stats(const SubstitutionIndex& index);

}  // namespace skbforge

#endif  // SKBFORGE_SUBSTITUTION_H_
