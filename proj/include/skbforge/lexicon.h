#ifndef SKBFORGE_LEXICON_H_
#define SKBFORGE_LEXICON_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace skbforge {

// A case-folded, whitespace-free word form. Internal whitespace runs of
// multi-word expressions are replaced by kJoiner.
class Lemma {
 public:
  static constexpr char kJoiner = '_';

  // Canonicalizes `raw`. Throws Error(kInvalidLemma) if nothing remains.
  explicit Lemma(std::string_view raw);

  const std::string& str() const { return text_; }

  friend auto operator<=>(const Lemma&, const Lemma&) = default;
  friend bool operator==(const Lemma&, const Lemma&) = default;

 private:
  std::string text_;
};

using SememeSet = std::set<Lemma>;

// Part-of-speech tag from an open tag set. An empty value is the
// distinguished "unknown" tag.
class PosTag {
 public:
  PosTag() = default;
  explicit PosTag(std::string_view tag);

  static PosTag unknown() { return PosTag(); }

  bool known() const { return !value_.empty(); }
  const std::string& str() const { return value_; }

  friend auto operator<=>(const PosTag&, const PosTag&) = default;
  friend bool operator==(const PosTag&, const PosTag&) = default;

 private:
  std::string value_;
};

// One CoNLL-U row. `head` is absent when the token was not parsed.
struct TokenAnnotation {
  int index = 0;
  std::string form;
  Lemma lemma{"_"};
  std::string upos;
  std::optional<int> head;
  std::string deprel;

  friend bool operator==(const TokenAnnotation&,
                         const TokenAnnotation&) = default;
};

// Checks index contiguity (1..n) and, when every token carries a head, that
// the heads form a single-rooted tree. Throws kNonContiguousIndices,
// kCyclicHeads or kMalformedLine.
void validate_tokens(std::span<const TokenAnnotation> tokens);

bool has_parse(std::span<const TokenAnnotation> tokens);

struct Sense {
  std::string sense_id;
  std::string definition;
  std::optional<std::vector<TokenAnnotation>> tokens;
};

struct DictionaryEntry {
  Lemma headword{"_"};
  PosTag pos;
  std::vector<Sense> senses;
};

class SememeInventory {
 public:
  SememeInventory() = default;

  // Adds or overwrites `sememe` with its definition-occurrence count.
  void add(const Lemma& sememe, std::uint64_t count);

  bool contains(const Lemma& sememe) const;
  std::uint64_t count(const Lemma& sememe) const;
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  // Sorted by lemma.
  const std::map<Lemma, std::uint64_t>& counts() const { return counts_; }
  SememeSet sememes() const;

  friend bool operator==(const SememeInventory&,
                         const SememeInventory&) = default;

 private:
  std::map<Lemma, std::uint64_t> counts_;
};

struct SkbRecord {
  Lemma headword{"_"};
  PosTag pos;
  std::string sense_id;
  SememeSet sememes;

  friend bool operator==(const SkbRecord&, const SkbRecord&) = default;
};

// Sense-level sememe knowledge base. Built by a single writer through
// insert(); read-only afterwards.
class Skb {
 public:
  Skb() = default;
  explicit Skb(SememeInventory inventory);

  // Throws kUnknownSememe, kDuplicateSenseId, or kInvalidConfig for an empty
  // sememe set.
  void insert(SkbRecord record);

  const SememeInventory& inventory() const { return inventory_; }
  const std::vector<SkbRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const SkbRecord* find_sense(std::string_view sense_id) const;
  std::vector<const SkbRecord*> find_headword(const Lemma& headword) const;
  bool has_headword(const Lemma& headword) const;

  // Distinct headwords, sorted.
  std::vector<Lemma> headwords() const;

  // Order-insensitive comparison of records plus inventory equality.
  bool same_content(const Skb& other) const;

 private:
  SememeInventory inventory_;
  std::vector<SkbRecord> records_;
  std::unordered_map<std::string, std::size_t> by_sense_;
  std::map<Lemma, std::vector<std::size_t>> by_headword_;
};

// Functional form of Skb::insert.
Skb insert_record(Skb skb, SkbRecord record);

struct SkbStats {
  std::size_t word_count = 0;
  std::size_t sense_count = 0;
  std::size_t sememe_count = 0;
  std::size_t total_sememes = 0;  // numerator of avg_sememes_per_sense
  double avg_sememes_per_sense = 0.0;

  friend bool operator==(const SkbStats&, const SkbStats&) = default;
};

// Throws kEmptySkb.
SkbStats compute_stats(const Skb& skb);

// Sememes annotated to at least one record, with their inventory counts.
SememeInventory effective_inventory(const Skb& skb);

}  // namespace skbforge

#endif  // SKBFORGE_LEXICON_H_
