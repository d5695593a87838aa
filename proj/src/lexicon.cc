#include "skbforge/lexicon.h"

#include <algorithm>

#include "skbforge/error.h"
#include "skbforge/text.h"

namespace skbforge {

Lemma::Lemma(std::string_view raw) {
  const auto words = text::split_ws(raw);
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) text_.push_back(kJoiner);
    text_ += text::fold_case(words[i]);
  }
  if (text_.empty()) {
    throw Error(ErrorCode::kInvalidLemma, "empty lemma");
  }
}

PosTag::PosTag(std::string_view tag) : value_(text::trim(tag)) {}

bool has_parse(std::span<const TokenAnnotation> tokens) {
  return !tokens.empty() &&
         std::all_of(tokens.begin(), tokens.end(),
                     [](const TokenAnnotation& t) { return t.head.has_value(); });
}

void validate_tokens(std::span<const TokenAnnotation> tokens) {
  const int n = static_cast<int>(tokens.size());
  for (int i = 0; i < n; ++i) {
    if (tokens[i].index != i + 1) {
      throw Error(ErrorCode::kNonContiguousIndices,
                  "expected token " + std::to_string(i + 1) + ", found " +
                      std::to_string(tokens[i].index));
    }
  }
  const auto parsed = std::count_if(
      tokens.begin(), tokens.end(),
      [](const TokenAnnotation& t) { return t.head.has_value(); });
  if (parsed == 0) return;
  if (parsed != n) {
    throw Error(ErrorCode::kMalformedLine, "some tokens lack a head");
  }
  int roots = 0;
  for (const auto& t : tokens) {
    const int h = *t.head;
    if (h == t.index) {
      throw Error(ErrorCode::kCyclicHeads,
                  "token " + std::to_string(t.index) + " heads itself");
    }
    if (h < 0 || h > n) {
      throw Error(ErrorCode::kMalformedLine,
                  "head " + std::to_string(h) + " out of range");
    }
    if (h == 0) ++roots;
  }
  if (roots != 1) {
    throw Error(ErrorCode::kCyclicHeads,
                "expected exactly one root, found " + std::to_string(roots));
  }
  // Every token must reach the root within n steps.
  for (int i = 0; i < n; ++i) {
    int cur = i + 1;
    int steps = 0;
    while (cur != 0) {
      if (++steps > n) {
        throw Error(ErrorCode::kCyclicHeads,
                    "cycle through token " + std::to_string(i + 1));
      }
      cur = *tokens[cur - 1].head;
    }
  }
}

void SememeInventory::add(const Lemma& sememe, std::uint64_t count) {
  counts_[sememe] = count;
}

bool SememeInventory::contains(const Lemma& sememe) const {
  return counts_.contains(sememe);
}

std::uint64_t SememeInventory::count(const Lemma& sememe) const {
  const auto it = counts_.find(sememe);
  return it == counts_.end() ? 0 : it->second;
}

SememeSet SememeInventory::sememes() const {
  SememeSet out;
  for (const auto& [lemma, count] : counts_) out.insert(out.end(), lemma);
  return out;
}

Skb::Skb(SememeInventory inventory) : inventory_(std::move(inventory)) {}

void Skb::insert(SkbRecord record) {
  if (record.sememes.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "record " + record.sense_id + " has no sememes");
  }
  for (const auto& s : record.sememes) {
    if (!inventory_.contains(s)) {
      throw Error(ErrorCode::kUnknownSememe,
                  "'" + s.str() + "' in sense " + record.sense_id);
    }
  }
  if (by_sense_.contains(record.sense_id)) {
    throw Error(ErrorCode::kDuplicateSenseId, record.sense_id);
  }
  const std::size_t pos = records_.size();
  by_sense_.emplace(record.sense_id, pos);
  by_headword_[record.headword].push_back(pos);
  records_.push_back(std::move(record));
}

const SkbRecord* Skb::find_sense(std::string_view sense_id) const {
  const auto it = by_sense_.find(std::string(sense_id));
  return it == by_sense_.end() ? nullptr : &records_[it->second];
}

std::vector<const SkbRecord*> Skb::find_headword(const Lemma& headword) const {
  std::vector<const SkbRecord*> out;
  const auto it = by_headword_.find(headword);
  if (it == by_headword_.end()) return out;
  for (std::size_t i : it->second) out.push_back(&records_[i]);
  return out;
}

bool Skb::has_headword(const Lemma& headword) const {
  return by_headword_.contains(headword);
}

std::vector<Lemma> Skb::headwords() const {
  std::vector<Lemma> out;
  out.reserve(by_headword_.size());
  for (const auto& [w, idx] : by_headword_) out.push_back(w);
  return out;
}

bool Skb::same_content(const Skb& other) const {
  if (!(inventory_ == other.inventory_) || size() != other.size()) {
    return false;
  }
  for (const auto& r : records_) {
    const SkbRecord* o = other.find_sense(r.sense_id);
    if (o == nullptr || !(*o == r)) return false;
  }
  return true;
}

Skb insert_record(Skb skb, SkbRecord record) {
  skb.insert(std::move(record));
  return skb;
}

SkbStats compute_stats(const Skb& skb) {
  if (skb.empty()) throw Error(ErrorCode::kEmptySkb, "no records");
  SkbStats stats;
  SememeSet used;
  for (const auto& r : skb.records()) {
    stats.total_sememes += r.sememes.size();
    used.insert(r.sememes.begin(), r.sememes.end());
  }
  stats.sense_count = skb.size();
  stats.word_count = skb.headwords().size();
  stats.sememe_count = used.size();
  stats.avg_sememes_per_sense = static_cast<double>(stats.total_sememes) /
                                static_cast<double>(stats.sense_count);
  return stats;
}

SememeInventory effective_inventory(const Skb& skb) {
  SememeInventory out;
  for (const auto& r : skb.records()) {
    for (const auto& s : r.sememes) out.add(s, skb.inventory().count(s));
  }
  return out;
}

}  // namespace skbforge
