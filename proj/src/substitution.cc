#include "skbforge/substitution.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "skbforge/error.h"

namespace skbforge {

SememeKey::SememeKey(const SememeSet& sememes)
    : sememes_(sememes.begin(), sememes.end()) {
  if (sememes_.empty()) throw Error(ErrorCode::kInvalidConfig, "empty sememe key");
}

std::string SememeKey::str() const {
  std::string out;
  for (const auto& s : sememes_) {
    if (!out.empty()) out.push_back(' ');
    out += s.str();
  }
  return out;
}

SubstitutionIndex::SubstitutionIndex(const Skb& skb, SubstitutionOptions options)
    : options_(options) {
  if (skb.empty()) throw Error(ErrorCode::kEmptySkb, "cannot index an empty SKB");
  for (const auto& r : skb.records()) {
    buckets_[SememeKey(r.sememes)].push_back({r.headword, r.pos, r.sense_id});
  }
  // Keys are stable once the map is filled.
  for (auto& [key, members] : buckets_) {
    std::sort(members.begin(), members.end());
    for (const auto& m : members) senses_of_[m.headword].push_back({m.pos, &key});
  }
  for (const auto& [word, senses] : senses_of_) headwords_.push_back(word);
}

std::set<Lemma> SubstitutionIndex::substitutes(
    const Lemma& word, const std::optional<PosTag>& pos) const {
  const auto it = senses_of_.find(word);
  if (it == senses_of_.end()) throw Error(ErrorCode::kUnknownWord, word.str());
  const auto compatible = [&](const PosTag& a, const PosTag& b) {
    return !options_.match_pos || !a.known() || !b.known() || a == b;
  };
  std::set<Lemma> out;
  for (const auto& [sense_pos, key] : it->second) {
    if (pos && pos->known() && sense_pos.known() && !(sense_pos == *pos)) {
      continue;
    }
    for (const auto& m : buckets_.at(*key)) {
      if (m.headword == word) continue;
      if (!compatible(sense_pos, m.pos)) continue;
      if (pos && pos->known() && m.pos.known() && !(m.pos == *pos)) continue;
      out.insert(m.headword);
    }
  }
  return out;
}

SubstitutionIndex build_index(const Skb& skb, SubstitutionOptions options) {
  return SubstitutionIndex(skb, options);
}

SubstituteStats substitute_stats(const SubstitutionIndex& index) {
  SubstituteStats stats;
  stats.histogram = {{"0", 0}, {"1", 0}, {"2-5", 0}, {"6-20", 0}, {">20", 0}};
  std::size_t total = 0;
  for (const auto& w : index.headwords()) {
    const std::size_t n = index.substitutes(w).size();
    total += n;
    const std::size_t bucket = n == 0 ? 0 : n == 1 ? 1 : n <= 5 ? 2 : n <= 20 ? 3 : 4;
    ++stats.histogram[bucket].second;
  }
  stats.word_count = index.headwords().size();
  stats.mean = stats.word_count == 0
                   ? 0.0
                   : static_cast<double>(total) / static_cast<double>(stats.word_count);
  return stats;
}

std::string SubstituteStats::to_json() const {
  nlohmann::ordered_json doc;
  doc["mean_substitutes"] = mean;
  doc["words"] = word_count;
  nlohmann::ordered_json hist;
  for (const auto& [label, count] : histogram) hist[label] = count;
  doc["histogram"] = hist;
  return doc.dump() + "\n";
}

}  // namespace skbforge
