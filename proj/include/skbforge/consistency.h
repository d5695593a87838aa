#ifndef SKBFORGE_CONSISTENCY_H_
#define SKBFORGE_CONSISTENCY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skbforge/ingestion.h"
#include "skbforge/lexicon.h"

namespace skbforge {

// Annotation-consistency probe: hold out senses, predict their sememes from
// embedding neighbours among the remaining senses, score with MAP and F1.
struct EvalConfig {
  double holdout_fraction = 0.10;
  std::uint64_t seed = 0;
  int k_neighbors = 100;
  double rank_decay_c = 0.8;
  double f1_score_ratio = 0.5;

  // Throws kInvalidConfig when a field leaves its documented range.
  void validate() const;
};

struct RankedSememe {
  Lemma sememe;
  double score = 0.0;

  friend bool operator==(const RankedSememe&, const RankedSememe&) = default;
};

struct HoldoutSplit {
  Skb train;
  std::vector<SkbRecord> test;  // sorted by sense_id
};

// Seeded uniform sample of ceil(fraction * n) senses without replacement.
// Throws kTooSmall below 10 senses.
HoldoutSplit split_holdout(const Skb& skb, const EvalConfig& cfg);

// Neighbourhood collaborative filtering over a frozen train SKB.
//
// For target word w, the k train headwords (w excluded) most cosine-similar
// to w are ranked r = 1..k, ties broken by headword. Each sememe s scores
//
//   sum_r [s annotated to any sense of neighbour r] * cos(w, neighbour_r) * c^r
//
// and sememes with positive score are returned by (score desc, lemma asc).
class SememePredictor {
 public:
  // Throws kEmptyTrain.
  SememePredictor(const Skb& train, const EmbeddingTable& embeddings,
                  const EvalConfig& cfg);

  // Throws kNoEmbedding when `headword` has no vector.
  std::vector<RankedSememe> predict(const Lemma& headword) const;

 private:
  struct Candidate {
    Lemma word;
    std::span<const double> vec;
    double norm = 0.0;
    std::vector<Lemma> pool;
  };

  const EmbeddingTable& embeddings_;
  EvalConfig cfg_;
  std::vector<Candidate> candidates_;
};

std::vector<RankedSememe> predict_sememes(const SkbRecord& target,
                                          const Skb& train,
                                          const EmbeddingTable& embeddings,
                                          const EvalConfig& cfg);

// (1/|gold|) * sum over gold hits at rank r_i of i / r_i. Throws kEmptyGold.
double average_precision(std::span<const Lemma> ranked, const SememeSet& gold);
double average_precision(std::span<const RankedSememe> ranked,
                         const SememeSet& gold);

// Items scoring at least f1_score_ratio * top score.
SememeSet select_predicted(std::span<const RankedSememe> ranked,
                           const EvalConfig& cfg);

// Harmonic mean of precision and recall; 0 when either set is empty.
double f1_of(const SememeSet& predicted, const SememeSet& gold);

struct SenseEvaluation {
  std::string sense_id;
  double ap = 0.0;
  double f1 = 0.0;
  SememeSet predicted;
  SememeSet gold;
};

struct EvalReport {
  double map_score = 0.0;
  double f1_score = 0.0;
  std::size_t excluded = 0;  // held-out senses without an embedding
  std::vector<std::string> excluded_ids;
  std::vector<SenseEvaluation> per_sense;  // sorted by sense_id

  std::string to_json() const;
  std::string summary() const;
};

// Throws kNoUsableSenses when no held-out sense has an embedding.
EvalReport evaluate_consistency(const Skb& skb, const EmbeddingTable& embeddings,
                                const EvalConfig& cfg, int jobs = 1);

}  // namespace skbforge

#endif  // SKBFORGE_CONSISTENCY_H_
