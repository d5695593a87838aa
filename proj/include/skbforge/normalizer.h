#ifndef SKBFORGE_NORMALIZER_H_
#define SKBFORGE_NORMALIZER_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skbforge/lexicon.h"

namespace skbforge {

// Built-in English fallback for definitions that arrive without a CoNLL-U
// parse: word tokenization, case folding and suffix-rule lemmatization.
// Produces lemma/form only; heads are never set.
//
// When a lexicon of known lemmas is supplied, suffix-stripping candidates are
// accepted only if the lexicon contains them (the word itself wins if it is
// known); otherwise conservative spelling heuristics decide.
class Normalizer {
 public:
  Normalizer() = default;
  explicit Normalizer(std::set<Lemma> lexicon);

  // Word tokens in order. Punctuation is dropped; "n't" and "'s" are split
  // off as separate tokens.
  std::vector<std::string> tokenize(std::string_view text) const;

  // `word` must already be case-folded.
  std::string lemmatize(std::string_view word) const;

  // Throws Error(kEmptyDefinition) when no word token remains.
  std::vector<TokenAnnotation> normalize(std::string_view text) const;

 private:
  std::string heuristic_lemma(const std::string& word) const;

  std::set<Lemma> lexicon_;
};

std::vector<TokenAnnotation> normalize_definition(std::string_view text);

}  // namespace skbforge

#endif  // SKBFORGE_NORMALIZER_H_
