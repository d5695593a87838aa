#ifndef SKBFORGE_INGESTION_H_
#define SKBFORGE_INGESTION_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "skbforge/lexicon.h"

namespace skbforge {

enum class WordListKind { kCdv, kStopword, kNegator };

// Case-folded, deduplicated word list in file order.
class WordList {
 public:
  WordList() = default;
  WordList(WordListKind kind, std::vector<Lemma> words);

  WordListKind kind() const { return kind_; }
  const std::vector<Lemma>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  bool contains(const Lemma& w) const { return lookup_.contains(w); }

 private:
  WordListKind kind_ = WordListKind::kCdv;
  std::vector<Lemma> words_;
  std::set<Lemma> lookup_;
};

// Dense word vectors; all rows share dim().
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dim);

  // Throws kDimMismatch or kNonFiniteValue (without line information).
  void add(const Lemma& word, std::span<const double> vec);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<Lemma>& words() const { return words_; }

  // Empty optional when `word` has no vector.
  std::optional<std::span<const double>> find(const Lemma& word) const;

 private:
  std::size_t dim_;
  std::vector<Lemma> words_;
  std::vector<double> data_;
  std::map<Lemma, std::size_t> index_;
};

// Cosine similarity; 0 when either vector is all zeros.
double cosine(std::span<const double> a, std::span<const double> b);

// sense_id -> tokens, ordered by sense_id.
using ParseMap = std::map<std::string, std::vector<TokenAnnotation>>;

struct Diagnostic {
  std::string sense_id;
  std::string warning;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Dictionary JSON Lines:
//   {"headword": str, "pos": str|null, "senses": [{"id": str, "definition": str}]}
// Throws kMalformedLine, kDuplicateSenseId or kEmptyDefinition with the line.
std::vector<DictionaryEntry> parse_dictionary(std::istream& in);

// CoNLL-U with a mandatory "# sense_id = <id>" comment per sentence block.
// Multiword-token ranges and empty nodes are skipped.
ParseMap parse_conllu(std::istream& in);
std::string write_conllu(const ParseMap& parses);

// Sets Sense::tokens for every sense that has a parse.
void attach_parses(std::vector<DictionaryEntry>& entries, const ParseMap& parses);

// One word per line, '#' comment lines. Throws kEmptyList for an empty CDV.
WordList parse_wordlist(std::istream& in, WordListKind kind);

// "<count> <dim>" header, then "<word> <f1> ... <fdim>" rows.
EmbeddingTable parse_embeddings(std::istream& in);

// SKB export: header line {"format":"skb","version":1,"inventory":[...]}
// followed by one record per line. Sememes are written sorted.
void write_skb(const Skb& skb, std::ostream& out);
std::string write_skb(const Skb& skb);
Skb read_skb(std::istream& in);

// Standalone inventory file produced by the sememe-set stage.
void write_inventory(const SememeInventory& inventory, std::ostream& out);
SememeInventory read_inventory(std::istream& in);

// {"sense_id":..,"warning":..} per line.
void write_diagnostics(std::span<const Diagnostic> diagnostics,
                       std::ostream& out);

}  // namespace skbforge

#endif  // SKBFORGE_INGESTION_H_
