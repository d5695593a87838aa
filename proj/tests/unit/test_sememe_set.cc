#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skbforge/error.h"
#include "skbforge/ingestion.h"
#include "skbforge/normalizer.h"
#include "skbforge/sememe_set.h"
#include "test_support.h"

using namespace skbforge;
using skbforge::testing::set_of;

namespace {

WordList words(WordListKind kind, std::initializer_list<const char*> ws) {
  std::vector<Lemma> v;
  for (const char* w : ws) v.emplace_back(w);
  return WordList(kind, v);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

// Sort-and-slice reference with exact rational trim fractions p/q.
std::vector<Lemma> oracle_trim(const FrequencyTable& table, std::size_t tp,
                               std::size_t bp, std::size_t q) {
  std::vector<std::pair<Lemma, std::uint64_t>> rows(table.begin(), table.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const std::size_t n = rows.size();
  const std::size_t top = (tp * n + q - 1) / q;
  const std::size_t bottom = (bp * n + q - 1) / q;
  std::vector<Lemma> out;
  for (std::size_t i = top; i + bottom < n; ++i) {
    if (rows[i].second > 0) out.push_back(rows[i].first);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("trim_count") {
  CHECK(trim_count(0.01, 100) == 1);
  CHECK(trim_count(0.10, 100) == 10);
  CHECK(trim_count(0.07, 100) == 7);
  CHECK(trim_count(0.01, 101) == 2);
  CHECK(trim_count(0.10, 5) == 1);
  CHECK(trim_count(0.0, 1000) == 0);
  CHECK(trim_count(0.3, 10) == 3);
  CHECK(trim_count(0.5, 0) == 0);
}

TEST_CASE("config validation") {
  SememeSetConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.top_trim_fraction = -0.1;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::kInvalidConfig);
  cfg.top_trim_fraction = 0.6;
  cfg.bottom_trim_fraction = 0.4;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::kInvalidConfig);
  cfg.top_trim_fraction = 1.0;
  cfg.bottom_trim_fraction = 0.0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::kInvalidConfig);
}

TEST_CASE("stop word filtering keeps negators") {
  SememeSetConfig cfg;
  cfg.stopwords = words(WordListKind::kStopword, {"the", "not", "a", "no"});
  cfg.negators = words(WordListKind::kNegator, {"not", "no", "never"});
  WordList cdv = words(WordListKind::kCdv, {"the", "dog", "not", "a", "run", "no"});
  WordList out = filter_stopwords(cdv, cfg);
  CHECK(out.words() ==
        std::vector{Lemma("dog"), Lemma("not"), Lemma("run"), Lemma("no")});
  CHECK_FALSE(out.contains(Lemma("never")));

  CHECK(code_of([&] { filter_stopwords(WordList(WordListKind::kCdv, {}), cfg); }) ==
        ErrorCode::kEmptyList);
  CHECK(code_of([&] {
          filter_stopwords(words(WordListKind::kCdv, {"the", "a"}), cfg);
        }) == ErrorCode::kEmptyResult);
}

TEST_CASE("defining frequencies count token occurrences") {
  std::istringstream in(
      "{\"headword\": \"x\", \"senses\": [{\"id\": \"1\", \"definition\": "
      "\"a dog that barks at dogs\"}, {\"id\": \"2\", \"definition\": \"to bark\"}]}\n");
  auto entries = parse_dictionary(in);
  WordList vocab = words(WordListKind::kCdv, {"dog", "bark", "cat"});
  Normalizer norm;
  FrequencyTable t = count_defining_frequencies(entries, vocab, &norm);
  CHECK(t.at(Lemma("dog")) == 2);
  CHECK(t.at(Lemma("bark")) == 2);
  CHECK(t.at(Lemma("cat")) == 0);
  CHECK(t.size() == 3);
  CHECK(code_of([&] { count_defining_frequencies(entries, vocab, nullptr); }) ==
        ErrorCode::kNoAnnotations);

  // parsed tokens win over the normalizer
  TokenAnnotation tok;
  tok.index = 1;
  tok.form = "cats";
  tok.lemma = Lemma("cat");
  entries[0].senses[1].tokens = std::vector{tok};
  FrequencyTable t2 = count_defining_frequencies(entries, vocab, &norm);
  CHECK(t2.at(Lemma("cat")) == 1);
  CHECK(t2.at(Lemma("bark")) == 1);
}

TEST_CASE("100 lemmas trim exactly 1 top and 10 bottom") {
  FrequencyTable table;
  for (int i = 0; i < 100; ++i) {
    char name[8];
    std::snprintf(name, sizeof(name), "l%03d", i);
    table[Lemma(name)] = static_cast<std::uint64_t>(1000 - i);
  }
  SememeInventory inv = trim_by_frequency(table, SememeSetConfig{});
  CHECK(inv.size() == 89);
  CHECK_FALSE(inv.contains(Lemma("l000")));
  CHECK(inv.contains(Lemma("l001")));
  CHECK(inv.contains(Lemma("l089")));
  CHECK_FALSE(inv.contains(Lemma("l090")));
  CHECK(inv.count(Lemma("l001")) == 999);
}

TEST_CASE("ties at the boundary resolve lexicographically") {
  // all equal counts: order is purely by lemma
  FrequencyTable table;
  for (int i = 0; i < 100; ++i) {
    char name[8];
    std::snprintf(name, sizeof(name), "w%03d", 99 - i);
    table[Lemma(name)] = 5;
  }
  SememeInventory inv = trim_by_frequency(table, SememeSetConfig{});
  CHECK_FALSE(inv.contains(Lemma("w000")));
  CHECK(inv.contains(Lemma("w001")));
  CHECK(inv.contains(Lemma("w089")));
  CHECK_FALSE(inv.contains(Lemma("w090")));
}

TEST_CASE("zero counts and degenerate trims") {
  FrequencyTable table{{Lemma("a"), 5}, {Lemma("b"), 0}, {Lemma("c"), 3}};
  SememeSetConfig cfg;
  cfg.top_trim_fraction = 0.0;
  cfg.bottom_trim_fraction = 0.0;
  CHECK(trim_by_frequency(table, cfg).sememes() == set_of({"a", "c"}));
  cfg.top_trim_fraction = 0.5;
  cfg.bottom_trim_fraction = 0.4;
  CHECK(code_of([&] { trim_by_frequency(table, cfg); }) ==
        ErrorCode::kDegenerateTrim);
}

TEST_CASE("trim matches the sort-and-slice oracle") {
  std::mt19937_64 rng(20240611);
  std::size_t mismatches = 0;
  for (int inst = 0; inst < 500; ++inst) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
    const std::size_t max_count =
        std::uniform_int_distribution<std::size_t>(0, 30)(rng);
    FrequencyTable table;
    std::uniform_int_distribution<std::uint64_t> cd(0, max_count);
    std::uniform_int_distribution<int> letter(0, 25);
    while (table.size() < n) {
      std::string name;
      const int len = 1 + letter(rng) % 4;
      for (int k = 0; k < len; ++k) name += static_cast<char>('a' + letter(rng));
      table[Lemma(name)] = cd(rng);
    }
    // fractions as exact ratios over 100
    const std::size_t q = 100;
    const std::size_t tp = std::uniform_int_distribution<std::size_t>(0, 20)(rng);
    const std::size_t bp = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
    SememeSetConfig cfg;
    cfg.top_trim_fraction = static_cast<double>(tp) / q;
    cfg.bottom_trim_fraction = static_cast<double>(bp) / q;

    const std::vector<Lemma> want = oracle_trim(table, tp, bp, q);
    std::vector<Lemma> got;
    bool threw = false;
    try {
      auto s = trim_by_frequency(table, cfg).sememes();
      got.assign(s.begin(), s.end());
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::kDegenerateTrim;
    }
    if (want.empty() ? !threw : got != want) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("sememe set from the toy fixture") {
  auto entries = skbforge::testing::load_dictionary("toy/dict.jsonl");
  attach_parses(entries, skbforge::testing::load_conllu("toy/dict.conllu"));
  auto load = [](const char* f, WordListKind kind) {
    std::ifstream in(skbforge::testing::data_path(std::string("toy/") + f));
    return parse_wordlist(in, kind);
  };
  SememeSetConfig cfg;
  cfg.stopwords = load("stopwords.txt", WordListKind::kStopword);
  cfg.negators = load("negators.txt", WordListKind::kNegator);
  WordList cdv = load("cdv.txt", WordListKind::kCdv);
  SememeInventory a = build_sememe_set(entries, cdv, cfg, nullptr, 1);
  SememeInventory b = build_sememe_set(entries, cdv, cfg, nullptr, 8);
  CHECK(a == b);
  CHECK_FALSE(a.empty());
  for (const auto& [lemma, count] : a.counts()) {
    CHECK(count > 0);
    CHECK(cdv.contains(lemma));
    if (cfg.stopwords.contains(lemma)) CHECK(cfg.negators.contains(lemma));
  }
}
