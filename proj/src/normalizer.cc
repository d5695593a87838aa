#include "skbforge/normalizer.h"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "skbforge/error.h"
#include "skbforge/text.h"

namespace skbforge {
namespace {

const std::unordered_map<std::string_view, std::string_view>& irregulars() {
  static const auto* table = new std::unordered_map<std::string_view,
                                                    std::string_view>{
      {"is", "be"}, {"am", "be"}, {"are", "be"}, {"was", "be"},
      {"were", "be"}, {"been", "be"}, {"being", "be"}, {"'re", "be"},
      {"'m", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"},
      {"'ve", "have"}, {"does", "do"}, {"did", "do"}, {"done", "do"},
      {"doing", "do"}, {"goes", "go"}, {"went", "go"}, {"gone", "go"},
      {"gave", "give"}, {"given", "give"}, {"made", "make"},
      {"took", "take"}, {"taken", "take"}, {"came", "come"},
      {"saw", "see"}, {"seen", "see"}, {"knew", "know"}, {"known", "know"},
      {"thought", "think"}, {"told", "tell"}, {"said", "say"},
      {"found", "find"}, {"got", "get"}, {"gotten", "get"},
      {"felt", "feel"}, {"kept", "keep"}, {"brought", "bring"},
      {"bought", "buy"}, {"held", "hold"}, {"stood", "stand"},
      {"understood", "understand"}, {"wrote", "write"},
      {"written", "write"}, {"ran", "run"}, {"began", "begin"},
      {"begun", "begin"}, {"became", "become"}, {"built", "build"},
      {"sent", "send"}, {"spent", "spend"}, {"lost", "lose"},
      {"paid", "pay"}, {"led", "lead"}, {"met", "meet"}, {"sat", "sit"},
      {"spoke", "speak"}, {"spoken", "speak"}, {"broke", "break"},
      {"broken", "break"}, {"chose", "choose"}, {"chosen", "choose"},
      {"fell", "fall"}, {"fallen", "fall"}, {"grew", "grow"},
      {"grown", "grow"}, {"drew", "draw"}, {"drawn", "draw"},
      {"threw", "throw"}, {"thrown", "throw"}, {"wore", "wear"},
      {"worn", "wear"}, {"ate", "eat"}, {"eaten", "eat"},
      {"drove", "drive"}, {"driven", "drive"}, {"rode", "ride"},
      {"ridden", "ride"}, {"rose", "rise"}, {"risen", "rise"},
      {"shook", "shake"}, {"hid", "hide"}, {"hidden", "hide"},
      {"flew", "fly"}, {"flown", "fly"}, {"fought", "fight"},
      {"caught", "catch"}, {"taught", "teach"}, {"sought", "seek"},
      {"sold", "sell"}, {"won", "win"}, {"hung", "hang"},
      {"struck", "strike"}, {"dealt", "deal"}, {"meant", "mean"},
      {"children", "child"}, {"men", "man"}, {"women", "woman"},
      {"feet", "foot"}, {"teeth", "tooth"}, {"mice", "mouse"},
      {"geese", "goose"}, {"lives", "life"}, {"wives", "wife"},
      {"knives", "knife"}, {"ca", "can"}, {"wo", "will"},
  };
  return *table;
}

// Words the heuristic must never strip.
const std::unordered_set<std::string_view>& protected_words() {
  static const auto* words = new std::unordered_set<std::string_view>{
      "this", "his", "its", "thus", "yes", "always", "perhaps", "whereas",
      "less", "unless", "across", "plus", "towards", "afterwards",
      "sometimes", "besides", "news", "series", "species", "means", "basis",
      "analysis", "thing", "king", "ring", "sing", "bring", "string",
      "spring", "swing", "wing", "during", "nothing", "something",
      "anything", "everything", "morning", "evening", "ceiling", "bed",
      "red", "shed", "wed", "fled", "hundred", "sacred", "naked", "wicked",
      "kindred", "embed", "else", "physics", "mathematics", "politics",
      "economics", "always", "various", "previous", "gas", "bus", "lens",
  };
  return *words;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return is_vowel(c) || c == 'y'; });
}

bool is_ascii_word(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || c == '-'; });
}

// Restores the silent -e dropped before -ing/-ed.
bool needs_final_e(std::string_view stem) {
  const std::size_t n = stem.size();
  if (n < 2) return false;
  const char last = stem[n - 1];
  if (last == 'v' || last == 'z' || last == 'c') return true;
  if (text::ends_with(stem, "us") || text::ends_with(stem, "ur")) return true;
  if (n >= 5 && text::ends_with(stem, "at")) return true;
  if (last == 'l' && n >= 3 && is_consonant(stem[n - 2]) &&
      stem[n - 2] != 'l' && stem[n - 2] != 'r') {
    return true;
  }
  // Short consonant-vowel-consonant stems: mak(e), tak(e), com(e).
  if (n >= 3 && n <= 4 && is_consonant(last) && last != 'w' && last != 'x' &&
      last != 'y' && is_vowel(stem[n - 2]) && is_consonant(stem[n - 3])) {
    return true;
  }
  return false;
}

std::string undo_verbal_suffix(const std::string& stem) {
  const std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1]) &&
      stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
    return stem.substr(0, n - 1);
  }
  if (needs_final_e(stem)) return stem + "e";
  return stem;
}

struct SuffixRule {
  std::string_view suffix;
  std::string_view replacement;
};

// Morphological detachment candidates, most specific first.
constexpr std::array<SuffixRule, 14> kDetachRules{{
    {"ies", "y"},
    {"sses", "ss"},
    {"ches", "ch"},
    {"shes", "sh"},
    {"xes", "x"},
    {"zes", "z"},
    {"es", "e"},
    {"es", ""},
    {"s", ""},
    {"ied", "y"},
    {"ed", "e"},
    {"ed", ""},
    {"ing", "e"},
    {"ing", ""},
}};

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

// U+2000..U+206F (general punctuation) is encoded as E2 80..81 xx.
bool is_punct_sequence(std::string_view s, std::size_t i) {
  return i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
         (static_cast<unsigned char>(s[i + 1]) == 0x80 ||
          static_cast<unsigned char>(s[i + 1]) == 0x81);
}

}  // namespace

Normalizer::Normalizer(std::set<Lemma> lexicon) : lexicon_(std::move(lexicon)) {}

std::vector<std::string> Normalizer::tokenize(std::string_view s) const {
  std::vector<std::string> out;
  auto word_at = [&](std::size_t i) {
    return i < s.size() && is_word_byte(static_cast<unsigned char>(s[i])) &&
           !is_punct_sequence(s, i);
  };
  std::size_t i = 0;
  while (i < s.size()) {
    if (!word_at(i)) {
      i += is_punct_sequence(s, i) ? 3 : 1;
      continue;
    }
    std::size_t j = i;
    while (true) {
      while (word_at(j)) ++j;
      // A single hyphen or apostrophe joins two word runs.
      if (j + 1 < s.size() && (s[j] == '-' || s[j] == '\'') && word_at(j + 1)) {
        ++j;
        continue;
      }
      break;
    }
    std::string tok(s.substr(i, j - i));
    const std::string low = text::fold_case(tok);
    if (tok.size() > 3 && text::ends_with(low, "n't")) {
      out.push_back(tok.substr(0, tok.size() - 3));
      out.push_back(tok.substr(tok.size() - 3));
    } else if (tok.size() > 2 && text::ends_with(low, "'s")) {
      out.push_back(tok.substr(0, tok.size() - 2));
      out.push_back(tok.substr(tok.size() - 2));
    } else {
      out.push_back(std::move(tok));
    }
    i = j;
  }
  return out;
}

std::string Normalizer::lemmatize(std::string_view word) const {
  const std::string w(word);
  if (w == "n't") return "not";
  if (const auto it = irregulars().find(w); it != irregulars().end()) {
    return std::string(it->second);
  }
  if (!is_ascii_word(w) || w.size() <= 3 || protected_words().contains(w)) {
    return w;
  }
  if (!lexicon_.empty()) {
    if (lexicon_.contains(Lemma(w))) return w;
    for (const auto& rule : kDetachRules) {
      if (w.size() > rule.suffix.size() + 1 && text::ends_with(w, rule.suffix)) {
        std::string cand =
            w.substr(0, w.size() - rule.suffix.size()) + std::string(rule.replacement);
        if (lexicon_.contains(Lemma(cand))) return cand;
        if (rule.suffix == "ing" || rule.suffix == "ed") {
          cand = undo_verbal_suffix(w.substr(0, w.size() - rule.suffix.size()));
          if (lexicon_.contains(Lemma(cand))) return cand;
        }
      }
    }
  }
  return heuristic_lemma(w);
}

std::string Normalizer::heuristic_lemma(const std::string& w) const {
  const auto strip = [&](std::size_t n) { return w.substr(0, w.size() - n); };
  if (text::ends_with(w, "ss") || text::ends_with(w, "us") ||
      text::ends_with(w, "is") || text::ends_with(w, "ous") ||
      text::ends_with(w, "ics") || text::ends_with(w, "eed")) {
    return w;
  }
  if (text::ends_with(w, "ies") && w.size() > 4) return strip(3) + "y";
  if (text::ends_with(w, "sses")) return strip(2);
  for (std::string_view suf : {"ches", "shes", "xes", "zes", "oes"}) {
    if (text::ends_with(w, suf)) return strip(2);
  }
  if (text::ends_with(w, "ing")) {
    const std::string stem = strip(3);
    if (stem.size() >= 2 && has_vowel(stem)) return undo_verbal_suffix(stem);
    return w;
  }
  if (text::ends_with(w, "ied") && w.size() > 4) return strip(3) + "y";
  if (text::ends_with(w, "ed")) {
    const std::string stem = strip(2);
    if (stem.size() >= 2 && has_vowel(stem)) {
      if (text::ends_with(stem, "e")) return stem;
      return undo_verbal_suffix(stem);
    }
    return w;
  }
  if (text::ends_with(w, "s") && !text::ends_with(w, "'s")) return strip(1);
  return w;
}

std::vector<TokenAnnotation> Normalizer::normalize(std::string_view text) const {
  const auto words = tokenize(text);
  if (words.empty()) {
    throw Error(ErrorCode::kEmptyDefinition, "no word tokens");
  }
  std::vector<TokenAnnotation> out;
  out.reserve(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    TokenAnnotation tok;
    tok.index = static_cast<int>(i) + 1;
    tok.form = words[i];
    tok.lemma = Lemma(lemmatize(text::fold_case(words[i])));
    out.push_back(std::move(tok));
  }
  return out;
}

std::vector<TokenAnnotation> normalize_definition(std::string_view text) {
  static const Normalizer normalizer;
  return normalizer.normalize(text);
}

}  // namespace skbforge
