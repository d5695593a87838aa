#include "skbforge/ingestion.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "skbforge/error.h"
#include "skbforge/text.h"

namespace skbforge {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr int kSkbVersion = 1;
constexpr int kInventoryVersion = 1;

// Reads one line, stripping a trailing CR. Returns false at EOF.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string field_or_underscore(const std::string& s) {
  return s.empty() ? "_" : s;
}

std::string underscore_to_empty(std::string_view s) {
  return s == "_" ? std::string() : std::string(s);
}

Lemma lemma_at(const std::string& raw, std::size_t line) {
  try {
    return Lemma(raw);
  } catch (const Error&) {
    throw Error(ErrorCode::kMalformedLine, "empty word", line);
  }
}

}  // namespace

WordList::WordList(WordListKind kind, std::vector<Lemma> words) : kind_(kind) {
  for (auto& w : words) {
    if (lookup_.insert(w).second) words_.push_back(std::move(w));
  }
}

EmbeddingTable::EmbeddingTable(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidConfig, "dimension must be > 0");
}

void EmbeddingTable::add(const Lemma& word, std::span<const double> vec) {
  if (vec.size() != dim_) {
    throw Error(ErrorCode::kDimMismatch,
                "'" + word.str() + "' has " + std::to_string(vec.size()) +
                    " components, expected " + std::to_string(dim_));
  }
  for (double v : vec) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteValue, "'" + word.str() + "'");
    }
  }
  const auto [it, inserted] = index_.emplace(word, words_.size());
  if (!inserted) {
    std::copy(vec.begin(), vec.end(), data_.begin() + it->second * dim_);
    return;
  }
  words_.push_back(word);
  data_.insert(data_.end(), vec.begin(), vec.end());
}

std::optional<std::span<const double>> EmbeddingTable::find(
    const Lemma& word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return std::span<const double>(data_.data() + it->second * dim_, dim_);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<DictionaryEntry> parse_dictionary(std::istream& in) {
  std::vector<DictionaryEntry> entries;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (next_line(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
    }
    if (!obj.is_object() || !obj.contains("headword") ||
        !obj["headword"].is_string() || !obj.contains("senses") ||
        !obj["senses"].is_array() || obj["senses"].empty()) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected headword and a non-empty senses array", line_no);
    }
    DictionaryEntry entry;
    entry.headword = lemma_at(obj["headword"].get<std::string>(), line_no);
    if (obj.contains("pos") && !obj["pos"].is_null()) {
      if (!obj["pos"].is_string()) {
        throw Error(ErrorCode::kMalformedLine, "pos must be a string or null",
                    line_no);
      }
      entry.pos = PosTag(obj["pos"].get<std::string>());
    }
    for (const auto& s : obj["senses"]) {
      if (!s.is_object() || !s.contains("id") || !s["id"].is_string() ||
          !s.contains("definition") || !s["definition"].is_string()) {
        throw Error(ErrorCode::kMalformedLine,
                    "each sense needs string id and definition", line_no);
      }
      Sense sense;
      sense.sense_id = s["id"].get<std::string>();
      sense.definition = s["definition"].get<std::string>();
      if (text::trim(sense.sense_id).empty()) {
        throw Error(ErrorCode::kMalformedLine, "empty sense id", line_no);
      }
      if (text::trim(sense.definition).empty()) {
        throw Error(ErrorCode::kEmptyDefinition, sense.sense_id, line_no);
      }
      if (!seen.insert(sense.sense_id).second) {
        throw Error(ErrorCode::kDuplicateSenseId, sense.sense_id, line_no);
      }
      entry.senses.push_back(std::move(sense));
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

ParseMap parse_conllu(std::istream& in) {
  ParseMap out;
  std::optional<std::string> sense_id;
  std::vector<TokenAnnotation> tokens;
  std::size_t block_start = 0;
  std::size_t line_no = 0;

  auto finish_block = [&]() {
    if (tokens.empty()) {
      if (sense_id) {
        throw Error(ErrorCode::kMalformedLine,
                    "sentence block without tokens: " + *sense_id, block_start);
      }
      sense_id.reset();
      return;
    }
    if (!sense_id) {
      throw Error(ErrorCode::kMissingSenseId, "block has no '# sense_id'",
                  block_start);
    }
    try {
      validate_tokens(tokens);
    } catch (const Error& e) {
      throw Error(e.code(), "sense " + *sense_id + ": " + e.detail(), block_start);
    }
    if (out.contains(*sense_id)) {
      throw Error(ErrorCode::kDuplicateSenseId, *sense_id, block_start);
    }
    out.emplace(*sense_id, std::move(tokens));
    tokens.clear();
    sense_id.reset();
  };

  std::string line;
  while (next_line(in, line)) {
    ++line_no;
    const std::string_view view = text::trim(line);
    if (view.empty()) {
      finish_block();
      block_start = 0;
      continue;
    }
    if (block_start == 0) block_start = line_no;
    if (view.front() == '#') {
      const auto body = text::trim(view.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos &&
          text::trim(body.substr(0, eq)) == "sense_id") {
        const auto id = text::trim(body.substr(eq + 1));
        if (id.empty()) {
          throw Error(ErrorCode::kMissingSenseId, "empty sense_id", line_no);
        }
        sense_id = std::string(id);
      }
      continue;
    }
    const auto cols = text::split(line, '\t');
    if (cols.size() != 10) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected 10 tab-separated columns, found " +
                      std::to_string(cols.size()),
                  line_no);
    }
    if (cols[0].find('-') != std::string_view::npos ||
        cols[0].find('.') != std::string_view::npos) {
      continue;
    }
    const auto index = parse_number<int>(cols[0]);
    if (!index) {
      throw Error(ErrorCode::kMalformedLine, "bad ID column", line_no);
    }
    if (*index != static_cast<int>(tokens.size()) + 1) {
      throw Error(ErrorCode::kNonContiguousIndices,
                  "expected ID " + std::to_string(tokens.size() + 1) +
                      ", found " + std::to_string(*index),
                  line_no);
    }
    TokenAnnotation tok;
    tok.index = *index;
    tok.form = std::string(cols[1]);
    const std::string_view lemma = cols[2] == "_" ? cols[1] : cols[2];
    tok.lemma = lemma_at(std::string(lemma), line_no);
    tok.upos = underscore_to_empty(cols[3]);
    if (cols[6] != "_") {
      const auto head = parse_number<int>(cols[6]);
      if (!head || *head < 0) {
        throw Error(ErrorCode::kMalformedLine, "bad HEAD column", line_no);
      }
      if (*head == *index) {
        throw Error(ErrorCode::kCyclicHeads,
                    "token " + std::to_string(*index) + " heads itself",
                    line_no);
      }
      tok.head = *head;
    }
    tok.deprel = underscore_to_empty(cols[7]);
    tokens.push_back(std::move(tok));
  }
  finish_block();
  return out;
}

std::string write_conllu(const ParseMap& parses) {
  std::ostringstream out;
  for (const auto& [id, tokens] : parses) {
    out << "# sense_id = " << id << '\n';
    for (const auto& t : tokens) {
      out << t.index << '\t' << field_or_underscore(t.form) << '\t'
          << t.lemma.str() << '\t' << field_or_underscore(t.upos)
          << "\t_\t_\t" << (t.head ? std::to_string(*t.head) : "_") << '\t'
          << field_or_underscore(t.deprel) << "\t_\t_\n";
    }
    out << '\n';
  }
  return out.str();
}

void attach_parses(std::vector<DictionaryEntry>& entries,
                   const ParseMap& parses) {
  for (auto& e : entries) {
    for (auto& s : e.senses) {
      const auto it = parses.find(s.sense_id);
      if (it != parses.end()) s.tokens = it->second;
    }
  }
}

WordList parse_wordlist(std::istream& in, WordListKind kind) {
  std::vector<Lemma> words;
  std::string line;
  while (next_line(in, line)) {
    const auto view = text::trim(line);
    if (view.empty() || view.front() == '#') continue;
    words.emplace_back(view);
  }
  WordList list(kind, std::move(words));
  if (kind == WordListKind::kCdv && list.empty()) {
    throw Error(ErrorCode::kEmptyList, "defining vocabulary is empty");
  }
  return list;
}

EmbeddingTable parse_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> count, dim;
  while (next_line(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto parts = text::split_ws(line);
    if (parts.size() == 2) {
      count = parse_number<std::size_t>(parts[0]);
      dim = parse_number<std::size_t>(parts[1]);
    }
    if (!count || !dim || *dim == 0) {
      throw Error(ErrorCode::kMalformedLine,
                  "expected '<count> <dim>' header", line_no);
    }
    break;
  }
  if (!dim) throw Error(ErrorCode::kMalformedLine, "missing header", line_no);

  EmbeddingTable table(*dim);
  std::vector<double> vec(*dim);
  while (next_line(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto parts = text::split_ws(line);
    if (parts.size() != *dim + 1) {
      throw Error(ErrorCode::kDimMismatch,
                  std::to_string(parts.size() - 1) + " values, expected " +
                      std::to_string(*dim),
                  line_no);
    }
    const Lemma word = lemma_at(std::string(parts[0]), line_no);
    if (table.find(word)) {
      throw Error(ErrorCode::kMalformedLine, "duplicate word " + word.str(),
                  line_no);
    }
    for (std::size_t i = 0; i < *dim; ++i) {
      const auto v = parse_number<double>(parts[i + 1]);
      if (!v) {
        throw Error(ErrorCode::kMalformedLine,
                    "bad number '" + std::string(parts[i + 1]) + "'", line_no);
      }
      if (!std::isfinite(*v)) {
        throw Error(ErrorCode::kNonFiniteValue, word.str(), line_no);
      }
      vec[i] = *v;
    }
    table.add(word, vec);
  }
  if (table.size() != *count) {
    throw Error(ErrorCode::kMalformedLine,
                "header declares " + std::to_string(*count) + " rows, found " +
                    std::to_string(table.size()),
                line_no);
  }
  return table;
}

void write_skb(const Skb& skb, std::ostream& out) {
  SememeSet used;
  for (const auto& r : skb.records()) used.insert(r.sememes.begin(), r.sememes.end());
  ordered_json header;
  header["format"] = "skb";
  header["version"] = kSkbVersion;
  header["inventory"] = ordered_json::array();
  for (const auto& [lemma, count] : skb.inventory().counts()) {
    ordered_json item;
    item["sememe"] = lemma.str();
    item["count"] = count;
    item["used"] = used.contains(lemma);
    header["inventory"].push_back(std::move(item));
  }
  out << header.dump() << '\n';
  for (const auto& r : skb.records()) {
    ordered_json rec;
    rec["headword"] = r.headword.str();
    rec["pos"] = r.pos.known() ? ordered_json(r.pos.str()) : ordered_json();
    rec["sense_id"] = r.sense_id;
    rec["sememes"] = ordered_json::array();
    for (const auto& s : r.sememes) rec["sememes"].push_back(s.str());
    out << rec.dump() << '\n';
  }
}

std::string write_skb(const Skb& skb) {
  std::ostringstream out;
  write_skb(skb, out);
  return out.str();
}

namespace {

SememeInventory inventory_from_json(const json& items, std::size_t line_no) {
  if (!items.is_array()) {
    throw Error(ErrorCode::kMalformedLine, "inventory must be an array",
                line_no);
  }
  SememeInventory inventory;
  for (const auto& item : items) {
    if (!item.is_object() || !item.contains("sememe") ||
        !item["sememe"].is_string() || !item.contains("count") ||
        !item["count"].is_number_unsigned()) {
      throw Error(ErrorCode::kMalformedLine,
                  "inventory items need sememe and count", line_no);
    }
    inventory.add(lemma_at(item["sememe"].get<std::string>(), line_no),
                  item["count"].get<std::uint64_t>());
  }
  return inventory;
}

json parse_json_line(const std::string& line, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedLine, e.what(), line_no);
  }
}

void check_header(const json& header, std::string_view format, int version,
                  std::size_t line_no) {
  if (!header.is_object() || !header.contains("format") ||
      header["format"] != format) {
    throw Error(ErrorCode::kMalformedLine,
                "expected a '" + std::string(format) + "' header", line_no);
  }
  if (!header.contains("version") || header["version"] != version) {
    throw Error(ErrorCode::kVersionMismatch,
                "supported version is " + std::to_string(version), line_no);
  }
}

}  // namespace

Skb read_skb(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<Skb> skb;
  while (next_line(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const json obj = parse_json_line(line, line_no);
    if (!skb) {
      check_header(obj, "skb", kSkbVersion, line_no);
      skb.emplace(inventory_from_json(obj.value("inventory", json()), line_no));
      continue;
    }
    if (!obj.is_object() || !obj.contains("headword") ||
        !obj["headword"].is_string() || !obj.contains("sense_id") ||
        !obj["sense_id"].is_string() || !obj.contains("sememes") ||
        !obj["sememes"].is_array()) {
      throw Error(ErrorCode::kMalformedLine, "bad record", line_no);
    }
    SkbRecord rec;
    rec.headword = lemma_at(obj["headword"].get<std::string>(), line_no);
    if (obj.contains("pos") && obj["pos"].is_string()) {
      rec.pos = PosTag(obj["pos"].get<std::string>());
    }
    rec.sense_id = obj["sense_id"].get<std::string>();
    for (const auto& s : obj["sememes"]) {
      if (!s.is_string()) {
        throw Error(ErrorCode::kMalformedLine, "sememes must be strings",
                    line_no);
      }
      rec.sememes.insert(lemma_at(s.get<std::string>(), line_no));
    }
    try {
      skb->insert(std::move(rec));
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), line_no);
    }
  }
  if (!skb) throw Error(ErrorCode::kMalformedLine, "missing SKB header", 1);
  return std::move(*skb);
}

void write_inventory(const SememeInventory& inventory, std::ostream& out) {
  ordered_json doc;
  doc["format"] = "inventory";
  doc["version"] = kInventoryVersion;
  doc["inventory"] = ordered_json::array();
  for (const auto& [lemma, count] : inventory.counts()) {
    ordered_json item;
    item["sememe"] = lemma.str();
    item["count"] = count;
    doc["inventory"].push_back(std::move(item));
  }
  out << doc.dump() << '\n';
}

SememeInventory read_inventory(std::istream& in) {
  std::stringstream buf;
  buf << in.rdbuf();
  const json doc = parse_json_line(buf.str(), 1);
  check_header(doc, "inventory", kInventoryVersion, 1);
  return inventory_from_json(doc.value("inventory", json()), 1);
}

void write_diagnostics(std::span<const Diagnostic> diagnostics,
                       std::ostream& out) {
  for (const auto& d : diagnostics) {
    ordered_json obj;
    obj["sense_id"] = d.sense_id;
    obj["warning"] = d.warning;
    out << obj.dump() << '\n';
  }
}

}  // namespace skbforge
