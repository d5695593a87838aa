// skbforge: builds, distills, evaluates and queries sememe knowledge bases
// from dictionaries with a controlled defining vocabulary.
//
// Machine-readable output goes to stdout or --out files; progress and the run
// manifest go to stderr. Exit codes: 0 success, 1 I/O error, 2 validation.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skbforge/consistency.h"
#include "skbforge/distill.h"
#include "skbforge/error.h"
#include "skbforge/ingestion.h"
#include "skbforge/manifest.h"
#include "skbforge/normalizer.h"
#include "skbforge/sememe_set.h"
#include "skbforge/substitution.h"
#include "skbforge/text.h"

namespace fs = std::filesystem;

namespace skbforge {
namespace {

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;

struct CommonOptions {
  int jobs = 1;
  std::string manifest;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

// Writes `content` to `path`, or stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed: " + path);
}

void ensure_distinct(const std::string& out,
                     const std::vector<std::string>& inputs) {
  if (out.empty() || out == "-") return;
  std::error_code ec;
  for (const auto& in : inputs) {
    if (in.empty()) continue;
    if (in == out || fs::equivalent(in, out, ec)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "output " + out + " would overwrite input " + in);
    }
  }
}

void log(const std::string& msg) { std::cerr << "[skbforge] " << msg << '\n'; }

std::vector<DictionaryEntry> load_dictionary(const std::string& path) {
  auto in = open_input(path);
  return parse_dictionary(in);
}

ParseMap load_conllu(const std::string& path) {
  auto in = open_input(path);
  return parse_conllu(in);
}

WordList load_wordlist(const std::string& path, WordListKind kind) {
  if (path.empty()) return WordList(kind, {});
  auto in = open_input(path);
  return parse_wordlist(in, kind);
}

Skb load_skb(const std::string& path) {
  auto in = open_input(path);
  return read_skb(in);
}

// Known lemmas for the fallback lemmatizer: dictionary headwords plus an
// optional extra word list.
Normalizer make_normalizer(const std::vector<DictionaryEntry>& entries,
                           const std::string& lexicon_path) {
  std::set<Lemma> lexicon;
  for (const auto& e : entries) lexicon.insert(e.headword);
  if (!lexicon_path.empty()) {
    for (const auto& w : load_wordlist(lexicon_path, WordListKind::kCdv).words()) {
      lexicon.insert(w);
    }
  }
  return Normalizer(std::move(lexicon));
}

std::string serialize_diagnostics(const std::vector<Diagnostic>& diags) {
  std::ostringstream out;
  write_diagnostics(diags, out);
  return out.str();
}

// Option values of `cmd` that affect its output.
std::map<std::string, std::string> collect_config(const CLI::App& cmd) {
  std::map<std::string, std::string> config;
  for (const CLI::Option* opt : cmd.get_options()) {
    const std::string name = opt->get_name();
    if (name.empty() || name == "--help" || name == "--jobs" ||
        name == "--manifest" || name == "--config") {
      continue;
    }
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->reduced_results()) value += (value.empty() ? "" : ",") + r;
    } else if (opt->get_expected_min() == 0) {
      value = "false";
    } else {
      value = opt->get_default_str();
    }
    config[name] = value;
  }
  return config;
}

void finish_manifest(const RunManifest& manifest, const CommonOptions& common) {
  const std::string json = manifest.to_json();
  if (!common.manifest.empty()) write_output(common.manifest, json);
  std::cerr << "[skbforge] manifest: " << json;
}

// ---------------------------------------------------------------------------

struct BuildSememeSetOptions {
  std::string dict, cdv, stopwords, negators, conllu, lexicon, out;
  double top_trim = 0.01;
  double bottom_trim = 0.10;
};

void run_build_sememe_set(const BuildSememeSetOptions& o, const CommonOptions& common,
                          RunManifest& manifest) {
  ensure_distinct(o.out, {o.dict, o.cdv, o.stopwords, o.negators, o.conllu, o.lexicon});
  manifest.add_input("dict", o.dict);
  manifest.add_input("cdv", o.cdv);
  if (!o.stopwords.empty()) manifest.add_input("stopwords", o.stopwords);
  if (!o.negators.empty()) manifest.add_input("negators", o.negators);
  if (!o.conllu.empty()) manifest.add_input("conllu", o.conllu);
  if (!o.lexicon.empty()) manifest.add_input("lexicon", o.lexicon);

  auto entries = manifest.time_stage("read", [&] { return load_dictionary(o.dict); });
  if (!o.conllu.empty()) attach_parses(entries, load_conllu(o.conllu));
  const WordList cdv = load_wordlist(o.cdv, WordListKind::kCdv);
  SememeSetConfig cfg;
  cfg.top_trim_fraction = o.top_trim;
  cfg.bottom_trim_fraction = o.bottom_trim;
  cfg.stopwords = load_wordlist(o.stopwords, WordListKind::kStopword);
  cfg.negators = load_wordlist(o.negators, WordListKind::kNegator);
  const Normalizer normalizer = make_normalizer(entries, o.lexicon);
  const auto inventory = manifest.time_stage("build", [&] {
    return build_sememe_set(entries, cdv, cfg, &normalizer, common.jobs);
  });
  std::ostringstream out;
  write_inventory(inventory, out);
  write_output(o.out, out.str());
  log("sememe set: " + std::to_string(cdv.size()) + " CDV words -> " +
      std::to_string(inventory.size()) + " sememes");
}

struct AnnotateOptions {
  std::string dict, inventory, conllu, lexicon, out, diagnostics;
};

void run_annotate(const AnnotateOptions& o, const CommonOptions& common,
                  RunManifest& manifest) {
  ensure_distinct(o.out, {o.dict, o.inventory, o.conllu, o.lexicon});
  ensure_distinct(o.diagnostics, {o.dict, o.inventory, o.conllu, o.lexicon});
  manifest.add_input("dict", o.dict);
  manifest.add_input("inventory", o.inventory);
  if (!o.conllu.empty()) manifest.add_input("conllu", o.conllu);
  if (!o.lexicon.empty()) manifest.add_input("lexicon", o.lexicon);

  const auto entries = load_dictionary(o.dict);
  auto inv_in = open_input(o.inventory);
  const SememeInventory inventory = read_inventory(inv_in);
  std::optional<ParseMap> parses;
  if (!o.conllu.empty()) parses = load_conllu(o.conllu);
  const Normalizer normalizer = make_normalizer(entries, o.lexicon);
  const auto result = manifest.time_stage("annotate", [&] {
    return build_skb(entries, inventory, parses ? &*parses : nullptr, &normalizer,
                     common.jobs);
  });
  write_output(o.out, write_skb(result.skb));
  if (!o.diagnostics.empty()) {
    write_output(o.diagnostics, serialize_diagnostics(result.diagnostics));
  }
  log("annotate: " + std::to_string(result.skb.size()) + " records, " +
      std::to_string(result.diagnostics.size()) + " diagnostics");
}

struct DistillOptions {
  std::string skb, conllu, out, diagnostics;
  int t = 1;
  int m = 4;
};

void run_distill(const DistillOptions& o, const CommonOptions& common,
                 RunManifest& manifest) {
  ensure_distinct(o.out, {o.skb, o.conllu});
  ensure_distinct(o.diagnostics, {o.skb, o.conllu});
  manifest.add_input("skb", o.skb);
  manifest.add_input("conllu", o.conllu);
  const Skb skb = load_skb(o.skb);
  const ParseMap parses = load_conllu(o.conllu);
  const DistillConfig cfg{o.t, o.m};
  const auto result = manifest.time_stage(
      "distill", [&] { return distill_skb(skb, parses, cfg, common.jobs); });
  write_output(o.out, write_skb(result.skb));
  if (!o.diagnostics.empty()) {
    write_output(o.diagnostics, serialize_diagnostics(result.diagnostics));
  }
  const auto before = compute_stats(skb);
  const auto after = compute_stats(result.skb);
  std::ostringstream msg;
  msg << "distill: avg sememes/sense " << before.avg_sememes_per_sense << " -> "
      << after.avg_sememes_per_sense << ", " << result.diagnostics.size()
      << " diagnostics";
  log(msg.str());
}

struct EvalOptions {
  std::string skb, embeddings, out;
  EvalConfig cfg;
};

void run_eval(const EvalOptions& o, const CommonOptions& common,
              RunManifest& manifest) {
  ensure_distinct(o.out, {o.skb, o.embeddings});
  manifest.add_input("skb", o.skb);
  manifest.add_input("embeddings", o.embeddings);
  const Skb skb = load_skb(o.skb);
  auto emb_in = open_input(o.embeddings);
  const EmbeddingTable embeddings = parse_embeddings(emb_in);
  const auto report = manifest.time_stage("eval", [&] {
    return evaluate_consistency(skb, embeddings, o.cfg, common.jobs);
  });
  write_output(o.out, report.to_json());
  log("consistency: " + report.summary());
}

struct SubstitutesOptions {
  std::string skb, word, pos;
  bool any_pos = false;
};

void run_substitutes(const SubstitutesOptions& o, RunManifest& manifest) {
  manifest.add_input("skb", o.skb);
  const Skb skb = load_skb(o.skb);
  const SubstitutionIndex index(skb, {.match_pos = !o.any_pos});
  std::optional<PosTag> pos;
  if (!o.pos.empty()) pos = PosTag(o.pos);
  std::ostringstream out;
  for (const auto& w : index.substitutes(Lemma(o.word), pos)) out << w.str() << '\n';
  write_output("", out.str());
}

struct StatsOptions {
  std::string skb;
  bool substitutes = false;
  bool any_pos = false;
};

void run_stats(const StatsOptions& o, RunManifest& manifest) {
  manifest.add_input("skb", o.skb);
  const Skb skb = load_skb(o.skb);
  if (o.substitutes) {
    const SubstitutionIndex index(skb, {.match_pos = !o.any_pos});
    write_output("", substitute_stats(index).to_json());
    return;
  }
  const SkbStats stats = compute_stats(skb);
  nlohmann::ordered_json doc;
  doc["words"] = stats.word_count;
  doc["senses"] = stats.sense_count;
  doc["sememes"] = stats.sememe_count;
  doc["inventory_size"] = skb.inventory().size();
  doc["total_sememe_annotations"] = stats.total_sememes;
  doc["avg_sememes_per_sense"] = stats.avg_sememes_per_sense;
  write_output("", doc.dump() + "\n");
}

struct ExportOptions {
  std::string skb, out, format = "skb";
};

void run_export(const ExportOptions& o, RunManifest& manifest) {
  ensure_distinct(o.out, {o.skb});
  manifest.add_input("skb", o.skb);
  const Skb skb = load_skb(o.skb);
  std::ostringstream out;
  if (o.format == "skb") {
    write_skb(skb, out);
  } else if (o.format == "inventory") {
    write_inventory(effective_inventory(skb), out);
  } else {
    out << "headword\tpos\tsense_id\tsememes\n";
    for (const auto& r : skb.records()) {
      out << r.headword.str() << '\t' << (r.pos.known() ? r.pos.str() : "_")
          << '\t' << r.sense_id << '\t';
      bool first = true;
      for (const auto& s : r.sememes) {
        out << (first ? "" : " ") << s.str();
        first = false;
      }
      out << '\n';
    }
  }
  write_output(o.out, out.str());
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "build-sememe-set", "annotate", "distill", "eval-consistency",
      "substitutes", "stats", "export"};
  return names;
}

// Expands "--config FILE" into "--key value" pairs placed right after the
// subcommand name, so flags given later on the command line take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (text::starts_with(args[i], "--config=")) {
      config_path = args[i].substr(9);
    }
  }
  if (config_path.empty()) return args;
  auto in = open_input(config_path);
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = text::trim(line);
    if (view.empty() || view.front() == '#' || view.front() == '[') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig, "expected key=value in " + config_path,
                  line_no);
    }
    std::string key(text::trim(view.substr(0, eq)));
    std::string value(text::trim(view.substr(eq + 1)));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (value == "false") continue;
    extra.push_back("--" + key);
    if (value != "true") extra.push_back(value);
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (const auto& name : command_names()) {
      if (args[i] == name) {
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(i) + 1, extra.begin(),
                    extra.end());
        return args;
      }
    }
  }
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"skbforge: sememe knowledge bases from dictionary definitions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SKBFORGE_VERSION);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonOptions common;
  int default_jobs = 1;
  if (const char* env = std::getenv("SKB_FORGE_JOBS")) {
    try {
      default_jobs = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidConfig, "SKB_FORGE_JOBS must be an integer");
    }
  }
  common.jobs = default_jobs;
  std::string config_unused;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--jobs", common.jobs, "Worker threads (env SKB_FORGE_JOBS)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--manifest", common.manifest, "Write the run manifest here");
    cmd->add_option("--config", config_unused, "key=value file; flags override");
  };

  BuildSememeSetOptions bss;
  auto* build_cmd = app.add_subcommand("build-sememe-set",
                                       "Derive the sememe inventory from a CDV");
  build_cmd->add_option("--dict", bss.dict, "Dictionary JSONL")->required();
  build_cmd->add_option("--cdv", bss.cdv, "Defining vocabulary word list")->required();
  build_cmd->add_option("--stopwords", bss.stopwords, "Stop word list");
  build_cmd->add_option("--negators", bss.negators, "Negators kept despite stop list");
  build_cmd->add_option("--conllu", bss.conllu, "CoNLL-U sidecar with lemmas");
  build_cmd->add_option("--lexicon", bss.lexicon, "Extra known lemmas for the lemmatizer");
  build_cmd->add_option("--top-trim", bss.top_trim, "Fraction of most frequent words removed")
      ->capture_default_str();
  build_cmd->add_option("--bottom-trim", bss.bottom_trim,
                        "Fraction of least frequent words removed")
      ->capture_default_str();
  build_cmd->add_option("--out", bss.out, "Inventory JSON output")->required();
  add_common(build_cmd);

  AnnotateOptions ann;
  auto* ann_cmd = app.add_subcommand("annotate", "Extract sememes for every sense");
  ann_cmd->add_option("--dict", ann.dict, "Dictionary JSONL")->required();
  ann_cmd->add_option("--inventory", ann.inventory, "Inventory JSON")->required();
  ann_cmd->add_option("--conllu", ann.conllu, "CoNLL-U sidecar");
  ann_cmd->add_option("--lexicon", ann.lexicon, "Extra known lemmas for the lemmatizer");
  ann_cmd->add_option("--out", ann.out, "SKB export output")->required();
  ann_cmd->add_option("--diagnostics", ann.diagnostics, "Per-sense warnings (JSONL)");
  add_common(ann_cmd);

  DistillOptions dis;
  auto* dis_cmd = app.add_subcommand("distill", "Prune sememes by dependency importance");
  dis_cmd->add_option("--skb", dis.skb, "SKB export input")->required();
  dis_cmd->add_option("--conllu", dis.conllu, "CoNLL-U sidecar with heads")->required();
  dis_cmd->add_option("--t", dis.t, "Score slack")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  dis_cmd->add_option("--m", dis.m, "Minimum sememes for a sense to be distilled")
      ->check(CLI::Range(2, 1 << 30))
      ->capture_default_str();
  dis_cmd->add_option("--out", dis.out, "Distilled SKB output")->required();
  dis_cmd->add_option("--diagnostics", dis.diagnostics, "Per-sense warnings (JSONL)");
  add_common(dis_cmd);

  EvalOptions ev;
  auto* ev_cmd = app.add_subcommand("eval-consistency",
                                    "Sememe-prediction MAP/F1 consistency probe");
  ev_cmd->add_option("--skb", ev.skb, "SKB export input")->required();
  ev_cmd->add_option("--embeddings", ev.embeddings, "Word vectors")->required();
  ev_cmd->add_option("--holdout", ev.cfg.holdout_fraction, "Held-out fraction")
      ->capture_default_str();
  ev_cmd->add_option("--seed", ev.cfg.seed, "Split seed")->capture_default_str();
  ev_cmd->add_option("--k", ev.cfg.k_neighbors, "Neighbours per prediction")
      ->capture_default_str();
  ev_cmd->add_option("--c", ev.cfg.rank_decay_c, "Rank decay")->capture_default_str();
  ev_cmd->add_option("--f1-ratio", ev.cfg.f1_score_ratio,
                     "Keep predictions scoring >= ratio * best")
      ->capture_default_str();
  ev_cmd->add_option("--out", ev.out, "Report JSON (default stdout)");
  add_common(ev_cmd);

  SubstitutesOptions sub;
  auto* sub_cmd = app.add_subcommand("substitutes", "List sememe-based substitutes");
  sub_cmd->add_option("word", sub.word, "Query word")->required();
  sub_cmd->add_option("--skb", sub.skb, "SKB export input")->required();
  sub_cmd->add_option("--pos", sub.pos, "Restrict to this POS");
  sub_cmd->add_flag("--any-pos", sub.any_pos, "Allow cross-POS substitutes");
  add_common(sub_cmd);

  StatsOptions st;
  auto* st_cmd = app.add_subcommand("stats", "SKB statistics as JSON");
  st_cmd->add_option("--skb", st.skb, "SKB export input")->required();
  st_cmd->add_flag("--substitutes", st.substitutes, "Substitute-count statistics");
  st_cmd->add_flag("--any-pos", st.any_pos, "Allow cross-POS substitutes");
  add_common(st_cmd);

  ExportOptions ex;
  auto* ex_cmd = app.add_subcommand("export", "Re-serialize an SKB");
  ex_cmd->add_option("--skb", ex.skb, "SKB export input")->required();
  ex_cmd->add_option("--format", ex.format, "skb | tsv | inventory")
      ->check(CLI::IsMember({"skb", "tsv", "inventory"}))
      ->capture_default_str();
  ex_cmd->add_option("--out", ex.out, "Output path (default stdout)");
  add_common(ex_cmd);

  std::vector<std::string> args(argv + 1, argv + argc);
  args = expand_config(std::move(args));
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  CLI::App* cmd = app.get_subcommands().front();
  RunManifest manifest(cmd->get_name(), SKBFORGE_VERSION);
  manifest.set_config(collect_config(*cmd));
  if (cmd == build_cmd) {
    run_build_sememe_set(bss, common, manifest);
  } else if (cmd == ann_cmd) {
    run_annotate(ann, common, manifest);
  } else if (cmd == dis_cmd) {
    run_distill(dis, common, manifest);
  } else if (cmd == ev_cmd) {
    run_eval(ev, common, manifest);
  } else if (cmd == sub_cmd) {
    run_substitutes(sub, manifest);
  } else if (cmd == st_cmd) {
    run_stats(st, manifest);
  } else if (cmd == ex_cmd) {
    run_export(ex, manifest);
  }
  finish_manifest(manifest, common);
  return 0;
}

}  // namespace
}  // namespace skbforge

int main(int argc, char** argv) {
  try {
    return skbforge::run(argc, argv);
  } catch (const skbforge::Error& e) {
    std::cerr << "skbforge: error: " << e.what() << '\n';
    return e.is_io() ? skbforge::kExitIo : skbforge::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "skbforge: error: " << e.what() << '\n';
    return skbforge::kExitIo;
  }
}
