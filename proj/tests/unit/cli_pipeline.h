#ifndef SKBFORGE_TESTS_CLI_PIPELINE_H_
#define SKBFORGE_TESTS_CLI_PIPELINE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "test_support.h"

namespace skbforge::testing {

struct PipelineRun {
  std::vector<int> exit_codes;
  std::map<std::string, std::string> outputs;  // file name -> bytes

  bool ok() const {
    for (int c : exit_codes)
      if (c != 0) return false;
    return true;
  }
};

inline std::string first_headword(const std::string& name) {
  const auto entries = load_dictionary(name + "/dict.jsonl");
  return entries.front().headword.str();
}

// Every CLI command on the fixture `name`, writing into `dir`.
inline PipelineRun run_pipeline(const std::string& name,
                                const std::filesystem::path& dir,
                                const std::string& jobs) {
  const std::string d = data_path(name).string() + "/";
  const std::string o = dir.string() + "/";
  const std::vector<std::vector<std::string>> steps{
      {"build-sememe-set", "--dict", d + "dict.jsonl", "--cdv", d + "cdv.txt",
       "--stopwords", d + "stopwords.txt", "--negators", d + "negators.txt",
       "--conllu", d + "dict.conllu", "--out", o + "inventory.json"},
      {"annotate", "--dict", d + "dict.jsonl", "--inventory", o + "inventory.json",
       "--conllu", d + "dict.conllu", "--out", o + "full.skb", "--diagnostics",
       o + "annotate.diag.jsonl"},
      {"annotate", "--dict", d + "dict.jsonl", "--inventory", o + "inventory.json",
       "--out", o + "fallback.skb", "--diagnostics", o + "fallback.diag.jsonl"},
      {"distill", "--skb", o + "full.skb", "--conllu", d + "dict.conllu", "--out",
       o + "distilled.skb", "--diagnostics", o + "distill.diag.jsonl"},
      {"eval-consistency", "--skb", o + "full.skb", "--embeddings",
       d + "embeddings.txt", "--seed", "3", "--out", o + "eval.json"},
      {"export", "--skb", o + "distilled.skb", "--format", "tsv", "--out",
       o + "distilled.tsv"},
      {"export", "--skb", o + "full.skb", "--format", "inventory", "--out",
       o + "used.json"},
  };
  PipelineRun run;
  for (auto args : steps) {
    args.push_back("--jobs");
    args.push_back(jobs);
    run.exit_codes.push_back(run_cli(args));
  }
  const std::vector<std::pair<std::string, std::vector<std::string>>> stdout_steps{
      {"stats.full.json", {"stats", "--skb", o + "full.skb", "--substitutes"}},
      {"stats.distilled.json",
       {"stats", "--skb", o + "distilled.skb", "--substitutes"}},
      {"stats.plain.json", {"stats", "--skb", o + "full.skb"}},
      {"substitutes.txt",
       {"substitutes", first_headword(name), "--skb", o + "distilled.skb"}},
  };
  for (auto [file, args] : stdout_steps) {
    args.push_back("--jobs");
    args.push_back(jobs);
    run.exit_codes.push_back(run_cli(args, "", dir / file));
  }
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    run.outputs[entry.path().filename().string()] = slurp(entry.path());
  }
  return run;
}

}  // namespace skbforge::testing

#endif  // SKBFORGE_TESTS_CLI_PIPELINE_H_
