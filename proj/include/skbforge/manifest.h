#ifndef SKBFORGE_MANIFEST_H_
#define SKBFORGE_MANIFEST_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace skbforge {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);
// Throws Error(kIo) when the file cannot be read.
std::string file_sha256(const std::filesystem::path& path);

// Provenance record written for every CLI command. Digests depend only on
// inputs and configuration; timings are informational.
class RunManifest {
 public:
  RunManifest(std::string command, std::string tool_version);

  void set_config(const std::map<std::string, std::string>& config);
  void add_input(const std::string& role, const std::filesystem::path& path);

  // Times `fn` and records it under `stage`.
  template <typename Fn>
  decltype(auto) time_stage(const std::string& stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Recorder {
      RunManifest* self;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Recorder() {
        self->timings_.emplace_back(
            stage, std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count());
      }
    } recorder{this, stage, start};
    return fn();
  }

  const std::string& config_digest() const { return config_digest_; }
  const std::map<std::string, std::string>& input_digests() const {
    return input_digests_;
  }
  std::string to_json() const;

 private:
  std::string command_;
  std::string tool_version_;
  std::map<std::string, std::string> config_;
  std::string config_digest_;
  std::map<std::string, std::string> input_digests_;
  std::vector<std::pair<std::string, double>> timings_;
};

}  // namespace skbforge

#endif  // SKBFORGE_MANIFEST_H_
