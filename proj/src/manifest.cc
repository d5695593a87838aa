#include "skbforge/manifest.h"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "skbforge/error.h"

namespace skbforge {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return out.str();
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

RunManifest::RunManifest(std::string command, std::string tool_version)
    : command_(std::move(command)), tool_version_(std::move(tool_version)) {
  set_config({});
}

void RunManifest::set_config(const std::map<std::string, std::string>& config) {
  config_ = config;
  config_digest_ = sha256_hex(nlohmann::json(config_).dump());
}

void RunManifest::add_input(const std::string& role,
                            const std::filesystem::path& path) {
  input_digests_[role] = file_sha256(path);
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["command"] = command_;
  doc["tool_version"] = tool_version_;
  doc["config"] = config_;
  doc["config_digest"] = config_digest_;
  doc["inputs"] = input_digests_;
  nlohmann::ordered_json timings = nlohmann::ordered_json::object();
  for (const auto& [stage, seconds] : timings_) timings[stage] = seconds;
  doc["stage_seconds"] = timings;
  return doc.dump() + "\n";
}

}  // namespace skbforge
