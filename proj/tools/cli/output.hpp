#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

namespace causalkit::cli {

std::string sha256_hex(std::string_view bytes);

/// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

// Collects output files of one command so a manifest can list their hashes.
class OutputSet {
public:
  explicit OutputSet(std::filesystem::path manifest_path) : manifest_path_(std::move(manifest_path)) {}

  void write(const std::filesystem::path& path, std::string_view bytes);

  /// {tool_version, format_version, command, config, config_sha256, seed, outputs}
  void write_manifest(std::string_view command, const nlohmann::ordered_json& config, std::uint64_t seed) const;

private:
  std::filesystem::path manifest_path_;
  std::map<std::string, std::string> hashes_;
};

}  // namespace causalkit::cli
