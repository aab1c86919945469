#include "output.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "causalkit/serde.hpp"

namespace causalkit::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void OutputSet::write(const std::filesystem::path& path, std::string_view bytes) {
  write_file_atomic(path, bytes);
  hashes_[path.filename().string()] = sha256_hex(bytes);
}

void OutputSet::write_manifest(std::string_view command, const nlohmann::ordered_json& config, std::uint64_t seed) const {
  nlohmann::ordered_json manifest;
  manifest["tool_version"] = CAUSALKIT_TOOL_VERSION;
  manifest["format_version"] = kScmFormatVersion;
  manifest["command"] = std::string(command);
  manifest["config"] = config;
  manifest["config_sha256"] = sha256_hex(config.dump());
  manifest["seed"] = seed;
  manifest["outputs"] = hashes_;
  write_file_atomic(manifest_path_, manifest.dump(2) + "\n");
}

}  // namespace causalkit::cli
