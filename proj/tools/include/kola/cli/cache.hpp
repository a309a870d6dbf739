#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace kola::cli {

/// CRC-32 (the zlib polynomial) of the bytes of s.
std::uint32_t checksum(const std::string& s);

/// Emitted artifacts stored on disk under a key built from the command, the
/// alphabet, the parameters and the tool version. A disabled cache (empty
/// directory) never hits and never writes.
///
/// Entry layout: a "kola-cache 1" line, then "key <key>", "crc <hex>" and
/// "size <bytes>" lines, then the payload. Entries whose key, checksum or
/// size do not verify are treated as misses.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir = {});

  bool enabled() const noexcept { return !dir_.empty(); }
  const std::filesystem::path& directory() const noexcept { return dir_; }

  std::optional<std::string> load(const std::string& key) const;
  /// Writes to a temporary file in the cache directory and renames it into
  /// place, so readers never see a partial entry.
  void store(const std::string& key, const std::string& payload) const;

  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace kola::cli
