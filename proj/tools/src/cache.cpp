#include "kola/cli/cache.hpp"

#include <boost/crc.hpp>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace kola::cli {

std::uint32_t checksum(const std::string& s) {
  boost::crc_32_type crc;
  crc.process_bytes(s.data(), s.size());
  return crc.checksum();
}

namespace {

std::string hex(std::uint64_t v, int width) {
  std::ostringstream o;
  o << std::hex << std::setw(width) << std::setfill('0') << v;
  return o.str();
}

constexpr const char* magic = "kola-cache 1";

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
  // two independent hashes keep accidental collisions out of the way; the
  // stored key is compared on load anyway
  const std::uint64_t h = std::hash<std::string>{}(key);
  return dir_ / (hex(checksum(key), 8) + hex(h, 16) + ".entry");
}

std::optional<std::string> ResultCache::load(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string line, stored_key, crc_text;
  std::size_t size = 0;
  if (!std::getline(in, line) || line != magic) return std::nullopt;
  if (!std::getline(in, line) || line.rfind("key ", 0) != 0) return std::nullopt;
  stored_key = line.substr(4);
  if (stored_key != key) return std::nullopt;
  if (!std::getline(in, line) || line.rfind("crc ", 0) != 0) return std::nullopt;
  crc_text = line.substr(4);
  if (!std::getline(in, line) || line.rfind("size ", 0) != 0) return std::nullopt;
  try {
    size = std::stoull(line.substr(5));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  std::string payload(size, '\0');
  if (!in.read(payload.data(), static_cast<std::streamsize>(size))) return std::nullopt;
  if (in.peek() != std::char_traits<char>::eof()) return std::nullopt;
  if (hex(checksum(payload), 8) != crc_text) return std::nullopt;
  return payload;
}

void ResultCache::store(const std::string& key, const std::string& payload) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw std::filesystem::filesystem_error("cannot create cache directory", dir_, ec);
  static std::atomic<unsigned> counter{0};
  const std::filesystem::path final_path = path_for(key);
  std::filesystem::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << magic << '\n'
        << "key " << key << '\n'
        << "crc " << hex(checksum(payload), 8) << '\n'
        << "size " << payload.size() << '\n'
        << payload;
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw std::filesystem::filesystem_error("cannot write cache entry", tmp, std::make_error_code(std::errc::io_error));
    }
  }
  std::filesystem::rename(tmp, final_path);
}

}  // namespace kola::cli
