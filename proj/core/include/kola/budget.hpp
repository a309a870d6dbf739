#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <string>

namespace kola {

/// Resource limits shared by the long-running searches. Zero means no limit.
struct Caps {
  std::uint64_t max_nodes = 0;
  double max_seconds = 0;
  unsigned threads = 1;
};

/// Node/time accounting that can be charged from several threads. Throws
/// CapExceeded from charge() when a limit is crossed.
class Budget {
 public:
  Budget(const Caps& caps, std::string what);

  void charge(std::uint64_t nodes);
  std::uint64_t nodes() const noexcept { return nodes_.load(std::memory_order_relaxed); }
  double elapsed_seconds() const;
  bool stopped() const noexcept { return stopped_.load(std::memory_order_relaxed); }

 private:
  Caps caps_;
  std::string what_;
  std::chrono::steady_clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stopped_{false};
};

}  // namespace kola
