#include "kola/budget.hpp"

#include "kola/error.hpp"

namespace kola {

Budget::Budget(const Caps& caps, std::string what)
    : caps_(caps), what_(std::move(what)), start_(std::chrono::steady_clock::now()) {}

double Budget::elapsed_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Budget::charge(std::uint64_t nodes) {
  const std::uint64_t total = nodes_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
  if (stopped()) throw CapExceeded(what_ + ": stopped", total);
  if (caps_.max_nodes != 0 && total > caps_.max_nodes) {
    stopped_ = true;
    throw CapExceeded(what_ + ": node cap of " + std::to_string(caps_.max_nodes) + " exceeded", total);
  }
  if (caps_.max_seconds > 0 && elapsed_seconds() > caps_.max_seconds) {
    stopped_ = true;
    throw CapExceeded(what_ + ": time cap of " + std::to_string(caps_.max_seconds) + " s exceeded", total);
  }
}

}  // namespace kola
