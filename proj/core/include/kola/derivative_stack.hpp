#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "kola/word.hpp"

namespace kola {

/// Incremental state for a word built letter by letter: level k tracks the
/// runs of D^k(w) that are already final, plus the run still in progress.
/// Completed runs are pushed to the level above as they close.
///
/// Copying is cheap (only the active levels matter), which is what the
/// depth-first enumerators rely on.
class DerivativeStack {
 public:
  static constexpr std::size_t max_levels = 64;

  explicit DerivativeStack(const Alphabet& a) : r_(a.small()), s_(a.large()) {}
  // Copies only the active levels.
  DerivativeStack(const DerivativeStack& other) { *this = other; }
  DerivativeStack& operator=(const DerivativeStack& other) noexcept;

  /// Appends x at level 0. Returns false once no extension of the word can
  /// be smooth; the stack must not be used after that.
  bool push(Letter x);

  /// Whether the current word itself is smooth. Requires that every push so
  /// far returned true.
  bool is_smooth() const;

  std::size_t size() const noexcept { return size_; }
  std::size_t levels() const noexcept { return used_; }

 private:
  struct Tracker {
    // Tracker{} is the fresh state
    Letter letter;
    std::uint32_t length;  // 0 means nothing seen yet
    bool first_done;
  };

  enum class Feed { none, emitted, dead };
  Feed feed(Tracker& t, Letter x, Letter& out) const;
  bool finalize(const Tracker& t, Letter& out) const;

  Letter r_;
  Letter s_;
  std::size_t size_ = 0;
  std::size_t used_ = 0;
  std::array<Tracker, max_levels> levels_;
};

}  // namespace kola
