#include "kola/derivative_stack.hpp"

#include <algorithm>
#include <stdexcept>

namespace kola {

DerivativeStack::Feed DerivativeStack::feed(Tracker& t, Letter x, Letter& out) const {
  if (t.length == 0) {
    t.letter = x;
    t.length = 1;
    return t.length <= s_ ? Feed::none : Feed::dead;
  }
  if (x == t.letter) {
    ++t.length;
    return t.length <= s_ ? Feed::none : Feed::dead;
  }
  const std::uint32_t closed = t.length;
  const bool first = !t.first_done;
  t.first_done = true;
  t.letter = x;
  t.length = 1;
  if (first) {
    if (closed <= r_) return Feed::none;
    out = s_;
    return Feed::emitted;
  }
  if (closed != r_ && closed != s_) return Feed::dead;
  out = closed;
  return Feed::emitted;
}

bool DerivativeStack::finalize(const Tracker& t, Letter& out) const {
  if (t.length == 0) return false;
  if (!t.first_done) {
    if (t.length != s_) return false;
    out = s_;
    return true;
  }
  if (t.length <= r_) return false;
  out = s_;
  return true;
}

DerivativeStack& DerivativeStack::operator=(const DerivativeStack& other) noexcept {
  r_ = other.r_;
  s_ = other.s_;
  size_ = other.size_;
  used_ = other.used_;
  std::copy_n(other.levels_.begin(), used_, levels_.begin());
  return *this;
}

bool DerivativeStack::push(Letter x) {
  ++size_;
  std::size_t level = 0;
  while (true) {
    if (level >= max_levels) throw std::length_error("derivative stack depth exceeded");
    if (level >= used_) {
      levels_[level] = Tracker{};
      used_ = level + 1;
    }
    Letter up = 0;
    switch (feed(levels_[level], x, up)) {
      case Feed::none: return true;
      case Feed::dead: return false;
      case Feed::emitted: break;
    }
    x = up;
    ++level;
  }
}

bool DerivativeStack::is_smooth() const {
  // Letters pending for the current level, produced by closing the open runs
  // of the level below. Each level adds at most one letter.
  Letter buf_a[max_levels + 2];
  Letter buf_b[max_levels + 2];
  Letter* tail = buf_a;
  Letter* next = buf_b;
  std::size_t tail_len = 0;
  for (std::size_t level = 0;; ++level) {
    if (level >= used_ && tail_len == 0) return true;
    if (level >= max_levels) throw std::length_error("derivative stack depth exceeded");
    Tracker t = level < used_ ? levels_[level] : Tracker{};
    std::size_t next_len = 0;
    for (std::size_t i = 0; i < tail_len; ++i) {
      Letter up = 0;
      Feed f = feed(t, tail[i], up);
      if (f == Feed::dead) return false;
      if (f == Feed::emitted) next[next_len++] = up;
    }
    Letter up = 0;
    if (finalize(t, up)) next[next_len++] = up;
    std::swap(tail, next);
    tail_len = next_len;
  }
}

}  // namespace kola
