#include "kola/repetitions.hpp"

#include <algorithm>
#include <mutex>
#include <set>

#include "kola/calculus.hpp"
#include "kola/derivative_stack.hpp"
#include "kola/error.hpp"
#include "parallel.hpp"

namespace kola {

OverlapWord OverlapWord::of(Word w) {
  OverlapWord v;
  v.signed_length = static_cast<long long>(w.size());
  v.body = std::move(w);
  return v;
}

OverlapWord OverlapWord::negative() {
  OverlapWord v;
  v.kind = Kind::negative;
  v.signed_length = -1;
  return v;
}

Word SquareShape::to_word() const {
  if (v.is_negative()) return u.prefix(u.size() - 1) + u;
  return u + v.body + u;
}

namespace {

// p = uvu with |u| = b; for |v| = -1 this reads p = x x c with |x| = b - 1,
// that is u = x c overlapping itself in one letter.
bool has_shape(std::span<const Letter> p, long long b, long long vlen) {
  if (vlen >= 0) return std::equal(p.begin(), p.begin() + b, p.end() - b);
  return std::equal(p.begin(), p.begin() + (b - 1), p.begin() + (b - 1));
}

}  // namespace

bool allows_negative_overlap(const Alphabet& a) { return 2 * std::size_t{a.small()} < a.large(); }

std::vector<SquareShape> square_shapes(const Word& p, const Alphabet& a) {
  std::vector<SquareShape> out;
  const auto n = static_cast<long long>(p.size());
  const long long vmax = 2 * static_cast<long long>(a.large()) + 1;
  const long long vmin = allows_negative_overlap(a) ? -1 : 0;
  auto letters = p.letters();
  for (long long vlen = vmin; vlen <= vmax; ++vlen) {
    if ((n - vlen) % 2 != 0) continue;
    const long long b = (n - vlen) / 2;
    if (b <= 0 || (b + vlen) % 2 != 0) continue;
    const auto ub = static_cast<std::size_t>(b);
    if (!has_shape(letters, b, vlen)) continue;
    if (vlen < 0) {
      out.push_back(SquareShape{p.suffix(ub), OverlapWord::negative()});
    } else {
      out.push_back(SquareShape{p.prefix(ub), OverlapWord::of(p.substr(ub, static_cast<std::size_t>(vlen)))});
    }
  }
  return out;
}

namespace {

bool is_live_shape(const Word& p, const Alphabet& a) {
  const auto n = static_cast<long long>(p.size());
  const long long vmax = 2 * static_cast<long long>(a.large()) + 1;
  const long long vmin = allows_negative_overlap(a) ? -1 : 0;
  auto letters = p.letters();
  for (long long vlen = vmin; vlen <= vmax; ++vlen) {
    if ((n - vlen) % 2 != 0) continue;
    const long long b = (n - vlen) / 2;
    if (b <= 0 || (b + vlen) % 2 != 0) continue;
    if (has_shape(letters, b, vlen)) return true;
  }
  return false;
}

// w with ww = p, if p is a square
std::optional<Word> square_root(const Word& p) {
  if (p.empty() || p.size() % 2 != 0) return std::nullopt;
  const std::size_t h = p.size() / 2;
  auto letters = p.letters();
  if (!std::equal(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(h),
                  letters.begin() + static_cast<std::ptrdiff_t>(h)))
    return std::nullopt;
  return p.prefix(h);
}

std::vector<Word> words_of_length(const Alphabet& a, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const Word& w : out) {
      next.push_back(w + Word{a.small()});
      next.push_back(w + Word{a.large()});
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::size_t SquareInventory::total_squares() const {
  std::size_t n = 0;
  for (const auto& [len, ws] : squares) n += ws.size();
  return n;
}

std::size_t SquareInventory::total_cubes() const {
  std::size_t n = 0;
  for (const auto& [len, ws] : cubes) n += ws.size();
  return n;
}

std::size_t SquareInventory::total_fourth_powers() const {
  std::size_t n = 0;
  for (const auto& [len, ws] : fourth_powers) n += ws.size();
  return n;
}

SquareInventory find_squares(const Alphabet& a, const SquareCaps& caps) {
  SquareInventory inv{a, {}, {}, {}, {}, false, 0, 0, 0};
  std::set<Word> squares;
  std::set<Word> seeds;
  std::size_t min_dropped = std::numeric_limits<std::size_t>::max();
  auto keep = [&](std::set<Word>& live, Word p) {
    if (p.size() > caps.max_len) {
      min_dropped = std::min(min_dropped, p.size());
    } else {
      live.insert(std::move(p));
    }
  };

  const std::size_t vmax = 2 * std::size_t{a.large()} + 1;
  for (const Word& u : fundamental_words(a)) {
    if (is_smooth(u + u, a)) squares.insert(u);
    if (allows_negative_overlap(a) && (u.size() - 1) % 2 == 0) {
      Word p = SquareShape{u, OverlapWord::negative()}.to_word();
      if (is_smooth(p, a)) keep(seeds, std::move(p));
    }
    for (std::size_t vlen = 0; vlen <= vmax; ++vlen) {
      if ((u.size() + vlen) % 2 != 0) continue;
      for (const Word& v : words_of_length(a, vlen)) {
        Word p = u + v + u;
        if (is_smooth(p, a)) keep(seeds, std::move(p));
      }
    }
  }

  Budget budget(Caps{0, caps.max_seconds, caps.threads}, "find_squares");
  std::vector<Word> live(seeds.begin(), seeds.end());
  inv.peak_live = live.size();
  bool capped = false;
  while (!live.empty()) {
    if (inv.iterations >= caps.max_iterations || live.size() > caps.max_live) {
      capped = true;
      break;
    }
    try {
      budget.charge(live.size());
    } catch (const CapExceeded&) {
      capped = true;
      break;
    }
    std::set<Word> next;
    std::mutex merge;
    const std::size_t chunk = 256;
    const std::size_t chunks = (live.size() + chunk - 1) / chunk;
    detail::parallel_for(chunks, caps.threads, [&](std::size_t c) {
      std::vector<Word> found_live, found_squares;
      for (std::size_t i = c * chunk; i < std::min(live.size(), (c + 1) * chunk); ++i) {
        for (Word& q : primitives(live[i], a)) {
          if (auto root = square_root(q)) found_squares.push_back(std::move(*root));
          if (is_live_shape(q, a)) found_live.push_back(std::move(q));
        }
      }
      std::lock_guard lock(merge);
      for (Word& w : found_squares) squares.insert(std::move(w));
      for (Word& w : found_live) keep(next, std::move(w));
    });
    live.assign(next.begin(), next.end());
    ++inv.iterations;
    inv.peak_live = std::max(inv.peak_live, live.size());
  }
  for (const Word& p : live) min_dropped = std::min(min_dropped, p.size());

  inv.complete = !capped && min_dropped == std::numeric_limits<std::size_t>::max();
  inv.complete_up_to = inv.complete ? std::numeric_limits<std::size_t>::max() : min_dropped / 2;
  for (const Word& w : squares) inv.squares[w.size()].push_back(w);
  classify_powers(inv);
  return inv;
}

void classify_powers(SquareInventory& inv) {
  inv.cubes.clear();
  inv.fourth_powers.clear();
  inv.moor.clear();
  for (auto& [len, ws] : inv.squares) {
    std::sort(ws.begin(), ws.end());
    Rational best = 0;
    for (const Word& w : ws) {
      if (is_smooth(power(w, 3), inv.alphabet)) inv.cubes[len].push_back(w);
      if (is_smooth(power(w, 4), inv.alphabet)) inv.fourth_powers[len].push_back(w);
      best = std::max(best, max_order_of_repetition(w, inv.alphabet).value);
    }
    inv.moor[len] = best;
  }
}

MoorResult max_order_of_repetition(const Word& w, const Alphabet& a, std::size_t max_len) {
  if (w.empty()) throw DomainError("MOOR of the empty word");
  if (!is_smooth(w, a)) throw DomainError("MOOR: '" + w.to_string() + "' is not smooth");
  DerivativeStack st(a);
  std::size_t len = 0;
  MoorResult out;
  while (true) {
    if (len >= max_len) {
      out.exact = false;
      break;
    }
    DerivativeStack next = st;
    if (!next.push(w[len % w.size()]) || !next.is_smooth()) break;
    st = next;
    ++len;
  }
  out.smooth_length = len;
  out.value = Rational(static_cast<long long>(len), static_cast<long long>(w.size()));
  return out;
}

}  // namespace kola
