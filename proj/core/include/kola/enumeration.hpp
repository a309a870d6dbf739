#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "kola/budget.hpp"
#include "kola/rational.hpp"
#include "kola/word.hpp"

namespace kola {

/// Calls `visit` once for every smooth word of length n, in lexicographic
/// order (small letter first). Runs on the calling thread.
void enumerate_smooth(const Alphabet& a, std::size_t n,
                      const std::function<void(std::span<const Letter>)>& visit, const Caps& caps = {});

/// All smooth words of length n, lexicographic order.
std::vector<Word> smooth_words(const Alphabet& a, std::size_t n, const Caps& caps = {});

struct ComplexityTable {
  Alphabet alphabet;
  /// (n, γ(n)) for n = 1..complete_up_to
  std::vector<std::pair<std::size_t, std::uint64_t>> entries;
  std::size_t complete_up_to = 0;

  std::uint64_t gamma(std::size_t n) const { return entries.at(n - 1).second; }
  /// First n with γ(n) < γ(n-1), or 0 if γ is nondecreasing on the range.
  std::size_t first_decrease() const;
};

/// γ(n) for n = 1..n_max. The search is split into subtrees at depth 8 and
/// spread over caps.threads workers. Throws CapExceeded if a limit is hit.
ComplexityTable complexity_table(const Alphabet& a, std::size_t n_max, const Caps& caps = {});

struct FrequencyInterval {
  std::size_t n = 0;
  /// min |w|_r over smooth words of length n
  std::size_t a = 0;
  /// lexicographically least word attaining the minimum
  Word witness;
  Rational lower;  // a/n
  Rational upper;  // (n-a)/n
};

/// Exact minimum of |w|_r over smooth words of length n, by a depth-first
/// search bounded with the minima of all shorter lengths. Single-threaded.
FrequencyInterval min_letter_count(const Alphabet& a, std::size_t n, const Caps& caps = {});

struct GapEntry {
  std::size_t w_length = 0;
  /// Longest v with wvw smooth and w not a factor of v; -1 if none found.
  long long max_v_length = -1;
  Word witness_w;
  Word witness_v;
  bool complete = true;
};

/// One entry per |w| = 1..w_len_max. A cap hit marks the affected entry
/// incomplete (its value is then only a lower bound) and skips the rest.
std::vector<GapEntry> gap_table(const Alphabet& a, std::size_t w_len_max, const Caps& caps = {});

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  std::size_t points = 0;
  /// ln(r+s) / ln((r+s)/2)
  double delta = 0;
  /// ln(2s²) / ln(2rs/(r+s))
  double alpha = 0;
  /// ln(r+s) / ln((r²+s²)/(r+s))
  double beta = 0;
};

/// Least-squares slope of ln γ(n) against ln n over n >= n_min. Throws
/// DomainError with fewer than 10 usable points.
ExponentFit exponent_fit(const ComplexityTable& t, std::size_t n_min);

/// δ, α and β for the alphabet, without a fit.
ExponentFit reference_exponents(const Alphabet& a);

}  // namespace kola
