#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kola/rational.hpp"
#include "kola/word.hpp"

namespace kola {

struct MeasureTable {
  Alphabet alphabet;
  SolveStatus status = SolveStatus::underdetermined;
  /// μ([w]) for every fundamental word w; filled only when status is unique.
  std::map<Word, Rational> values;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::size_t rank = 0;

  const Rational& at(const Word& w) const;
};

/// Solves for μ on the fundamental words in exact arithmetic. The
/// constraints are: level sums Σ_{|w|=n} μ([w]) = 1 for 1 <= n < L, mirror
/// and reversal symmetry on the fundamental words, and additivity
/// μ([w]) = Σ_a μ([wa]) and μ([w]) = Σ_a μ([aw]) for every smooth w with
/// |w| <= L, where L = max{s, 2r+1}. Every word is expressed through the
/// scaling relation μ([w]) = μ([D^j w]) / (r+s)^j with j its degree.
///
/// An underdetermined system is returned with empty values. An inconsistent
/// one throws std::runtime_error naming the violated constraints.
MeasureTable solve_fundamental_measures(const Alphabet& a);

/// μ([w]); 0 for non-smooth w and 1 for ε. Throws std::logic_error unless
/// the table is unique.
Rational measure(const Word& w, const MeasureTable& t);

struct AxiomCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::optional<Word> counterexample;

  bool passed() const noexcept { return failures == 0; }
};

struct MeasureReport {
  std::size_t depth = 0;
  std::vector<AxiomCheck> axioms;  // additivity, shift, mirror, reversal, scaling

  bool passed() const;
};

/// Checks the five axioms exactly over all words of length <= n_max.
MeasureReport verify_measure(const MeasureTable& t, std::size_t n_max);

struct FrequencyDeviation {
  Word word;
  double frequency = 0;
  Rational measure;
};

struct FrequencyReport {
  std::size_t prefix_length = 0;
  std::size_t max_word_length = 0;
  double max_deviation = 0;
  std::optional<FrequencyDeviation> worst;
  /// Factors of the prefix that are not smooth; always zero for a correct
  /// generator.
  std::size_t non_smooth_factors = 0;
  double freq_small = 0;
};

/// Compares factor frequencies in generate(a, first, n_prefix) with μ for all
/// words up to w_len_max. Requires a mixed-parity alphabet.
FrequencyReport empirical_frequency_report(const MeasureTable& t, Letter first, std::size_t n_prefix,
                                           std::size_t w_len_max);

}  // namespace kola
