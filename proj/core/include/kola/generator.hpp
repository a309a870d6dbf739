#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kola/rational.hpp"
#include "kola/word.hpp"

namespace kola {

/// Run-length feedback generator: run k of the output has length equal to
/// letter k of the output, letters alternating from `first`.
class KolakoskiGenerator {
 public:
  KolakoskiGenerator(Alphabet a, Letter first);

  Letter next();
  /// Appends letters until the prefix has length n and returns it.
  const std::vector<Letter>& advance_to(std::size_t n);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  Letter first_letter() const noexcept { return first_; }
  const std::vector<Letter>& emitted() const noexcept { return emitted_; }
  std::size_t read_cursor() const noexcept { return read_cursor_; }
  std::size_t pending() const noexcept { return pending_; }

 private:
  Alphabet alphabet_;
  Letter first_;
  std::vector<Letter> emitted_;
  std::size_t read_cursor_ = 0;  // index of the run currently being emitted
  std::size_t pending_ = 0;      // letters still owed to that run
  Letter current_;
};

/// Length-n prefix of the Kolakoski sequence over `a` starting with `first`.
Word generate(const Alphabet& a, Letter first, std::size_t n);

/// Iterates w ↦ c_0^{w_0} c_1^{w_1} ... starting from the single letter
/// `seed`, where c_i is `seed` for even i and the other letter for odd i.
Word generate_by_substitution(const Alphabet& a, Letter seed, std::size_t iterations);

struct BlockSubstitution {
  Alphabet alphabet;
  ParityClass parity;
  /// Block names ("A", "B", "C") and their two-letter expansions.
  std::vector<std::string> names;
  std::vector<Word> expansions;
  /// rules[j] lists the block indices of the image of block j.
  std::vector<std::vector<std::size_t>> rules;
  /// matrix[i][j] = occurrences of block i in the image of block j.
  std::vector<std::vector<long long>> matrix;
  double perron_root = 0;
  /// Right Perron eigenvector normalised to sum 1.
  std::vector<double> block_frequencies;
  /// The same vector in exact arithmetic, when the Perron root is an integer.
  std::optional<std::vector<Rational>> exact_block_frequencies;

  std::string rule_text(std::size_t j) const;
};

/// Two-block rule A ↦ A^m B^m, B ↦ A^n B^n (m = r/2, n = s/2) for both-even
/// alphabets; three-block rule A ↦ A^m B C^m, B ↦ A^m B C^n,
/// C ↦ A^n B C^n (m = (r-1)/2, n = (s-1)/2) for both-odd alphabets.
/// Throws UnsupportedParity for mixed alphabets.
BlockSubstitution block_substitution(const Alphabet& a);

struct LetterFrequencies {
  double freq_r = 0;
  double freq_s = 0;
  std::optional<Rational> exact_freq_r;
};

LetterFrequencies block_letter_frequencies(const BlockSubstitution& bs);

enum class PisotClass { pisot_cubic, unimodular_pisot, all_roots_outside_unit };

std::string to_string(PisotClass c);

/// Throws UnsupportedParity unless both letters are odd.
PisotClass classify_pisot(const Alphabet& a);

}  // namespace kola
