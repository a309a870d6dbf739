#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <map>
#include <vector>

#include "kola/budget.hpp"
#include "kola/rational.hpp"
#include "kola/word.hpp"

namespace kola {

/// The middle part v of a word uvu. Besides ordinary words it may be the
/// "negative" word of length -1, meaning the two copies of u share a letter.
struct OverlapWord {
  enum class Kind { word, negative };

  Kind kind = Kind::word;
  Word body;
  long long signed_length = 0;

  static OverlapWord of(Word w);
  static OverlapWord negative();
  bool is_negative() const noexcept { return kind == Kind::negative; }
};

/// u v u with the overlap spelled out. to_word() rebuilds the full word.
struct SquareShape {
  Word u;
  OverlapWord v;

  Word to_word() const;
};

/// Whether the alphabet allows a negative overlap (2r < s).
bool allows_negative_overlap(const Alphabet& a);

/// Every way of writing p = uvu with u nonempty, -1 <= |v| <= 2s+1
/// (|v| = -1 only when 2r < s) and |uv| even.
std::vector<SquareShape> square_shapes(const Word& p, const Alphabet& a);

struct SquareCaps {
  std::size_t max_iterations = 1000;
  std::size_t max_live = 1000000;
  std::size_t max_len = 100000;
  double max_seconds = 0;
  unsigned threads = 1;
};

struct SquareInventory {
  Alphabet alphabet;
  /// |w| -> sorted w with ww smooth
  std::map<std::size_t, std::vector<Word>> squares;
  std::map<std::size_t, std::vector<Word>> cubes;
  std::map<std::size_t, std::vector<Word>> fourth_powers;
  /// |w| -> largest MOOR among the squares of that length
  std::map<std::size_t, Rational> moor;
  /// Fixpoint reached.
  bool complete = false;
  /// Squares with |w| <= complete_up_to are all listed, even if !complete.
  std::size_t complete_up_to = 0;
  std::size_t iterations = 0;
  std::size_t peak_live = 0;

  std::size_t total_squares() const;
  std::size_t total_cubes() const;
  std::size_t total_fourth_powers() const;
};

/// Iterates primitives starting from the smooth words uvu with u
/// fundamental; a primitive of the form ww contributes the square w, and a
/// primitive with a shape from square_shapes() stays live. Stops at the
/// fixpoint or at a cap. Cubes, fourth powers and MOOR are filled in by
/// classify_powers before returning.
SquareInventory find_squares(const Alphabet& a, const SquareCaps& caps = {});

/// Fills cubes, fourth_powers and moor from the squares.
void classify_powers(SquareInventory& inv);

struct MoorResult {
  Rational value;
  /// Length of the longest smooth prefix of w^∞.
  std::size_t smooth_length = 0;
  bool exact = true;
};

/// max |w^k u| / |w| over k >= 1 and prefixes u of w with w^k u smooth.
/// Throws DomainError if w is empty or not smooth. If the smooth prefix
/// reaches max_len the result is a lower bound and exact is false.
MoorResult max_order_of_repetition(const Word& w, const Alphabet& a, std::size_t max_len = 1000000);

}  // namespace kola
