#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "kola/word.hpp"

namespace kola {

struct PalindromicFundamentals {
  std::vector<Word> odd_with_odd_middle;
  std::vector<Word> odd_with_even_middle;
  std::vector<Word> even_length;

  std::vector<Word> all() const;
};

PalindromicFundamentals palindromic_fundamentals(const Alphabet& a);

/// The palindromes among primitives(p). Throws DomainError unless p is a
/// smooth palindrome.
std::vector<Word> palindromic_primitives(const Word& p, const Alphabet& a);

struct PalindromeTable {
  Alphabet alphabet;
  std::map<std::size_t, std::vector<Word>> per_length;
  std::size_t generated_up_to = 0;
  bool complete = true;

  std::size_t count(std::size_t n) const;
};

/// All smooth palindromes of length 1..n_max, built as the closure of the
/// palindromic fundamental words under palindromic_primitives. Stops and
/// flags the table incomplete after max_items words.
PalindromeTable enumerate_palindromes(const Alphabet& a, std::size_t n_max, std::size_t max_items = 10000000);

struct TwoSidedPalindrome {
  /// Successive symmetric words, each the central factor of the next.
  std::vector<Word> chain;

  const Word& word() const { return chain.back(); }
  std::size_t center() const { return word().size() / 2; }
  /// The half read from the center to the right, center letter included.
  Word right_half() const { return word().suffix(word().size() - center()); }
};

struct TwoSidedExtension {
  std::vector<TwoSidedPalindrome> branches;
  /// Some step had more than one maximal choice.
  bool branched = false;
  /// The branch cap cut off some branches.
  bool truncated = false;
};

/// Grows the seed step by step: the next word is a palindromic primitive of
/// odd length having the current word as its central factor, taking the
/// maximal ones under that nesting. A branch stops early when no such
/// primitive exists. Throws DomainError unless the seed is a palindromic
/// fundamental word of odd length with odd middle letter.
TwoSidedExtension extend_palindrome_two_sided(const Word& seed, const Alphabet& a, std::size_t steps,
                                              std::size_t branch_cap = 16);

}  // namespace kola
