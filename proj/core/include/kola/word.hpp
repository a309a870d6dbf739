#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kola {

/// Letters are arbitrary positive integers; "10" or "439" is one letter.
using Letter = std::uint32_t;

enum class ParityClass { both_even, both_odd, mixed };

std::string to_string(ParityClass p);

/// A two-letter alphabet {r, s} normalised so that small() < large().
class Alphabet {
 public:
  /// Accepts the letters in either order. Throws DomainError unless both are
  /// positive and distinct.
  Alphabet(Letter a, Letter b);

  /// Parses "r,s".
  static Alphabet parse(std::string_view text);

  Letter small() const noexcept { return small_; }
  Letter large() const noexcept { return large_; }
  ParityClass parity_class() const noexcept;

  bool contains(Letter x) const noexcept { return x == small_ || x == large_; }
  /// The other letter. Precondition: contains(x).
  Letter other(Letter x) const noexcept { return x == small_ ? large_ : small_; }

  /// r + s, the scaling factor of the measure.
  std::uint64_t sum() const noexcept { return std::uint64_t{small_} + large_; }

  /// max{s, 2r+1}: fundamental words are strictly shorter than this.
  std::size_t fundamental_bound() const noexcept;

  std::string to_string() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Letter small_;
  Letter large_;
};

struct Run {
  Letter letter;
  std::size_t length;
  friend bool operator==(const Run&, const Run&) = default;
};

using RunEncoding = std::vector<Run>;

/// Finite word over the positive integers. Immutable value type.
class Word {
 public:
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  Word(const_iterator first, const_iterator last) : letters_(first, last) {}

  /// Parses the canonical text form: either a bare digit string ("221121")
  /// or comma-separated letters ("10,439,10"). The empty string is ε.
  static Word parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  const_iterator begin() const noexcept { return letters_.begin(); }
  const_iterator end() const noexcept { return letters_.end(); }
  std::span<const Letter> letters() const noexcept { return letters_; }

  /// |w|_a
  std::size_t count(Letter a) const noexcept;

  Word substr(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return substr(0, len); }
  Word suffix(std::size_t len) const;
  bool starts_with(const Word& v) const noexcept;
  bool ends_with(const Word& v) const noexcept;

  /// Canonical text form: comma-separated iff some letter is >= 10.
  std::string to_string() const;

  friend Word operator+(const Word& a, const Word& b);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    // shortlex, so sorted word lists read naturally
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
};

/// n copies of w concatenated.
Word power(const Word& w, std::size_t n);

RunEncoding run_encode(const Word& w);
Word run_decode(std::span<const Run> runs);

/// Exchanges the two letters of the alphabet. Throws DomainError for a
/// letter outside the alphabet.
Word mirror(const Word& w, const Alphabet& a);
Word reverse(const Word& w);
bool is_palindrome(const Word& w);

/// Number of (possibly overlapping) occurrences of v in w. Throws
/// DomainError if v is empty.
std::size_t count_occurrences(const Word& w, const Word& v);
bool contains_factor(const Word& w, const Word& v);

/// Throws DomainError if any letter of w is outside the alphabet.
void require_over(const Word& w, const Alphabet& a);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace kola
