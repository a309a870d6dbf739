#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kola/word.hpp"

namespace kola {

enum class DerivativeStatus { derived, not_differentiable };

/// Result of one application of the derivative D.
///
/// `raw_run_lengths` is the run-length sequence of the boundary-adjusted word
/// whether or not its letters lie in the alphabet; D(w) is defined exactly
/// when they all do.
struct DerivativeOutcome {
  DerivativeStatus status = DerivativeStatus::derived;
  Word raw_run_lengths;

  bool derived() const noexcept { return status == DerivativeStatus::derived; }
  /// D(w). Throws DomainError if w is not differentiable.
  const Word& result() const;
};

/// The derivative D(w) over {r,s}:
///  - a single run shorter than s derives to ε, a single run of length s to
///    the word "s", and a longer single run is not differentiable;
///  - otherwise each boundary run is dropped if its length is at most r,
///    padded to length s if its length is in [r+1, s], and fails if longer;
///    D(w) is the run-length sequence of the adjusted word.
/// D(ε) = ε. Throws DomainError for letters outside the alphabet.
DerivativeOutcome derive(const Word& w, const Alphabet& a);

struct SmoothnessReport {
  bool is_smooth = false;
  /// Largest j with D^j(w) != ε; present iff smooth and w != ε.
  std::optional<std::size_t> degree;
  /// w, D(w), D^2(w), ... For a smooth word the last entry is ε; otherwise
  /// the chain stops at the last differentiable word.
  std::vector<Word> chain;
};

SmoothnessReport smoothness(const Word& w, const Alphabet& a);

/// Equivalent to smoothness(w, a).is_smooth without building the chain.
bool is_smooth(const Word& w, const Alphabet& a);

/// Degree of a smooth nonempty word, std::nullopt otherwise.
std::optional<std::size_t> degree(const Word& w, const Alphabet& a);

/// Smooth nonempty words with D(w) = ε, in shortlex order.
std::vector<Word> fundamental_words(const Alphabet& a);

/// All v with D(v) = w, in shortlex order. For w = ε this is ε together with
/// the fundamental words. Throws DomainError if w is not smooth.
std::vector<Word> primitives(const Word& w, const Alphabet& a);

}  // namespace kola
