#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

namespace kola {

/// Arbitrary-precision exact rational.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);
/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

enum class SolveStatus { unique, underdetermined, inconsistent };

std::string to_string(SolveStatus s);

struct LinearSolution {
  SolveStatus status = SolveStatus::inconsistent;
  /// Valid when status == unique.
  std::vector<Rational> values;
  std::size_t rank = 0;
  /// Row indices (into the input) that reduced to 0 = c with c != 0.
  std::vector<std::size_t> inconsistent_rows;
};

/// Exact Gaussian elimination on `rows` (each row holds `unknowns`
/// coefficients followed by the right-hand side). Pivots are chosen as the
/// first usable row in input order for each column in order, so the result
/// is deterministic.
LinearSolution solve_linear_system(std::vector<std::vector<Rational>> rows, std::size_t unknowns);

}  // namespace kola
