#include "kola/rational.hpp"

#include <utility>

#include "kola/error.hpp"

namespace kola {

std::string to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt den(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(BigInt(text.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw DomainError("invalid rational '" + text + "'");
  }
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::unique: return "unique";
    case SolveStatus::underdetermined: return "underdetermined";
    case SolveStatus::inconsistent: return "inconsistent";
  }
  return "inconsistent";
}

LinearSolution solve_linear_system(std::vector<std::vector<Rational>> rows, std::size_t unknowns) {
  LinearSolution out;
  std::vector<std::size_t> origin(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != unknowns + 1) throw DomainError("linear system row has wrong width");
    origin[i] = i;
  }

  std::vector<std::size_t> pivot_col;
  std::size_t next_row = 0;
  for (std::size_t col = 0; col < unknowns && next_row < rows.size(); ++col) {
    std::size_t pivot = next_row;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[next_row]);
    std::swap(origin[pivot], origin[next_row]);
    Rational inv = 1 / rows[next_row][col];
    for (auto& x : rows[next_row]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next_row || rows[r][col] == 0) continue;
      Rational f = rows[r][col];
      for (std::size_t c = col; c <= unknowns; ++c) rows[r][c] -= f * rows[next_row][c];
    }
    pivot_col.push_back(col);
    ++next_row;
  }
  out.rank = pivot_col.size();

  for (std::size_t r = out.rank; r < rows.size(); ++r) {
    if (rows[r][unknowns] != 0) out.inconsistent_rows.push_back(origin[r]);
  }
  if (!out.inconsistent_rows.empty()) {
    out.status = SolveStatus::inconsistent;
    return out;
  }
  if (out.rank < unknowns) {
    out.status = SolveStatus::underdetermined;
    return out;
  }
  out.status = SolveStatus::unique;
  out.values.assign(unknowns, Rational(0));
  for (std::size_t r = 0; r < out.rank; ++r) out.values[pivot_col[r]] = rows[r][unknowns];
  return out;
}

}  // namespace kola
