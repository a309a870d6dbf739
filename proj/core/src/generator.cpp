#include "kola/generator.hpp"

#include <cmath>
#include <numeric>

#include "kola/error.hpp"

namespace kola {

KolakoskiGenerator::KolakoskiGenerator(Alphabet a, Letter first)
    : alphabet_(a), first_(first), current_(first) {
  if (!a.contains(first)) {
    throw DomainError("start letter " + std::to_string(first) + " is not in {" + a.to_string() + "}");
  }
}

Letter KolakoskiGenerator::next() {
  if (pending_ == 0) {
    current_ = (read_cursor_ % 2 == 0) ? first_ : alphabet_.other(first_);
    // The first run reads its own letter before it has been written.
    pending_ = read_cursor_ < emitted_.size() ? emitted_[read_cursor_] : current_;
    ++read_cursor_;
  }
  --pending_;
  emitted_.push_back(current_);
  return current_;
}

const std::vector<Letter>& KolakoskiGenerator::advance_to(std::size_t n) {
  emitted_.reserve(n);
  while (emitted_.size() < n) next();
  return emitted_;
}

Word generate(const Alphabet& a, Letter first, std::size_t n) {
  KolakoskiGenerator g(a, first);
  std::vector<Letter> out = g.advance_to(n);
  out.resize(n);
  return Word(std::move(out));
}

Word generate_by_substitution(const Alphabet& a, Letter seed, std::size_t iterations) {
  if (!a.contains(seed)) {
    throw DomainError("seed letter " + std::to_string(seed) + " is not in {" + a.to_string() + "}");
  }
  std::vector<Letter> w{seed};
  const Letter odd = a.other(seed);
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<Letter> image;
    for (std::size_t i = 0; i < w.size(); ++i) image.insert(image.end(), w[i], i % 2 == 0 ? seed : odd);
    w = std::move(image);
  }
  return Word(std::move(w));
}

std::string BlockSubstitution::rule_text(std::size_t j) const {
  std::string out = names[j] + "->";
  for (std::size_t i : rules[j]) out += names[i];
  return out;
}

namespace {

void power_iteration(BlockSubstitution& bs) {
  const std::size_t k = bs.matrix.size();
  std::vector<double> v(k, 1.0 / static_cast<double>(k));
  double lambda = 0;
  for (int it = 0; it < 10000; ++it) {
    std::vector<double> u(k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) u[i] += static_cast<double>(bs.matrix[i][j]) * v[j];
    double total = std::accumulate(u.begin(), u.end(), 0.0);
    lambda = total;  // v sums to 1
    double change = 0;
    for (std::size_t i = 0; i < k; ++i) {
      u[i] /= total;
      change = std::max(change, std::abs(u[i] - v[i]));
    }
    v = std::move(u);
    if (change < 1e-12) break;
  }
  bs.perron_root = lambda;
  bs.block_frequencies = v;

  const double rounded = std::round(lambda);
  if (std::abs(lambda - rounded) > 1e-9) return;
  // (M - λI) v = 0 together with Σ v = 1
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> row(k + 1);
    for (std::size_t j = 0; j < k; ++j) row[j] = bs.matrix[i][j] - (i == j ? static_cast<long long>(rounded) : 0);
    rows.push_back(std::move(row));
  }
  std::vector<Rational> norm(k + 1, Rational(1));
  rows.push_back(std::move(norm));
  LinearSolution sol = solve_linear_system(std::move(rows), k);
  if (sol.status == SolveStatus::unique) bs.exact_block_frequencies = sol.values;
}

}  // namespace

BlockSubstitution block_substitution(const Alphabet& a) {
  const Letter r = a.small();
  const Letter s = a.large();
  BlockSubstitution bs{a, a.parity_class(), {}, {}, {}, {}, 0, {}, {}};
  auto repeat = [](std::vector<std::size_t>& out, std::size_t block, std::size_t n) {
    out.insert(out.end(), n, block);
  };
  switch (bs.parity) {
    case ParityClass::both_even: {
      const std::size_t m = r / 2, n = s / 2;
      bs.names = {"A", "B"};
      bs.expansions = {Word{r, r}, Word{s, s}};
      bs.rules.resize(2);
      repeat(bs.rules[0], 0, m);
      repeat(bs.rules[0], 1, m);
      repeat(bs.rules[1], 0, n);
      repeat(bs.rules[1], 1, n);
      break;
    }
    case ParityClass::both_odd: {
      const std::size_t m = (r - 1) / 2, n = (s - 1) / 2;
      bs.names = {"A", "B", "C"};
      bs.expansions = {Word{r, r}, Word{r, s}, Word{s, s}};
      bs.rules.resize(3);
      repeat(bs.rules[0], 0, m);
      repeat(bs.rules[0], 1, 1);
      repeat(bs.rules[0], 2, m);
      repeat(bs.rules[1], 0, m);
      repeat(bs.rules[1], 1, 1);
      repeat(bs.rules[1], 2, n);
      repeat(bs.rules[2], 0, n);
      repeat(bs.rules[2], 1, 1);
      repeat(bs.rules[2], 2, n);
      break;
    }
    case ParityClass::mixed:
      throw UnsupportedParity("no block substitution for the mixed alphabet {" + a.to_string() + "}");
  }
  const std::size_t k = bs.names.size();
  bs.matrix.assign(k, std::vector<long long>(k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i : bs.rules[j]) ++bs.matrix[i][j];
  power_iteration(bs);
  return bs;
}

LetterFrequencies block_letter_frequencies(const BlockSubstitution& bs) {
  LetterFrequencies out;
  const auto& f = bs.block_frequencies;
  if (bs.parity == ParityClass::both_even) {
    out.freq_r = f[0];
    if (bs.exact_block_frequencies) out.exact_freq_r = (*bs.exact_block_frequencies)[0];
  } else {
    out.freq_r = (2 * f[0] + f[1]) / 2;
    if (bs.exact_block_frequencies) {
      const auto& e = *bs.exact_block_frequencies;
      out.exact_freq_r = (2 * e[0] + e[1]) / 2;
    }
  }
  out.freq_s = 1 - out.freq_r;
  return out;
}

std::string to_string(PisotClass c) {
  switch (c) {
    case PisotClass::pisot_cubic: return "pisot_cubic";
    case PisotClass::unimodular_pisot: return "unimodular_pisot";
    case PisotClass::all_roots_outside_unit: return "all_roots_outside_unit";
  }
  return "pisot_cubic";
}

PisotClass classify_pisot(const Alphabet& a) {
  if (a.parity_class() != ParityClass::both_odd) {
    throw UnsupportedParity("Pisot classification needs two odd letters, got {" + a.to_string() + "}");
  }
  const long long r = a.small(), s = a.large();
  if (s - r == 2) return PisotClass::unimodular_pisot;
  if (2 * (r + s) >= (r - s) * (r - s)) return PisotClass::pisot_cubic;
  return PisotClass::all_roots_outside_unit;
}

}  // namespace kola
