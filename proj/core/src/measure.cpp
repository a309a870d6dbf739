#include "kola/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "kola/calculus.hpp"
#include "kola/enumeration.hpp"
#include "kola/error.hpp"
#include "kola/generator.hpp"

namespace kola {

const Rational& MeasureTable::at(const Word& w) const {
  auto it = values.find(w);
  if (it == values.end()) throw DomainError("'" + w.to_string() + "' is not a fundamental word");
  return it->second;
}

namespace {

struct Reduced {
  Word fundamental;
  std::size_t degree = 0;
};

// D^j(w) for the degree j of a smooth nonempty word.
std::optional<Reduced> reduce(const Word& w, const Alphabet& a) {
  SmoothnessReport rep = smoothness(w, a);
  if (!rep.is_smooth || w.empty()) return std::nullopt;
  return Reduced{rep.chain[rep.chain.size() - 2], *rep.degree};
}

Rational scale(const Alphabet& a, std::size_t j) {
  BigInt den = 1;
  for (std::size_t i = 0; i < j; ++i) den *= a.sum();
  return Rational(BigInt(1), den);
}

std::vector<Word> all_words(const Alphabet& a, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<Word> next;
    next.reserve(out.size() * 2);
    for (const Word& w : out) {
      next.push_back(w + Word{a.small()});
      next.push_back(w + Word{a.large()});
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

MeasureTable solve_fundamental_measures(const Alphabet& a) {
  MeasureTable table{a, SolveStatus::underdetermined, {}, 0, 0, 0};
  const std::vector<Word> fundamentals = fundamental_words(a);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < fundamentals.size(); ++i) index[fundamentals[i]] = i;
  const std::size_t k = fundamentals.size();
  const std::size_t bound = a.fundamental_bound();

  std::vector<std::vector<Rational>> rows;
  std::vector<std::string> labels;
  auto add_term = [&](std::vector<Rational>& row, const Word& w, int sign) {
    if (auto red = reduce(w, a)) row[index.at(red->fundamental)] += sign * scale(a, red->degree);
  };
  auto push = [&](std::vector<Rational> row, std::string label) {
    rows.push_back(std::move(row));
    labels.push_back(std::move(label));
  };

  std::vector<std::vector<Word>> smooth_by_length(bound + 2);
  for (std::size_t n = 1; n <= bound + 1; ++n) smooth_by_length[n] = smooth_words(a, n);

  for (std::size_t n = 1; n < bound; ++n) {
    std::vector<Rational> row(k + 1);
    for (const Word& w : smooth_by_length[n]) add_term(row, w, 1);
    row[k] = 1;
    push(std::move(row), "level sum n=" + std::to_string(n));
  }
  for (const Word& f : fundamentals) {
    std::vector<Rational> m(k + 1), rv(k + 1);
    add_term(m, f, 1);
    add_term(m, mirror(f, a), -1);
    push(std::move(m), "mirror " + f.to_string());
    add_term(rv, f, 1);
    add_term(rv, reverse(f), -1);
    push(std::move(rv), "reversal " + f.to_string());
  }
  for (std::size_t n = 1; n <= bound; ++n) {
    for (const Word& w : smooth_by_length[n]) {
      std::vector<Rational> right(k + 1), left(k + 1);
      add_term(right, w, 1);
      add_term(left, w, 1);
      for (Letter x : {a.small(), a.large()}) {
        add_term(right, w + Word{x}, -1);
        add_term(left, Word{x} + w, -1);
      }
      push(std::move(right), "additivity " + w.to_string());
      push(std::move(left), "shift " + w.to_string());
    }
  }

  table.unknowns = k;
  table.constraints = rows.size();
  LinearSolution sol = solve_linear_system(std::move(rows), k);
  table.status = sol.status;
  table.rank = sol.rank;
  if (sol.status == SolveStatus::inconsistent) {
    std::string msg = "measure constraints for {" + a.to_string() + "} are inconsistent:";
    for (std::size_t i : sol.inconsistent_rows) msg += " [" + labels[i] + "]";
    throw std::runtime_error(msg);
  }
  if (sol.status == SolveStatus::unique) {
    for (std::size_t i = 0; i < k; ++i) table.values[fundamentals[i]] = sol.values[i];
  }
  return table;
}

Rational measure(const Word& w, const MeasureTable& t) {
  if (t.status != SolveStatus::unique) {
    throw std::logic_error("measure table for {" + t.alphabet.to_string() + "} is " + to_string(t.status));
  }
  if (w.empty()) return Rational(1);
  for (Letter x : w)
    if (!t.alphabet.contains(x)) return Rational(0);
  auto red = reduce(w, t.alphabet);
  if (!red) return Rational(0);
  return t.at(red->fundamental) * scale(t.alphabet, red->degree);
}

bool MeasureReport::passed() const {
  for (const AxiomCheck& c : axioms)
    if (!c.passed()) return false;
  return true;
}

MeasureReport verify_measure(const MeasureTable& t, std::size_t n_max) {
  const Alphabet& a = t.alphabet;
  MeasureReport report;
  report.depth = n_max;
  auto axiom = [](std::string name) {
    AxiomCheck c;
    c.name = std::move(name);
    return c;
  };
  AxiomCheck additivity = axiom("additivity"), shift = axiom("shift"), mirrored = axiom("mirror"),
             reversal = axiom("reversal"), scaling = axiom("scaling");
  auto record = [](AxiomCheck& c, bool ok, const Word& w) {
    ++c.checked;
    if (!ok) {
      ++c.failures;
      if (!c.counterexample) c.counterexample = w;
    }
  };

  std::map<Word, Rational> mu;
  std::vector<Word> level{Word{}};
  mu[Word{}] = 1;
  std::vector<std::vector<Word>> levels{level};
  for (std::size_t n = 1; n <= n_max; ++n) {
    levels.push_back(all_words(a, n));
    for (const Word& w : levels.back()) mu[w] = measure(w, t);
  }
  const Letter letters[2] = {a.small(), a.large()};
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (const Word& w : levels[n]) {
      if (n < n_max) {
        Rational right = 0, left = 0;
        for (Letter x : letters) {
          right += mu.at(w + Word{x});
          left += mu.at(Word{x} + w);
        }
        record(additivity, right == mu.at(w), w);
        record(shift, left == mu.at(w), w);
      }
      if (n == 0) continue;
      record(mirrored, mu.at(mirror(w, a)) == mu.at(w), w);
      record(reversal, mu.at(reverse(w)) == mu.at(w), w);
      if (n >= a.fundamental_bound()) {
        DerivativeOutcome d = derive(w, a);
        if (d.derived()) record(scaling, measure(d.raw_run_lengths, t) == mu.at(w) * a.sum(), w);
      }
    }
  }
  report.axioms = {additivity, shift, mirrored, reversal, scaling};
  return report;
}

FrequencyReport empirical_frequency_report(const MeasureTable& t, Letter first, std::size_t n_prefix,
                                           std::size_t w_len_max) {
  const Alphabet& a = t.alphabet;
  if (a.parity_class() != ParityClass::mixed) {
    throw UnsupportedParity("frequency report expects a mixed alphabet, got {" + a.to_string() + "}");
  }
  if (w_len_max > 24) throw DomainError("frequency report: word length at most 24");
  const Word z = generate(a, first, n_prefix);
  FrequencyReport rep;
  rep.prefix_length = n_prefix;
  rep.max_word_length = w_len_max;
  rep.freq_small = static_cast<double>(z.count(a.small())) / static_cast<double>(n_prefix);

  for (std::size_t l = 1; l <= w_len_max && l <= n_prefix; ++l) {
    // factors coded as bit strings, small letter = 0
    std::vector<std::uint64_t> counts(std::size_t{1} << l, 0);
    std::uint64_t code = 0;
    const std::uint64_t mask = (std::uint64_t{1} << l) - 1;
    for (std::size_t i = 0; i < z.size(); ++i) {
      code = ((code << 1) | (z[i] == a.large() ? 1u : 0u)) & mask;
      if (i + 1 >= l) ++counts[code];
    }
    const double windows = static_cast<double>(n_prefix - l + 1);
    for (std::uint64_t c = 0; c <= mask; ++c) {
      std::vector<Letter> letters(l);
      for (std::size_t b = 0; b < l; ++b) letters[b] = ((c >> (l - 1 - b)) & 1) ? a.large() : a.small();
      Word w(std::move(letters));
      Rational m = measure(w, t);
      if (counts[c] > 0 && m == 0) ++rep.non_smooth_factors;
      const double f = static_cast<double>(counts[c]) / windows;
      const double dev = std::abs(f - m.convert_to<double>());
      if (!rep.worst || dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst = FrequencyDeviation{w, f, m};
      }
    }
  }
  return rep;
}

}  // namespace kola
