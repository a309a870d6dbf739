#include "kola/cli/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "kola/chvatal.hpp"
#include "kola/enumeration.hpp"
#include "kola/error.hpp"
#include "kola/measure.hpp"
#include "kola/palindromes.hpp"
#include "kola/repetitions.hpp"

namespace kola::cli {

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::pass: return "PASS";
    case CellStatus::fail: return "FAIL";
    case CellStatus::incomplete: return "INCOMPLETE";
  }
  return "?";
}

std::size_t ReproduceReport::count(CellStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [&](const CellResult& c) { return c.status == s; }));
}

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> targets{"table1",     "table2",   "table3",     "g6-bounds",      "minr-table",
                                                "gap-table", "measure-12", "measure-23", "palindromes-14", "fig1-data"};
  return targets;
}

namespace {

using kola::to_string;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

Alphabet alphabet_of(const std::string& code) {
  auto p = split(code, '_');
  if (p.size() != 2) throw DomainError("bad alphabet code '" + code + "'");
  return Alphabet(static_cast<Letter>(std::stoul(p[0])), static_cast<Letter>(std::stoul(p[1])));
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

std::optional<Rational> as_number(const std::string& text) {
  if (text.empty() || text.find_first_not_of("-0123456789/") != std::string::npos) return std::nullopt;
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

// numbers compare by value, so an unreduced published fraction still matches
CellResult compare(const GoldenCell& cell, std::string got) {
  CellResult r{cell, std::move(got), CellStatus::fail};
  const auto a = as_number(r.got), b = as_number(cell.expected);
  if (a && b ? *a == *b : r.got == cell.expected) r.status = CellStatus::pass;
  return r;
}

CellResult compare_sets(const GoldenCell& cell, std::vector<std::string> got) {
  std::vector<std::string> want = split(cell.expected, ' ');
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  CellResult r{cell, join(got), want == got ? CellStatus::pass : CellStatus::fail};
  return r;
}

CellResult incomplete(const GoldenCell& cell) { return CellResult{cell, "-", CellStatus::incomplete}; }

std::size_t count_skipped(const std::string& target, bool extended) {
  if (extended) return 0;
  return golden_for(target, true).size() - golden_for(target, false).size();
}

std::optional<ComplexityTable> try_complexity(const Alphabet& a, std::size_t n, const Caps& caps) {
  if (n == 0) return std::nullopt;
  try {
    return complexity_table(a, n, caps);
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
}

std::size_t key_length(const GoldenCell& c) { return std::stoul(split(c.key, '.').back()); }

void squares_table(ReproduceReport& rep, const Alphabet& a, const ReproduceOptions& opts) {
  const std::vector<GoldenCell> cells = golden_for(rep.target, opts.extended);
  std::size_t limit = 0, gamma_max = 0;
  for (const GoldenCell& c : cells) {
    if (c.key.rfind("squares.", 0) == 0 && c.key != "squares.total") limit = std::max(limit, key_length(c));
    if (c.key.rfind("gamma.", 0) == 0) gamma_max = std::max(gamma_max, key_length(c));
  }
  const std::size_t check_limit = rep.skipped == 0 ? std::numeric_limits<std::size_t>::max() : limit;

  SquareCaps sc;
  sc.threads = opts.caps.threads;
  sc.max_seconds = opts.caps.max_seconds;
  if (rep.skipped > 0) sc.max_len = 2 * limit + 2;
  std::optional<SquareInventory> inv;
  try {
    inv = find_squares(a, sc);
  } catch (const CapExceeded&) {
  }
  auto known = [&](std::size_t n) { return inv && (inv->complete || n <= inv->complete_up_to); };
  auto size_at = [](const std::map<std::size_t, std::vector<Word>>& m, std::size_t n) {
    auto it = m.find(n);
    return it == m.end() ? std::size_t{0} : it->second.size();
  };
  const std::optional<ComplexityTable> gamma = try_complexity(a, gamma_max, opts.caps);

  for (const GoldenCell& c : cells) {
    const std::vector<std::string> parts = split(c.key, '.');
    const std::string& kind = parts[0];
    if (c.key == "lengths") {
      if (!known(check_limit)) {
        rep.cells.push_back(incomplete(c));
        continue;
      }
      std::vector<std::string> want, got;
      for (const std::string& n : split(c.expected, ' '))
        if (std::stoul(n) <= check_limit) want.push_back(n);
      for (const auto& [n, ws] : inv->squares)
        if (n <= check_limit && !ws.empty()) got.push_back(std::to_string(n));
      CellResult r{c, join(got), want == got ? CellStatus::pass : CellStatus::fail};
      rep.cells.push_back(std::move(r));
    } else if (parts.size() == 2 && parts[1] == "total") {
      if (!inv || !inv->complete) {
        rep.cells.push_back(incomplete(c));
        continue;
      }
      std::size_t total = kind == "squares" ? inv->total_squares()
                          : kind == "cubes" ? inv->total_cubes()
                                            : inv->total_fourth_powers();
      rep.cells.push_back(compare(c, std::to_string(total)));
    } else if (kind == "gamma") {
      if (!gamma) {
        rep.cells.push_back(incomplete(c));
        continue;
      }
      rep.cells.push_back(compare(c, std::to_string(gamma->gamma(key_length(c)))));
    } else {
      const std::size_t n = key_length(c);
      if (!known(n)) {
        rep.cells.push_back(incomplete(c));
        continue;
      }
      if (kind == "squares") {
        rep.cells.push_back(compare(c, std::to_string(size_at(inv->squares, n))));
      } else if (kind == "cubes") {
        rep.cells.push_back(compare(c, std::to_string(size_at(inv->cubes, n))));
      } else if (kind == "fourth") {
        rep.cells.push_back(compare(c, std::to_string(size_at(inv->fourth_powers, n))));
      } else if (kind == "moor") {
        auto it = inv->moor.find(n);
        rep.cells.push_back(compare(c, it == inv->moor.end() ? "-" : to_string(it->second)));
      } else {
        throw DomainError("unknown cell " + c.key);
      }
    }
  }
}

void minr_table(ReproduceReport& rep, const ReproduceOptions& opts) {
  for (const GoldenCell& c : golden_for(rep.target, opts.extended)) {
    const std::vector<std::string> parts = split(c.key, '.');
    try {
      FrequencyInterval f = min_letter_count(alphabet_of(parts[1]), std::stoul(parts[2]), opts.caps);
      rep.cells.push_back(compare(c, std::to_string(f.a)));
    } catch (const CapExceeded&) {
      rep.cells.push_back(incomplete(c));
    }
  }
}

void gap_cells(ReproduceReport& rep, const ReproduceOptions& opts) {
  const std::vector<GoldenCell> cells = golden_for(rep.target, opts.extended);
  std::size_t k = 0;
  for (const GoldenCell& c : cells) k = std::max(k, key_length(c));
  const std::vector<GapEntry> table = gap_table(Alphabet(1, 2), k, opts.caps);
  for (const GoldenCell& c : cells) {
    const std::size_t l = key_length(c);
    if (l > table.size() || !table[l - 1].complete) {
      rep.cells.push_back(incomplete(c));
      continue;
    }
    rep.cells.push_back(compare(c, std::to_string(table[l - 1].max_v_length)));
  }
}

void bound_cells(ReproduceReport& rep, const ReproduceOptions& opts) {
  for (const GoldenCell& c : golden_for(rep.target, opts.extended)) {
    const std::vector<std::string> parts = split(c.key, '.');
    try {
      BoundResult b = frequency_bound(alphabet_of(parts[1]), std::stoul(parts[2]), opts.caps);
      rep.cells.push_back(compare(c, to_string(b.bound)));
    } catch (const CapExceeded&) {
      rep.cells.push_back(incomplete(c));
    }
  }
}

void measure_cells(ReproduceReport& rep, const Alphabet& a, const ReproduceOptions& opts) {
  const MeasureTable t = solve_fundamental_measures(a);
  for (const GoldenCell& c : golden_for(rep.target, opts.extended)) {
    const Word w = Word::parse(split(c.key, '.')[1]);
    if (t.status != SolveStatus::unique) {
      rep.cells.push_back(CellResult{c, to_string(t.status), CellStatus::fail});
      continue;
    }
    auto it = t.values.find(w);
    rep.cells.push_back(compare(c, it == t.values.end() ? "not fundamental" : to_string(it->second)));
  }
}

void palindrome_cells(ReproduceReport& rep, const ReproduceOptions& opts) {
  const std::vector<GoldenCell> cells = golden_for(rep.target, opts.extended);
  std::size_t n_max = 0;
  for (const GoldenCell& c : cells) n_max = std::max(n_max, key_length(c));
  const PalindromeTable t = enumerate_palindromes(Alphabet(1, 4), n_max);
  for (const GoldenCell& c : cells) {
    if (!t.complete) {
      rep.cells.push_back(incomplete(c));
      continue;
    }
    std::vector<std::string> got;
    auto it = t.per_length.find(key_length(c));
    if (it != t.per_length.end())
      for (const Word& w : it->second) got.push_back(w.to_string());
    rep.cells.push_back(compare_sets(c, std::move(got)));
  }
}

void fig1_cells(ReproduceReport& rep, const ReproduceOptions& opts) {
  const std::pair<const char*, Alphabet> sources[] = {{"table2", Alphabet(2, 3)}, {"table3", Alphabet(1, 4)}};
  std::vector<std::pair<Alphabet, std::vector<GoldenCell>>> groups;
  std::size_t n_max = 0;
  for (const auto& [target, a] : sources) {
    std::vector<GoldenCell> cells;
    for (const GoldenCell& c : golden_for(target, true)) {
      if (c.key.rfind("gamma.", 0) != 0) continue;
      if (c.extended && !opts.extended) {
        ++rep.skipped;
        continue;
      }
      n_max = std::max(n_max, key_length(c));
      cells.push_back(c);
    }
    groups.emplace_back(a, std::move(cells));
  }
  std::ofstream loglog;
  if (!opts.loglog_path.empty()) {
    loglog.open(opts.loglog_path);
    if (!loglog) throw DomainError("cannot write " + opts.loglog_path);
    loglog << "alphabet,n,ln_n,ln_gamma\n";
    loglog.precision(10);
  }
  for (const auto& [a, cells] : groups) {
    const std::optional<ComplexityTable> t = try_complexity(a, n_max, opts.caps);
    for (const GoldenCell& c : cells) {
      if (!t) {
        rep.cells.push_back(incomplete(c));
        continue;
      }
      rep.cells.push_back(compare(c, std::to_string(t->gamma(key_length(c)))));
    }
    if (t && loglog.is_open()) {
      for (const auto& [n, g] : t->entries) {
        loglog << a.small() << ' ' << a.large() << ',' << n << ',' << std::log(static_cast<double>(n)) << ','
               << std::log(static_cast<double>(g)) << '\n';
      }
    }
  }
}

}  // namespace

ReproduceReport reproduce(const std::string& target, const ReproduceOptions& opts) {
  const auto& targets = reproduce_targets();
  if (std::find(targets.begin(), targets.end(), target) == targets.end()) {
    throw DomainError("unknown reproduce target '" + target + "'");
  }
  const auto start = std::chrono::steady_clock::now();
  ReproduceReport rep;
  rep.target = target;
  if (target != "fig1-data") rep.skipped = count_skipped(target, opts.extended);

  if (target == "table1") {
    squares_table(rep, Alphabet(1, 2), opts);
  } else if (target == "table2") {
    squares_table(rep, Alphabet(2, 3), opts);
  } else if (target == "table3") {
    squares_table(rep, Alphabet(1, 4), opts);
  } else if (target == "g6-bounds") {
    bound_cells(rep, opts);
  } else if (target == "minr-table") {
    minr_table(rep, opts);
  } else if (target == "gap-table") {
    gap_cells(rep, opts);
  } else if (target == "measure-12") {
    measure_cells(rep, Alphabet(1, 2), opts);
  } else if (target == "measure-23") {
    measure_cells(rep, Alphabet(2, 3), opts);
  } else if (target == "palindromes-14") {
    palindrome_cells(rep, opts);
  } else {
    fig1_cells(rep, opts);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace kola::cli
