#include "kola/cli/app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kola/calculus.hpp"
#include "kola/chvatal.hpp"
#include "kola/cli/cache.hpp"
#include "kola/cli/reproduce.hpp"
#include "kola/enumeration.hpp"
#include "kola/error.hpp"
#include "kola/generator.hpp"
#include "kola/measure.hpp"
#include "kola/palindromes.hpp"
#include "kola/repetitions.hpp"

#ifndef KOLA_VERSION
#define KOLA_VERSION "dev"
#endif

namespace kola::cli {

namespace {

using json = nlohmann::ordered_json;
using kola::to_string;
using cli::to_string;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { text, csv, json };

struct Globals {
  std::string alphabet;
  std::string format = "text";
  std::string cache_dir;
  unsigned threads = 1;
  double max_seconds = 0;
  Letter seed_letter = 0;
};

struct Context {
  const Globals& g;

  Format format() const {
    if (g.format == "csv") return Format::csv;
    if (g.format == "json") return Format::json;
    return Format::text;
  }
  Alphabet alphabet() const {
    if (g.alphabet.empty()) throw UsageError("--alphabet r,s is required");
    return Alphabet::parse(g.alphabet);
  }
  Caps caps() const {
    Caps c;
    c.max_seconds = g.max_seconds;
    c.threads = g.threads;
    return c;
  }
  Letter seed(const Alphabet& a) const {
    if (g.seed_letter == 0) return a.small();
    if (!a.contains(g.seed_letter)) {
      throw DomainError("seed letter " + std::to_string(g.seed_letter) + " is not in {" + a.to_string() + "}");
    }
    return g.seed_letter;
  }
  void require(std::initializer_list<Format> allowed, const char* what) const {
    for (Format f : allowed)
      if (f == format()) return;
    throw UsageError(std::string(what) + " does not support --format " + g.format);
  }
};

std::string text_word(const Word& w) { return w.empty() ? "ε" : w.to_string(); }

json rational_json(const Rational& q) {
  const BigInt& num = numerator(q);
  const BigInt& den = denominator(q);
  if (num.is_zero() || (boost::multiprecision::abs(num) < BigInt(1) << 62 && den < BigInt(1) << 62)) {
    return json{{"num", num.convert_to<long long>()}, {"den", den.convert_to<long long>()}};
  }
  return json{{"num", num.str()}, {"den", den.str()}};
}

json alphabet_json(const Alphabet& a) { return json::array({a.small(), a.large()}); }

json letters_json(const Word& w) {
  json arr = json::array();
  for (Letter x : w) arr.push_back(x);
  return arr;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---- gen -----------------------------------------------------------------

struct GenArgs {
  Letter start = 0;
  std::size_t length = 0;
  std::string method = "feedback";
};

int cmd_gen(const Context& ctx, const GenArgs& args, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const Letter start = args.start != 0 ? args.start : ctx.seed(a);
  if (!a.contains(start)) throw DomainError("start letter " + std::to_string(start) + " is not in {" + a.to_string() + "}");
  Word w;
  if (args.method == "feedback") {
    w = generate(a, start, args.length);
  } else {
    w = Word{start};
    for (std::size_t it = 1; w.size() < args.length; ++it) {
      Word next = generate_by_substitution(a, start, it);
      if (next.size() <= w.size()) {
        throw DomainError("the substitution iterate from " + std::to_string(start) + " stops growing at length " +
                          std::to_string(w.size()) + "; use --method feedback");
      }
      w = std::move(next);
    }
    w = w.prefix(args.length);
  }
  switch (ctx.format()) {
    case Format::text:
      out << w.to_string() << '\n';
      break;
    case Format::csv:
      out << "letter\n";
      for (Letter x : w) out << x << '\n';
      break;
    case Format::json:
      print_json(out, json{{"alphabet", alphabet_json(a)},
                           {"start", start},
                           {"method", args.method},
                           {"length", w.size()},
                           {"letters", letters_json(w)}});
      break;
  }
  return exit_ok;
}

// ---- derive / primitives / smooth ----------------------------------------

struct WordArgs {
  std::string word;
  bool chain = false;
};

int cmd_derive(const Context& ctx, const WordArgs& args, std::ostream& out) {
  ctx.require({Format::text, Format::json}, "derive");
  const Alphabet a = ctx.alphabet();
  const Word w = Word::parse(args.word);
  require_over(w, a);
  std::vector<Word> chain{w};
  std::string status;
  std::optional<Word> raw;
  if (args.chain) {
    SmoothnessReport rep = smoothness(w, a);
    chain = rep.chain;
    status = rep.is_smooth ? "smooth" : "not_smooth";
    if (!rep.is_smooth) raw = derive(chain.back(), a).raw_run_lengths;
  } else {
    DerivativeOutcome d = derive(w, a);
    if (d.derived()) {
      chain.push_back(d.result());
      status = "derived";
    } else {
      status = "not_differentiable";
      raw = d.raw_run_lengths;
    }
  }
  const std::optional<std::size_t> deg = degree(w, a);
  if (ctx.format() == Format::json) {
    json j{{"word", w.to_string()}, {"status", status}};
    j["degree"] = deg ? json(*deg) : json(nullptr);
    json c = json::array();
    for (const Word& x : chain) c.push_back(x.to_string());
    j["chain"] = c;
    if (raw) j["raw_run_lengths"] = raw->to_string();
    print_json(out, j);
    return exit_ok;
  }
  for (std::size_t i = 0; i < chain.size(); ++i) out << (i ? " -> " : "") << text_word(chain[i]);
  if (raw) out << " -> not differentiable (run lengths " << raw->to_string() << ')';
  out << '\n';
  if (deg) out << "degree " << *deg << '\n';
  return exit_ok;
}

int cmd_primitives(const Context& ctx, const WordArgs& args, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const Word w = Word::parse(args.word);
  require_over(w, a);
  const std::vector<Word> ps = primitives(w, a);
  switch (ctx.format()) {
    case Format::text:
      for (const Word& p : ps) out << text_word(p) << '\n';
      break;
    case Format::csv:
      out << "primitive\n";
      for (const Word& p : ps) out << p.to_string() << '\n';
      break;
    case Format::json: {
      json arr = json::array();
      for (const Word& p : ps) arr.push_back(p.to_string());
      print_json(out, json{{"word", w.to_string()}, {"primitives", arr}});
      break;
    }
  }
  return exit_ok;
}

int cmd_smooth(const Context& ctx, const WordArgs& args, std::ostream& out) {
  ctx.require({Format::text, Format::json}, "smooth");
  const Alphabet a = ctx.alphabet();
  const Word w = Word::parse(args.word);
  require_over(w, a);
  const SmoothnessReport rep = smoothness(w, a);
  if (ctx.format() == Format::json) {
    json j{{"word", w.to_string()}, {"smooth", rep.is_smooth}};
    j["degree"] = rep.degree ? json(*rep.degree) : json(nullptr);
    json c = json::array();
    for (const Word& x : rep.chain) c.push_back(x.to_string());
    j["chain"] = c;
    print_json(out, j);
    return exit_ok;
  }
  if (rep.is_smooth) {
    out << "smooth";
    if (rep.degree) out << ", degree " << *rep.degree;
    out << '\n';
  } else {
    out << "not smooth: D^" << rep.chain.size() - 1 << " = " << text_word(rep.chain.back())
        << " is not differentiable\n";
  }
  return exit_ok;
}

// ---- complexity / minr / gaps --------------------------------------------

struct ComplexityArgs {
  std::size_t max = 0;
  std::string loglog;
};

int cmd_complexity(const Context& ctx, const ComplexityArgs& args, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  ComplexityTable t = complexity_table(a, args.max, ctx.caps());
  if (!args.loglog.empty()) {
    std::ofstream f(args.loglog);
    if (!f) throw DomainError("cannot write " + args.loglog);
    f << "ln_n,ln_gamma\n" << std::setprecision(10);
    for (const auto& [n, g] : t.entries)
      f << std::log(static_cast<double>(n)) << ',' << std::log(static_cast<double>(g)) << '\n';
  }
  switch (ctx.format()) {
    case Format::text:
      for (const auto& [n, g] : t.entries) out << n << ' ' << g << '\n';
      break;
    case Format::csv:
      out << "n,gamma\n";
      for (const auto& [n, g] : t.entries) out << n << ',' << g << '\n';
      break;
    case Format::json: {
      json arr = json::array();
      for (const auto& [n, g] : t.entries) arr.push_back(json::array({n, g}));
      print_json(out, json{{"alphabet", alphabet_json(a)}, {"complete_up_to", t.complete_up_to}, {"gamma", arr}});
      break;
    }
  }
  return exit_ok;
}

int cmd_minr(const Context& ctx, std::size_t n, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const FrequencyInterval f = min_letter_count(a, n, ctx.caps());
  switch (ctx.format()) {
    case Format::text:
      out << "n " << f.n << "\na " << f.a << "\nlower " << to_string(f.lower) << "\nupper " << to_string(f.upper)
          << "\nwitness " << f.witness.to_string() << '\n';
      break;
    case Format::csv:
      out << "n,a,lower,upper,witness\n"
          << f.n << ',' << f.a << ',' << to_string(f.lower) << ',' << to_string(f.upper) << ','
          << f.witness.to_string() << '\n';
      break;
    case Format::json:
      print_json(out, json{{"alphabet", alphabet_json(a)},
                           {"n", f.n},
                           {"a", f.a},
                           {"lower", rational_json(f.lower)},
                           {"upper", rational_json(f.upper)},
                           {"witness", f.witness.to_string()}});
      break;
  }
  return exit_ok;
}

int cmd_gaps(const Context& ctx, std::size_t max_w, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const std::vector<GapEntry> table = gap_table(a, max_w, ctx.caps());
  bool complete = table.size() == max_w;
  for (const GapEntry& e : table) complete = complete && e.complete;
  switch (ctx.format()) {
    case Format::text:
      for (const GapEntry& e : table) {
        out << e.w_length << ' ' << e.max_v_length << ' ' << e.witness_w.to_string() << ' '
            << text_word(e.witness_v) << (e.complete ? "" : " (incomplete, lower bound)") << '\n';
      }
      break;
    case Format::csv:
      out << "wlen,maxv,witness_w,witness_v\n";
      for (const GapEntry& e : table) {
        out << e.w_length << ',' << e.max_v_length << ',' << e.witness_w.to_string() << ','
            << e.witness_v.to_string() << '\n';
      }
      if (!complete) out << "# incomplete\n";
      break;
    case Format::json: {
      json arr = json::array();
      for (const GapEntry& e : table) {
        arr.push_back(json{{"wlen", e.w_length},
                           {"maxv", e.max_v_length},
                           {"witness_w", e.witness_w.to_string()},
                           {"witness_v", e.witness_v.to_string()},
                           {"complete", e.complete}});
      }
      print_json(out, json{{"alphabet", alphabet_json(a)}, {"complete", complete}, {"entries", arr}});
      break;
    }
  }
  return complete ? exit_ok : exit_incomplete;
}

// ---- measure ----------------------------------------------------------------

int cmd_measure_solve(const Context& ctx, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const MeasureTable t = solve_fundamental_measures(a);
  switch (ctx.format()) {
    case Format::text:
      out << "status " << to_string(t.status) << " (" << t.unknowns << " unknowns, " << t.constraints
          << " constraints, rank " << t.rank << ")\n";
      for (const auto& [w, v] : t.values) out << "mu[" << w.to_string() << "] = " << to_string(v) << '\n';
      break;
    case Format::csv:
      out << "word,num,den\n";
      for (const auto& [w, v] : t.values) out << w.to_string() << ',' << numerator(v) << ',' << denominator(v) << '\n';
      break;
    case Format::json: {
      json arr = json::array();
      for (const auto& [w, v] : t.values) arr.push_back(json{{"word", w.to_string()}, {"mu", rational_json(v)}});
      print_json(out, json{{"alphabet", alphabet_json(a)},
                           {"status", to_string(t.status)},
                           {"unknowns", t.unknowns},
                           {"constraints", t.constraints},
                           {"rank", t.rank},
                           {"values", arr}});
      break;
    }
  }
  return exit_ok;
}

int cmd_measure_eval(const Context& ctx, const std::string& word, std::ostream& out) {
  ctx.require({Format::text, Format::json}, "measure eval");
  const Alphabet a = ctx.alphabet();
  const Word w = Word::parse(word);
  const MeasureTable t = solve_fundamental_measures(a);
  const Rational mu = measure(w, t);
  if (ctx.format() == Format::json) {
    print_json(out, json{{"word", w.to_string()}, {"mu", rational_json(mu)}});
  } else {
    out << to_string(mu) << '\n';
  }
  return exit_ok;
}

int cmd_measure_verify(const Context& ctx, std::size_t depth, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const MeasureReport rep = verify_measure(solve_fundamental_measures(a), depth);
  switch (ctx.format()) {
    case Format::text:
      for (const AxiomCheck& c : rep.axioms) {
        out << (c.passed() ? "PASS " : "FAIL ") << c.name << ' ' << c.checked << " checked, " << c.failures
            << " failed";
        if (c.counterexample) out << ", e.g. " << text_word(*c.counterexample);
        out << '\n';
      }
      break;
    case Format::csv:
      out << "axiom,checked,failures,counterexample\n";
      for (const AxiomCheck& c : rep.axioms) {
        out << c.name << ',' << c.checked << ',' << c.failures << ','
            << (c.counterexample ? c.counterexample->to_string() : "") << '\n';
      }
      break;
    case Format::json: {
      json arr = json::array();
      for (const AxiomCheck& c : rep.axioms) {
        json j{{"name", c.name}, {"checked", c.checked}, {"failures", c.failures}};
        if (c.counterexample) j["counterexample"] = c.counterexample->to_string();
        arr.push_back(j);
      }
      print_json(out, json{{"alphabet", alphabet_json(a)}, {"depth", rep.depth}, {"passed", rep.passed()}, {"axioms", arr}});
      break;
    }
  }
  return exit_ok;
}

// ---- squares / palindromes --------------------------------------------------

struct SquaresArgs {
  std::size_t max_iter = SquareCaps{}.max_iterations;
  std::size_t max_len = SquareCaps{}.max_len;
  std::size_t max_live = SquareCaps{}.max_live;
};

int cmd_squares(const Context& ctx, const SquaresArgs& args, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  SquareCaps caps;
  caps.max_iterations = args.max_iter;
  caps.max_len = args.max_len;
  caps.max_live = args.max_live;
  caps.max_seconds = ctx.g.max_seconds;
  caps.threads = ctx.g.threads;
  const SquareInventory inv = find_squares(a, caps);
  auto count = [](const std::map<std::size_t, std::vector<Word>>& m, std::size_t n) {
    auto it = m.find(n);
    return it == m.end() ? std::size_t{0} : it->second.size();
  };
  auto row_complete = [&](std::size_t n) { return inv.complete || n <= inv.complete_up_to; };
  switch (ctx.format()) {
    case Format::text:
      out << "length squares cubes fourth moor\n";
      for (const auto& [n, ws] : inv.squares) {
        out << n << ' ' << ws.size() << ' ' << count(inv.cubes, n) << ' ' << count(inv.fourth_powers, n) << ' '
            << to_string(inv.moor.at(n)) << (row_complete(n) ? "" : " (incomplete)") << '\n';
      }
      out << "total " << inv.total_squares() << ' ' << inv.total_cubes() << ' ' << inv.total_fourth_powers() << '\n';
      out << (inv.complete ? "complete" : "incomplete") << " after " << inv.iterations << " iterations";
      if (!inv.complete) out << ", all squares of length <= " << inv.complete_up_to << " listed";
      out << '\n';
      break;
    case Format::csv:
      out << "length,n_squares,n_cubes,n_fourth,max_moor_num,max_moor_den,complete\n";
      for (const auto& [n, ws] : inv.squares) {
        const Rational& m = inv.moor.at(n);
        out << n << ',' << ws.size() << ',' << count(inv.cubes, n) << ',' << count(inv.fourth_powers, n) << ','
            << numerator(m) << ',' << denominator(m) << ',' << (row_complete(n) ? 1 : 0) << '\n';
      }
      break;
    case Format::json: {
      json rows = json::array();
      for (const auto& [n, ws] : inv.squares) {
        json words = json::array();
        for (const Word& w : ws) words.push_back(w.to_string());
        rows.push_back(json{{"length", n},
                            {"squares", ws.size()},
                            {"cubes", count(inv.cubes, n)},
                            {"fourth_powers", count(inv.fourth_powers, n)},
                            {"max_moor", rational_json(inv.moor.at(n))},
                            {"complete", row_complete(n)},
                            {"words", words}});
      }
      print_json(out, json{{"alphabet", alphabet_json(a)},
                           {"complete", inv.complete},
                           {"complete_up_to", inv.complete_up_to},
                           {"iterations", inv.iterations},
                           {"total_squares", inv.total_squares()},
                           {"total_cubes", inv.total_cubes()},
                           {"total_fourth_powers", inv.total_fourth_powers()},
                           {"lengths", rows}});
      break;
    }
  }
  return inv.complete ? exit_ok : exit_incomplete;
}

int cmd_palindromes(const Context& ctx, std::size_t n_max, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const PalindromeTable t = enumerate_palindromes(a, n_max);
  switch (ctx.format()) {
    case Format::text:
      for (const auto& [n, ws] : t.per_length) {
        out << n << ' ' << ws.size() << ':';
        for (const Word& w : ws) out << ' ' << w.to_string();
        out << '\n';
      }
      if (!t.complete) out << "incomplete\n";
      break;
    case Format::csv:
      out << "length,count,words\n";
      for (const auto& [n, ws] : t.per_length) {
        out << n << ',' << ws.size();
        for (const Word& w : ws) out << ',' << w.to_string();
        out << '\n';
      }
      if (!t.complete) out << "# incomplete\n";
      break;
    case Format::json: {
      json rows = json::array();
      for (const auto& [n, ws] : t.per_length) {
        json words = json::array();
        for (const Word& w : ws) words.push_back(w.to_string());
        rows.push_back(json{{"length", n}, {"count", ws.size()}, {"words", words}});
      }
      print_json(out, json{{"alphabet", alphabet_json(a)}, {"complete", t.complete}, {"lengths", rows}});
      break;
    }
  }
  return t.complete ? exit_ok : exit_incomplete;
}

// ---- graph / bound ------------------------------------------------------------

struct GraphArgs {
  std::size_t depth = 1;
  std::string dump;
  std::size_t prefix_len = 10000;
};

int cmd_graph_build(const Context& ctx, const GraphArgs& args, std::ostream& out) {
  ctx.require({Format::text, Format::json}, "graph build");
  const Alphabet a = ctx.alphabet();
  const FrequencyGraph g = build_graph(a, args.depth, !args.dump.empty());
  if (args.dump == "-") {
    dump_graph(g, out);
    return exit_ok;
  }
  if (!args.dump.empty()) {
    std::ofstream f(args.dump);
    if (!f) throw DomainError("cannot write " + args.dump);
    dump_graph(g, f);
  }
  if (ctx.format() == Format::json) {
    print_json(out, json{{"alphabet", alphabet_json(a)},
                         {"depth", g.depth()},
                         {"vertices", g.vertex_count()},
                         {"edges", g.edges().size()},
                         {"distinct_labels", g.labels().size()}});
  } else {
    out << "depth " << g.depth() << "\nvertices " << g.vertex_count() << "\nedges " << g.edges().size() << '\n';
    if (g.has_labels()) out << "distinct labels " << g.labels().size() << '\n';
  }
  return exit_ok;
}

int cmd_graph_validate(const Context& ctx, const GraphArgs& args, std::ostream& out) {
  ctx.require({Format::text, Format::json}, "graph validate");
  const Alphabet a = ctx.alphabet();
  const FrequencyGraph g = build_graph(a, args.depth);
  const Word prefix = generate(a, ctx.seed(a), args.prefix_len);
  const ValidationReport rep = validate_graph_against_sequence(g, prefix);
  if (ctx.format() == Format::json) {
    json mism = json::array();
    for (const GraphMismatch& m : rep.mismatches) {
      mism.push_back(json{{"from_column", m.from_column},
                          {"to_column", m.to_column},
                          {"from_type", m.from_type.to_string()},
                          {"to_type", m.to_type.to_string()},
                          {"label", m.label.to_string()}});
    }
    print_json(out, json{{"alphabet", alphabet_json(a)},
                         {"depth", args.depth},
                         {"prefix_length", prefix.size()},
                         {"special_positions", rep.special_count},
                         {"transitions", rep.transitions},
                         {"mismatch_count", rep.mismatch_count},
                         {"passed", rep.passed()},
                         {"mismatches", mism}});
    return exit_ok;
  }
  out << (rep.passed() ? "PASS" : "FAIL") << ": " << rep.transitions << " transitions between "
      << rep.special_count << " special positions, " << rep.mismatch_count << " mismatches\n";
  for (const GraphMismatch& m : rep.mismatches) {
    out << "  columns " << m.from_column << " -> " << m.to_column << ": " << m.from_type.to_string() << " -> "
        << m.to_type.to_string() << " label " << m.label.to_string() << '\n';
  }
  return exit_ok;
}

int cmd_bound(const Context& ctx, std::size_t depth, std::ostream& out) {
  const Alphabet a = ctx.alphabet();
  const BoundResult b = frequency_bound(a, depth, ctx.caps());
  switch (ctx.format()) {
    case Format::text:
      out << to_string(b.bound) << '\n';
      break;
    case Format::csv:
      out << "depth,num,den\n" << depth << ',' << numerator(b.bound) << ',' << denominator(b.bound) << '\n';
      break;
    case Format::json: {
      print_json(out, json{{"alphabet", alphabet_json(a)},
                           {"depth", b.depth},
                           {"bound", rational_json(b.bound)},
                           {"decimal", b.bound.convert_to<double>()},
                           {"witness_cycle_edges", b.witness_cycle.size()},
                           {"witness_ratio", rational_json(b.witness_ratio)},
                           {"probes", b.probes}});
      break;
    }
  }
  return exit_ok;
}

// ---- reproduce ----------------------------------------------------------------

struct ReproduceArgs {
  std::string target;
  bool extended = false;
  std::string output;
};

int cmd_reproduce(const Context& ctx, const ReproduceArgs& args, std::ostream& out, std::ostream& err) {
  ReproduceOptions opts;
  opts.extended = args.extended;
  opts.caps = ctx.caps();
  opts.loglog_path = args.output;
  const ReproduceReport rep = reproduce(args.target, opts);
  switch (ctx.format()) {
    case Format::text:
      for (const CellResult& c : rep.cells) {
        out << to_string(c.status) << ' ' << c.cell.key << " expected " << c.cell.expected << " got " << c.got
            << " [" << c.cell.source << "]\n";
      }
      out << rep.target << ": " << rep.count(CellStatus::pass) << '/' << rep.cells.size() << " cells match";
      if (rep.count(CellStatus::incomplete)) out << ", " << rep.count(CellStatus::incomplete) << " incomplete";
      if (rep.skipped) out << ", " << rep.skipped << " extended cells skipped";
      out << '\n';
      break;
    case Format::csv:
      out << "target,key,expected,got,status\n";
      for (const CellResult& c : rep.cells) {
        out << rep.target << ',' << c.cell.key << ',' << c.cell.expected << ',' << c.got << ','
            << to_string(c.status) << '\n';
      }
      break;
    case Format::json: {
      json cells = json::array();
      for (const CellResult& c : rep.cells) {
        cells.push_back(json{{"key", c.cell.key},
                             {"expected", c.cell.expected},
                             {"got", c.got},
                             {"status", to_string(c.status)},
                             {"source", c.cell.source}});
      }
      print_json(out, json{{"target", rep.target},
                           {"passed", rep.count(CellStatus::pass)},
                           {"failed", rep.count(CellStatus::fail)},
                           {"incomplete", rep.count(CellStatus::incomplete)},
                           {"skipped", rep.skipped},
                           {"cells", cells}});
      break;
    }
  }
  err << rep.target << " took " << std::fixed << std::setprecision(2) << rep.seconds << " s\n";
  return rep.count(CellStatus::incomplete) ? exit_incomplete : exit_ok;
}

// ---- dispatch ----------------------------------------------------------------

struct Command {
  CLI::App* app;
  std::function<int(const Context&, std::ostream&)> run;
  /// Parameter part of the cache key; commands without one are not cached.
  std::function<std::string()> cache_params;
};

std::string cache_key(const std::string& name, const Context& ctx, const std::string& params) {
  std::string alphabet = ctx.g.alphabet.empty() ? "-" : ctx.alphabet().to_string();
  return std::string("kola ") + KOLA_VERSION + "|" + name + "|" + alphabet + "|" + params + "|format=" + ctx.g.format;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Kolakoski sequences: smooth words, measure, squares, palindromes and frequency bounds",
               "kola"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", KOLA_VERSION);

  Globals g;
  app.add_option("--alphabet", g.alphabet, "Alphabet as r,s")->envname("KOLA_ALPHABET");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->envname("KOLA_FORMAT");
  app.add_option("--cache-dir", g.cache_dir, "Directory for cached results")->envname("KOLA_CACHE_DIR");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->envname("KOLA_THREADS");
  app.add_option("--max-seconds", g.max_seconds, "Time cap for long searches (0: none)")
      ->check(CLI::NonNegativeNumber)
      ->envname("KOLA_MAX_SECONDS");
  app.add_option("--seed-letter", g.seed_letter, "First letter of generated sequences")
      ->check(CLI::PositiveNumber)
      ->envname("KOLA_SEED_LETTER");

  std::vector<Command> commands;
  auto param = [](const char* name, const auto& v) {
    std::ostringstream o;
    o << name << '=' << v << ';';
    return o.str();
  };

  GenArgs gen;
  {
    CLI::App* sub = app.add_subcommand("gen", "Prefix of the Kolakoski sequence");
    sub->add_option("--start", gen.start, "First letter (default: --seed-letter, else r)");
    sub->add_option("--length", gen.length, "Number of letters")->required();
    sub->add_option("--method", gen.method, "Generator")->check(CLI::IsMember({"feedback", "subst"}));
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_gen(c, gen, o); }, nullptr});
  }
  WordArgs word_args;
  {
    CLI::App* sub = app.add_subcommand("derive", "Derivative D(w), or the whole chain with --chain");
    sub->add_option("--word", word_args.word, "Word, e.g. 2255 or 10,439")->required();
    sub->add_flag("--chain", word_args.chain, "Derive until ε or failure");
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_derive(c, word_args, o); }, nullptr});
    sub = app.add_subcommand("primitives", "All v with D(v) = w");
    sub->add_option("--word", word_args.word, "Smooth word")->required();
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_primitives(c, word_args, o); }, nullptr});
    sub = app.add_subcommand("smooth", "Smoothness and degree of a word");
    sub->add_option("--word", word_args.word, "Word")->required();
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_smooth(c, word_args, o); }, nullptr});
  }
  ComplexityArgs cx;
  {
    CLI::App* sub = app.add_subcommand("complexity", "Number of smooth words of each length");
    sub->add_option("--max", cx.max, "Largest length")->required()->check(CLI::PositiveNumber);
    sub->add_option("--emit-loglog", cx.loglog, "Also write (ln n, ln gamma) pairs to this CSV file");
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_complexity(c, cx, o); },
                        [&] { return param("max", cx.max); }});
  }
  std::size_t minr_len = 0;
  {
    CLI::App* sub = app.add_subcommand("minr", "Least number of r's in a smooth word of the given length");
    sub->add_option("--length", minr_len, "Word length")->required()->check(CLI::PositiveNumber);
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_minr(c, minr_len, o); },
                        [&] { return param("length", minr_len); }});
  }
  std::size_t max_w = 0;
  {
    CLI::App* sub = app.add_subcommand("gaps", "Longest v with wvw smooth and w not in v, per |w|");
    sub->add_option("--max-w", max_w, "Largest |w|")->required()->check(CLI::PositiveNumber);
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_gaps(c, max_w, o); },
                        [&] { return param("max-w", max_w); }});
  }
  std::string eval_word;
  std::size_t verify_depth = 10;
  {
    CLI::App* sub = app.add_subcommand("measure", "Kolakoski measure");
    sub->require_subcommand(1);
    CLI::App* solve = sub->add_subcommand("solve", "Measure of every fundamental word");
    commands.push_back({solve, [&](const Context& c, std::ostream& o) { return cmd_measure_solve(c, o); },
                        [] { return std::string(); }});
    CLI::App* eval = sub->add_subcommand("eval", "Measure of the cylinder [w]");
    eval->add_option("--word", eval_word, "Word")->required();
    commands.push_back({eval, [&](const Context& c, std::ostream& o) { return cmd_measure_eval(c, eval_word, o); },
                        nullptr});
    CLI::App* verify = sub->add_subcommand("verify", "Check the measure axioms on all words up to a length");
    verify->add_option("--depth", verify_depth, "Largest word length")->check(CLI::NonNegativeNumber);
    commands.push_back({verify, [&](const Context& c, std::ostream& o) { return cmd_measure_verify(c, verify_depth, o); },
                        [&] { return param("depth", verify_depth); }});
  }
  SquaresArgs sq;
  {
    CLI::App* sub = app.add_subcommand("squares", "All smooth w with ww smooth");
    sub->add_option("--max-iter", sq.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-len", sq.max_len, "Longest live word")->check(CLI::PositiveNumber);
    sub->add_option("--max-live", sq.max_live, "Most live words per iteration")->check(CLI::PositiveNumber);
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_squares(c, sq, o); },
                        [&] { return param("max-iter", sq.max_iter) + param("max-len", sq.max_len) + param("max-live", sq.max_live); }});
  }
  std::size_t pal_max = 0;
  {
    CLI::App* sub = app.add_subcommand("palindromes", "Smooth palindromes by length");
    sub->add_option("--max", pal_max, "Largest length")->required()->check(CLI::PositiveNumber);
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_palindromes(c, pal_max, o); },
                        [&] { return param("max", pal_max); }});
  }
  GraphArgs ga;
  {
    CLI::App* sub = app.add_subcommand("graph", "The graphs G_d of d-special types");
    sub->require_subcommand(1);
    CLI::App* build = sub->add_subcommand("build", "Build G_d");
    build->add_option("--depth", ga.depth, "d")->required()->check(CLI::Range(1, 30));
    build->add_option("--dump", ga.dump, "Write the edge list to this file ('-' for stdout)");
    commands.push_back({build, [&](const Context& c, std::ostream& o) { return cmd_graph_build(c, ga, o); }, nullptr});
    CLI::App* validate = sub->add_subcommand("validate", "Check G_d against a generated prefix");
    validate->add_option("--depth", ga.depth, "d")->required()->check(CLI::Range(1, 30));
    validate->add_option("--prefix-len", ga.prefix_len, "Prefix length")->check(CLI::PositiveNumber);
    commands.push_back({validate, [&](const Context& c, std::ostream& o) { return cmd_graph_validate(c, ga, o); },
                        [&] { return param("depth", ga.depth) + param("prefix-len", ga.prefix_len) + param("seed", g.seed_letter); }});
  }
  std::size_t bound_depth = 6;
  {
    CLI::App* sub = app.add_subcommand("bound", "Upper bound on the frequency of r from G_d");
    sub->add_option("--depth", bound_depth, "d")->required()->check(CLI::Range(1, 30));
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_bound(c, bound_depth, o); },
                        [&] { return param("depth", bound_depth); }});
  }
  ReproduceArgs rp;
  {
    CLI::App* sub = app.add_subcommand("reproduce", "Recompute a published table and compare cell by cell");
    sub->add_option("target", rp.target, "Table id")->required()->check(CLI::IsMember(reproduce_targets()));
    sub->add_flag("--extended", rp.extended, "Include the long-running cells")->envname("KOLA_EXTENDED");
    sub->add_option("--output", rp.output, "fig1-data: write the (ln n, ln gamma) table here");
    commands.push_back({sub, [&](const Context& c, std::ostream& o) { return cmd_reproduce(c, rp, o, err); },
                        [&] { return param("target", rp.target) + param("extended", rp.extended); }});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  const Command* chosen = nullptr;
  for (const Command& c : commands)
    if (c.app->parsed()) chosen = &c;
  if (!chosen) {
    err << "kola: no command given\n";
    return exit_invalid;
  }
  std::string name;
  for (const CLI::App* p = chosen->app; p && p != &app; p = p->get_parent()) name = p->get_name() + (name.empty() ? "" : " " + name);

  const Context ctx{g};
  try {
    // fig1-data writes a side file, so its report alone is not the artifact
    const bool cacheable = chosen->cache_params && !(name == "reproduce" && !rp.output.empty()) &&
                           !(name == "complexity" && !cx.loglog.empty());
    const ResultCache cache(cacheable ? std::filesystem::path(g.cache_dir) : std::filesystem::path());
    std::string key;
    if (cache.enabled()) {
      key = cache_key(name, ctx, chosen->cache_params());
      if (std::optional<std::string> hit = cache.load(key)) {
        out << *hit;
        return exit_ok;
      }
    }
    std::ostringstream buffer;
    const int code = chosen->run(ctx, buffer);
    out << buffer.str();
    if (code == exit_ok && cache.enabled()) cache.store(key, buffer.str());
    return code;
  } catch (const CapExceeded& e) {
    out << "# incomplete: " << e.what() << " (progress " << e.progress() << ")\n";
    err << "kola " << name << ": resource cap reached: " << e.what() << '\n';
    return exit_incomplete;
  } catch (const DomainError& e) {
    err << "kola " << name << ": " << e.what() << '\n';
    return exit_invalid;
  } catch (const UnsupportedParity& e) {
    err << "kola " << name << ": " << e.what() << '\n';
    return exit_invalid;
  } catch (const UsageError& e) {
    err << "kola " << name << ": " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    err << "kola " << name << ": invalid argument: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::exception& e) {
    err << "kola " << name << ": error: " << e.what() << '\n';
    return exit_error;
  }
}

}  // namespace kola::cli
