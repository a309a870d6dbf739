#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kola/budget.hpp"
#include "kola/rational.hpp"
#include "kola/word.hpp"

namespace kola {

/// Row 1 is the input word; row k+1 holds, at the column of the last letter
/// of each completed run of row k, the length of that run. Columns are
/// 0-based.
struct SpecialArray {
  std::size_t depth = 0;
  std::vector<std::vector<std::pair<std::size_t, Letter>>> rows;
};

/// Throws DomainError if the prefix is not smooth or d == 0.
SpecialArray build_special_array(const Word& prefix, const Alphabet& a, std::size_t d);

struct SpecialPosition {
  std::size_t column;  // 0-based
  Word type;           // rows 1..d, top to bottom
};

/// Columns with an entry in every row, in increasing order.
std::vector<SpecialPosition> special_positions(const SpecialArray& arr);

/// G_d on the 2^d types. Vertex i is the type whose k-th letter (top to
/// bottom) is the large letter iff bit d-1-k of i is set.
class FrequencyGraph {
 public:
  struct Edge {
    std::uint32_t src;
    std::uint32_t dst;
    std::uint64_t length;       // |label|
    std::uint64_t small_count;  // |label|_r
    std::uint32_t label;        // index into labels(), or no_label
  };
  static constexpr std::uint32_t no_label = 0xffffffffu;

  FrequencyGraph(Alphabet a, std::size_t d) : alphabet_(a), depth_(d) {}

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t depth() const noexcept { return depth_; }
  std::size_t vertex_count() const noexcept { return std::size_t{1} << depth_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Interned edge labels; empty for graphs built without labels.
  const std::vector<Word>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return materialized_; }

  Word type_of(std::uint32_t v) const;
  std::uint32_t vertex_of(const Word& type) const;
  Word label_of(const Edge& e) const;

  /// Edges grouped by source: out_edges(v) indexes into edges().
  std::vector<std::uint32_t> out_edges(std::uint32_t v) const;

  void add_edge(std::uint32_t src, std::uint32_t dst, const Word& label);
  void add_edge_stats(std::uint32_t src, std::uint32_t dst, std::uint64_t length, std::uint64_t small_count);
  void set_materialized(bool on) { materialized_ = on; }
  /// Rebuilds the per-source index after edges were added.
  void index();

 private:
  Alphabet alphabet_;
  std::size_t depth_;
  bool materialized_ = true;
  std::vector<Edge> edges_;
  std::vector<Word> labels_;
  std::unordered_map<Word, std::uint32_t, WordHash> intern_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> by_source_;

  std::uint32_t intern(const Word& label);
};

/// r→r (r), r→s (s), s→s (s), s→r (r).
FrequencyGraph build_g1(const Alphabet& a);

/// One lifting step: for every vertex A ending in letter c, every k in
/// {r, s} and every path of k edges from A whose vertices after A all end in
/// the other letter, add edges Ar → Bk and As → Bk (B the last vertex of
/// the path) labelled with the concatenated path labels. With
/// keep_labels = false only label lengths and r-counts are kept.
FrequencyGraph lift(const FrequencyGraph& g, bool keep_labels = true);

/// build_g1 lifted d-1 times.
FrequencyGraph build_graph(const Alphabet& a, std::size_t d, bool keep_labels = true);

struct GraphMismatch {
  std::size_t from_column;
  std::size_t to_column;
  Word from_type;
  Word to_type;
  Word label;
};

struct ValidationReport {
  std::size_t special_count = 0;
  std::size_t transitions = 0;
  std::vector<GraphMismatch> mismatches;  // at most the first 20

  std::size_t mismatch_count = 0;
  bool passed() const noexcept { return mismatch_count == 0 && transitions > 0; }
};

/// For consecutive d-special columns i < j of the prefix, checks that the
/// graph has an edge type(i) → type(j) labelled with letters i+1..j.
ValidationReport validate_graph_against_sequence(const FrequencyGraph& g, const Word& prefix);

struct BoundResult {
  std::size_t depth = 0;
  Rational bound;
  /// Edge indices of a cycle attaining the bound, in order.
  std::vector<std::uint32_t> witness_cycle;
  Rational witness_ratio;
  std::size_t probes = 0;
};

/// Largest Σ|label|_r / Σ|label| over the directed cycles of g, found by
/// negative-cycle detection for the cost x·|w| − |w|_r with x raised to the
/// ratio of each cycle found until none is negative.
BoundResult frequency_bound(const FrequencyGraph& g, Budget* budget = nullptr);

/// frequency_bound(build_graph(a, d, false)).
BoundResult frequency_bound(const Alphabet& a, std::size_t d, const Caps& caps = {});

/// "d r s" header, then "src dst label" per edge.
void dump_graph(const FrequencyGraph& g, std::ostream& out);

}  // namespace kola
