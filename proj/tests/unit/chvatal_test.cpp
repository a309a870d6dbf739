#include <gtest/gtest.h>

#include <functional>
#include <set>
#include <sstream>
#include <tuple>

#include "kola/calculus.hpp"
#include "kola/chvatal.hpp"
#include "kola/error.hpp"
#include "kola/generator.hpp"
#include "support.hpp"

using namespace kola;

namespace {

using EdgeKey = std::tuple<Word, Word, Word>;

std::multiset<EdgeKey> edge_set(const FrequencyGraph& g) {
  std::multiset<EdgeKey> out;
  for (auto& e : g.edges()) out.insert({g.type_of(e.src), g.type_of(e.dst), g.label_of(e)});
  return out;
}

// best cycle ratio by walking every simple cycle
Rational brute_bound(const FrequencyGraph& g) {
  const auto& E = g.edges();
  Rational best = 0;
  const auto n = static_cast<std::uint32_t>(g.vertex_count());
  std::vector<std::vector<std::uint32_t>> out(n);
  for (std::uint32_t i = 0; i < E.size(); ++i) out[E[i].src].push_back(i);
  std::vector<bool> on_path(n, false);
  std::function<void(std::uint32_t, std::uint32_t, std::uint64_t, std::uint64_t)> walk =
      [&](std::uint32_t start, std::uint32_t v, std::uint64_t len, std::uint64_t small) {
        for (auto ei : out[v]) {
          const auto& e = E[ei];
          if (e.dst < start) continue;  // each cycle starts at its least vertex
          if (e.dst == start) {
            best = std::max(best, Rational(small + e.small_count, len + e.length));
          } else if (!on_path[e.dst]) {
            on_path[e.dst] = true;
            walk(start, e.dst, len + e.length, small + e.small_count);
            on_path[e.dst] = false;
          }
        }
      };
  for (std::uint32_t v = 0; v < n; ++v) {
    on_path[v] = true;
    walk(v, v, 0, 0);
    on_path[v] = false;
  }
  return best;
}

}  // namespace

TEST(SpecialArray, ClassicalExample) {
  Alphabet a(1, 2);
  Word z = generate(a, 1, 60);
  auto arr = build_special_array(z, a, 4);
  ASSERT_EQ(arr.rows.size(), 4u);
  using Row = std::vector<std::pair<std::size_t, Letter>>;
  auto head = [](const Row& row, std::size_t limit) {
    Row out;
    for (auto& e : row)
      if (e.first < limit) out.push_back(e);
    return out;
  };
  EXPECT_EQ(head(arr.rows[1], 20), (Row{{0, 1}, {2, 2}, {4, 2}, {5, 1}, {6, 1}, {8, 2}, {9, 1}, {11, 2}, {13, 2},
                                         {14, 1}, {16, 2}, {18, 2}, {19, 1}}));
  EXPECT_EQ(head(arr.rows[2], 19), (Row{{0, 1}, {4, 2}, {6, 2}, {8, 1}, {9, 1}, {13, 2}, {14, 1}, {18, 2}}));
  EXPECT_EQ(head(arr.rows[3], 15), (Row{{0, 1}, {6, 2}, {9, 2}, {13, 1}, {14, 1}}));

  auto sp2 = special_positions(build_special_array(z, a, 2));
  auto at = [](const std::vector<SpecialPosition>& sp, std::size_t col) {
    for (auto& p : sp)
      if (p.column == col) return p.type;
    return Word{};
  };
  EXPECT_EQ(at(sp2, 2), Word::parse("22"));
  EXPECT_EQ(at(sp2, 6), Word::parse("11"));
  EXPECT_EQ(at(special_positions(arr), 6), Word::parse("1122"));
  EXPECT_THROW(build_special_array(Word::parse("111"), a, 2), DomainError);
  EXPECT_THROW(build_special_array(z, a, 0), DomainError);
}

TEST(Graph, VertexEncoding) {
  FrequencyGraph g(Alphabet(1, 2), 3);
  EXPECT_EQ(g.type_of(0), Word::parse("111"));
  EXPECT_EQ(g.type_of(4), Word::parse("211"));
  EXPECT_EQ(g.type_of(1), Word::parse("112"));
  for (std::uint32_t v = 0; v < 8; ++v) EXPECT_EQ(g.vertex_of(g.type_of(v)), v);
}

TEST(Graph, G1) {
  for (auto [r, s] : {std::pair{1u, 2u}, {2u, 3u}}) {
    auto g = build_g1(Alphabet(r, s));
    Word R{r}, S{s};
    EXPECT_EQ(edge_set(g), (std::multiset<EdgeKey>{{R, R, R}, {R, S, S}, {S, S, S}, {S, R, R}}));
  }
}

TEST(Graph, LiftOfG1IsPrintedG2) {
  for (auto [r, s] : {std::pair{1u, 2u}, {2u, 3u}, {1u, 4u}, {3u, 4u}, {2u, 5u}}) {
    auto g2 = lift(build_g1(Alphabet(r, s)));
    ASSERT_EQ(g2.depth(), 2u);
    Word rr{r, r}, rs{r, s}, sr{s, r}, ss{s, s};
    Word s_s = power(Word{s}, s), s_r = power(Word{s}, r), r_s = power(Word{r}, s), r_r = power(Word{r}, r);
    std::multiset<EdgeKey> printed = {
        {rr, ss, s_s}, {rr, sr, s_r}, {sr, rs, r_s}, {sr, rr, r_r},
        {ss, rr, r_r}, {ss, rs, r_s}, {rs, sr, s_r}, {rs, ss, s_s},
    };
    EXPECT_EQ(edge_set(g2), printed) << r << "," << s;
  }
}

TEST(Graph, DumpFormat) {
  std::ostringstream out;
  dump_graph(lift(build_g1(Alphabet(1, 2))), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "2 1 2");
  std::size_t edges = 0;
  while (std::getline(in, line)) ++edges;
  EXPECT_EQ(edges, 8u);
}

TEST(Graph, LabelsArePathsOfSmoothWords) {
  for (auto [r, s] : {std::pair{1u, 2u}, {2u, 3u}, {1u, 4u}}) {
    Alphabet a(r, s);
    auto g = build_graph(a, 5);
    for (auto& e : g.edges()) {
      Word w = g.label_of(e);
      EXPECT_EQ(w.size(), e.length);
      EXPECT_EQ(w.count(r), e.small_count);
      EXPECT_TRUE(is_smooth(w, a)) << w.to_string();
    }
    auto stats = build_graph(a, 5, false);
    EXPECT_FALSE(stats.has_labels());
    ASSERT_EQ(stats.edges().size(), g.edges().size());
  }
}

TEST(Graph, ValidatesAgainstSequence) {
  Alphabet a12(1, 2);
  for (Letter first : {1u, 2u}) {
    Word z = generate(a12, first, 10000);
    for (std::size_t d = 1; d <= 8; ++d) {
      auto rep = validate_graph_against_sequence(build_graph(a12, d), z);
      EXPECT_TRUE(rep.passed()) << "d=" << d << " mismatches " << rep.mismatch_count;
      EXPECT_GT(rep.special_count, 1u);
    }
  }
  for (auto [r, s] : {std::pair{2u, 3u}, {1u, 4u}, {3u, 4u}}) {
    Alphabet a(r, s);
    Word z = generate(a, r, 20000);
    for (std::size_t d = 1; d <= 6; ++d)
      EXPECT_TRUE(validate_graph_against_sequence(build_graph(a, d), z).passed()) << r << "," << s << " d=" << d;
  }
}

TEST(Graph, ValidationDetectsWrongGraph) {
  Alphabet a(1, 2);
  FrequencyGraph g(a, 2);
  g.add_edge(0, 3, Word::parse("22"));
  g.index();
  auto rep = validate_graph_against_sequence(g, generate(a, 1, 1000));
  EXPECT_FALSE(rep.passed());
  EXPECT_GT(rep.mismatch_count, 0u);
  EXPECT_LE(rep.mismatches.size(), 20u);
}

TEST(Bound, MatchesSimpleCycleSearch) {
  for (auto [r, s] : {std::pair{1u, 2u}, {2u, 3u}, {1u, 4u}, {1u, 3u}}) {
    Alphabet a(r, s);
    for (std::size_t d = 1; d <= 4; ++d) {
      auto g = build_graph(a, d);
      auto b = frequency_bound(g);
      EXPECT_EQ(b.bound, brute_bound(g)) << r << "," << s << " d=" << d;
    }
  }
}

TEST(Bound, WitnessCycleAttainsBound) {
  auto g = build_graph(Alphabet(2, 3), 6, false);
  auto b = frequency_bound(g);
  ASSERT_FALSE(b.witness_cycle.empty());
  std::uint64_t len = 0, small = 0;
  for (std::size_t i = 0; i < b.witness_cycle.size(); ++i) {
    const auto& e = g.edges()[b.witness_cycle[i]];
    const auto& next = g.edges()[b.witness_cycle[(i + 1) % b.witness_cycle.size()]];
    EXPECT_EQ(e.dst, next.src);
    len += e.length;
    small += e.small_count;
  }
  EXPECT_EQ(Rational(small, len), b.bound);
  EXPECT_EQ(b.witness_ratio, b.bound);
  EXPECT_EQ(b.bound, Rational(53, 105));
}

TEST(Bound, MonotoneInDepthAndAboveHalf) {
  for (auto [r, s] : {std::pair{1u, 2u}, {2u, 3u}, {1u, 4u}}) {
    Alphabet a(r, s);
    Rational prev = 1;
    for (std::size_t d = 1; d <= 7; ++d) {
      auto b = frequency_bound(a, d);
      EXPECT_LE(b.bound, prev) << r << "," << s << " d=" << d;
      EXPECT_GE(b.bound, Rational(1, 2));
      // G1 has the loop r -> r labelled r
      if (d >= 2) { EXPECT_LT(b.bound, 1); }
      prev = b.bound;
    }
  }
  EXPECT_EQ(frequency_bound(Alphabet(1, 2), 6).bound, Rational(12, 23));
}

TEST(Bound, BudgetStopsSearch) {
  Caps caps;
  caps.max_nodes = 10;
  EXPECT_THROW(frequency_bound(Alphabet(1, 2), 6, caps), CapExceeded);
}
