#include "kola/chvatal.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "kola/calculus.hpp"
#include "kola/error.hpp"

namespace kola {

namespace {

__extension__ typedef __int128 Wide;

std::vector<std::pair<std::size_t, Letter>> next_row(const std::vector<std::pair<std::size_t, Letter>>& row) {
  std::vector<std::pair<std::size_t, Letter>> out;
  std::size_t i = 0;
  while (i < row.size()) {
    std::size_t j = i;
    while (j + 1 < row.size() && row[j + 1].second == row[i].second) ++j;
    if (j + 1 >= row.size()) break;  // trailing run may continue
    out.emplace_back(row[j].first, static_cast<Letter>(j - i + 1));
    i = j + 1;
  }
  return out;
}

}  // namespace

SpecialArray build_special_array(const Word& prefix, const Alphabet& a, std::size_t d) {
  if (d == 0) throw DomainError("special array depth must be positive");
  if (!is_smooth(prefix, a)) throw DomainError("special array needs a smooth prefix");
  SpecialArray arr;
  arr.depth = d;
  std::vector<std::pair<std::size_t, Letter>> row;
  row.reserve(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) row.emplace_back(i, prefix[i]);
  arr.rows.push_back(std::move(row));
  while (arr.rows.size() < d) arr.rows.push_back(next_row(arr.rows.back()));
  return arr;
}

std::vector<SpecialPosition> special_positions(const SpecialArray& arr) {
  std::vector<SpecialPosition> out;
  if (arr.rows.empty()) return out;
  // walk the sparse rows in step; a column is special when all agree
  std::vector<std::size_t> cursor(arr.rows.size(), 0);
  for (const auto& [col, top] : arr.rows.back()) {
    std::vector<Letter> type;
    bool all = true;
    for (std::size_t k = 0; k < arr.rows.size(); ++k) {
      const auto& row = arr.rows[k];
      std::size_t& c = cursor[k];
      while (c < row.size() && row[c].first < col) ++c;
      if (c >= row.size() || row[c].first != col) {
        all = false;
        break;
      }
      type.push_back(row[c].second);
    }
    if (all) out.push_back(SpecialPosition{col, Word(std::move(type))});
  }
  return out;
}

Word FrequencyGraph::type_of(std::uint32_t v) const {
  std::vector<Letter> t(depth_);
  for (std::size_t k = 0; k < depth_; ++k) {
    t[k] = ((v >> (depth_ - 1 - k)) & 1u) ? alphabet_.large() : alphabet_.small();
  }
  return Word(std::move(t));
}

std::uint32_t FrequencyGraph::vertex_of(const Word& type) const {
  if (type.size() != depth_) throw DomainError("type '" + type.to_string() + "' has the wrong length");
  std::uint32_t v = 0;
  for (Letter x : type) {
    if (!alphabet_.contains(x)) throw DomainError("type '" + type.to_string() + "' is not over the alphabet");
    v = (v << 1) | (x == alphabet_.large() ? 1u : 0u);
  }
  return v;
}

Word FrequencyGraph::label_of(const Edge& e) const {
  if (e.label == no_label) throw std::logic_error("graph was built without labels");
  return labels_[e.label];
}

std::vector<std::uint32_t> FrequencyGraph::out_edges(std::uint32_t v) const {
  if (offsets_.size() != vertex_count() + 1) throw std::logic_error("graph index is stale");
  return std::vector<std::uint32_t>(by_source_.begin() + offsets_[v], by_source_.begin() + offsets_[v + 1]);
}

std::uint32_t FrequencyGraph::intern(const Word& label) {
  auto [it, inserted] = intern_.try_emplace(label, static_cast<std::uint32_t>(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

void FrequencyGraph::add_edge(std::uint32_t src, std::uint32_t dst, const Word& label) {
  if (label.empty()) throw std::logic_error("edge labels must be nonempty");
  edges_.push_back(Edge{src, dst, label.size(), label.count(alphabet_.small()), intern(label)});
}

void FrequencyGraph::add_edge_stats(std::uint32_t src, std::uint32_t dst, std::uint64_t length,
                                    std::uint64_t small_count) {
  materialized_ = false;
  edges_.push_back(Edge{src, dst, length, small_count, no_label});
}

void FrequencyGraph::index() {
  const std::size_t n = vertex_count();
  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) ++offsets_[e.src + 1];
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
  by_source_.assign(edges_.size(), 0);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) by_source_[fill[edges_[i].src]++] = i;
}

FrequencyGraph build_g1(const Alphabet& a) {
  FrequencyGraph g(a, 1);
  const std::uint32_t r = 0, s = 1;
  g.add_edge(r, r, Word{a.small()});
  g.add_edge(r, s, Word{a.large()});
  g.add_edge(s, s, Word{a.large()});
  g.add_edge(s, r, Word{a.small()});
  g.index();
  return g;
}

FrequencyGraph lift(const FrequencyGraph& g, bool keep_labels) {
  if (keep_labels && !g.has_labels()) throw std::logic_error("cannot lift labels of an unlabelled graph");
  if (g.depth() >= 31) throw DomainError("graph depth too large");
  const Alphabet& a = g.alphabet();
  const std::size_t n = g.vertex_count();
  FrequencyGraph h(a, g.depth() + 1);
  h.set_materialized(keep_labels);

  struct Path {
    std::uint32_t at;
    std::uint64_t length;
    std::uint64_t small_count;
    std::vector<std::uint32_t> edges;
  };
  std::vector<std::vector<std::uint32_t>> out(n);
  for (std::uint32_t i = 0; i < g.edges().size(); ++i) out[g.edges()[i].src].push_back(i);

  for (std::uint32_t v = 0; v < n; ++v) {
    const std::uint32_t last_bit = v & 1u;  // deepest letter of the type
    const std::uint32_t other_bit = last_bit ^ 1u;
    for (Letter k : {a.small(), a.large()}) {
      std::vector<Path> paths{Path{v, 0, 0, {}}};
      for (Letter step = 0; step < k; ++step) {
        std::vector<Path> grown;
        for (const Path& p : paths) {
          for (std::uint32_t ei : out[p.at]) {
            const auto& e = g.edges()[ei];
            if ((e.dst & 1u) != other_bit) continue;
            Path q{e.dst, p.length + e.length, p.small_count + e.small_count, p.edges};
            q.edges.push_back(ei);
            grown.push_back(std::move(q));
          }
        }
        paths = std::move(grown);
      }
      const std::uint32_t k_bit = k == a.large() ? 1u : 0u;
      for (const Path& p : paths) {
        const std::uint32_t dst = (p.at << 1) | k_bit;
        Word label;
        if (keep_labels) {
          std::vector<Letter> letters;
          letters.reserve(p.length);
          for (std::uint32_t ei : p.edges) {
            const Word& part = g.labels()[g.edges()[ei].label];
            letters.insert(letters.end(), part.begin(), part.end());
          }
          label = Word(std::move(letters));
        }
        for (std::uint32_t x_bit : {0u, 1u}) {
          const std::uint32_t src = (v << 1) | x_bit;
          if (keep_labels) {
            h.add_edge(src, dst, label);
          } else {
            h.add_edge_stats(src, dst, p.length, p.small_count);
          }
        }
      }
    }
  }
  h.index();
  return h;
}

FrequencyGraph build_graph(const Alphabet& a, std::size_t d, bool keep_labels) {
  if (d == 0) throw DomainError("graph depth must be positive");
  FrequencyGraph g = build_g1(a);
  for (std::size_t k = 1; k < d; ++k) g = lift(g, keep_labels);
  return g;
}

ValidationReport validate_graph_against_sequence(const FrequencyGraph& g, const Word& prefix) {
  ValidationReport rep;
  const SpecialArray arr = build_special_array(prefix, g.alphabet(), g.depth());
  const std::vector<SpecialPosition> pos = special_positions(arr);
  rep.special_count = pos.size();
  for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
    const SpecialPosition& from = pos[i];
    const SpecialPosition& to = pos[i + 1];
    const Word label = prefix.substr(from.column + 1, to.column - from.column);
    const std::uint32_t u = g.vertex_of(from.type);
    const std::uint32_t v = g.vertex_of(to.type);
    bool found = false;
    for (std::uint32_t ei : g.out_edges(u)) {
      const auto& e = g.edges()[ei];
      if (e.dst == v && g.label_of(e) == label) {
        found = true;
        break;
      }
    }
    ++rep.transitions;
    if (!found) {
      ++rep.mismatch_count;
      if (rep.mismatches.size() < 20) rep.mismatches.push_back({from.column, to.column, from.type, to.type, label});
    }
  }
  return rep;
}

namespace {

// A negative cycle for the cost p·|w| − q·|w|_r, as edge indices, or empty.
std::vector<std::uint32_t> find_negative_cycle(const FrequencyGraph& g, const BigInt& p, const BigInt& q,
                                               Budget* budget) {
  const std::size_t n = g.vertex_count();
  const auto& edges = g.edges();
  const Wide wp = static_cast<Wide>(static_cast<long long>(p));
  const Wide wq = static_cast<Wide>(static_cast<long long>(q));
  std::vector<Wide> cost(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    cost[i] = wp * static_cast<Wide>(edges[i].length) - wq * static_cast<Wide>(edges[i].small_count);
  }
  std::vector<Wide> dist(n, 0);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint32_t> mark(n, 0);

  auto parent_cycle = [&](std::uint32_t walk_base) -> std::vector<std::uint32_t> {
    // mark[] holds walk_base + start for vertices seen in the current pass
    for (std::uint32_t start = 0; start < n; ++start) {
      if (mark[start] >= walk_base) continue;
      std::uint32_t v = start;
      const std::uint32_t id = walk_base + start;
      while (true) {
        if (mark[v] >= walk_base) {
          if (mark[v] != id) break;
          std::vector<std::uint32_t> cycle;
          std::uint32_t x = v;
          do {
            const auto e = static_cast<std::uint32_t>(parent[x]);
            cycle.push_back(e);
            x = edges[e].src;
          } while (x != v);
          std::reverse(cycle.begin(), cycle.end());
          return cycle;
        }
        mark[v] = id;
        if (parent[v] < 0) break;
        v = edges[static_cast<std::size_t>(parent[v])].src;
      }
    }
    return {};
  };

  std::uint32_t walk_base = 1;
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      const Wide d = dist[e.src] + cost[i];
      if (d < dist[e.dst]) {
        dist[e.dst] = d;
        parent[e.dst] = static_cast<std::int64_t>(i);
        changed = true;
      }
    }
    if (budget) budget->charge(edges.size());
    if (!changed) return {};
    if (walk_base > 0xffffffffu - n) {
      std::fill(mark.begin(), mark.end(), 0);
      walk_base = 1;
    }
    auto cycle = parent_cycle(walk_base);
    walk_base += static_cast<std::uint32_t>(n);
    if (!cycle.empty()) {
      Wide total = 0;
      for (std::uint32_t e : cycle) total += cost[e];
      if (total < 0) return cycle;
    }
  }
  throw std::logic_error("Bellman-Ford did not settle");
}

}  // namespace

BoundResult frequency_bound(const FrequencyGraph& g, Budget* budget) {
  BoundResult res;
  res.depth = g.depth();
  Rational x = 0;
  std::vector<std::uint32_t> best;
  while (true) {
    ++res.probes;
    std::vector<std::uint32_t> cycle = find_negative_cycle(g, numerator(x), denominator(x), budget);
    if (cycle.empty()) break;
    std::uint64_t len = 0, cnt = 0;
    for (std::uint32_t e : cycle) {
      len += g.edges()[e].length;
      cnt += g.edges()[e].small_count;
    }
    Rational ratio(static_cast<long long>(cnt), static_cast<long long>(len));
    if (ratio <= x) throw std::logic_error("negative cycle did not improve the ratio");
    x = ratio;
    best = std::move(cycle);
  }
  if (best.empty()) throw std::logic_error("graph has no cycle with a small letter");
  res.bound = x;
  res.witness_ratio = x;
  res.witness_cycle = std::move(best);
  return res;
}

BoundResult frequency_bound(const Alphabet& a, std::size_t d, const Caps& caps) {
  Budget budget(caps, "frequency_bound d=" + std::to_string(d));
  FrequencyGraph g = build_graph(a, d, false);
  return frequency_bound(g, &budget);
}

void dump_graph(const FrequencyGraph& g, std::ostream& out) {
  out << g.depth() << ' ' << g.alphabet().small() << ' ' << g.alphabet().large() << '\n';
  for (const auto& e : g.edges()) {
    out << g.type_of(e.src).to_string() << ' ' << g.type_of(e.dst).to_string() << ' ';
    if (e.label == FrequencyGraph::no_label) {
      out << '-';
    } else {
      out << g.labels()[e.label].to_string();
    }
    out << '\n';
  }
}

}  // namespace kola
