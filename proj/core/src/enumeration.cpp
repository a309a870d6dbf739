#include "kola/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kola/derivative_stack.hpp"
#include "kola/error.hpp"
#include "parallel.hpp"

namespace kola {

namespace {

constexpr std::size_t split_depth = 8;
constexpr std::uint64_t charge_every = 1u << 14;

struct NoState {};

// Depth-first extension of `word` (whose derivative state is `root`) by
// single letters, visiting only smooth words. on_node(word, stack, parent,
// child) fills the child's state and says whether to descend further.
template <class State, class OnNode>
void dfs(const Alphabet& a, std::vector<Letter>& word, const DerivativeStack& root, const State& root_state,
         std::size_t max_len, OnNode&& on_node, Budget& budget) {
  if (word.size() >= max_len) return;
  struct Frame {
    DerivativeStack stack;
    State state;
    int next;
  };
  const Letter letters[2] = {a.small(), a.large()};
  std::vector<Frame> frames;
  if (max_len != std::numeric_limits<std::size_t>::max()) frames.reserve(max_len - word.size() + 1);
  frames.push_back(Frame{root, root_state, 0});
  std::uint64_t pending = 0;
  while (!frames.empty()) {
    Frame& top = frames.back();
    if (top.next == 2) {
      frames.pop_back();
      if (!frames.empty()) word.pop_back();
      continue;
    }
    const Letter x = letters[top.next++];
    DerivativeStack child = top.stack;
    if (!child.push(x) || !child.is_smooth()) continue;
    word.push_back(x);
    if (++pending == charge_every) {
      budget.charge(pending);
      pending = 0;
    }
    State child_state{};
    const bool descend = on_node(word, child, top.state, child_state);
    if (descend && word.size() < max_len) {
      frames.push_back(Frame{child, std::move(child_state), 0});
    } else {
      word.pop_back();
    }
  }
  budget.charge(pending);
}

struct Root {
  std::vector<Letter> word;
  DerivativeStack stack;
};

// Smooth words of length `depth` with their derivative states. on_shallow is
// called for every smooth word of length 1..depth on the way.
template <class OnShallow>
std::vector<Root> collect_roots(const Alphabet& a, std::size_t depth, OnShallow&& on_shallow, Budget& budget) {
  std::vector<Root> roots;
  std::vector<Letter> word;
  dfs(a, word, DerivativeStack(a), NoState{}, depth,
      [&](const std::vector<Letter>& w, const DerivativeStack& st, const NoState&, NoState&) {
        on_shallow(w, st);
        if (w.size() == depth) roots.push_back(Root{w, st});
        return true;
      },
      budget);
  return roots;
}

}  // namespace

void enumerate_smooth(const Alphabet& a, std::size_t n, const std::function<void(std::span<const Letter>)>& visit,
                      const Caps& caps) {
  Budget budget(caps, "enumerate_smooth");
  std::vector<Letter> word;
  dfs(a, word, DerivativeStack(a), NoState{}, n,
      [&](const std::vector<Letter>& w, const DerivativeStack&, const NoState&, NoState&) {
        if (w.size() == n) visit(w);
        return true;
      },
      budget);
}

std::vector<Word> smooth_words(const Alphabet& a, std::size_t n, const Caps& caps) {
  std::vector<Word> out;
  enumerate_smooth(
      a, n, [&](std::span<const Letter> w) { out.push_back(Word(std::vector<Letter>(w.begin(), w.end()))); }, caps);
  return out;
}

std::size_t ComplexityTable::first_decrease() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].second < entries[i - 1].second) return entries[i].first;
  }
  return 0;
}

ComplexityTable complexity_table(const Alphabet& a, std::size_t n_max, const Caps& caps) {
  Budget budget(caps, "complexity");
  std::vector<std::uint64_t> counts(n_max + 1, 0);
  const std::size_t split = std::min(split_depth, n_max);
  std::vector<Root> roots = collect_roots(
      a, split, [&](const std::vector<Letter>& w, const DerivativeStack&) { ++counts[w.size()]; }, budget);

  std::vector<std::vector<std::uint64_t>> partial(roots.size());
  detail::parallel_for(roots.size(), caps.threads, [&](std::size_t i) {
    std::vector<std::uint64_t> local(n_max + 1, 0);
    std::vector<Letter> word = roots[i].word;
    dfs(a, word, roots[i].stack, NoState{}, n_max,
        [&](const std::vector<Letter>& w, const DerivativeStack&, const NoState&, NoState&) {
          ++local[w.size()];
          return true;
        },
        budget);
    partial[i] = std::move(local);
  });
  for (const auto& local : partial)
    for (std::size_t n = 0; n <= n_max; ++n) counts[n] += local[n];

  ComplexityTable table{a, {}, n_max};
  for (std::size_t n = 1; n <= n_max; ++n) table.entries.emplace_back(n, counts[n]);
  return table;
}

FrequencyInterval min_letter_count(const Alphabet& a, std::size_t n, const Caps& caps) {
  if (n == 0) throw DomainError("min_letter_count: length must be positive");
  const Letter r = a.small();
  Budget budget(caps, "min_letter_count");

  // least[k] is the exact minimum for length k. The last n - k letters of a
  // smooth word are a smooth word, so a prefix with c small letters cannot
  // end below c + least[n - k].
  std::vector<std::size_t> least(n + 1, 0);
  std::vector<Letter> witness;
  for (std::size_t len = 1; len <= n; ++len) {
    bool found = false;
    for (std::size_t target = least[len - 1]; !found && target <= len; ++target) {
      std::vector<Letter> word;
      dfs(a, word, DerivativeStack(a), std::uint32_t{0}, len,
          [&](const std::vector<Letter>& w, const DerivativeStack&, const std::uint32_t& parent, std::uint32_t& child) {
            if (found) return false;
            child = parent + (w.back() == r ? 1 : 0);
            if (child + least[len - w.size()] > target) return false;
            if (w.size() == len) {
              found = true;
              least[len] = child;
              if (len == n) witness = w;
              return false;
            }
            return true;
          },
          budget);
    }
    if (!found) throw std::logic_error("min_letter_count: no smooth word of length " + std::to_string(len));
  }

  FrequencyInterval out;
  out.n = n;
  out.a = least[n];
  out.witness = Word(std::move(witness));
  out.lower = Rational(static_cast<long long>(out.a), static_cast<long long>(n));
  out.upper = Rational(static_cast<long long>(n - out.a), static_cast<long long>(n));
  return out;
}

std::vector<GapEntry> gap_table(const Alphabet& a, std::size_t w_len_max, const Caps& caps) {
  std::vector<GapEntry> table;
  for (std::size_t l = 1; l <= w_len_max; ++l) {
    Budget budget(caps, "gap_table |w|=" + std::to_string(l));
    GapEntry entry;
    entry.w_length = l;

    struct Found {
      long long best = -1;
      std::vector<Letter> word;
    };
    struct Match {
      std::uint32_t matched = 0;
      long long first = -1;  // start of the first occurrence of w after the prefix
    };

    std::vector<Root> roots;
    std::vector<Found> found;
    try {
      roots = collect_roots(a, l, [](const std::vector<Letter>&, const DerivativeStack&) {}, budget);
      found.resize(roots.size());
      detail::parallel_for(roots.size(), caps.threads, [&](std::size_t i) {
        const std::vector<Letter>& w = roots[i].word;
        std::vector<std::uint32_t> fail(l, 0);
        for (std::size_t q = 1, k = 0; q < l; ++q) {
          while (k > 0 && w[q] != w[k]) k = fail[k - 1];
          if (w[q] == w[k]) ++k;
          fail[q] = static_cast<std::uint32_t>(k);
        }
        const auto ll = static_cast<long long>(l);
        std::vector<Letter> word = w;
        dfs(a, word, roots[i].stack, Match{}, std::numeric_limits<std::size_t>::max(),
            [&](const std::vector<Letter>& x, const DerivativeStack&, const Match& parent, Match& child) {
              child = parent;
              const Letter c = x.back();
              std::uint32_t j = child.matched;
              while (j > 0 && w[j] != c) j = fail[j - 1];
              if (w[j] == c) ++j;
              const auto ylen = static_cast<long long>(x.size()) - ll;
              if (j == l) {
                const long long at = ylen - ll;
                if (child.first < 0) child.first = at;
                // v = y[0, at) avoids w exactly when no occurrence fits before `at`
                if (at < child.first + ll && at > found[i].best) {
                  found[i].best = at;
                  found[i].word = x;
                }
                j = fail[l - 1];
              }
              child.matched = j;
              return !(child.first >= 0 && ylen >= child.first + 2 * ll - 1);
            },
            budget);
      });
    } catch (const CapExceeded&) {
      entry.complete = false;
    }
    for (const Found& f : found) {
      if (f.best > entry.max_v_length) {
        entry.max_v_length = f.best;
        Word x(f.word);
        entry.witness_w = x.prefix(l);
        entry.witness_v = x.substr(l, static_cast<std::size_t>(f.best));
      }
    }
    table.push_back(std::move(entry));
    if (!table.back().complete) break;
  }
  return table;
}

ExponentFit reference_exponents(const Alphabet& a) {
  const double r = a.small(), s = a.large();
  ExponentFit fit;
  fit.delta = std::log(r + s) / std::log((r + s) / 2);
  fit.alpha = std::log(2 * s * s) / std::log(2 * r * s / (r + s));
  fit.beta = std::log(r + s) / std::log((r * r + s * s) / (r + s));
  return fit;
}

ExponentFit exponent_fit(const ComplexityTable& t, std::size_t n_min) {
  std::vector<double> xs, ys;
  for (const auto& [n, g] : t.entries) {
    if (n < n_min || g == 0) continue;
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(static_cast<double>(g)));
  }
  if (xs.size() < 10) {
    throw DomainError("exponent_fit: need at least 10 entries with n >= " + std::to_string(n_min));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ExponentFit fit = reference_exponents(t.alphabet);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points = xs.size();
  return fit;
}

}  // namespace kola
