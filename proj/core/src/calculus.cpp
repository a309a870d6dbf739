#include "kola/calculus.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "kola/error.hpp"

namespace kola {

const Word& DerivativeOutcome::result() const {
  if (!derived()) {
    throw DomainError("word is not differentiable (raw run lengths " + raw_run_lengths.to_string() + ")");
  }
  return raw_run_lengths;
}

namespace {

// Boundary adjustment of one end run; returns 0 if the run is dropped,
// otherwise the recorded length (may exceed s, which makes D undefined).
std::size_t adjust_boundary(std::size_t length, const Alphabet& a) {
  if (length <= a.small()) return 0;
  if (length <= a.large()) return a.large();
  return length;
}

DerivativeOutcome derive_unchecked(const Word& w, const Alphabet& a) {
  DerivativeOutcome out;
  if (w.empty()) return out;

  std::vector<std::size_t> lengths;
  {
    std::size_t run = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (w[i] == w[i - 1]) {
        ++run;
      } else {
        lengths.push_back(run);
        run = 1;
      }
    }
    lengths.push_back(run);
  }

  std::vector<Letter> raw;
  if (lengths.size() == 1) {
    std::size_t len = lengths.front();
    if (len > a.large()) {
      raw.push_back(static_cast<Letter>(len));
    } else if (len == a.large()) {
      raw.push_back(a.large());
    }
  } else {
    raw.reserve(lengths.size());
    if (std::size_t first = adjust_boundary(lengths.front(), a); first != 0) {
      raw.push_back(static_cast<Letter>(first));
    }
    for (std::size_t i = 1; i + 1 < lengths.size(); ++i) raw.push_back(static_cast<Letter>(lengths[i]));
    if (std::size_t last = adjust_boundary(lengths.back(), a); last != 0) {
      raw.push_back(static_cast<Letter>(last));
    }
  }

  out.status = std::all_of(raw.begin(), raw.end(), [&](Letter x) { return a.contains(x); })
                   ? DerivativeStatus::derived
                   : DerivativeStatus::not_differentiable;
  out.raw_run_lengths = Word(std::move(raw));
  return out;
}

void append_run(std::vector<Letter>& out, Letter letter, std::size_t length) {
  out.insert(out.end(), length, letter);
}

}  // namespace

DerivativeOutcome derive(const Word& w, const Alphabet& a) {
  require_over(w, a);
  return derive_unchecked(w, a);
}

SmoothnessReport smoothness(const Word& w, const Alphabet& a) {
  require_over(w, a);
  SmoothnessReport report;
  report.chain.push_back(w);
  Word current = w;
  while (!current.empty()) {
    DerivativeOutcome d = derive_unchecked(current, a);
    if (!d.derived()) return report;
    current = std::move(d.raw_run_lengths);
    report.chain.push_back(current);
  }
  report.is_smooth = true;
  if (!w.empty()) report.degree = report.chain.size() - 2;
  return report;
}

bool is_smooth(const Word& w, const Alphabet& a) {
  require_over(w, a);
  Word current = w;
  while (!current.empty()) {
    DerivativeOutcome d = derive_unchecked(current, a);
    if (!d.derived()) return false;
    current = std::move(d.raw_run_lengths);
  }
  return true;
}

std::optional<std::size_t> degree(const Word& w, const Alphabet& a) { return smoothness(w, a).degree; }

std::vector<Word> fundamental_words(const Alphabet& a) {
  // D(v) = ε only for single runs shorter than s and for two runs that are
  // both short enough to be dropped.
  std::vector<Word> out;
  for (Letter x : {a.small(), a.large()}) {
    for (std::size_t len = 1; len < a.large(); ++len) out.push_back(Word(std::vector<Letter>(len, x)));
    Letter y = a.other(x);
    for (std::size_t p = 1; p <= a.small(); ++p) {
      for (std::size_t q = 1; q <= a.small(); ++q) {
        std::vector<Letter> v;
        append_run(v, x, p);
        append_run(v, y, q);
        out.push_back(Word(std::move(v)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> primitives(const Word& w, const Alphabet& a) {
  if (!is_smooth(w, a)) throw DomainError("primitives: '" + w.to_string() + "' is not smooth");
  if (w.empty()) {
    std::vector<Word> out = fundamental_words(a);
    out.insert(out.begin(), Word{});
    return out;
  }

  const Letter r = a.small();
  const Letter s = a.large();
  std::set<Word> found;

  for (Letter start : {r, s}) {
    const Letter opposite = a.other(start);

    if (w.size() == 1) {
      // A single main run carries both boundary rules at once; enumerate the
      // joint options and keep what derives to w.
      for (std::size_t pre = 0; pre <= r; ++pre) {
        for (std::size_t main = 1; main <= s; ++main) {
          for (std::size_t post = 0; post <= r; ++post) {
            std::vector<Letter> v;
            append_run(v, opposite, pre);
            append_run(v, start, main);
            append_run(v, opposite, post);
            Word candidate(std::move(v));
            DerivativeOutcome d = derive_unchecked(candidate, a);
            if (d.derived() && d.raw_run_lengths == w) found.insert(std::move(candidate));
          }
        }
      }
      continue;
    }

    const std::size_t n = w.size();
    const Letter last_letter = (n % 2 == 1) ? start : opposite;

    // Each end either has a dropped run (length 1..r, other letter) before an
    // exact main run, or no extra run and a main run padded up to s.
    struct EndOption {
      std::size_t extra;  // length of the dropped run, 0 if none
      std::size_t main;   // length of the outermost main run
    };
    auto options = [&](Letter target) {
      std::vector<EndOption> opts;
      for (std::size_t e = 1; e <= r; ++e) opts.push_back({e, target});
      if (target == s) {
        for (std::size_t len = std::size_t{r} + 1; len <= s; ++len) opts.push_back({0, len});
      }
      return opts;
    };

    for (const EndOption& left : options(w.front())) {
      for (const EndOption& right : options(w.back())) {
        std::vector<Letter> v;
        append_run(v, opposite, left.extra);
        for (std::size_t i = 0; i < n; ++i) {
          Letter letter = (i % 2 == 0) ? start : opposite;
          std::size_t len = w[i];
          if (i == 0) len = left.main;
          if (i == n - 1) len = right.main;
          append_run(v, letter, len);
        }
        append_run(v, a.other(last_letter), right.extra);
        Word candidate(std::move(v));
        DerivativeOutcome d = derive_unchecked(candidate, a);
        if (!d.derived() || d.raw_run_lengths != w) {
          throw std::logic_error("primitive construction produced " + candidate.to_string() +
                                 " which does not derive to " + w.to_string());
        }
        found.insert(std::move(candidate));
      }
    }
  }
  return std::vector<Word>(found.begin(), found.end());
}

}  // namespace kola
