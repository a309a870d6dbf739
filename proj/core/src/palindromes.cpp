#include "kola/palindromes.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "kola/calculus.hpp"
#include "kola/error.hpp"

namespace kola {

std::vector<Word> PalindromicFundamentals::all() const {
  std::vector<Word> out = odd_with_odd_middle;
  out.insert(out.end(), odd_with_even_middle.begin(), odd_with_even_middle.end());
  out.insert(out.end(), even_length.begin(), even_length.end());
  std::sort(out.begin(), out.end());
  return out;
}

PalindromicFundamentals palindromic_fundamentals(const Alphabet& a) {
  PalindromicFundamentals out;
  for (const Word& w : fundamental_words(a)) {
    if (!is_palindrome(w)) continue;
    if (w.size() % 2 == 0) {
      out.even_length.push_back(w);
    } else if (w[w.size() / 2] % 2 == 1) {
      out.odd_with_odd_middle.push_back(w);
    } else {
      out.odd_with_even_middle.push_back(w);
    }
  }
  return out;
}

std::vector<Word> palindromic_primitives(const Word& p, const Alphabet& a) {
  if (!is_palindrome(p)) throw DomainError("'" + p.to_string() + "' is not a palindrome");
  std::vector<Word> out;
  for (Word& q : primitives(p, a))
    if (is_palindrome(q)) out.push_back(std::move(q));
  return out;
}

std::size_t PalindromeTable::count(std::size_t n) const {
  auto it = per_length.find(n);
  return it == per_length.end() ? 0 : it->second.size();
}

PalindromeTable enumerate_palindromes(const Alphabet& a, std::size_t n_max, std::size_t max_items) {
  PalindromeTable table{a, {}, n_max, true};
  std::set<Word> seen;
  std::deque<Word> queue;
  for (const Word& f : palindromic_fundamentals(a).all()) {
    if (f.size() <= n_max && seen.insert(f).second) queue.push_back(f);
  }
  while (!queue.empty()) {
    if (seen.size() > max_items) {
      table.complete = false;
      break;
    }
    Word p = std::move(queue.front());
    queue.pop_front();
    // primitives are longer than p, so nothing above n_max can lead back down
    for (Word& q : palindromic_primitives(p, a)) {
      if (q.size() <= n_max && seen.insert(q).second) queue.push_back(std::move(q));
    }
  }
  for (const Word& w : seen) table.per_length[w.size()].push_back(w);
  for (std::size_t n = 1; n <= n_max; ++n) table.per_length.try_emplace(n);
  return table;
}

namespace {

bool is_central_factor(const Word& inner, const Word& outer) {
  if (inner.size() > outer.size() || (outer.size() - inner.size()) % 2 != 0) return false;
  const std::size_t off = (outer.size() - inner.size()) / 2;
  return std::equal(inner.begin(), inner.end(), outer.begin() + static_cast<std::ptrdiff_t>(off));
}

}  // namespace

TwoSidedExtension extend_palindrome_two_sided(const Word& seed, const Alphabet& a, std::size_t steps,
                                              std::size_t branch_cap) {
  const auto fundamentals = palindromic_fundamentals(a).odd_with_odd_middle;
  if (std::find(fundamentals.begin(), fundamentals.end(), seed) == fundamentals.end()) {
    throw DomainError("'" + seed.to_string() +
                      "' is not a palindromic fundamental word of odd length with odd middle letter");
  }
  TwoSidedExtension out;
  std::vector<TwoSidedPalindrome> active{TwoSidedPalindrome{{seed}}};
  for (std::size_t step = 0; step < steps && !active.empty(); ++step) {
    std::vector<TwoSidedPalindrome> next;
    for (TwoSidedPalindrome& branch : active) {
      const Word& p = branch.word();
      std::vector<Word> candidates;
      for (Word& q : palindromic_primitives(p, a))
        if (q.size() % 2 == 1 && is_central_factor(p, q)) candidates.push_back(std::move(q));
      std::vector<Word> maximal;
      for (const Word& q : candidates) {
        bool nested = std::any_of(candidates.begin(), candidates.end(),
                                  [&](const Word& o) { return o.size() > q.size() && is_central_factor(q, o); });
        if (!nested) maximal.push_back(q);
      }
      if (maximal.empty()) {
        out.branches.push_back(std::move(branch));
        continue;
      }
      if (maximal.size() > 1) out.branched = true;
      for (Word& q : maximal) {
        if (next.size() + out.branches.size() >= branch_cap) {
          out.truncated = true;
          break;
        }
        TwoSidedPalindrome grown = branch;
        grown.chain.push_back(std::move(q));
        next.push_back(std::move(grown));
      }
    }
    active = std::move(next);
  }
  for (TwoSidedPalindrome& b : active) out.branches.push_back(std::move(b));
  return out;
}

}  // namespace kola
