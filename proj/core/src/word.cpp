#include "kola/word.hpp"

#include <algorithm>
#include <charconv>

#include "kola/error.hpp"

namespace kola {

std::string to_string(ParityClass p) {
  switch (p) {
    case ParityClass::both_even: return "both_even";
    case ParityClass::both_odd: return "both_odd";
    case ParityClass::mixed: return "mixed";
  }
  return "mixed";
}

namespace {

Letter parse_letter(std::string_view token) {
  Letter value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
    throw DomainError("invalid letter '" + std::string(token) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' ||
                        s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Alphabet::Alphabet(Letter a, Letter b) : small_(std::min(a, b)), large_(std::max(a, b)) {
  if (small_ == 0) throw DomainError("alphabet letters must be positive");
  if (small_ == large_) throw DomainError("alphabet letters must be distinct");
}

Alphabet Alphabet::parse(std::string_view text) {
  text = trim(text);
  auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw DomainError("alphabet must be given as 'r,s', got '" + std::string(text) + "'");
  }
  return Alphabet(parse_letter(trim(text.substr(0, comma))),
                  parse_letter(trim(text.substr(comma + 1))));
}

ParityClass Alphabet::parity_class() const noexcept {
  bool small_even = small_ % 2 == 0;
  bool large_even = large_ % 2 == 0;
  if (small_even && large_even) return ParityClass::both_even;
  if (!small_even && !large_even) return ParityClass::both_odd;
  return ParityClass::mixed;
}

std::size_t Alphabet::fundamental_bound() const noexcept {
  return std::max<std::size_t>(large_, 2 * std::size_t{small_} + 1);
}

std::string Alphabet::to_string() const {
  return std::to_string(small_) + "," + std::to_string(large_);
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

Word Word::parse(std::string_view text) {
  text = trim(text);
  std::vector<Letter> letters;
  if (text.empty() || text == "ε" || text == "eps") return Word{};
  if (text.find(',') != std::string_view::npos) {
    while (true) {
      auto comma = text.find(',');
      letters.push_back(parse_letter(trim(text.substr(0, comma))));
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
  } else {
    letters.reserve(text.size());
    for (char c : text) {
      if (c < '1' || c > '9') {
        throw DomainError(std::string("invalid letter '") + c + "' in word");
      }
      letters.push_back(static_cast<Letter>(c - '0'));
    }
  }
  return Word(std::move(letters));
}

std::size_t Word::count(Letter a) const noexcept {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), a));
}

Word Word::substr(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, letters_.size());
  len = std::min(len, letters_.size() - pos);
  return Word(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
              letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
}

Word Word::suffix(std::size_t len) const {
  len = std::min(len, letters_.size());
  return substr(letters_.size() - len, len);
}

bool Word::starts_with(const Word& v) const noexcept {
  return v.size() <= size() && std::equal(v.begin(), v.end(), begin());
}

bool Word::ends_with(const Word& v) const noexcept {
  return v.size() <= size() && std::equal(v.begin(), v.end(), end() - static_cast<std::ptrdiff_t>(v.size()));
}

std::string Word::to_string() const {
  bool comma = std::any_of(letters_.begin(), letters_.end(), [](Letter x) { return x >= 10; });
  std::string out;
  out.reserve(letters_.size() * (comma ? 3 : 1));
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (comma && i > 0) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word operator+(const Word& a, const Word& b) {
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters_.begin(), a.letters_.end());
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

Word power(const Word& w, std::size_t n) {
  std::vector<Letter> out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return Word(std::move(out));
}

RunEncoding run_encode(const Word& w) {
  RunEncoding runs;
  for (Letter x : w) {
    if (!runs.empty() && runs.back().letter == x) {
      ++runs.back().length;
    } else {
      runs.push_back({x, 1});
    }
  }
  return runs;
}

Word run_decode(std::span<const Run> runs) {
  std::vector<Letter> out;
  for (const Run& run : runs) out.insert(out.end(), run.length, run.letter);
  return Word(std::move(out));
}

Word mirror(const Word& w, const Alphabet& a) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!a.contains(x)) {
      throw DomainError("letter " + std::to_string(x) + " is not in alphabet {" + a.to_string() + "}");
    }
    out.push_back(a.other(x));
  }
  return Word(std::move(out));
}

Word reverse(const Word& w) { return Word(std::vector<Letter>(w.letters().rbegin(), w.letters().rend())); }

bool is_palindrome(const Word& w) { return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(w.size() / 2), w.letters().rbegin()); }

std::size_t count_occurrences(const Word& w, const Word& v) {
  if (v.empty()) throw DomainError("count_occurrences: pattern must be nonempty");
  if (v.size() > w.size()) return 0;
  std::size_t count = 0;
  auto first = w.begin();
  for (std::size_t i = 0; i + v.size() <= w.size(); ++i) {
    if (std::equal(v.begin(), v.end(), first + static_cast<std::ptrdiff_t>(i))) ++count;
  }
  return count;
}

bool contains_factor(const Word& w, const Word& v) {
  return std::search(w.begin(), w.end(), v.begin(), v.end()) != w.end() || v.empty();
}

void require_over(const Word& w, const Alphabet& a) {
  for (Letter x : w) {
    if (!a.contains(x)) {
      throw DomainError("letter " + std::to_string(x) + " is not in alphabet {" + a.to_string() + "}");
    }
  }
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  // FNV-1a over the letter values
  std::uint64_t h = 1469598103934665603ull;
  for (Letter x : w) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

}  // namespace kola
