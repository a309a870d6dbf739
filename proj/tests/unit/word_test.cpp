#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "kola/error.hpp"
#include "kola/word.hpp"
#include "support.hpp"

using namespace kola;

TEST(Alphabet, NormalisesOrder) {
  Alphabet a(3, 2);
  EXPECT_EQ(a.small(), 2u);
  EXPECT_EQ(a.large(), 3u);
  EXPECT_EQ(a, Alphabet::parse("2,3"));
  EXPECT_EQ(a.sum(), 5u);
  EXPECT_EQ(a.to_string(), "2,3");
}

TEST(Alphabet, RejectsBadLetters) {
  EXPECT_THROW(Alphabet(0, 2), DomainError);
  EXPECT_THROW(Alphabet(4, 4), DomainError);
  EXPECT_THROW(Alphabet::parse("1"), DomainError);
  EXPECT_THROW(Alphabet::parse("1,x"), DomainError);
}

TEST(Alphabet, ParityAndFundamentalBound) {
  EXPECT_EQ(Alphabet(2, 4).parity_class(), ParityClass::both_even);
  EXPECT_EQ(Alphabet(1, 3).parity_class(), ParityClass::both_odd);
  EXPECT_EQ(Alphabet(1, 2).parity_class(), ParityClass::mixed);
  EXPECT_EQ(Alphabet(1, 2).fundamental_bound(), 3u);
  EXPECT_EQ(Alphabet(1, 4).fundamental_bound(), 4u);
  EXPECT_EQ(Alphabet(3, 4).fundamental_bound(), 7u);
}

TEST(Word, ParseAndPrint) {
  EXPECT_EQ(Word::parse("221121"), (Word{2, 2, 1, 1, 2, 1}));
  EXPECT_EQ(Word::parse("10,439,10"), (Word{10, 439, 10}));
  EXPECT_TRUE(Word::parse("").empty());
  EXPECT_EQ((Word{2, 2, 1}).to_string(), "221");
  EXPECT_EQ((Word{10, 3}).to_string(), "10,3");
  EXPECT_EQ(Word::parse((Word{10, 3}).to_string()), (Word{10, 3}));
}

TEST(Word, RunEncodingRoundTrip) {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> v(rng() % 40);
    for (auto& x : v) x = 1 + rng() % 3;
    Word w(v);
    auto enc = run_encode(w);
    EXPECT_EQ(run_decode(enc), w);
    for (std::size_t i = 1; i < enc.size(); ++i) EXPECT_NE(enc[i].letter, enc[i - 1].letter);
    auto orc = oracle::runs(to_seq(w));
    ASSERT_EQ(orc.size(), enc.size());
    for (std::size_t i = 0; i < enc.size(); ++i) EXPECT_EQ(orc[i].second, enc[i].length);
  }
}

TEST(Word, MirrorAndReverseAreInvolutions) {
  Alphabet a(1, 2);
  for (auto& s : oracle::all_words(10, 1, 2)) {
    Word w = to_word(s);
    EXPECT_EQ(mirror(mirror(w, a), a), w);
    EXPECT_EQ(reverse(reverse(w)), w);
    EXPECT_EQ(mirror(reverse(w), a), reverse(mirror(w, a)));
    EXPECT_EQ(is_palindrome(w), reverse(w) == w);
  }
  EXPECT_THROW(mirror(Word{1, 3}, a), DomainError);
}

TEST(Word, Factors) {
  Word w = Word::parse("1221121");
  EXPECT_EQ(count_occurrences(w, Word::parse("12")), 2u);
  EXPECT_EQ(count_occurrences(w, Word::parse("1")), 4u);
  EXPECT_EQ(count_occurrences(Word::parse("1111"), Word::parse("11")), 3u);
  EXPECT_TRUE(contains_factor(w, Word::parse("211")));
  EXPECT_FALSE(contains_factor(w, Word::parse("222")));
  EXPECT_THROW(count_occurrences(w, Word{}), DomainError);
  EXPECT_EQ(w.count(2), 3u);
  EXPECT_EQ(w.prefix(3), Word::parse("122"));
  EXPECT_EQ(w.suffix(2), Word::parse("21"));
  EXPECT_TRUE(w.starts_with(Word::parse("1221")));
  EXPECT_TRUE(w.ends_with(Word::parse("121")));
  EXPECT_EQ(power(Word::parse("12"), 3), Word::parse("121212"));
  EXPECT_EQ(Word::parse("12") + Word::parse("21"), Word::parse("1221"));
}

TEST(Word, ShortlexOrderAndHash) {
  EXPECT_LT(Word::parse("22"), Word::parse("111"));
  EXPECT_LT(Word::parse("112"), Word::parse("121"));
  std::unordered_set<Word, WordHash> seen;
  for (auto& s : oracle::all_words(8, 1, 2)) seen.insert(to_word(s));
  EXPECT_EQ(seen.size(), 256u);
}

TEST(Word, RequireOver) {
  EXPECT_NO_THROW(require_over(Word::parse("1221"), Alphabet(1, 2)));
  EXPECT_THROW(require_over(Word::parse("123"), Alphabet(1, 2)), DomainError);
}
