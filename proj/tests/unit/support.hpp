#pragma once

#include <vector>

#include "kola/word.hpp"
#include "oracle.hpp"

inline oracle::Seq to_seq(const kola::Word& w) { return oracle::Seq(w.begin(), w.end()); }
inline kola::Word to_word(const oracle::Seq& s) { return kola::Word(std::vector<kola::Letter>(s.begin(), s.end())); }
