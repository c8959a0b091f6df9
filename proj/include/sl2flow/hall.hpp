#pragma once

#include <unordered_map>
#include <vector>

#include "sl2flow/series.hpp"

namespace sl2flow {

enum class HallKind { BType, CType, AType };

// How a c-type Hall word decomposes; this drives the dual-basis recursion.
struct CWordInfo {
  enum class Rule {
    kLetter,   // the word "c" itself
    kBPrefix,  // b.w   with w c-type
    kConcat,   // v.w   with v b-type of length >= 2, w c-type
    kOdd,      // a.v.w with v, w c-type of equal length, v >= w in Hall order
  } rule = Rule::kLetter;
  Word left;   // kConcat / kOdd: v
  Word right;  // kBPrefix / kConcat / kOdd: w
};

// Hall words over {a,b,c} up to a maximum length, stored per length in
// descending Hall order (index 0 is the greatest). The order rules:
//   - across lengths, longer words are smaller;
//   - c-type words of one length: concatenations v.w sorted by v descending
//     (major) then w descending, followed by the odd block a.v.w sorted by
//     (v, w) descending;
//   - b-type words are a.w over c-type w, inheriting w's order;
//   - a-type words are a followed by a non-increasing tuple of b-type
//     factors; blocks of ascending factor count, each block sorted
//     lexicographically descending on the factors.
struct HallTable {
  int max_length = 0;
  std::vector<std::vector<Word>> b_words;                // [len] -> descending
  std::vector<std::vector<Word>> c_words;                // [len] -> descending
  std::vector<std::vector<std::vector<Word>>> a_tuples;  // [len] -> factor tuples, descending
  std::unordered_map<Word, CWordInfo, WordHash> c_info;
  std::unordered_map<Word, int, WordHash> b_rank;  // global descending rank, 0 = greatest
  std::unordered_map<Word, int, WordHash> c_rank;

  bool is_b(Word w) const { return b_rank.count(w) != 0; }
  bool is_c(Word w) const { return c_rank.count(w) != 0; }

  static Word tuple_word(const std::vector<Word>& parts);  // a.p1...pk
  std::vector<Word> a_words(int length) const;
};

HallTable gen_hall(int max_length);

// Coefficient laws of the dual expansions. All validate membership and throw
// std::domain_error on non-Hall input.
Rational gamma_b(const HallTable& table, Word w);
Rational gamma_c(const HallTable& table, Word w);
// parts must be b-type and non-increasing in Hall order; the empty tuple
// (bare letter a) gives 1.
Rational gamma_a(const HallTable& table, const std::vector<Word>& parts);

// Dual-basis polynomials xi(w): homogeneous of degree |w|, with memoized
// recursion over the Hall factorizations.
class XiEngine {
public:
  explicit XiEngine(const HallTable& table) : table_(table) {}

  const NcSeries& xi(Word w);

  ShuffleMemo& memo() { return memo_; }

private:
  const HallTable& table_;
  ShuffleMemo memo_;
  std::unordered_map<Word, NcSeries, WordHash> cache_;
};

// The main series S, truncated at `degree`, via the Hall-dual expansion
// S = sum over b-type Hall words of gamma_b(w) xi(w).
NcSeries main_series_hall(int degree);

// The same series via the fixed-point recursion S = b - a exp_sh(2S) c,
// with the exponential grades maintained by the grading derivation.
NcSeries main_series_fixpoint(int degree);

// Coordinate series of the three-flow factorization. E is exp_sh(2S): its
// grades are populated through degree-1 only, which is all the two
// letter-concatenations consume; S doubles as Zb.
struct ZSeries {
  int degree = 0;
  NcSeries S = NcSeries::zero(0);
  NcSeries Za = NcSeries::zero(0), Zb = NcSeries::zero(0), Zc = NcSeries::zero(0);
  NcSeries E = NcSeries::zero(0);
};
ZSeries z_series(int degree);

// Za assembled from the a-type dual expansion with the weighted shuffle
// (independent of the exponential route; the two must agree).
NcSeries z_a_hall(int degree);

}  // namespace sl2flow
