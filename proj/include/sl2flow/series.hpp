#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sl2flow/rational.hpp"
#include "sl2flow/word.hpp"

namespace sl2flow {

// Word reversal (the antipode acts on basis words by reversal).
Word reversed(Word w);
// Exchange a and c, keep b (the flip involution on letters).
Word flipped(Word w);

// Shuffle product of two words as a (length, lex)-sorted list of
// (word, multiplicity) pairs. Computed by direct enumeration of interleavings.
std::vector<std::pair<Word, long>> shuffle_words(Word u, Word v);

// Memoized shuffle products. Pairs whose total length is at most
// `recursion_cutoff` are computed by the last-letter recursion
//   (u x) sh (v y) = ((u x) sh v) y + (u sh (v y)) x,
// sharing all prefix subproblems; longer pairs fall back to enumeration.
// Every result is cached, so only use this where pairs repeat (the dual-basis
// recursion does; one-shot big series products should not bother).
class ShuffleMemo {
public:
  explicit ShuffleMemo(int recursion_cutoff = 12) : cutoff_(recursion_cutoff) {}

  const std::vector<std::pair<Word, long>>& shuffle(Word u, Word v);

  std::size_t size() const { return memo_.size(); }

private:
  int cutoff_;
  std::unordered_map<std::uint64_t, std::vector<std::pair<Word, long>>> memo_;
};

// Noncommutative formal series over the rationals, truncated at a fixed
// degree: words longer than truncation_degree() are identically dropped and
// read back as zero. Binary operations take the min of the two truncations,
// since higher grades of the result would depend on discarded information.
// Exact polynomials (monomials, the unit) carry truncation kMaxLength so that
// they never lower the truncation of the other operand.
class NcSeries {
public:
  using TermMap = std::unordered_map<Word, Rational, WordHash>;

  explicit NcSeries(int truncation_degree);

  static NcSeries zero(int truncation_degree = Word::kMaxLength) { return NcSeries(truncation_degree); }
  static NcSeries one(int truncation_degree = Word::kMaxLength);
  static NcSeries monomial(Word w, const Rational& coeff = Rational(1),
                           int truncation_degree = Word::kMaxLength);

  int truncation_degree() const { return static_cast<int>(grades_.size()) - 1; }

  // Coefficient of w; zero if absent or beyond the truncation degree.
  Rational coefficient(Word w) const;

  // coefficient(w) += k, ignored entirely if w is beyond the truncation.
  void add_term(Word w, const Rational& k);

  // this += k * src, keeping this truncation; src terms beyond it are dropped.
  void add_scaled(const NcSeries& src, const Rational& k);

  const TermMap& grade(int n) const { return grades_[n]; }

  bool is_zero() const;
  std::size_t term_count() const;
  double max_abs_coeff() const;  // 0.0 when empty; used for residual reports

  // Retag/prune to a new truncation degree. Lowering prunes terms; raising
  // asserts the caller knows the higher grades (all zero as stored) — only do
  // that when homogeneity arguments make it true.
  NcSeries with_truncation(int d) const;

  // Terms in (length, lexicographic) word order.
  std::vector<std::pair<Word, Rational>> sorted_terms() const;

  friend bool operator==(const NcSeries& x, const NcSeries& y);
  friend bool operator!=(const NcSeries& x, const NcSeries& y) { return !(x == y); }

private:
  // grades_[n] holds the degree-n terms; size is truncation_degree()+1.
  std::vector<TermMap> grades_;
};

NcSeries operator+(const NcSeries& x, const NcSeries& y);
NcSeries operator-(const NcSeries& x, const NcSeries& y);
NcSeries operator-(const NcSeries& x);
NcSeries operator*(const Rational& k, const NcSeries& x);

// Concatenation product.
NcSeries concat_mul(const NcSeries& x, const NcSeries& y);

// Shuffle product; pass a memo when the same word pairs recur across calls.
NcSeries shuffle_mul(const NcSeries& x, const NcSeries& y, ShuffleMemo* memo = nullptr);

// Shuffle exponential of a series with zero constant term (throws
// std::domain_error otherwise). Uses the grading derivation: with D(w)=|w| w,
// n e_n = sum_{m=1..n} m p_m sh e_{n-m}, avoiding the factorial power sums.
NcSeries shuffle_exp(const NcSeries& p, ShuffleMemo* memo = nullptr);

// Antipode: reverses every word (coefficient-preserving here).
NcSeries antipode(const NcSeries& x);

// Flip a <-> c on every word.
NcSeries flip(const NcSeries& x);

// Human-readable rendering, e.g. "b - ac - 2abc"; "0" for the zero series and
// "1" for the empty word. Terms in (length, lex) order.
std::string to_text(const NcSeries& x);

}  // namespace sl2flow
