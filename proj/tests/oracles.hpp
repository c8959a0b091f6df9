#pragma once

// Reference implementations used only in tests. Each deliberately takes a
// different route than the production code so that agreement is evidence:
//  - shuffle_first: first-letter shuffle recursion (production enumerates
//    interleavings directly or recurses on last letters);
//  - exp_power: shuffle exponential as the literal power sum with factorials
//    (production uses the grading-derivation recursion);
//  - fixpoint_iterate: the main series by naive fixed-point iteration of
//    S -> b - a exp_sh(2S) c (production interleaves the grades).

#include <map>

#include "sl2flow/series.hpp"

namespace oracle {

using sl2flow::concat;
using sl2flow::NcSeries;
using sl2flow::Rational;
using sl2flow::Word;

inline std::map<Word, long> shuffle_first(Word u, Word v) {
  if (u.empty()) return {{v, 1}};
  if (v.empty()) return {{u, 1}};
  std::map<Word, long> out;
  for (const auto& [w, m] : shuffle_first(u.drop_front(), v)) out[concat(Word(u.front()), w)] += m;
  for (const auto& [w, m] : shuffle_first(u, v.drop_front())) out[concat(Word(v.front()), w)] += m;
  return out;
}

inline NcSeries exp_power(const NcSeries& p) {
  const int d = p.truncation_degree();
  NcSeries e = NcSeries::one(d);
  NcSeries pk = NcSeries::one(d);
  Rational kfac(1);
  for (int k = 1; k <= d; ++k) {
    pk = shuffle_mul(pk, p);
    kfac *= Rational(k);
    e = e + (Rational(1) / kfac) * pk;
  }
  return e;
}

inline NcSeries fixpoint_iterate(int degree) {
  const NcSeries b = NcSeries::monomial(sl2flow::letters::b).with_truncation(degree);
  NcSeries s = b;
  for (int it = 0; it < degree; ++it) {
    NcSeries e = (degree >= 2)
                     ? exp_power((Rational(2) * s).with_truncation(degree - 2)).with_truncation(degree)
                     : NcSeries::one(degree);
    s = b - concat_mul(NcSeries::monomial(sl2flow::letters::a), concat_mul(e, NcSeries::monomial(sl2flow::letters::c)));
  }
  return s;
}

}  // namespace oracle
