#include "sl2flow/hall.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sl2flow {

namespace {

void check_length(int n, const char* who) {
  if (n < 1 || n > Word::kMaxLength)
    throw std::domain_error(std::string(who) + ": length must be in [1, " +
                            std::to_string(Word::kMaxLength) + "]");
}

// Non-increasing tuples over the flattened descending b-word list with the
// given factor count and total length, emitted lexicographically descending.
// Factors are non-increasing in Hall order, hence non-decreasing in length,
// which gives the break below.
void enum_tuples(const std::vector<Word>& flat, std::size_t start, int remaining, int factors_left,
                 std::vector<Word>& cur, std::vector<std::vector<Word>>& out) {
  if (factors_left == 0) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < flat.size(); ++i) {
    const int len = flat[i].length();
    if (len * factors_left > remaining) break;
    cur.push_back(flat[i]);
    enum_tuples(flat, i, remaining - len, factors_left - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Word HallTable::tuple_word(const std::vector<Word>& parts) {
  Word w = letters::a;
  for (Word p : parts) w = concat(w, p);
  return w;
}

std::vector<Word> HallTable::a_words(int length) const {
  std::vector<Word> out;
  out.reserve(a_tuples[length].size());
  for (const auto& t : a_tuples[length]) out.push_back(tuple_word(t));
  return out;
}

HallTable gen_hall(int max_length) {
  check_length(max_length, "gen_hall");
  HallTable t;
  t.max_length = max_length;
  t.b_words.resize(max_length + 1);
  t.c_words.resize(max_length + 1);
  t.a_tuples.resize(max_length + 1);

  t.b_words[1] = {letters::b};
  t.c_words[1] = {letters::c};
  t.c_info[letters::c] = {CWordInfo::Rule::kLetter, Word(), Word()};
  t.a_tuples[1] = {{}};

  // Flattened b-word list in global descending order: shorter words are
  // greater, so lengths ascend.
  std::vector<Word> flat_b = {letters::b};

  for (int n = 2; n <= max_length; ++n) {
    // b-type: a.w over c-type w of length n-1, inheriting the order.
    for (Word w : t.c_words[n - 1]) t.b_words[n].push_back(concat(letters::a, w));

    // c-type, even part: v.w with |v| <= |w|; v descending major across its
    // lengths (short v first), w descending minor.
    for (int i = 1; 2 * i <= n; ++i) {
      for (Word v : t.b_words[i]) {
        for (Word w : t.c_words[n - i]) {
          Word vw = concat(v, w);
          t.c_words[n].push_back(vw);
          t.c_info[vw] = (i == 1) ? CWordInfo{CWordInfo::Rule::kBPrefix, Word(), w}
                                  : CWordInfo{CWordInfo::Rule::kConcat, v, w};
        }
      }
    }
    // c-type, odd part: a.v.w over c-type pairs v >= w of length (n-1)/2.
    if (n % 2 == 1) {
      const auto& half = t.c_words[(n - 1) / 2];
      for (std::size_t p = 0; p < half.size(); ++p) {
        for (std::size_t q = p; q < half.size(); ++q) {
          Word avw = concat(letters::a, concat(half[p], half[q]));
          t.c_words[n].push_back(avw);
          t.c_info[avw] = {CWordInfo::Rule::kOdd, half[p], half[q]};
        }
      }
    }

    // a-type: non-increasing b-type tuples of total length n-1, grouped by
    // ascending factor count.
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<Word> cur;
      enum_tuples(flat_b, 0, n - 1, i, cur, t.a_tuples[n]);
    }

    for (Word w : t.b_words[n]) flat_b.push_back(w);
  }

  for (int n = 1, r = 0; n <= max_length; ++n)
    for (Word w : t.b_words[n]) t.b_rank.emplace(w, r++);
  for (int n = 1, r = 0; n <= max_length; ++n)
    for (Word w : t.c_words[n]) t.c_rank.emplace(w, r++);
  return t;
}

Rational gamma_b(const HallTable& table, Word w) {
  if (!table.is_b(w)) throw std::domain_error("gamma_b: not a b-type Hall word");
  if (w == letters::b) return Rational(1);
  const Word v = w.drop_front();
  return -(ipow(-2, v.count(Letter::A)) * ipow(2, v.count(Letter::B)));
}

Rational gamma_c(const HallTable& table, Word w) {
  if (!table.is_c(w)) throw std::domain_error("gamma_c: not a c-type Hall word");
  return ipow(-2, w.count(Letter::A)) * ipow(2, w.count(Letter::B));
}

Rational gamma_a(const HallTable& table, const std::vector<Word>& parts) {
  Rational g = ipow(2, static_cast<int>(parts.size()));
  int prev_rank = -1;
  for (Word p : parts) {
    if (!table.is_b(p)) throw std::domain_error("gamma_a: factor is not a b-type Hall word");
    const int r = table.b_rank.at(p);
    if (r < prev_rank) throw std::domain_error("gamma_a: factors not non-increasing");
    prev_rank = r;
    g *= gamma_b(table, p);
  }
  return g;
}

const NcSeries& XiEngine::xi(Word w) {
  if (auto it = cache_.find(w); it != cache_.end()) return it->second;

  NcSeries out = NcSeries::zero();
  if (table_.is_b(w)) {
    out = (w == letters::b) ? NcSeries::monomial(letters::b)
                            : concat_mul(NcSeries::monomial(letters::a), xi(w.drop_front()));
  } else if (table_.is_c(w)) {
    const CWordInfo& info = table_.c_info.at(w);
    switch (info.rule) {
      case CWordInfo::Rule::kLetter:
        out = NcSeries::monomial(letters::c);
        break;
      case CWordInfo::Rule::kBPrefix:
        out = concat_mul(NcSeries::monomial(letters::b), xi(info.right));
        break;
      case CWordInfo::Rule::kConcat: {
        // v.w with v = a.v'; the factor lengths always differ here, so the
        // weighted shuffle is the plain one.
        const NcSeries inner = shuffle_mul(xi(info.left.drop_front()), xi(info.right), &memo_);
        out = concat_mul(NcSeries::monomial(letters::a), inner);
        break;
      }
      case CWordInfo::Rule::kOdd: {
        NcSeries inner = (info.left == info.right)
                             ? Rational(1, 2) * shuffle_mul(xi(info.left), xi(info.left), &memo_)
                             : shuffle_mul(xi(info.left), xi(info.right), &memo_);
        out = concat_mul(NcSeries::monomial(letters::a), inner);
        break;
      }
    }
  } else {
    throw std::domain_error("xi: not a b- or c-type Hall word: '" + w.str() + "'");
  }
  return cache_.emplace(w, std::move(out)).first->second;
}

NcSeries main_series_hall(int degree) {
  check_length(degree, "main_series_hall");
  const HallTable table = gen_hall(degree);
  XiEngine engine(table);
  NcSeries s(degree);
  for (int n = 1; n <= degree; ++n)
    for (Word w : table.b_words[n]) s.add_scaled(engine.xi(w), gamma_b(table, w));
  return s;
}

namespace {

// acc_grade += k * (u sh v) restricted to one homogeneous grade.
void shuffle_into(NcSeries& acc, const Rational& k, Word u, Word v) {
  for (const auto& [w, m] : shuffle_words(u, v)) acc.add_term(w, k * Rational(m));
}

}  // namespace

NcSeries main_series_fixpoint(int degree) {
  check_length(degree, "main_series_fixpoint");
  NcSeries s(degree);
  s.add_term(letters::b, Rational(1));
  if (degree == 1) return s;

  // e = exp_sh(2 s), maintained through grade degree-2 by the grading
  // derivation: n e_n = sum_m m (2 s_m) sh e_{n-m}. Interleaving works out:
  // e_{n-2} needs s through n-2, and s_n needs only e_{n-2}.
  NcSeries e = NcSeries::one(degree - 2);
  for (int n = 2; n <= degree; ++n) {
    if (n - 2 >= 1) {
      const int g = n - 2;
      NcSeries acc = NcSeries::zero(g);
      for (int m = 1; m <= g; ++m)
        for (const auto& [u, cu] : s.grade(m)) {
          const Rational cum = Rational(2 * m) * cu;
          for (const auto& [v, cv] : e.grade(g - m)) shuffle_into(acc, cum * cv, u, v);
        }
      const Rational inv(1, g);
      for (const auto& [w, cv] : acc.grade(g)) e.add_term(w, inv * cv);
    }
    for (const auto& [w, cv] : e.grade(n - 2))
      s.add_term(concat(letters::a, concat(w, letters::c)), -cv);
  }
  return s;
}

ZSeries z_series(int degree) {
  check_length(degree, "z_series");
  ZSeries z;
  z.degree = degree;
  z.S = main_series_fixpoint(degree);
  z.E = shuffle_exp((Rational(2) * z.S).with_truncation(degree - 1)).with_truncation(degree);
  z.Za = concat_mul(NcSeries::monomial(letters::a), z.E);
  z.Zb = z.S;
  z.Zc = concat_mul(z.E, NcSeries::monomial(letters::c));
  return z;
}

NcSeries z_a_hall(int degree) {
  check_length(degree, "z_a_hall");
  const HallTable table = gen_hall(degree);
  XiEngine engine(table);
  NcSeries za(degree);
  for (int n = 1; n <= degree; ++n) {
    for (const auto& tuple : table.a_tuples[n]) {
      // Weighted shuffle of the factors: each run of r equal factors
      // contributes its plain shuffle power divided by r!.
      NcSeries poly = NcSeries::one();
      for (std::size_t i = 0; i < tuple.size();) {
        std::size_t j = i;
        while (j < tuple.size() && tuple[j] == tuple[i]) ++j;
        const auto r = static_cast<int>(j - i);
        NcSeries run = engine.xi(tuple[i]);
        for (int k = 1; k < r; ++k) run = shuffle_mul(run, engine.xi(tuple[i]), &engine.memo());
        run = (Rational(1) / factorial(r)) * run;
        poly = (i == 0) ? run : shuffle_mul(poly, run, &engine.memo());
        i = j;
      }
      za.add_scaled(concat_mul(NcSeries::monomial(letters::a), poly), gamma_a(table, tuple));
    }
  }
  return za;
}

}  // namespace sl2flow
