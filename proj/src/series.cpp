#include "sl2flow/series.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace sl2flow {

Word reversed(Word w) {
  Word r;
  for (int i = w.length() - 1; i >= 0; --i) r = r.append(w.letter(i));
  return r;
}

Word flipped(Word w) {
  Word r;
  for (int i = 0, n = w.length(); i < n; ++i) {
    Letter l = w.letter(i);
    if (l == Letter::A) l = Letter::C;
    else if (l == Letter::C) l = Letter::A;
    r = r.append(l);
  }
  return r;
}

std::vector<std::pair<Word, long>> shuffle_words(Word u, Word v) {
  const int p = u.length(), q = v.length(), n = p + q;
  if (p == 0) return {{v, 1}};
  if (q == 0) return {{u, 1}};

  // Enumerate the C(n,p) position masks for u's letters; equal interleavings
  // merge into multiplicities.
  std::map<Word, long> acc;
  const std::uint32_t limit = 1u << n;
  std::uint32_t mask = (1u << p) - 1u;
  while (mask < limit) {
    Word w;
    int iu = 0, iv = 0;
    for (int pos = 0; pos < n; ++pos) {
      if (mask & (1u << pos)) w = w.append(u.letter(iu++));
      else w = w.append(v.letter(iv++));
    }
    acc[w] += 1;
    // Gosper's hack: next mask with the same popcount.
    std::uint32_t c = mask & -mask;
    std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
  return {acc.begin(), acc.end()};
}

const std::vector<std::pair<Word, long>>& ShuffleMemo::shuffle(Word u, Word v) {
  if (v.packed() < u.packed()) std::swap(u, v);  // the product is commutative
  const std::uint64_t key = (static_cast<std::uint64_t>(u.packed()) << 32) | v.packed();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<std::pair<Word, long>> out;
  if (u.empty()) {
    out = {{v, 1}};
  } else if (v.empty()) {
    out = {{u, 1}};
  } else if (u.length() + v.length() > cutoff_) {
    out = shuffle_words(u, v);
  } else {
    // Last-letter recursion; unordered_map nodes are stable, so the two
    // recursive references survive the eventual insert below.
    const auto& r1 = shuffle(u.prefix(), v);
    const auto& r2 = shuffle(u, v.prefix());
    std::map<Word, long> acc;
    const Letter lu = u.back(), lv = v.back();
    for (const auto& [w, m] : r1) acc[w.append(lu)] += m;
    for (const auto& [w, m] : r2) acc[w.append(lv)] += m;
    out.assign(acc.begin(), acc.end());
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

NcSeries::NcSeries(int truncation_degree) {
  if (truncation_degree < 0 || truncation_degree > Word::kMaxLength)
    throw std::domain_error("NcSeries: truncation degree out of range");
  grades_.resize(truncation_degree + 1);
}

NcSeries NcSeries::one(int truncation_degree) {
  return monomial(Word(), Rational(1), truncation_degree);
}

NcSeries NcSeries::monomial(Word w, const Rational& coeff, int truncation_degree) {
  NcSeries s(truncation_degree);
  s.add_term(w, coeff);
  return s;
}

Rational NcSeries::coefficient(Word w) const {
  const int n = w.length();
  if (n > truncation_degree()) return Rational(0);
  auto it = grades_[n].find(w);
  return it == grades_[n].end() ? Rational(0) : it->second;
}

void NcSeries::add_term(Word w, const Rational& k) {
  const int n = w.length();
  if (n > truncation_degree() || k.is_zero()) return;
  auto [it, fresh] = grades_[n].try_emplace(w, k);
  if (!fresh) {
    it->second += k;
    if (it->second.is_zero()) grades_[n].erase(it);
  }
}

void NcSeries::add_scaled(const NcSeries& src, const Rational& k) {
  if (k.is_zero()) return;
  const int top = std::min(truncation_degree(), src.truncation_degree());
  for (int n = 0; n <= top; ++n)
    for (const auto& [w, cv] : src.grades_[n]) add_term(w, k * cv);
}

bool NcSeries::is_zero() const {
  for (const auto& g : grades_)
    if (!g.empty()) return false;
  return true;
}

std::size_t NcSeries::term_count() const {
  std::size_t n = 0;
  for (const auto& g : grades_) n += g.size();
  return n;
}

double NcSeries::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& g : grades_)
    for (const auto& [w, cv] : g) m = std::max(m, std::abs(cv.to_double()));
  return m;
}

NcSeries NcSeries::with_truncation(int d) const {
  NcSeries s(d);
  const int top = std::min(d, truncation_degree());
  for (int n = 0; n <= top; ++n) s.grades_[n] = grades_[n];
  return s;
}

std::vector<std::pair<Word, Rational>> NcSeries::sorted_terms() const {
  std::vector<std::pair<Word, Rational>> out;
  out.reserve(term_count());
  for (const auto& g : grades_) {
    const std::size_t begin = out.size();
    for (const auto& t : g) out.push_back(t);
    std::sort(out.begin() + begin, out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return out;
}

bool operator==(const NcSeries& x, const NcSeries& y) {
  if (x.truncation_degree() != y.truncation_degree()) return false;
  for (int n = 0; n <= x.truncation_degree(); ++n) {
    if (x.grades_[n].size() != y.grades_[n].size()) return false;
    for (const auto& [w, cv] : x.grades_[n]) {
      auto it = y.grades_[n].find(w);
      if (it == y.grades_[n].end() || it->second != cv) return false;
    }
  }
  return true;
}

NcSeries operator+(const NcSeries& x, const NcSeries& y) {
  NcSeries s = x.with_truncation(std::min(x.truncation_degree(), y.truncation_degree()));
  s.add_scaled(y, Rational(1));
  return s;
}

NcSeries operator-(const NcSeries& x, const NcSeries& y) {
  NcSeries s = x.with_truncation(std::min(x.truncation_degree(), y.truncation_degree()));
  s.add_scaled(y, Rational(-1));
  return s;
}

NcSeries operator-(const NcSeries& x) { return Rational(-1) * x; }

NcSeries operator*(const Rational& k, const NcSeries& x) {
  NcSeries s(x.truncation_degree());
  s.add_scaled(x, k);
  return s;
}

NcSeries concat_mul(const NcSeries& x, const NcSeries& y) {
  const int d = std::min(x.truncation_degree(), y.truncation_degree());
  NcSeries s(d);
  for (int i = 0; i <= std::min(d, x.truncation_degree()); ++i) {
    if (x.grade(i).empty()) continue;
    for (int j = 0; i + j <= d && j <= y.truncation_degree(); ++j) {
      for (const auto& [u, cu] : x.grade(i))
        for (const auto& [v, cv] : y.grade(j)) s.add_term(concat(u, v), cu * cv);
    }
  }
  return s;
}

NcSeries shuffle_mul(const NcSeries& x, const NcSeries& y, ShuffleMemo* memo) {
  const int d = std::min(x.truncation_degree(), y.truncation_degree());
  NcSeries s(d);
  for (int i = 0; i <= std::min(d, x.truncation_degree()); ++i) {
    if (x.grade(i).empty()) continue;
    for (int j = 0; i + j <= d && j <= y.truncation_degree(); ++j) {
      for (const auto& [u, cu] : x.grade(i))
        for (const auto& [v, cv] : y.grade(j)) {
          const Rational k = cu * cv;
          if (memo) {
            for (const auto& [w, m] : memo->shuffle(u, v)) s.add_term(w, k * Rational(m));
          } else {
            for (const auto& [w, m] : shuffle_words(u, v)) s.add_term(w, k * Rational(m));
          }
        }
    }
  }
  return s;
}

NcSeries shuffle_exp(const NcSeries& p, ShuffleMemo* memo) {
  if (!p.coefficient(Word()).is_zero())
    throw std::domain_error("shuffle_exp: nonzero constant term");
  const int d = p.truncation_degree();
  NcSeries e = NcSeries::zero(d);
  e.add_term(Word(), Rational(1));
  for (int n = 1; n <= d; ++n) {
    NcSeries acc = NcSeries::zero(n);  // collects n * e_n
    for (int m = 1; m <= n; ++m) {
      if (p.grade(m).empty() || (n - m > 0 && e.grade(n - m).empty())) continue;
      const Rational mm(m);
      for (const auto& [u, cu] : p.grade(m)) {
        const Rational cum = mm * cu;
        for (const auto& [v, cv] : e.grade(n - m)) {
          const Rational k = cum * cv;
          if (memo) {
            for (const auto& [w, mult] : memo->shuffle(u, v)) acc.add_term(w, k * Rational(mult));
          } else {
            for (const auto& [w, mult] : shuffle_words(u, v)) acc.add_term(w, k * Rational(mult));
          }
        }
      }
    }
    const Rational inv_n = Rational(1, n);
    for (const auto& [w, cv] : acc.grade(n)) e.add_term(w, inv_n * cv);
  }
  return e;
}

NcSeries antipode(const NcSeries& x) {
  NcSeries s(x.truncation_degree());
  for (int n = 0; n <= x.truncation_degree(); ++n)
    for (const auto& [w, cv] : x.grade(n)) s.add_term(reversed(w), cv);
  return s;
}

NcSeries flip(const NcSeries& x) {
  NcSeries s(x.truncation_degree());
  for (int n = 0; n <= x.truncation_degree(); ++n)
    for (const auto& [w, cv] : x.grade(n)) s.add_term(flipped(w), cv);
  return s;
}

std::string to_text(const NcSeries& x) {
  const auto terms = x.sorted_terms();
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, cv] : terms) {
    const Rational mag = abs(cv);
    if (first) {
      if (cv.sign() < 0) out += "-";
      first = false;
    } else {
      out += cv.sign() < 0 ? " - " : " + ";
    }
    if (w.empty()) out += mag.str();
    else if (mag == Rational(1)) out += w.str();
    else out += mag.str() + w.str();
  }
  return out;
}

}  // namespace sl2flow
