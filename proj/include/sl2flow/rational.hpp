#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sl2flow {

// Exact rational number. Always reduced, denominator > 0, canonical zero 0/1.
// Thin value wrapper around GMP's mpq_class; construction canonicalizes,
// arithmetic on canonical values stays canonical.
class Rational {
public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design, coefficients are often ints
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  static Rational from_strings(const std::string& num, const std::string& den) {
    Rational r;
    try {
      r.q_ = mpq_class(mpz_class(num), mpz_class(den));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: bad integer string '" + num + "/" + den + "'");
    }
    if (r.q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
    r.q_.canonicalize();
    return r;
  }

  bool is_zero() const { return q_ == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string num_str() const { return q_.get_num().get_str(); }
  std::string den_str() const { return q_.get_den().get_str(); }
  std::string str() const { return is_integer() ? num_str() : num_str() + "/" + den_str(); }

  double to_double() const { return q_.get_d(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(Rational a) { a.q_ = -a.q_; return a; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
  mpq_class q_;
};

inline Rational abs(Rational r) { return r.sign() < 0 ? -r : r; }

// k^e for small integer bases/exponents, e.g. the (-2)^i * 2^j coefficient laws.
inline Rational ipow(long base, int exp) {
  if (exp < 0) throw std::domain_error("ipow: negative exponent");
  Rational r(1);
  for (int i = 0; i < exp; ++i) r *= Rational(base);
  return r;
}

inline Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

}  // namespace sl2flow
