#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <utility>

#include "rrlab/error.hpp"

namespace rrlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Field element: a residue modulo a fixed odd prime p (canonical representative
// in [0, p)), or an exact rational when p == 0.  All arithmetic is exact.
class Coeff {
 public:
  Coeff() = default;  // zero over the rationals

  static Coeff integer(long long v, long long p) {
    Coeff c;
    c.p_ = p;
    if (p > 0) {
      c.r_ = v % p;
      if (c.r_ < 0) c.r_ += p;
    } else {
      c.q_ = v;
    }
    return c;
  }

  static Coeff rational(Rational q) {
    Coeff c;
    c.q_ = std::move(q);
    return c;
  }

  long long characteristic() const { return p_; }
  bool is_zero() const { return p_ > 0 ? r_ == 0 : q_.is_zero(); }
  bool is_one() const { return p_ > 0 ? r_ == 1 : q_ == 1; }
  long long residue() const { return r_; }
  const Rational& rat() const { return q_; }

  Coeff operator+(const Coeff& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    match(o);
    if (p_ > 0) {
      Coeff c;
      c.p_ = p_;
      c.r_ = r_ + o.r_;
      if (c.r_ >= p_) c.r_ -= p_;
      return c;
    }
    return rational(q_ + o.q_);
  }

  Coeff operator-() const {
    if (p_ > 0) {
      Coeff c;
      c.p_ = p_;
      c.r_ = r_ == 0 ? 0 : p_ - r_;
      return c;
    }
    return rational(-q_);
  }

  Coeff operator-(const Coeff& o) const { return *this + (-o); }

  Coeff operator*(const Coeff& o) const {
    if (is_zero()) return *this;
    if (o.is_zero()) return o;
    match(o);
    if (p_ > 0) {
      Coeff c;
      c.p_ = p_;
      c.r_ = (r_ * o.r_) % p_;  // p < 2^31 so the product fits in 64 bits
      return c;
    }
    return rational(q_ * o.q_);
  }

  Coeff inv() const {
    if (is_zero()) throw Failure("DIVISION_BY_ZERO", "inverse of zero coefficient");
    if (p_ == 0) return rational(Rational(1) / q_);
    // extended Euclid
    long long a = r_, b = p_, x0 = 1, x1 = 0;
    while (b != 0) {
      long long q = a / b;
      long long t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    Coeff c;
    c.p_ = p_;
    c.r_ = x0 % p_;
    if (c.r_ < 0) c.r_ += p_;
    return c;
  }

  Coeff operator/(const Coeff& o) const { return *this * o.inv(); }

  bool operator==(const Coeff& o) const {
    if (is_zero() && o.is_zero()) return true;
    if (p_ != o.p_) return false;
    return p_ > 0 ? r_ == o.r_ : q_ == o.q_;
  }
  bool operator!=(const Coeff& o) const { return !(*this == o); }

  // True when the value is an integer (always for residues).
  bool is_integral() const { return p_ > 0 || boost::multiprecision::denominator(q_) == 1; }

  std::string str() const {
    if (p_ > 0) return std::to_string(r_);
    return q_.str();
  }

 private:
  void match(const Coeff& o) const {
    if (p_ != o.p_)
      throw Failure("RING_MISMATCH", "coefficients from fields of different characteristic");
  }

  long long p_ = 0;  // 0 = rationals, otherwise the odd prime modulus
  long long r_ = 0;
  Rational q_;
};

}  // namespace rrlab
