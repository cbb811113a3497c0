#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "promag/errors.hpp"

namespace promag {

using Integer = mpz_class;

// v_p(n!) = sum_{i>=1} floor(n / p^i).
unsigned long legendre_valuation(unsigned long n, std::uint32_t p);

// Exact rational number. Invariants: always reduced, denominator >= 1.
class Rational {
public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit widening from integers is intended
  Rational(const Integer& n) : q_(n) {}
  Rational(const Integer& num, const Integer& den);

  // Accepts "n" or "n/d" with d > 0 after sign normalization.
  static Rational parse(const std::string& text);

  Integer numerator() const { return Integer(q_.get_num()); }
  Integer denominator() const { return Integer(q_.get_den()); }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return q_ == 0; }

  // "n" when integral, otherwise "n/d".
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

private:
  mpq_class q_;  // kept canonical
};

// C(a, n) = a(a-1)...(a-n+1) / n!, exact.
Rational binomial(const Rational& a, unsigned long n);
Integer binomial(const Integer& a, unsigned long n);

// Element of F_p. The modulus lives in the owning PrimeField; values are
// least non-negative residues.
struct FpElem {
  std::uint64_t v = 0;
  friend bool operator==(const FpElem&, const FpElem&) = default;
};

class PrimeField {
public:
  // Validates primality; p must fit in 31 bits so products fit in uint64.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  bool same(const PrimeField& o) const { return p_ == o.p_; }

  using Elem = FpElem;

  Elem zero() const { return {0}; }
  Elem one() const { return {1 % p_}; }
  bool is_zero(const Elem& a) const { return a.v == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a.v == b.v; }

  Elem from_int(long long n) const;
  Elem from_integer(const Integer& n) const;
  // Requires the denominator to be a unit mod p.
  Elem from_rational(const Rational& r) const;

  Elem add(const Elem& a, const Elem& b) const { std::uint64_t s = a.v + b.v; return {s >= p_ ? s - p_ : s}; }
  Elem neg(const Elem& a) const { return {a.v == 0 ? 0 : p_ - a.v}; }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const { return {(a.v * b.v) % p_}; }
  Elem inverse(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inverse(b)); }

  // Product formula; defined only when n! is a unit mod p (n < p). Larger n
  // must be routed through a truncated p-adic lift.
  Elem binomial(const Elem& a, unsigned long n) const;

  std::string str(const Elem& a) const { return std::to_string(a.v); }
  Elem parse(const std::string& text) const;

private:
  std::uint32_t p_;
};

// Element of Z/p^k with per-value precision: v is the least non-negative
// residue mod p^k and the value is asserted known only to that modulus.
struct PadicValue {
  Integer v;
  std::uint32_t k = 0;
  friend bool operator==(const PadicValue&, const PadicValue&) = default;
};

// Fixed prime p with a base (maximum) precision; arithmetic tracks how much
// precision survives each operation and never reports digits it cannot
// justify.
class PadicRing {
public:
  PadicRing(std::uint32_t p, std::uint32_t base_precision);

  std::uint32_t p() const { return p_; }
  std::uint32_t base_precision() const { return k_; }
  bool same(const PadicRing& o) const { return p_ == o.p_ && k_ == o.k_; }

  using Elem = PadicValue;

  Elem zero() const { return {Integer(0), k_}; }
  Elem one() const { return make(Integer(1), k_); }
  bool is_zero(const Elem& a) const { return a.v == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a.v == b.v && a.k == b.k; }
  // Agreement modulo p^min(k_a, k_b): the strongest claim both carry.
  bool congruent(const Elem& a, const Elem& b) const;

  Elem from_int(long long n) const { return make(Integer(static_cast<long>(n)), k_); }
  Elem from_integer(const Integer& n) const { return make(n, k_); }
  Elem from_integer(const Integer& n, std::uint32_t prec) const;
  // Requires the denominator to be a unit in Z_p.
  Elem from_rational(const Rational& r) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem mul(const Elem& a, const Elem& b) const;
  // Unit divisors keep precision; a divisor of valuation t costs t digits
  // and requires the dividend to be divisible by p^t.
  Elem div(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;

  // C(a, n) known mod p^(k_a - v_p(n!)); raises precision_exhausted when no
  // digit survives.
  Elem binomial(const Elem& a, unsigned long n) const;

  unsigned long valuation(const Elem& a) const;  // v_p of the residue; a must be nonzero
  Integer modulus(std::uint32_t prec) const;     // p^prec

  std::string str(const Elem& a) const;
  Elem parse(const std::string& text) const;  // decimal residue at base precision

private:
  Elem make(Integer v, std::uint32_t prec) const;

  std::uint32_t p_;
  std::uint32_t k_;
  Integer pk_;
};

// The rational field as a coefficient domain, so truncated series and the
// evaluator can be written uniformly against a domain object.
class RationalField {
public:
  using Elem = Rational;

  bool same(const RationalField&) const { return true; }

  Elem zero() const { return Rational(0); }
  Elem one() const { return Rational(1); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem from_int(long long n) const { return Rational(Integer(static_cast<long>(n))); }
  Elem from_integer(const Integer& n) const { return Rational(n); }
  Elem from_rational(const Rational& r) const { return r; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  Elem inverse(const Elem& a) const { return Rational(1) / a; }

  Elem binomial(const Elem& a, unsigned long n) const { return promag::binomial(a, n); }

  std::string str(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& text) const { return Rational::parse(text); }
};

}  // namespace promag
