#include "promag/scalars.hpp"

#include <cctype>

namespace promag {

namespace {

bool is_probable_prime(std::uint32_t p) {
  if (p < 2) return false;
  // GMP's test is deterministic far beyond 32-bit inputs.
  return mpz_probab_prime_p(Integer(p).get_mpz_t(), 32) != 0;
}

Integer parse_integer(const std::string& text) {
  if (text.empty()) fail(Errc::parse_error, "empty integer literal");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) fail(Errc::parse_error, "sign without digits in integer literal");
  for (; i < text.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      fail(Errc::parse_error, "bad digit in integer literal '" + text + "'");
  return Integer(text, 10);
}

}  // namespace

unsigned long legendre_valuation(unsigned long n, std::uint32_t p) {
  if (p < 2) fail(Errc::bad_argument, "legendre_valuation requires p >= 2");
  unsigned long total = 0;
  while (n > 0) {
    n /= p;
    total += n;
  }
  return total;
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(Errc::division_by_zero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    fail(Errc::parse_error, "denominator must be an unsigned positive integer");
  Integer den = parse_integer(den_text);
  if (den == 0) fail(Errc::parse_error, "zero denominator in rational literal");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) fail(Errc::division_by_zero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational binomial(const Rational& a, unsigned long n) {
  Rational result(1);
  Rational factor = a;
  for (unsigned long i = 0; i < n; ++i) {
    result *= factor;
    result /= Rational(Integer(static_cast<long>(i + 1)));
    factor -= Rational(1);
  }
  return result;
}

Integer binomial(const Integer& a, unsigned long n) {
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), a.get_mpz_t(), n);
  return r;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_probable_prime(p)) fail(Errc::bad_argument, "modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) fail(Errc::bad_argument, "prime modulus too large");
}

FpElem PrimeField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return {static_cast<std::uint64_t>(r)};
}

FpElem PrimeField::from_integer(const Integer& n) const {
  return {mpz_fdiv_ui(n.get_mpz_t(), p_)};
}

FpElem PrimeField::from_rational(const Rational& r) const {
  FpElem den = from_integer(r.denominator());
  if (den.v == 0)
    fail(Errc::not_invertible,
         "denominator of " + r.str() + " is not invertible mod " + std::to_string(p_));
  return mul(from_integer(r.numerator()), inverse(den));
}

FpElem PrimeField::inverse(const Elem& a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "inverse of zero in F_" + std::to_string(p_));
  // Extended Euclid on (a, p).
  long long t = 0, new_t = 1;
  long long r = p_, new_r = static_cast<long long>(a.v);
  while (new_r != 0) {
    long long q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p_;
  return {static_cast<std::uint64_t>(t)};
}

FpElem PrimeField::binomial(const Elem& a, unsigned long n) const {
  if (legendre_valuation(n, p_) > 0)
    fail(Errc::not_invertible, "binomial(., " + std::to_string(n) + ") is undefined in F_" +
                                   std::to_string(p_) + ": n! is divisible by p; lift through Z/p^k");
  Elem result = one();
  Elem factor = a;
  for (unsigned long i = 0; i < n; ++i) {
    result = mul(result, factor);
    result = div(result, from_int(static_cast<long long>(i + 1)));
    factor = sub(factor, one());
  }
  return result;
}

FpElem PrimeField::parse(const std::string& text) const { return from_integer(parse_integer(text)); }

PadicRing::PadicRing(std::uint32_t p, std::uint32_t base_precision) : p_(p), k_(base_precision) {
  if (!is_probable_prime(p)) fail(Errc::bad_argument, "modulus " + std::to_string(p) + " is not prime");
  if (k_ == 0) fail(Errc::bad_argument, "p-adic base precision must be at least 1");
  mpz_ui_pow_ui(pk_.get_mpz_t(), p_, k_);
}

Integer PadicRing::modulus(std::uint32_t prec) const {
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), p_, prec);
  return m;
}

PadicValue PadicRing::make(Integer v, std::uint32_t prec) const {
  if (prec == 0 || prec > k_)
    fail(Errc::bad_argument, "p-adic precision " + std::to_string(prec) + " outside [1, " +
                                 std::to_string(k_) + "]");
  Integer m = modulus(prec);
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return {r, prec};
}

PadicValue PadicRing::from_integer(const Integer& n, std::uint32_t prec) const { return make(n, prec); }

PadicValue PadicRing::from_rational(const Rational& r) const {
  Integer den = r.denominator();
  if (mpz_fdiv_ui(den.get_mpz_t(), p_) == 0)
    fail(Errc::not_invertible,
         "denominator of " + r.str() + " is not a unit in Z/" + std::to_string(p_) + "^k");
  PadicValue d = make(den, k_);
  return mul(make(r.numerator(), k_), inverse(d));
}

bool PadicRing::congruent(const Elem& a, const Elem& b) const {
  std::uint32_t prec = std::min(a.k, b.k);
  Integer m = modulus(prec);
  Integer d = a.v - b.v;
  return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) != 0;
}

PadicValue PadicRing::add(const Elem& a, const Elem& b) const {
  return make(a.v + b.v, std::min(a.k, b.k));
}

PadicValue PadicRing::neg(const Elem& a) const { return make(-a.v, a.k); }

PadicValue PadicRing::mul(const Elem& a, const Elem& b) const {
  return make(a.v * b.v, std::min(a.k, b.k));
}

unsigned long PadicRing::valuation(const Elem& a) const {
  if (a.v == 0) fail(Errc::bad_argument, "valuation of a residue that is zero at its precision");
  Integer reduced;
  return mpz_remove(reduced.get_mpz_t(), a.v.get_mpz_t(), Integer(p_).get_mpz_t());
}

PadicValue PadicRing::inverse(const Elem& a) const {
  if (a.v == 0) fail(Errc::division_by_zero, "inverse of zero in Z/p^k");
  if (mpz_fdiv_ui(a.v.get_mpz_t(), p_) == 0)
    fail(Errc::not_invertible, "inverse of a non-unit in Z/" + std::to_string(p_) + "^k");
  Integer m = modulus(a.k);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.v.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(Errc::not_invertible, "residue is not invertible");
  return {inv, a.k};
}

PadicValue PadicRing::div(const Elem& a, const Elem& b) const {
  if (b.v == 0) fail(Errc::division_by_zero, "p-adic division by a residue that is zero at its precision");
  unsigned long t = valuation(b);
  std::uint32_t prec = std::min(a.k, b.k);
  if (t >= prec)
    fail(Errc::precision_exhausted, "division by valuation-" + std::to_string(t) +
                                        " divisor leaves no precision (had " + std::to_string(prec) + ")");
  Integer unit = b.v;
  if (t > 0) {
    Integer pt = modulus(static_cast<std::uint32_t>(t));
    if (a.v != 0 && mpz_divisible_p(a.v.get_mpz_t(), pt.get_mpz_t()) == 0)
      fail(Errc::not_invertible, "dividend valuation is smaller than divisor valuation");
    Integer av;
    mpz_divexact(av.get_mpz_t(), a.v.get_mpz_t(), pt.get_mpz_t());
    mpz_divexact(unit.get_mpz_t(), b.v.get_mpz_t(), pt.get_mpz_t());
    PadicValue num = make(av, prec - static_cast<std::uint32_t>(t));
    return mul(num, inverse(make(unit, prec - static_cast<std::uint32_t>(t))));
  }
  return mul(make(a.v, prec), inverse(make(unit, prec)));
}

PadicValue PadicRing::binomial(const Elem& a, unsigned long n) const {
  if (n == 0) return make(Integer(1), a.k);
  unsigned long loss = legendre_valuation(n, p_);
  if (loss >= a.k)
    fail(Errc::precision_exhausted,
         "binomial(., " + std::to_string(n) + ") needs precision > " + std::to_string(loss) +
             " but operand carries " + std::to_string(a.k));
  std::uint32_t out_prec = a.k - static_cast<std::uint32_t>(loss);
  // Numerator a(a-1)...(a-n+1) mod p^k; it is divisible by p^loss because the
  // exact binomial is a p-adic integer, so dividing out p^loss keeps
  // out_prec correct digits.
  Integer m = modulus(a.k);
  Integer num(1);
  Integer factor = a.v;
  for (unsigned long i = 0; i < n; ++i) {
    num = (num * factor) % m;
    factor -= 1;
  }
  Integer fact(1);
  mpz_fac_ui(fact.get_mpz_t(), n);
  Integer unit;
  unsigned long removed = mpz_remove(unit.get_mpz_t(), fact.get_mpz_t(), Integer(p_).get_mpz_t());
  (void)removed;
  if (loss > 0) {
    Integer pl = modulus(static_cast<std::uint32_t>(loss));
    if (mpz_divisible_p(num.get_mpz_t(), pl.get_mpz_t()) == 0)
      fail(Errc::bad_argument, "binomial numerator not divisible by p^v_p(n!)");
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), pl.get_mpz_t());
    num = q;
  }
  return mul(make(num, out_prec), inverse(make(unit, out_prec)));
}

std::string PadicRing::str(const Elem& a) const { return a.v.get_str(); }

PadicValue PadicRing::parse(const std::string& text) const { return make(parse_integer(text), k_); }

}  // namespace promag
