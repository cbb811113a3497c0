#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "promag/scalars.hpp"
#include "promag/wordexpr.hpp"

namespace promag {

// Word in the free monoid on d noncommuting variables y_0..y_{d-1}; the
// empty word is the constant monomial.
using Monomial = std::vector<std::uint32_t>;

// Graded order: shorter monomials first, lexicographic within a degree.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Element of D<y_0..y_{d-1}> / (degree >= N): a sparse, exact truncated
// noncommutative power series. Zero coefficients are never stored.
template <class D>
class Series {
public:
  using Elem = typename D::Elem;
  using TermMap = std::map<Monomial, Elem, GradedLex>;

  Series(D dom, std::uint32_t d, std::uint32_t trunc) : dom_(std::move(dom)), d_(d), N_(trunc) {
    if (d_ == 0) fail(Errc::bad_argument, "series needs at least one variable");
    if (N_ == 0) fail(Errc::bad_argument, "truncation degree must be >= 1");
  }

  static Series one(D dom, std::uint32_t d, std::uint32_t trunc) {
    Series s(std::move(dom), d, trunc);
    s.set({}, s.dom_.one());
    return s;
  }

  // 1 + y_i, the image of the i-th free generator.
  static Series one_plus_gen(D dom, std::uint32_t d, std::uint32_t trunc, std::uint32_t i) {
    Series s = one(std::move(dom), d, trunc);
    if (i >= d) fail(Errc::bad_argument, "variable index out of range");
    if (trunc > 1) s.set({i}, s.dom_.one());
    return s;
  }

  const D& domain() const { return dom_; }
  std::uint32_t vars() const { return d_; }
  std::uint32_t truncation() const { return N_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           dom_.eq(terms_.begin()->second, dom_.one());
  }

  Elem coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? dom_.zero() : it->second;
  }

  void set(const Monomial& m, const Elem& c) {
    if (m.size() >= N_) return;
    for (std::uint32_t v : m)
      if (v >= d_) fail(Errc::bad_argument, "variable index out of range");
    if (dom_.is_zero(c))
      terms_.erase(m);
    else
      terms_[m] = c;
  }

  void add_to(const Monomial& m, const Elem& c) {
    if (m.size() >= N_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!dom_.is_zero(c)) terms_.emplace(m, c);
      return;
    }
    Elem s = dom_.add(it->second, c);
    if (dom_.is_zero(s))
      terms_.erase(it);
    else
      it->second = s;
  }

  Series add(const Series& o) const {
    check_shape(o);
    Series r = *this;
    for (const auto& [m, c] : o.terms_) r.add_to(m, c);
    return r;
  }

  Series neg() const {
    Series r(dom_, d_, N_);
    for (const auto& [m, c] : terms_) r.terms_[m] = dom_.neg(c);
    return r;
  }

  Series sub(const Series& o) const { return add(o.neg()); }

  Series scalar_mul(const Elem& c) const {
    Series r(dom_, d_, N_);
    if (dom_.is_zero(c)) return r;
    for (const auto& [m, v] : terms_) {
      Elem p = dom_.mul(v, c);
      if (!dom_.is_zero(p)) r.terms_[m] = p;
    }
    return r;
  }

  Series mul(const Series& o) const {
    check_shape(o);
    Series r(dom_, d_, N_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        if (ma.size() + mb.size() >= N_) break;  // o.terms_ is graded, rest only longer
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        r.add_to(m, dom_.mul(ca, cb));
      }
    }
    return r;
  }

  // Inverse of a series whose constant term is a unit, via the Neumann series
  // of the augmentation part.
  Series invert_unit() const {
    Elem c0 = coefficient({});
    if (dom_.is_zero(c0))
      fail(Errc::not_invertible, "series has no invertible constant term");
    Elem c0inv = dom_.inverse(c0);
    // s = c0 (1 + g) with g of positive lowest degree; s^-1 = (sum (-g)^j) c0^-1.
    Series g = scalar_mul(c0inv);
    g.terms_.erase(Monomial{});
    Series acc = one(dom_, d_, N_);
    Series power = one(dom_, d_, N_);
    Series neg_g = g.neg();
    for (std::uint32_t j = 1; j < N_; ++j) {
      power = power.mul(neg_g);
      if (power.is_zero()) break;
      acc = acc.add(power);
    }
    return acc.scalar_mul(c0inv);
  }

  // (1 + f)^a = 1 + sum_{n>=1} C(a,n) f^n for this series 1 + f, which must
  // have constant term exactly 1. Works for integer, rational, and p-adic
  // exponents; see binomial_for_exponent for the per-domain rules.
  Series binomial_power(const Exponent& a) const;

  // Lower the truncation degree, discarding higher terms.
  Series truncate(std::uint32_t new_trunc) const {
    if (new_trunc > N_)
      fail(Errc::bad_argument, "truncate can only lower the truncation degree");
    Series r(dom_, d_, new_trunc);
    for (const auto& [m, c] : terms_) {
      if (m.size() >= new_trunc) break;
      r.terms_[m] = c;
    }
    return r;
  }

  // Minimal-degree nonzero homogeneous component, as (degree, slice) with the
  // slice truncated at degree+1 so it is exactly the component.
  std::optional<std::pair<std::uint32_t, Series>> lowest_term() const {
    if (terms_.empty()) return std::nullopt;
    std::uint32_t deg = static_cast<std::uint32_t>(terms_.begin()->first.size());
    Series slice(dom_, d_, deg + 1);
    for (const auto& [m, c] : terms_) {
      if (m.size() != deg) break;
      slice.terms_[m] = c;
    }
    return std::make_pair(deg, std::move(slice));
  }

  bool eq(const Series& o) const {
    check_shape(o);
    if (terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [m, c] : terms_) {
      if (m != it->first || !dom_.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  // Canonical text key; equal series (same shape) produce equal keys.
  std::string key() const {
    std::string k;
    for (const auto& [m, c] : terms_) {
      for (std::uint32_t v : m) {
        k += std::to_string(v);
        k += '.';
      }
      k += ':';
      k += dom_.str(c);
      k += ';';
    }
    return k;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + dom_.str(c) + ")";
      for (std::uint32_t v : m) out += "*y" + std::to_string(v + 1);
    }
    return out;
  }

  friend Series operator+(const Series& a, const Series& b) { return a.add(b); }
  friend Series operator-(const Series& a, const Series& b) { return a.sub(b); }
  friend Series operator*(const Series& a, const Series& b) { return a.mul(b); }
  friend bool operator==(const Series& a, const Series& b) { return a.eq(b); }
  friend bool operator!=(const Series& a, const Series& b) { return !a.eq(b); }

private:
  void check_shape(const Series& o) const {
    if (d_ != o.d_ || N_ != o.N_ || !dom_.same(o.dom_))
      fail(Errc::domain_mismatch, "series shapes differ (variables, truncation, or domain)");
  }

  D dom_;
  std::uint32_t d_;
  std::uint32_t N_;
  TermMap terms_;
};

// C(a, n) as an element of the coefficient domain, for a word exponent a.
//
// Rational field: integer and rational exponents only.
// F_p: rational exponents need a p-coprime denominator; p-adic exponents
//   need precision k > v_p(n!), computed through Z/p^k and reduced.
// Z/p^k: same denominator rule; precision bookkeeping as in PadicRing.
inline RationalField::Elem binomial_for_exponent(const RationalField& dom, const Exponent& a,
                                                 unsigned long n) {
  switch (a.kind()) {
    case Exponent::Kind::integer:
      return Rational(binomial(a.int_value(), n));
    case Exponent::Kind::rational:
      return binomial(a.rational_value(), n);
    case Exponent::Kind::padic:
      fail(Errc::domain_mismatch, "p-adic exponents require a mod-p coefficient domain");
  }
  return dom.zero();
}

inline PrimeField::Elem binomial_for_exponent(const PrimeField& dom, const Exponent& a,
                                              unsigned long n) {
  switch (a.kind()) {
    case Exponent::Kind::integer:
      return dom.from_integer(binomial(a.int_value(), n));
    case Exponent::Kind::rational: {
      const Rational& q = a.rational_value();
      if (mpz_fdiv_ui(q.denominator().get_mpz_t(), dom.p()) == 0)
        fail(Errc::not_invertible, "exponent denominator " + q.denominator().get_str() +
                                       " is not invertible mod " + std::to_string(dom.p()));
      return dom.from_rational(binomial(q, n));
    }
    case Exponent::Kind::padic: {
      if (n == 0) return dom.one();
      PadicRing lift(dom.p(), a.padic_precision());
      PadicValue c = lift.binomial(lift.from_integer(a.int_value()), n);
      return dom.from_integer(c.v);
    }
  }
  return dom.zero();
}

inline PadicRing::Elem binomial_for_exponent(const PadicRing& dom, const Exponent& a,
                                             unsigned long n) {
  switch (a.kind()) {
    case Exponent::Kind::integer:
      return dom.from_integer(binomial(a.int_value(), n));
    case Exponent::Kind::rational: {
      const Rational& q = a.rational_value();
      if (mpz_fdiv_ui(q.denominator().get_mpz_t(), dom.p()) == 0)
        fail(Errc::not_invertible, "exponent denominator " + q.denominator().get_str() +
                                       " is not a unit in Z/" + std::to_string(dom.p()) + "^k");
      return dom.from_rational(binomial(q, n));
    }
    case Exponent::Kind::padic: {
      if (n == 0) return dom.one();
      std::uint32_t prec = std::min(a.padic_precision(), dom.base_precision());
      return dom.binomial(dom.from_integer(a.int_value(), prec), n);
    }
  }
  return dom.zero();
}

namespace detail {

inline std::uint32_t domain_p(const RationalField&) { return 0; }
inline std::uint32_t domain_p(const PrimeField& f) { return f.p(); }
inline std::uint32_t domain_p(const PadicRing& r) { return r.p(); }

}  // namespace detail

template <class D>
Series<D> Series<D>::binomial_power(const Exponent& a) const {
  if (!dom_.eq(coefficient({}), dom_.one()))
    fail(Errc::bad_argument, "binomial power needs constant term exactly 1");
  if (a.kind() == Exponent::Kind::padic) {
    std::uint32_t p = detail::domain_p(dom_);
    if (p == 0) fail(Errc::domain_mismatch, "p-adic exponents require a mod-p coefficient domain");
    unsigned long needed = legendre_valuation(N_ - 1, p) + 1;
    if (a.padic_precision() < needed)
      fail(Errc::precision_exhausted,
           "p-adic exponent precision " + std::to_string(a.padic_precision()) +
               " is insufficient for truncation degree " + std::to_string(N_) +
               "; need k >= " + std::to_string(needed));
  }
  Series f = *this;
  f.terms_.erase(Monomial{});
  Series acc = one(dom_, d_, N_);
  Series power = one(dom_, d_, N_);
  for (std::uint32_t n = 1; n < N_; ++n) {
    power = power.mul(f);
    if (power.is_zero()) break;
    acc = acc.add(power.scalar_mul(binomial_for_exponent(dom_, a, n)));
  }
  return acc;
}

// --- JSON (field order: d, N, domain, [p, k,] terms) ---

inline Json series_coeff_json(const RationalField& dom, const Rational& c) { return dom.str(c); }
inline Json series_coeff_json(const PrimeField&, const FpElem& c) { return c.v; }
inline Json series_coeff_json(const PadicRing&, const PadicValue& c) {
  return Json{{"v", c.v.get_str()}, {"k", c.k}};
}

inline void series_domain_json(const RationalField&, Json& j) { j["domain"] = "q"; }
inline void series_domain_json(const PrimeField& dom, Json& j) {
  j["domain"] = "fp";
  j["p"] = dom.p();
}
inline void series_domain_json(const PadicRing& dom, Json& j) {
  j["domain"] = "zpk";
  j["p"] = dom.p();
  j["k"] = dom.base_precision();
}

template <class D>
Json series_to_json(const Series<D>& s) {
  Json j;
  j["d"] = s.vars();
  j["N"] = s.truncation();
  series_domain_json(s.domain(), j);
  Json terms = Json::array();
  for (const auto& [m, c] : s.terms()) {
    Json t;
    t["mon"] = m;
    t["c"] = series_coeff_json(s.domain(), c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

inline Rational series_coeff_from_json(const RationalField&, const Json& c) {
  return Rational::parse(c.get<std::string>());
}
inline FpElem series_coeff_from_json(const PrimeField& dom, const Json& c) {
  return dom.from_integer(Integer(c.get<std::int64_t>()));
}
inline PadicValue series_coeff_from_json(const PadicRing& dom, const Json& c) {
  return dom.from_integer(Integer(c.at("v").get<std::string>(), 10), c.at("k").get<std::uint32_t>());
}

template <class D>
Series<D> series_from_json(const D& dom, const Json& j) {
  Series<D> s(dom, j.at("d").get<std::uint32_t>(), j.at("N").get<std::uint32_t>());
  for (const Json& t : j.at("terms")) {
    Monomial m = t.at("mon").get<Monomial>();
    s.set(m, series_coeff_from_json(dom, t.at("c")));
  }
  return s;
}

}  // namespace promag
