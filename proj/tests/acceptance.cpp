// Acceptance gate: one line per criterion, [PASS]/[FAIL], nonzero exit when
// anything fails. Every comparison is exact; there are no tolerances.

#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "promag/extcheck.hpp"
#include "testutil.hpp"

using namespace promag;

namespace {

Presentation free_f2(std::uint32_t p) {
  Presentation pres;
  pres.p = p;
  pres.ambient_rank = 2;
  pres.generators = {"a", "b"};
  pres.images.emplace("a", parse_word("x1"));
  pres.images.emplace("b", parse_word("x2"));
  return pres;
}

Presentation zsq(std::uint32_t p) {
  Presentation pres = free_f2(p);
  std::vector<std::string> ab = {"a", "b"};
  pres.relators.push_back(parse_word("[a,b]", &ab));
  return pres;
}

Presentation flagship(std::uint32_t p) {
  Presentation pres = free_f2(p);
  std::vector<std::string> ab = {"a", "b"};
  return extend_root(pres, "t", parse_word("a^2 b^2", &ab), 3);
}

// 1. Dense free images: b_n = 1 + 1/|Q_n| exactly for p = 2, 3 at levels 2-4.
bool free_group_ratio() {
  bool ok = true;
  for (std::uint32_t p : {2u, 3u}) {
    std::vector<Beta1Level> out;
    beta1_sequence(free_f2(p), {2, 3, 4}, out);
    ok = ok && out.size() == 3;
    for (const Beta1Level& L : out) {
      ok = ok && L.dense && !L.factored && L.index == L.order;
      ok = ok && L.b == Rational(Integer(static_cast<unsigned long>(L.order + 1)),
                                 Integer(static_cast<unsigned long>(L.order)));
    }
  }
  return ok;
}

// 2. Commuting pair at p = 3, levels 2-4: b_n = 2 / s_n^2 where s_n is the
// independently computed multiplicative order of 1 + y at level n, and the
// last value drops below 1/10.
bool abelian_collapse() {
  std::vector<Beta1Level> out;
  beta1_sequence(zsq(3), {2, 3, 4}, out);
  if (out.size() != 3) return false;
  bool ok = true;
  for (std::size_t i = 0; i < 3; ++i) {
    mpz_class s = oracle::cyclic_unit_order(3, static_cast<unsigned>(i + 2));
    Integer index(s * s);
    ok = ok && Integer(static_cast<unsigned long>(out[i].index)) == index;
    ok = ok && out[i].h1 == 2;
    ok = ok && out[i].b == Rational(Integer(2), index);
  }
  ok = ok && out[2].b < Rational(Integer(1), Integer(10));
  return ok;
}

// 3. Cube-root extension at p = 2, 5, levels 2-3: relators vanish under the
// strict policy, the image is dense, and b_n >= 1 + 1/|Q_n|.
bool root_extension_profile() {
  bool ok = true;
  for (std::uint32_t p : {2u, 5u}) {
    Beta1Options opt;
    opt.policy = RelatorPolicy::require_vanishing;
    std::vector<Beta1Level> out;
    beta1_sequence(flagship(p), {2, 3}, out, opt);
    ok = ok && out.size() == 2;
    for (const Beta1Level& L : out) {
      ok = ok && L.dense;
      ok = ok && L.b >= Rational(Integer(static_cast<unsigned long>(L.order + 1)),
                                 Integer(static_cast<unsigned long>(L.order)));
    }
  }
  return ok;
}

// 4. The half-power commutator certifies at degree 2 with leading component
// (1/2)(y1 y2 - y2 y1), cross-checked against a coefficient recurrence that
// never calls the binomial code; the square of the square root cancels
// exactly at truncation 12.
bool half_power_certificate() {
  using QSeries = Series<RationalField>;
  RationalField F;

  // Square-root coefficients from c_0 = 1, 2 c_n = [n = 1] - sum c_i c_(n-i).
  std::vector<mpq_class> c(8);
  c[0] = 1;
  for (std::size_t n = 1; n < c.size(); ++n) {
    mpq_class s = (n == 1) ? 1 : 0;
    for (std::size_t i = 1; i < n; ++i) s -= c[i] * c[n - i];
    c[n] = s / 2;
  }
  auto coeff = [&](std::size_t n) { return Rational(Integer(c[n].get_num()), Integer(c[n].get_den())); };

  QSeries lib = QSeries::one_plus_gen(F, 1, 8, 0)
                    .binomial_power(Exponent::of_rational(Rational::parse("1/2")));
  bool ok = true;
  for (std::size_t n = 0; n < 8; ++n)
    ok = ok && lib.coefficient(Monomial(n, 0u)) == coeff(n);

  auto cert = certify_nontrivial(parse_word("[x1^(1/2),x2]"), F, 2, 16);
  ok = ok && cert.has_value() && cert->degree == 2;
  QSeries expect(F, 2, 3);
  expect.set({0, 1}, Rational::parse("1/2"));
  expect.set({1, 0}, Rational::parse("-1/2"));
  ok = ok && cert.has_value() && cert->component.eq(expect);

  // Rebuild the commutator from the recurrence coefficients alone.
  QSeries u = QSeries::one(F, 2, 3);
  u.set({0}, coeff(1));
  u.set({0, 0}, coeff(2));
  QSeries v = QSeries::one_plus_gen(F, 2, 3, 1);
  QSeries comm = u.mul(v).mul(u.invert_unit()).mul(v.invert_unit());
  auto lt = comm.sub(QSeries::one(F, 2, 3)).lowest_term();
  ok = ok && lt.has_value() && lt->first == 2 && lt->second.eq(expect);

  ok = ok && magnus_eval(parse_word("(x1^(1/2))^2 x1^-1"),
                         MagnusContext<RationalField>(F, 1, 12))
                 .is_one();
  return ok;
}

// 5. Exponent laws on 200 seeded random unit series at truncation 6:
// g^a g^b = g^(a+b) and (g^a)^b = g^(ab) exactly, for random rational a, b.
bool exponent_laws() {
  Rng rng(20260814);
  int bad = 0;
  for (int t = 0; t < 200; ++t) {
    auto f = testutil::random_unit_series(rng, 2, 6, 3);
    Rational ra(Integer(static_cast<long>(rng.in_range(-4, 4))),
                Integer(static_cast<long>(1 + rng.below(4))));
    Rational rb(Integer(static_cast<long>(rng.in_range(-4, 4))),
                Integer(static_cast<long>(1 + rng.below(4))));
    auto A = Exponent::of_rational(ra), B = Exponent::of_rational(rb);
    auto fa = f.binomial_power(A);
    if (!fa.mul(f.binomial_power(B)).eq(f.binomial_power(Exponent::of_rational(ra + rb)))) ++bad;
    if (!fa.binomial_power(B).eq(f.binomial_power(Exponent::of_rational(ra * rb)))) ++bad;
  }
  return bad == 0;
}

// 6. The normalized rank at p = 3, level 2 satisfies the four matrix-rank
// axioms on 20 seeded random group-ring matrices.
bool rank_axioms() {
  auto Q = FiniteQuotient::build(3, 2, 2);
  std::map<std::string, WordExpr> images;
  images.emplace("a", parse_word("x1"));
  images.emplace("b", parse_word("x2"));
  QuotientHom h = hom_from_words(Q, {"a", "b"}, images, {});
  SylvesterReport r = sylvester_axiom_suite(h, 99991, 20);
  return r.all() && r.trials == 20;
}

// 7. Signed-prefix derivatives telescope: sum_j d(w)/d(x_j) (x_j - 1) = w - 1
// for 100 seeded random reduced words of length <= 20 over three generators.
bool derivative_identity() {
  PrimeField F(3);
  Rng rng(424242);
  for (int t = 0; t < 100; ++t) {
    Word w;
    std::uint64_t len = rng.below(21);
    for (std::uint64_t i = 0; i < len; ++i) {
      auto g = static_cast<std::int32_t>(1 + rng.below(3));
      w = word_mul(w, Word{rng.below(2) ? g : -g});
    }
    GroupRingElem total;
    for (std::uint32_t j = 1; j <= 3; ++j) {
      GroupRingElem step = gr_sub(F, gr_term(F, {static_cast<std::int32_t>(j)}, 1), gr_unit(F));
      total = gr_add(F, total, gr_mul(F, fox_derivative(F, w, j), step));
    }
    if (!(total == gr_sub(F, gr_term(F, w, 1), gr_unit(F)))) return false;
  }
  return true;
}

// 8. On the cube-root extension at p = 2, levels 2-3, the difference ideal of
// the amalgamated subgroup <t^3> lies inside those of both factors.
bool amalgam_containment() {
  Presentation f = flagship(2);
  std::vector<std::string> abt = {"a", "b", "t"};
  AmalgamSpec spec;
  spec.h_gens = {parse_word("a", &abt), parse_word("b", &abt)};
  spec.b_gens = {parse_word("t", &abt)};
  spec.a_gens = {parse_word("t^3", &abt)};
  std::vector<AmalgamLevel> out;
  amalgam_check(f, spec, {2, 3}, out);
  return out.size() == 2 && out[0].contained && out[1].contained;
}

// 9. Congruent exponents give congruent binomials at the documented output
// precision, and series evaluation with too little precision refuses loudly
// instead of emitting unjustified digits.
bool precision_soundness() {
  bool ok = true;
  Rng rng(777777);
  for (int t = 0; t < 100; ++t) {
    std::uint32_t p = (t % 2 == 0) ? 2 : 3;
    auto k = static_cast<std::uint32_t>(2 + t % 5);
    Integer a(static_cast<long>(rng.in_range(-60, 60)));
    PadicRing R(p, k);
    Integer a2 = a + R.modulus(k) * Integer(static_cast<long>(rng.in_range(1, 9)));
    for (unsigned long n = 1; n <= 8; ++n) {
      unsigned long v = legendre_valuation(n, p);
      if (v >= k) continue;
      Integer c1 = binomial(a, n), c2 = binomial(a2, n);
      Integer mod = R.modulus(k - static_cast<std::uint32_t>(v));
      Integer diff = c1 - c2;
      ok = ok && mpz_divisible_p(diff.get_mpz_t(), mod.get_mpz_t()) != 0;
      PadicValue pv = R.binomial(R.from_integer(a), n);
      Integer want;
      mpz_fdiv_r(want.get_mpz_t(), c1.get_mpz_t(), mod.get_mpz_t());
      ok = ok && pv.k == k - v && pv.v == want;
    }
  }

  PadicRing R2(3, 2);
  auto g = Series<PadicRing>::one_plus_gen(R2, 1, 6, 0);
  auto s = g.binomial_power(Exponent::of_padic(Integer(7), 2));
  for (unsigned long n = 1; n <= 5; ++n) {
    auto v = static_cast<std::uint32_t>(legendre_valuation(n, 3));
    Integer mod = R2.modulus(2 - v), want, cn = binomial(Integer(7), n);
    mpz_fdiv_r(want.get_mpz_t(), cn.get_mpz_t(), mod.get_mpz_t());
    PadicValue cv = s.coefficient(Monomial(n, 0u));
    if (want == 0)
      ok = ok && cv.v == 0;
    else
      ok = ok && cv.k == 2 - v && cv.v == want;
  }

  bool refused = false;
  try {
    PadicRing R1(3, 1);
    Series<PadicRing>::one_plus_gen(R1, 1, 6, 0)
        .binomial_power(Exponent::of_padic(Integer(7), 1));
  } catch (const Error& e) {
    refused = e.code() == Errc::precision_exhausted &&
              std::string(e.what()).find("need k >= 2") != std::string::npos;
  }
  return ok && refused;
}

}  // namespace

int main() {
  struct Criterion {
    bool (*run)();
    const char* what;
  };
  const Criterion criteria[] = {
      {free_group_ratio, "dense free images: b_n equals 1 + 1/|Q_n| exactly (p=2,3; levels 2-4)"},
      {abelian_collapse,
       "commuting pair: b_n matches the abelian-cover oracle 2/s_n^2 and b_4 < 1/10 (p=3)"},
      {root_extension_profile,
       "cube-root extension: relators vanish, image dense, b_n >= 1 + 1/|Q_n| (p=2,5; levels 2-3)"},
      {half_power_certificate,
       "half-power commutator certifies at degree 2 with component (y1y2 - y2y1)/2; sqrt squared "
       "cancels at N=12"},
      {exponent_laws,
       "exponent addition and composition laws hold on 200 seeded random unit series at N=6"},
      {rank_axioms,
       "normalized rank satisfies normalization, additivity, triangularity, and the product bound "
       "on 20 seeded samples"},
      {derivative_identity,
       "signed-prefix derivatives telescope to w - 1 for 100 seeded random words of length <= 20"},
      {amalgam_containment,
       "amalgamated difference ideal is contained in both factor ideals (p=2; levels 2-3)"},
      {precision_soundness,
       "p-adic binomials respect the documented output precision and refuse under-determined "
       "digits"},
  };

  int failures = 0;
  int id = 0;
  for (const Criterion& c : criteria) {
    ++id;
    bool ok = false;
    std::string note;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("  (threw: ") + e.what() + ")";
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << " " << c.what << note << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
