#include <map>

#include "doctest.h"
#include "promag/foxrank.hpp"
#include "testutil.hpp"

using namespace promag;
using testutil::fails_with;

namespace {

const std::vector<std::string> kAB = {"a", "b"};

Presentation free_f2(std::uint32_t p) {
  Presentation pres;
  pres.p = p;
  pres.ambient_rank = 2;
  pres.generators = kAB;
  pres.images.emplace("a", parse_word("x1"));
  pres.images.emplace("b", parse_word("x2"));
  return pres;
}

Presentation zsq(std::uint32_t p) {
  Presentation pres = free_f2(p);
  std::vector<std::string> names = kAB;
  pres.relators.push_back(parse_word("[a,b]", &names));
  return pres;
}

QuotientHom dense_hom(std::uint32_t p, std::uint32_t level) {
  auto Q = FiniteQuotient::build(p, 2, level);
  std::map<std::string, WordExpr> images;
  images.emplace("a", parse_word("x1"));
  images.emplace("b", parse_word("x2"));
  return hom_from_words(Q, kAB, images, {});
}

Word rword(Rng& rng, std::uint32_t gens, std::uint32_t max_len) {
  Word w;
  std::uint64_t len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) {
    auto g = static_cast<std::int32_t>(1 + rng.below(gens));
    w = word_mul(w, Word{rng.below(2) ? g : -g});
  }
  return w;
}

}  // namespace

TEST_CASE("word letters from expressions") {
  std::vector<std::string> names = {"a", "b"};
  CHECK(word_letters(parse_word("[a,b]", &names), names) == Word{1, 2, -1, -2});
  CHECK(word_letters(parse_word("a^2 b^-1", &names), names) == Word{1, 1, -2});
  CHECK(word_letters(parse_word("a a^-1", &names), names).empty());
  CHECK(fails_with(Errc::bad_argument, [&] { word_letters(parse_word("a^(1/2)", &names), names); }));
  CHECK(fails_with(Errc::unknown_generator, [&] { word_letters(parse_word("c"), names); }));
}

TEST_CASE("reduced word arithmetic") {
  CHECK(word_mul({1, 2}, {-2, 1}) == Word{1, 1});
  CHECK(word_mul({1, 2}, {-2, -1}).empty());
  CHECK(word_inv(Word{1, 2, -3}) == Word{3, -2, -1});
  CHECK(word_inv(Word{}).empty());
}

TEST_CASE("group ring operations satisfy ring identities") {
  PrimeField F(5);
  Rng rng(31337);
  auto relem = [&](std::uint32_t terms) {
    GroupRingElem e;
    for (std::uint32_t t = 0; t < terms; ++t)
      e = gr_add(F, e, gr_term(F, rword(rng, 2, 3), 1 + static_cast<std::uint32_t>(rng.below(4))));
    return e;
  };
  for (int t = 0; t < 40; ++t) {
    GroupRingElem a = relem(2), b = relem(2), c = relem(2);
    CHECK(gr_add(F, a, b) == gr_add(F, b, a));
    CHECK(gr_mul(F, gr_mul(F, a, b), c) == gr_mul(F, a, gr_mul(F, b, c)));
    CHECK(gr_mul(F, a, gr_add(F, b, c)) == gr_add(F, gr_mul(F, a, b), gr_mul(F, a, c)));
    CHECK(gr_sub(F, a, a).empty());
    CHECK(gr_mul(F, gr_unit(F), a) == a);
    CHECK(gr_mul(F, a, gr_unit(F)) == a);
    CHECK(gr_add(F, a, gr_neg(F, a)).empty());
  }
}

TEST_CASE("fox derivatives on frozen inputs") {
  PrimeField F(3);
  const std::uint32_t m1 = F.p() - 1;  // -1 mod p

  CHECK(fox_derivative(F, {1}, 1) == GroupRingElem{{Word{}, 1}});
  CHECK(fox_derivative(F, {1}, 2).empty());
  CHECK(fox_derivative(F, {-1}, 1) == GroupRingElem{{Word{-1}, m1}});
  CHECK(fox_derivative(F, {1, 2}, 2) == GroupRingElem{{Word{1}, 1}});

  Word comm{1, 2, -1, -2};
  CHECK(fox_derivative(F, comm, 1) == GroupRingElem{{Word{}, 1}, {Word{1, 2, -1}, m1}});
  CHECK(fox_derivative(F, comm, 2) == GroupRingElem{{Word{1}, 1}, {Word{1, 2, -1, -2}, m1}});
}

TEST_CASE("fox derivatives satisfy the telescoping identity") {
  PrimeField F(3);
  Rng rng(2718);
  for (int t = 0; t < 100; ++t) {
    Word w = rword(rng, 3, 20);
    GroupRingElem total;
    for (std::uint32_t j = 1; j <= 3; ++j) {
      GroupRingElem step = gr_sub(F, gr_term(F, {static_cast<std::int32_t>(j)}, 1), gr_unit(F));
      total = gr_add(F, total, gr_mul(F, fox_derivative(F, w, j), step));
    }
    CHECK(total == gr_sub(F, gr_term(F, w, 1), gr_unit(F)));
  }
}

TEST_CASE("induced matrices respect ring multiplication") {
  QuotientHom h = dense_hom(2, 3);
  const std::size_t m = h.image_order();

  GroupRingMatrix U = GroupRingMatrix::zero(1, 1);
  U.a[0][0] = gr_unit(h.quotient().field());
  SparseFpMatrix IU = induce_matrix(h, U);
  CHECK(IU.rows == m);
  CHECK(IU.cols == m);
  for (std::size_t r = 0; r < m; ++r) {
    REQUIRE(IU.data[r].size() == 1);
    CHECK(IU.data[r][0].first == r);
    CHECK(IU.data[r][0].second == 1);
  }

  auto dense = [&](const SparseFpMatrix& M) {
    std::vector<std::vector<unsigned long>> d(M.rows, std::vector<unsigned long>(M.cols, 0));
    for (std::size_t r = 0; r < M.rows; ++r)
      for (auto [c, v] : M.data[r]) d[r][c] = v;
    return d;
  };
  auto dense_mul = [&](const auto& A, const auto& B, unsigned long p) {
    std::vector<std::vector<unsigned long>> r(A.size(), std::vector<unsigned long>(B[0].size(), 0));
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t k = 0; k < B.size(); ++k)
        for (std::size_t j = 0; j < B[0].size(); ++j)
          r[i][j] = (r[i][j] + A[i][k] * B[k][j]) % p;
    return r;
  };

  PrimeField F = h.quotient().field();
  GroupRingMatrix A = GroupRingMatrix::zero(1, 1), B = GroupRingMatrix::zero(1, 1);
  A.a[0][0] = gr_add(F, gr_term(F, {1}, 1), gr_term(F, {2, -1}, 1));
  B.a[0][0] = gr_add(F, gr_unit(F), gr_term(F, {-2}, 1));
  auto lhs = dense(induce_matrix(h, gr_mat_mul(F, A, B)));
  auto rhs = dense_mul(dense(induce_matrix(h, A)), dense(induce_matrix(h, B)), 2);
  CHECK(lhs == rhs);
}

TEST_CASE("sparse rank agrees with dense elimination") {
  Rng rng(555);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    for (int t = 0; t < 25; ++t) {
      std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
      SparseFpMatrix M;
      M.p = static_cast<std::uint32_t>(p);
      M.rows = rows;
      M.cols = cols;
      M.data.resize(rows);
      std::vector<std::vector<unsigned long>> D(rows, std::vector<unsigned long>(cols, 0));
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
          unsigned long v = rng.below(2 * p) < p ? 0 : rng.below(p);
          D[r][c] = v;
          if (v != 0) M.data[r].emplace_back(static_cast<std::uint32_t>(c),
                                             static_cast<std::uint32_t>(v));
        }
      }
      CHECK(rank_fp(M) == oracle::dense_rank_fp(D, p));
    }
  }
}

TEST_CASE("echelon membership after absorption") {
  FpEchelon e(3, 4);
  CHECK(e.absorb({{0, 1}, {1, 2}}));
  CHECK(e.absorb({{1, 1}, {3, 1}}));
  CHECK(!e.absorb({{0, 2}, {1, 2}, {3, 1}}));  // 2*(first row) + (second row)
  CHECK(e.rank() == 2);
  CHECK(e.reduces_to_zero({{0, 1}, {1, 2}}));
  CHECK(e.reduces_to_zero({}));
  CHECK(!e.reduces_to_zero({{2, 1}}));
}

TEST_CASE("rank values over the dense level-2 quotient") {
  QuotientHom h = dense_hom(3, 2);
  REQUIRE(h.image_order() == 9);
  PrimeField F = h.quotient().field();

  GroupRingMatrix unit = GroupRingMatrix::zero(1, 1);
  unit.a[0][0] = gr_unit(F);
  CHECK(sylvester_rank(h, unit).value == Rational(1));

  GroupRingMatrix zero = GroupRingMatrix::zero(1, 1);
  CHECK(sylvester_rank(h, zero).value == Rational(0));

  // a - 1 kills exactly the column space fixed by <a>, of dimension 9/3.
  GroupRingMatrix aug = GroupRingMatrix::zero(1, 1);
  aug.a[0][0] = gr_sub(F, gr_term(F, {1}, 1), gr_unit(F));
  RankValue rv = sylvester_rank(h, aug);
  CHECK(rv.rank_induced == 6);
  CHECK(rv.image_order == 9);
  CHECK(rv.value == Rational(Integer(2), Integer(3)));
}

TEST_CASE("sylvester axioms hold on random samples") {
  QuotientHom h = dense_hom(3, 2);
  SylvesterReport r = sylvester_axiom_suite(h, 12345, 5);
  CHECK(r.all());
  CHECK(r.trials == 5);
  Json j = sylvester_report_json(r);
  CHECK(j.at("normalization") == true);
  CHECK(j.at("product") == true);
}

TEST_CASE("free group first homology grows with the quotient") {
  for (std::uint32_t level : {2u, 3u}) {
    Presentation pres = free_f2(3);
    std::vector<Beta1Level> out;
    beta1_sequence(pres, {level}, out);
    REQUIRE(out.size() == 1);
    const Beta1Level& L = out[0];
    CHECK(L.dense);
    CHECK(!L.factored);
    CHECK(L.order == L.index);
    CHECK(L.h1 == L.index + 1);
    CHECK(L.b == Rational(Integer(L.index + 1), Integer(L.index)));
    CHECK(L.lower_bound_ok);
  }
}

TEST_CASE("commuting pair collapses the approximation") {
  Presentation pres = zsq(3);
  std::vector<Beta1Level> out;
  beta1_sequence(pres, {2, 3, 4}, out);
  REQUIRE(out.size() == 3);

  CHECK(out[0].index == 9);
  CHECK(!out[0].factored);
  CHECK(out[0].b == Rational::parse("2/9"));

  CHECK(out[1].index == 9);
  CHECK(out[1].factored);
  CHECK(out[1].b == Rational::parse("2/9"));

  CHECK(out[2].index == 81);
  CHECK(out[2].factored);
  CHECK(out[2].b == Rational::parse("2/81"));

  CHECK(out[0].dense);  // the level-2 quotient is already abelian
  CHECK(!out[1].dense);
  CHECK(!out[2].dense);
  for (const Beta1Level& L : out) {
    CHECK(L.h1 == 2);
    CHECK(!L.lower_bound_ok);
  }

  Json j = beta1_report(pres, out);
  CHECK(j.at("schema") == "v1");
  CHECK(j.at("kind") == "beta1");
  CHECK(j.at("levels").size() == 3);
  CHECK(j.at("levels")[2].at("b") == "2/81");
}

TEST_CASE("require_vanishing stops at the first bad level") {
  Presentation pres = zsq(3);
  std::vector<Beta1Level> out;
  Beta1Options opt;
  opt.policy = RelatorPolicy::require_vanishing;
  bool thrown = false;
  try {
    beta1_sequence(pres, {2, 3}, out, opt);
  } catch (const Error& e) {
    thrown = true;
    CHECK(e.code() == Errc::relator_violation);
  }
  CHECK(thrown);
  CHECK(out.size() == 1);  // level 2 still completed
}

TEST_CASE("presentation json round trip") {
  Presentation pres = zsq(3);
  Json j = presentation_to_json(pres);
  Presentation back = presentation_from_json(j);
  CHECK(back.p == 3);
  CHECK(back.ambient_rank == 2);
  CHECK(back.generators == pres.generators);
  REQUIRE(back.relators.size() == 1);
  CHECK(back.relators[0].str() == pres.relators[0].str());
  CHECK(back.images.at("a").str() == "x1");

  Json bad = j;
  bad.erase("rho");
  CHECK(fails_with(Errc::parse_error, [&] { presentation_from_json(bad); }));
  CHECK(fails_with(Errc::parse_error, [&] { presentation_from_json(Json::object()); }));
  Json dup = j;
  dup["generators"] = std::vector<std::string>{"a", "a"};
  CHECK(fails_with(Errc::parse_error, [&] { presentation_from_json(dup); }));
}

TEST_CASE("matrix shape validation") {
  PrimeField F(3);
  GroupRingMatrix A = GroupRingMatrix::zero(2, 3), B = GroupRingMatrix::zero(2, 2);
  CHECK(fails_with(Errc::bad_argument, [&] { gr_mat_mul(F, A, B); }));
}
