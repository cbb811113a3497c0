#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "promag/fpmatrix.hpp"
#include "promag/pquot.hpp"
#include "promag/scalars.hpp"
#include "promag/wordexpr.hpp"

namespace promag {

// Finitely presented group together with exact-exponent images of its
// generators inside the ambient free group on x1..x<ambient_rank>.
struct Presentation {
  std::uint32_t p = 0;
  std::uint32_t ambient_rank = 0;
  std::vector<std::string> generators;
  std::vector<WordExpr> relators;
  std::map<std::string, WordExpr> images;
};

Presentation presentation_from_json(const Json& j);
Json presentation_to_json(const Presentation& pres);

// Freely reduced word over the presentation generators; letters are
// +-(generator index + 1).
using Word = std::vector<std::int32_t>;

Word word_letters(const WordExpr& w, const std::vector<std::string>& gens);
Word word_mul(const Word& a, const Word& b);
Word word_inv(const Word& a);

// Element of the mod-p group ring of the free group on the presentation
// generators. Keys are reduced words, values lie in [1, p).
using GroupRingElem = std::map<Word, std::uint32_t>;

GroupRingElem gr_unit(const PrimeField& F);
GroupRingElem gr_term(const PrimeField& F, const Word& w, std::uint32_t c);
GroupRingElem gr_add(const PrimeField& F, const GroupRingElem& a, const GroupRingElem& b);
GroupRingElem gr_neg(const PrimeField& F, const GroupRingElem& a);
GroupRingElem gr_sub(const PrimeField& F, const GroupRingElem& a, const GroupRingElem& b);
GroupRingElem gr_mul(const PrimeField& F, const GroupRingElem& a, const GroupRingElem& b);

// d(w)/d(x_gen) for 1-based gen: sum of signed prefixes, so that
// sum_j d(w)/d(x_j) * (x_j - 1) = w - 1.
GroupRingElem fox_derivative(const PrimeField& F, const Word& w, std::uint32_t gen);

struct GroupRingMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<GroupRingElem>> a;

  static GroupRingMatrix zero(std::size_t r, std::size_t c);
};

GroupRingMatrix gr_mat_mul(const PrimeField& F, const GroupRingMatrix& A,
                           const GroupRingMatrix& B);

// Replaces each entry by the right-regular-representation block over the
// image subgroup: the block row of u has the coefficient of g at column u*g.
// Entry-wise this turns ring products into matrix products.
SparseFpMatrix induce_matrix(const QuotientHom& h, const GroupRingMatrix& M);

struct RankValue {
  std::size_t rank_induced = 0;
  std::size_t image_order = 0;
  Rational value;  // rank_induced / image_order
};

RankValue sylvester_rank(const QuotientHom& h, const GroupRingMatrix& M);

struct SylvesterReport {
  bool normalization = false;  // rk(unit) = 1, rk(0) = 0
  bool additivity = false;     // rk(A (+) B) = rk A + rk B
  bool triangular = false;     // rk [[A,C],[0,B]] >= rk A + rk B
  bool product = false;        // rk(AB) <= min(rk A, rk B)
  std::uint32_t trials = 0;
  bool all() const { return normalization && additivity && triangular && product; }
};

SylvesterReport sylvester_axiom_suite(const QuotientHom& h, std::uint64_t seed,
                                      std::uint32_t trials);
Json sylvester_report_json(const SylvesterReport& r);

struct Beta1Level {
  std::uint32_t level = 0;
  std::size_t order = 0;  // size of the level quotient
  std::size_t index = 0;  // order of the image subgroup
  std::size_t h1 = 0;     // first homology dimension of the cover, mod p
  Rational b;             // h1 / index
  bool dense = false;
  bool factored = false;
  bool lower_bound_ok = false;  // dense and h1 >= (ambient_rank-1)*order + 1
};

struct Beta1Options {
  std::uint64_t cap = kDefaultQuotientCap;
  RelatorPolicy policy = RelatorPolicy::impose;
};

// Appends one entry per level, in order, so partial progress survives a
// throw from a later level.
void beta1_sequence(const Presentation& pres, const std::vector<std::uint32_t>& levels,
                    std::vector<Beta1Level>& out, const Beta1Options& opt = {});

Json beta1_report(const Presentation& pres, const std::vector<Beta1Level>& levels);

}  // namespace promag
