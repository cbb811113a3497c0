#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "promag/foxrank.hpp"

namespace promag {

// Maximal root decomposition w = root^multiplicity in the free group on the
// word's letters (cyclic reduction plus period detection). The trivial word
// reports multiplicity 0.
struct RootAnalysis {
  Word root;
  std::uint32_t multiplicity = 0;
};

RootAnalysis analyze_free_root(const Word& w);

// Adjoins a generator t with relator t^degree * base^-1 and image
// rho(base)^(1/degree). Requires degree >= 2 coprime to p and a base word
// that is nontrivial and not a proper power over the presentation letters.
Presentation extend_root(const Presentation& pres, const std::string& new_gen,
                         const WordExpr& base, std::uint32_t degree);

// Adjoins commuting generators t_1..t_k with relators [t_j, base] and
// [t_j, t_l], and images rho(base)^lambda_j.
Presentation extend_centralizer(const Presentation& pres,
                                const std::vector<std::string>& new_gens, const WordExpr& base,
                                const std::vector<Exponent>& lambdas);

// Deterministic pseudo-random exponent in Z/p^k for centralizer extensions;
// never zero.
Exponent suggest_central_exponent(std::uint32_t p, std::uint32_t k, std::uint64_t seed);

// Subgroups given by generating words over the presentation generators.
struct AmalgamSpec {
  std::vector<WordExpr> h_gens, b_gens, a_gens;
};

// Comparison of the left ideals generated by (s - 1) for each subgroup
// inside the mod-p group algebra of the image. `contained` records
// V_A <= V_H and V_A <= V_B, the part that is meaningful at every finite
// level; `gap` is dim(V_H meet V_B) - dim V_A.
struct AmalgamLevel {
  std::uint32_t level = 0;
  std::size_t order = 0;
  std::size_t index = 0;
  bool dense = false;
  std::size_t dim_h = 0, dim_b = 0, dim_join = 0, dim_meet = 0, dim_a = 0;
  bool contained = false;
  std::size_t gap = 0;
  Rational gap_over_index;
};

struct AmalgamOptions {
  std::uint64_t cap = kDefaultQuotientCap;
  RelatorPolicy policy = RelatorPolicy::require_vanishing;
};

void amalgam_check(const Presentation& pres, const AmalgamSpec& spec,
                   const std::vector<std::uint32_t>& levels, std::vector<AmalgamLevel>& out,
                   const AmalgamOptions& opt = {});

Json amalgam_report(const Presentation& pres, const AmalgamSpec& spec,
                    const std::vector<AmalgamLevel>& levels);

// Per-level comparison of b against the profile of a dense free image:
// excess = b + 1 - ambient_rank, which equals 1/order exactly when the
// presented group behaves like the ambient free group at that level.
struct ProbeLevel {
  Beta1Level base;
  Rational excess;
  bool consistent = false;
};

void strong_embedding_probe(const Presentation& pres, const std::vector<std::uint32_t>& levels,
                            std::vector<ProbeLevel>& out, const Beta1Options& opt = {});

Json probe_report(const Presentation& pres, const std::vector<ProbeLevel>& levels);

}  // namespace promag
