#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "promag/magnus.hpp"
#include "promag/series.hpp"

namespace promag {

using FpSeries = Series<PrimeField>;

inline constexpr std::uint64_t kDefaultQuotientCap = 1000000;

// Finite p-group generated by the images 1 + y_i of the ambient free
// generators inside the units of the mod-p series ring truncated at the
// given degree. Elements are indexed in breadth-first discovery order
// (multiplying on the right by g_1, g_1^-1, g_2, g_2^-1, ...); index 0 is
// the identity, so the element order is deterministic.
class FiniteQuotient {
public:
  static std::shared_ptr<const FiniteQuotient> build(std::uint32_t p, std::uint32_t d,
                                                     std::uint32_t level,
                                                     std::uint64_t cap = kDefaultQuotientCap);

  std::uint32_t p() const { return field_.p(); }
  std::uint32_t rank() const { return d_; }
  std::uint32_t level() const { return level_; }
  const PrimeField& field() const { return field_; }
  std::size_t order() const { return elems_.size(); }

  const FpSeries& element(std::uint32_t id) const { return elems_[id]; }
  std::optional<std::uint32_t> find(const FpSeries& s) const;
  std::uint32_t id_of(const FpSeries& s) const;  // throws when absent

  std::uint32_t gen(std::uint32_t i) const { return gens_[i]; }
  std::uint32_t gen_inv(std::uint32_t i) const { return gen_invs_[i]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const { return invs_[a]; }

  // Image of an element under truncation into a lower-level quotient.
  std::uint32_t project(std::uint32_t id, const FiniteQuotient& lower) const;

private:
  FiniteQuotient(std::uint32_t p, std::uint32_t d, std::uint32_t level);

  PrimeField field_;
  std::uint32_t d_;
  std::uint32_t level_;
  std::vector<FpSeries> elems_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::uint32_t> gens_, gen_invs_, invs_;
};

// Expected order of the level quotient: p raised to the sum over degrees
// m < level of the number of basic commutators of weight m, counted with
// the p-power folding c_m = sum over p^i*s = m of W_d(s).
Integer predicted_quotient_order(std::uint32_t p, std::uint32_t d, std::uint32_t level);

// What to do when a relator image is not the identity in the level quotient:
// impose it (divide by its normal closure, the largest level quotient the
// presented group maps onto) or refuse.
enum class RelatorPolicy { impose, require_vanishing };

// Homomorphism from a finitely presented group into a level quotient,
// given by exact-exponent images of the generators. The codomain is the
// level quotient divided by the normal closure of any imposed relators;
// the image subgroup is enumerated in BFS order over cosets.
class QuotientHom {
public:
  const FiniteQuotient& quotient() const { return *Q_; }
  std::shared_ptr<const FiniteQuotient> quotient_ptr() const { return Q_; }
  const std::vector<std::string>& generator_names() const { return gens_; }

  // Relator status in the undivided level quotient.
  bool relators_vanish() const { return relators_vanish_; }
  const std::string& first_failed_relator() const { return failed_relator_; }

  // Coset layer (trivial when nothing was imposed).
  bool factored() const { return ncosets_ != Q_->order(); }
  std::size_t imposed_kernel_order() const { return Q_->order() / ncosets_; }
  std::size_t coset_count() const { return ncosets_; }
  std::uint32_t coset_of(std::uint32_t elem_id) const { return coset_of_[elem_id]; }
  std::uint32_t coset_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t coset_inv(std::uint32_t a) const;

  // Image subgroup of the presented group; indices into BFS order, 0 = 1.
  std::size_t image_order() const { return image_.size(); }
  std::uint32_t image_of_gen(std::uint32_t i) const { return gen_image_idx_[i]; }
  std::uint32_t img_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t img_inv(std::uint32_t a) const;
  // Letters are +-(generator index + 1).
  std::uint32_t image_of_letters(const std::vector<std::int32_t>& letters) const;
  // Image index of a quotient element; throws when it lies outside the image.
  std::uint32_t image_of_element(std::uint32_t elem_id) const;

  friend QuotientHom hom_from_words(std::shared_ptr<const FiniteQuotient> Q,
                                    const std::vector<std::string>& gens,
                                    const std::map<std::string, WordExpr>& images,
                                    const std::vector<WordExpr>& relators, RelatorPolicy policy);

private:
  std::shared_ptr<const FiniteQuotient> Q_;
  std::vector<std::string> gens_;
  bool relators_vanish_ = true;
  std::string failed_relator_;
  std::size_t ncosets_ = 0;
  std::vector<std::uint32_t> coset_of_;   // element id -> coset id
  std::vector<std::uint32_t> coset_rep_;  // coset id -> representative element id
  std::vector<std::uint32_t> gen_cosets_;     // generator -> coset id
  std::vector<std::uint32_t> image_;          // BFS list of coset ids
  std::vector<std::uint32_t> image_idx_;      // coset id -> image index (or npos)
  std::vector<std::uint32_t> gen_image_idx_;  // generator -> image index
};

// Builds the homomorphism determined by `images` (words over the ambient
// generators x1..xd, arbitrary exact exponents). Every relator must map to
// the identity; a failing relator is either imposed or, under
// require_vanishing, raises relator_violation.
QuotientHom hom_from_words(std::shared_ptr<const FiniteQuotient> Q,
                           const std::vector<std::string>& gens,
                           const std::map<std::string, WordExpr>& images,
                           const std::vector<WordExpr>& relators,
                           RelatorPolicy policy = RelatorPolicy::impose);

// True when the relators held exactly and the image subgroup is the whole
// level quotient.
bool check_density(const QuotientHom& h);

// Relator status plus a witness string naming the first violated relator.
bool check_relators(const QuotientHom& h, std::string* witness = nullptr);

}  // namespace promag
