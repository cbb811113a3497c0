#include "promag/pquot.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "promag/errors.hpp"

namespace promag {

FiniteQuotient::FiniteQuotient(std::uint32_t p, std::uint32_t d, std::uint32_t level)
    : field_(p), d_(d), level_(level) {}

std::shared_ptr<const FiniteQuotient> FiniteQuotient::build(std::uint32_t p, std::uint32_t d,
                                                            std::uint32_t level,
                                                            std::uint64_t cap) {
  if (cap == 0) fail(Errc::bad_argument, "quotient cap must be positive");
  auto Q = std::shared_ptr<FiniteQuotient>(new FiniteQuotient(p, d, level));
  const PrimeField& F = Q->field_;

  std::vector<FpSeries> steps;
  steps.reserve(2 * static_cast<std::size_t>(d));
  for (std::uint32_t i = 0; i < d; ++i) {
    FpSeries g = FpSeries::one_plus_gen(F, d, level, i);
    steps.push_back(g);
    steps.push_back(g.invert_unit());
  }

  auto insert = [&](const FpSeries& s) -> std::uint32_t {
    std::string k = s.key();
    auto it = Q->index_.find(k);
    if (it != Q->index_.end()) return it->second;
    if (Q->elems_.size() >= cap)
      fail(Errc::cap_exceeded, "level quotient larger than cap " + std::to_string(cap) +
                                   " (enumeration stopped after " +
                                   std::to_string(Q->elems_.size()) + " elements)");
    std::uint32_t id = static_cast<std::uint32_t>(Q->elems_.size());
    Q->elems_.push_back(s);
    Q->index_.emplace(std::move(k), id);
    return id;
  };

  insert(FpSeries::one(F, d, level));
  for (std::size_t front = 0; front < Q->elems_.size(); ++front) {
    // elems_ only grows; snapshot the current element since insert reallocates.
    FpSeries cur = Q->elems_[front];
    for (const FpSeries& s : steps) insert(cur.mul(s));
  }

  for (std::uint32_t i = 0; i < d; ++i) {
    Q->gens_.push_back(Q->id_of(steps[2 * i]));
    Q->gen_invs_.push_back(Q->id_of(steps[2 * i + 1]));
  }
  Q->invs_.resize(Q->elems_.size());
  for (std::uint32_t id = 0; id < Q->elems_.size(); ++id)
    Q->invs_[id] = Q->id_of(Q->elems_[id].invert_unit());
  return Q;
}

std::optional<std::uint32_t> FiniteQuotient::find(const FpSeries& s) const {
  auto it = index_.find(s.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t FiniteQuotient::id_of(const FpSeries& s) const {
  auto id = find(s);
  if (!id) fail(Errc::bad_argument, "series is not an element of the level quotient");
  return *id;
}

std::uint32_t FiniteQuotient::mul(std::uint32_t a, std::uint32_t b) const {
  return id_of(elems_[a].mul(elems_[b]));
}

std::uint32_t FiniteQuotient::project(std::uint32_t id, const FiniteQuotient& lower) const {
  if (lower.p() != p() || lower.rank() != d_ || lower.level() > level_)
    fail(Errc::domain_mismatch, "projection target must be a lower level over the same p and rank");
  return lower.id_of(elems_[id].truncate(lower.level()));
}

namespace {

int mobius(std::uint32_t n) {
  int m = 1;
  for (std::uint32_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    m = -m;
  }
  if (n > 1) m = -m;
  return m;
}

// W_d(s) = (1/s) sum_{q | s} mu(q) d^(s/q): Lyndon words of length s.
Integer witt_count(std::uint32_t d, std::uint32_t s) {
  Integer sum = 0;
  for (std::uint32_t q = 1; q <= s; ++q) {
    if (s % q != 0) continue;
    int mu = mobius(q);
    if (mu == 0) continue;
    Integer t;
    mpz_ui_pow_ui(t.get_mpz_t(), d, s / q);
    sum += mu * t;
  }
  return sum / s;
}

}  // namespace

Integer predicted_quotient_order(std::uint32_t p, std::uint32_t d, std::uint32_t level) {
  PrimeField check(p);
  (void)check;
  if (d == 0 || level == 0) fail(Errc::bad_argument, "rank and level must be positive");
  Integer exponent = 0;
  for (std::uint32_t m = 1; m < level; ++m) {
    std::uint32_t s = m;
    exponent += witt_count(d, s);
    while (s % p == 0) {
      s /= p;
      exponent += witt_count(d, s);
    }
  }
  if (!exponent.fits_ulong_p()) fail(Errc::cap_exceeded, "predicted order is astronomically large");
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), p, exponent.get_ui());
  return result;
}

namespace {

// Normal closure of the given elements: BFS closure under right
// multiplication by the seeds (and inverses) and conjugation by the
// quotient generators.
std::vector<std::uint32_t> normal_closure(const FiniteQuotient& Q,
                                          const std::vector<std::uint32_t>& seeds) {
  std::vector<char> in(Q.order(), 0);
  std::deque<std::uint32_t> queue;
  auto push = [&](std::uint32_t x) {
    if (!in[x]) {
      in[x] = 1;
      queue.push_back(x);
    }
  };
  push(0);
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop_front();
    for (std::uint32_t r : seeds) {
      push(Q.mul(x, r));
      push(Q.mul(x, Q.inv(r)));
    }
    for (std::uint32_t i = 0; i < Q.rank(); ++i) {
      push(Q.mul(Q.gen(i), Q.mul(x, Q.gen_inv(i))));
      push(Q.mul(Q.gen_inv(i), Q.mul(x, Q.gen(i))));
    }
  }
  std::vector<std::uint32_t> members;
  for (std::uint32_t x = 0; x < Q.order(); ++x)
    if (in[x]) members.push_back(x);
  return members;
}

}  // namespace

std::uint32_t QuotientHom::coset_mul(std::uint32_t a, std::uint32_t b) const {
  return coset_of_[Q_->mul(coset_rep_[a], coset_rep_[b])];
}

std::uint32_t QuotientHom::coset_inv(std::uint32_t a) const {
  return coset_of_[Q_->inv(coset_rep_[a])];
}

std::uint32_t QuotientHom::img_mul(std::uint32_t a, std::uint32_t b) const {
  return image_idx_[coset_mul(image_[a], image_[b])];
}

std::uint32_t QuotientHom::img_inv(std::uint32_t a) const {
  return image_idx_[coset_inv(image_[a])];
}

std::uint32_t QuotientHom::image_of_letters(const std::vector<std::int32_t>& letters) const {
  std::uint32_t acc = 0;
  for (std::int32_t l : letters) {
    if (l == 0) fail(Errc::bad_argument, "letter indices must be nonzero");
    std::uint32_t i = static_cast<std::uint32_t>(l > 0 ? l : -l) - 1;
    if (i >= gens_.size()) fail(Errc::bad_argument, "letter index out of range");
    std::uint32_t g = gen_image_idx_[i];
    acc = img_mul(acc, l > 0 ? g : img_inv(g));
  }
  return acc;
}

std::uint32_t QuotientHom::image_of_element(std::uint32_t elem_id) const {
  std::uint32_t idx = image_idx_[coset_of_[elem_id]];
  if (idx == std::numeric_limits<std::uint32_t>::max())
    fail(Errc::bad_argument, "element does not lie in the image subgroup");
  return idx;
}

QuotientHom hom_from_words(std::shared_ptr<const FiniteQuotient> Q,
                           const std::vector<std::string>& gens,
                           const std::map<std::string, WordExpr>& images,
                           const std::vector<WordExpr>& relators, RelatorPolicy policy) {
  if (!Q) fail(Errc::bad_argument, "null quotient");
  if (gens.empty()) fail(Errc::bad_argument, "presentation needs at least one generator");
  if (std::set<std::string>(gens.begin(), gens.end()).size() != gens.size())
    fail(Errc::bad_argument, "duplicate generator name");
  for (const auto& [name, w] : images) {
    (void)w;
    if (std::find(gens.begin(), gens.end(), name) == gens.end())
      fail(Errc::bad_argument, "image given for unknown generator '" + name + "'");
  }

  QuotientHom h;
  h.Q_ = Q;
  h.gens_ = gens;

  MagnusContext<PrimeField> ctx{Q->field(), Q->rank(), Q->level()};
  std::map<std::string, WordExpr> image_words;
  std::vector<std::uint32_t> gen_elem(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto it = images.find(gens[i]);
    if (it == images.end())
      fail(Errc::bad_argument, "no image word for generator '" + gens[i] + "'");
    auto id = Q->find(magnus_eval(it->second, ctx));
    if (!id)
      fail(Errc::bad_argument,
           "image of '" + gens[i] + "' does not lie in the level quotient");
    gen_elem[i] = *id;
    image_words.emplace(gens[i], it->second);
  }

  std::vector<std::uint32_t> violated;
  for (const WordExpr& r : relators) {
    std::uint32_t id = Q->id_of(magnus_eval(substitute(r, image_words), ctx));
    if (id != 0) {
      violated.push_back(id);
      if (h.relators_vanish_) {
        h.relators_vanish_ = false;
        h.failed_relator_ = r.str();
      }
    }
  }
  if (!violated.empty() && policy == RelatorPolicy::require_vanishing)
    fail(Errc::relator_violation,
         "relator does not vanish at level " + std::to_string(Q->level()) + ": " +
             h.failed_relator_);

  std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();
  if (violated.empty()) {
    h.ncosets_ = Q->order();
    h.coset_of_.resize(Q->order());
    h.coset_rep_.resize(Q->order());
    for (std::uint32_t i = 0; i < Q->order(); ++i) h.coset_of_[i] = h.coset_rep_[i] = i;
  } else {
    std::vector<std::uint32_t> N = normal_closure(*Q, violated);
    h.coset_of_.assign(Q->order(), npos);
    // BFS over cosets so ids are deterministic; 0 is the coset of 1.
    for (std::uint32_t x : N) h.coset_of_[x] = 0;
    h.coset_rep_.push_back(0);
    for (std::size_t front = 0; front < h.coset_rep_.size(); ++front) {
      std::uint32_t u = h.coset_rep_[front];
      for (std::uint32_t i = 0; i < Q->rank(); ++i) {
        for (std::uint32_t s : {Q->gen(i), Q->gen_inv(i)}) {
          std::uint32_t v = Q->mul(u, s);
          if (h.coset_of_[v] != npos) continue;
          std::uint32_t cid = static_cast<std::uint32_t>(h.coset_rep_.size());
          h.coset_rep_.push_back(v);
          for (std::uint32_t x : N) h.coset_of_[Q->mul(x, v)] = cid;
        }
      }
    }
    h.ncosets_ = h.coset_rep_.size();
  }

  h.gen_cosets_.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) h.gen_cosets_[i] = h.coset_of_[gen_elem[i]];

  h.image_idx_.assign(h.ncosets_, npos);
  h.image_.push_back(0);
  h.image_idx_[0] = 0;
  for (std::size_t front = 0; front < h.image_.size(); ++front) {
    std::uint32_t u = h.image_[front];
    for (std::uint32_t gc : h.gen_cosets_) {
      for (std::uint32_t v : {h.coset_mul(u, gc), h.coset_mul(u, h.coset_inv(gc))}) {
        if (h.image_idx_[v] != npos) continue;
        h.image_idx_[v] = static_cast<std::uint32_t>(h.image_.size());
        h.image_.push_back(v);
      }
    }
  }
  h.gen_image_idx_.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) h.gen_image_idx_[i] = h.image_idx_[h.gen_cosets_[i]];
  return h;
}

bool check_density(const QuotientHom& h) {
  return h.relators_vanish() && h.image_order() == h.quotient().order();
}

bool check_relators(const QuotientHom& h, std::string* witness) {
  if (!h.relators_vanish() && witness) *witness = h.first_failed_relator();
  return h.relators_vanish();
}

}  // namespace promag
