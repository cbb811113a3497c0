#include "promag/extcheck.hpp"

#include <algorithm>

#include "promag/errors.hpp"
#include "promag/magnus.hpp"
#include "promag/rng.hpp"

namespace promag {

RootAnalysis analyze_free_root(const Word& w) {
  RootAnalysis out;
  Word conj, core = w;
  while (core.size() >= 2 && core.front() == -core.back()) {
    conj.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  if (core.empty()) return out;
  std::size_t n = core.size();
  std::size_t period = n;
  for (std::size_t q = 1; q < n; ++q) {
    if (n % q != 0) continue;
    bool ok = true;
    for (std::size_t i = q; i < n && ok; ++i) ok = core[i] == core[i - q];
    if (ok) {
      period = q;
      break;
    }
  }
  Word root_core(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(period));
  out.root = word_mul(word_mul(conj, root_core), word_inv(conj));
  out.multiplicity = static_cast<std::uint32_t>(n / period);
  return out;
}

namespace {

void require_fresh_name(const Presentation& pres, const std::string& name) {
  if (std::find(pres.generators.begin(), pres.generators.end(), name) != pres.generators.end())
    fail(Errc::bad_argument, "generator '" + name + "' already exists");
  if (name.empty()) fail(Errc::bad_argument, "generator name must be nonempty");
}

}  // namespace

Presentation extend_root(const Presentation& pres, const std::string& new_gen,
                         const WordExpr& base, std::uint32_t degree) {
  require_fresh_name(pres, new_gen);
  if (degree < 2) fail(Errc::bad_argument, "root degree must be at least 2");
  if (degree % pres.p == 0)
    fail(Errc::bad_argument, "root degree must be coprime to p=" + std::to_string(pres.p));
  Word letters = word_letters(base, pres.generators);
  RootAnalysis ra = analyze_free_root(letters);
  if (ra.multiplicity == 0) fail(Errc::bad_argument, "base word must be nontrivial");
  if (ra.multiplicity > 1)
    fail(Errc::bad_argument, "base word is a proper power (multiplicity " +
                                 std::to_string(ra.multiplicity) + ")");

  Presentation out = pres;
  out.generators.push_back(new_gen);
  out.relators.push_back(
      WordExpr::prod({WordExpr::pow(WordExpr::gen(new_gen), Exponent::of_int(degree)),
                      WordExpr::inverse(base)}));
  out.images.emplace(
      new_gen,
      WordExpr::pow(substitute(base, pres.images),
                    Exponent::of_rational(Rational(Integer(1), Integer(degree)))));
  return out;
}

Presentation extend_centralizer(const Presentation& pres,
                                const std::vector<std::string>& new_gens, const WordExpr& base,
                                const std::vector<Exponent>& lambdas) {
  if (new_gens.empty()) fail(Errc::bad_argument, "centralizer extension needs a generator");
  if (new_gens.size() != lambdas.size())
    fail(Errc::bad_argument, "need exactly one exponent per new generator");
  for (std::size_t i = 0; i < new_gens.size(); ++i) {
    require_fresh_name(pres, new_gens[i]);
    for (std::size_t j = i + 1; j < new_gens.size(); ++j)
      if (new_gens[i] == new_gens[j]) fail(Errc::bad_argument, "duplicate new generator name");
  }
  if (word_letters(base, pres.generators).empty())
    fail(Errc::bad_argument, "base word must be nontrivial");

  Presentation out = pres;
  WordExpr rho_base = substitute(base, pres.images);
  for (std::size_t i = 0; i < new_gens.size(); ++i) {
    out.generators.push_back(new_gens[i]);
    out.relators.push_back(WordExpr::comm(WordExpr::gen(new_gens[i]), base));
    for (std::size_t j = 0; j < i; ++j)
      out.relators.push_back(
          WordExpr::comm(WordExpr::gen(new_gens[i]), WordExpr::gen(new_gens[j])));
    out.images.emplace(new_gens[i], WordExpr::pow(rho_base, lambdas[i]));
  }
  return out;
}

Exponent suggest_central_exponent(std::uint32_t p, std::uint32_t k, std::uint64_t seed) {
  PrimeField check(p);  // validates primality
  (void)check;
  if (k == 0) fail(Errc::bad_argument, "precision must be at least 1");
  Rng rng(seed);
  Integer v;
  do {
    v = 0;
    Integer pk(1);
    for (std::uint32_t i = 0; i < k; ++i) {
      v += pk * Integer(static_cast<unsigned long>(rng.below(p)));
      pk *= p;
    }
  } while (v == 0);
  return Exponent::of_padic(v, k);
}

namespace {

// Rows q*(s-1) for all image elements q; two entries per row.
void absorb_ideal_rows(const QuotientHom& h, const std::vector<std::uint32_t>& subgroup_gens,
                       FpEchelon& ech) {
  const std::uint32_t p = h.quotient().p();
  const std::size_t m = h.image_order();
  for (std::uint32_t s : subgroup_gens) {
    if (s == 0) continue;
    for (std::uint32_t q = 0; q < m; ++q) {
      std::uint32_t qs = h.img_mul(q, s);
      SparseRow row;
      if (qs < q) {
        row = {{qs, 1}, {q, p - 1}};
      } else {
        row = {{q, p - 1}, {qs, 1}};
      }
      ech.absorb(row);
    }
  }
}

bool ideal_rows_inside(const QuotientHom& h, const std::vector<std::uint32_t>& subgroup_gens,
                       const FpEchelon& ech) {
  const std::uint32_t p = h.quotient().p();
  const std::size_t m = h.image_order();
  for (std::uint32_t s : subgroup_gens) {
    if (s == 0) continue;
    for (std::uint32_t q = 0; q < m; ++q) {
      std::uint32_t qs = h.img_mul(q, s);
      SparseRow row;
      if (qs < q) {
        row = {{qs, 1}, {q, p - 1}};
      } else {
        row = {{q, p - 1}, {qs, 1}};
      }
      if (!ech.reduces_to_zero(row)) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> subgroup_images(const Presentation& pres, const QuotientHom& h,
                                           const MagnusContext<PrimeField>& ctx,
                                           const std::vector<WordExpr>& gens) {
  std::vector<std::uint32_t> out;
  for (const WordExpr& w : gens) {
    FpSeries s = magnus_eval(substitute(w, pres.images), ctx);
    out.push_back(h.image_of_element(h.quotient().id_of(s)));
  }
  return out;
}

}  // namespace

void amalgam_check(const Presentation& pres, const AmalgamSpec& spec,
                   const std::vector<std::uint32_t>& levels, std::vector<AmalgamLevel>& out,
                   const AmalgamOptions& opt) {
  if (spec.h_gens.empty() || spec.b_gens.empty() || spec.a_gens.empty())
    fail(Errc::bad_argument, "each of the three subgroups needs at least one generator");
  for (std::uint32_t n : levels) {
    auto Q = FiniteQuotient::build(pres.p, pres.ambient_rank, n, opt.cap);
    QuotientHom h = hom_from_words(Q, pres.generators, pres.images, pres.relators, opt.policy);
    MagnusContext<PrimeField> ctx{Q->field(), Q->rank(), Q->level()};
    const std::size_t m = h.image_order();

    std::vector<std::uint32_t> hg = subgroup_images(pres, h, ctx, spec.h_gens);
    std::vector<std::uint32_t> bg = subgroup_images(pres, h, ctx, spec.b_gens);
    std::vector<std::uint32_t> ag = subgroup_images(pres, h, ctx, spec.a_gens);

    FpEchelon eh(pres.p, m), eb(pres.p, m), ea(pres.p, m), ejoin(pres.p, m);
    absorb_ideal_rows(h, hg, eh);
    absorb_ideal_rows(h, bg, eb);
    absorb_ideal_rows(h, ag, ea);
    absorb_ideal_rows(h, hg, ejoin);
    absorb_ideal_rows(h, bg, ejoin);

    AmalgamLevel lv;
    lv.level = n;
    lv.order = Q->order();
    lv.index = m;
    lv.dense = check_density(h);
    lv.dim_h = eh.rank();
    lv.dim_b = eb.rank();
    lv.dim_a = ea.rank();
    lv.dim_join = ejoin.rank();
    lv.dim_meet = lv.dim_h + lv.dim_b - lv.dim_join;
    lv.contained = ideal_rows_inside(h, ag, eh) && ideal_rows_inside(h, ag, eb);
    lv.gap = lv.dim_meet >= lv.dim_a ? lv.dim_meet - lv.dim_a : 0;
    if (lv.dim_meet < lv.dim_a && lv.contained)
      fail(Errc::bad_argument, "inconsistent subspace dimensions");
    lv.gap_over_index = Rational(Integer(static_cast<unsigned long>(lv.gap)),
                                 Integer(static_cast<unsigned long>(m)));
    out.push_back(std::move(lv));
  }
}

Json amalgam_report(const Presentation& pres, const AmalgamSpec& spec,
                    const std::vector<AmalgamLevel>& levels) {
  Json j;
  j["schema"] = "v1";
  j["kind"] = "amalgam";
  j["p"] = pres.p;
  auto words = [](const std::vector<WordExpr>& ws) {
    Json a = Json::array();
    for (const auto& w : ws) a.push_back(w.str());
    return a;
  };
  j["h_gens"] = words(spec.h_gens);
  j["b_gens"] = words(spec.b_gens);
  j["a_gens"] = words(spec.a_gens);
  Json arr = Json::array();
  for (const AmalgamLevel& lv : levels) {
    Json e;
    e["level"] = lv.level;
    e["order"] = lv.order;
    e["index"] = lv.index;
    e["dense"] = lv.dense;
    e["dim_h"] = lv.dim_h;
    e["dim_b"] = lv.dim_b;
    e["dim_join"] = lv.dim_join;
    e["dim_meet"] = lv.dim_meet;
    e["dim_a"] = lv.dim_a;
    e["contained"] = lv.contained;
    e["gap"] = lv.gap;
    e["gap_over_index"] = lv.gap_over_index.str();
    arr.push_back(std::move(e));
  }
  j["levels"] = std::move(arr);
  return j;
}

void strong_embedding_probe(const Presentation& pres, const std::vector<std::uint32_t>& levels,
                            std::vector<ProbeLevel>& out, const Beta1Options& opt) {
  std::vector<Beta1Level> base;
  beta1_sequence(pres, levels, base, opt);
  for (const Beta1Level& lv : base) {
    ProbeLevel pl;
    pl.base = lv;
    pl.excess = lv.b + Rational(1) - Rational(Integer(pres.ambient_rank));
    pl.consistent =
        lv.dense && pl.excess == Rational(Integer(1), Integer(static_cast<unsigned long>(lv.order)));
    out.push_back(std::move(pl));
  }
}

Json probe_report(const Presentation& pres, const std::vector<ProbeLevel>& levels) {
  Json j;
  j["schema"] = "v1";
  j["kind"] = "probe";
  j["p"] = pres.p;
  j["ambient_rank"] = pres.ambient_rank;
  Json arr = Json::array();
  bool all = true;
  for (const ProbeLevel& pl : levels) {
    Json e;
    e["level"] = pl.base.level;
    e["order"] = pl.base.order;
    e["index"] = pl.base.index;
    e["h1"] = pl.base.h1;
    e["b"] = pl.base.b.str();
    e["dense"] = pl.base.dense;
    e["excess"] = pl.excess.str();
    e["consistent"] = pl.consistent;
    arr.push_back(std::move(e));
    all = all && pl.consistent;
  }
  j["levels"] = std::move(arr);
  j["all_consistent"] = all;
  return j;
}

}  // namespace promag
