#include "promag/foxrank.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "promag/errors.hpp"
#include "promag/rng.hpp"

namespace promag {

namespace {

WordExpr parse_in_context(const std::string& text, const std::vector<std::string>& names) {
  return parse_word(text, &names);
}

}  // namespace

Presentation presentation_from_json(const Json& j) {
  Presentation pres;
  try {
    pres.p = j.at("p").get<std::uint32_t>();
    pres.ambient_rank = j.at("ambient_rank").get<std::uint32_t>();
    pres.generators = j.at("generators").get<std::vector<std::string>>();
    if (pres.generators.empty()) fail(Errc::parse_error, "presentation has no generators");
    if (std::set<std::string>(pres.generators.begin(), pres.generators.end()).size() !=
        pres.generators.size())
      fail(Errc::parse_error, "duplicate generator name in presentation");
    if (pres.ambient_rank == 0) fail(Errc::parse_error, "ambient_rank must be positive");
    std::vector<std::string> ambient = ambient_names(pres.ambient_rank);
    for (const auto& r : j.at("relators"))
      pres.relators.push_back(parse_in_context(r.get<std::string>(), pres.generators));
    const Json& rho = j.at("rho");
    for (const std::string& g : pres.generators) {
      if (!rho.contains(g)) fail(Errc::parse_error, "rho is missing generator '" + g + "'");
      pres.images.emplace(g, parse_in_context(rho.at(g).get<std::string>(), ambient));
    }
    if (rho.size() != pres.generators.size())
      fail(Errc::parse_error, "rho names a generator that is not in the presentation");
  } catch (const Json::exception& e) {
    fail(Errc::parse_error, std::string("bad presentation document: ") + e.what());
  }
  return pres;
}

Json presentation_to_json(const Presentation& pres) {
  Json j;
  j["p"] = pres.p;
  j["ambient_rank"] = pres.ambient_rank;
  j["generators"] = pres.generators;
  Json rel = Json::array();
  for (const auto& r : pres.relators) rel.push_back(r.str());
  j["relators"] = std::move(rel);
  Json rho;
  for (const std::string& g : pres.generators) rho[g] = pres.images.at(g).str();
  j["rho"] = std::move(rho);
  return j;
}

Word word_letters(const WordExpr& w, const std::vector<std::string>& gens) {
  Word out;
  for (const Letter& l : free_reduce(w)) {
    auto it = std::find(gens.begin(), gens.end(), l.gen);
    if (it == gens.end()) fail(Errc::unknown_generator, "unknown generator '" + l.gen + "'");
    auto idx = static_cast<std::int32_t>(it - gens.begin()) + 1;
    out.push_back(l.sign > 0 ? idx : -idx);
  }
  return out;
}

Word word_mul(const Word& a, const Word& b) {
  Word out = a;
  for (std::int32_t l : b) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word word_inv(const Word& a) {
  Word out;
  out.reserve(a.size());
  for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(-*it);
  return out;
}

GroupRingElem gr_unit(const PrimeField& F) { return gr_term(F, Word{}, 1); }

GroupRingElem gr_term(const PrimeField& F, const Word& w, std::uint32_t c) {
  GroupRingElem e;
  std::uint64_t v = c % F.p();
  if (v != 0) e.emplace(w, static_cast<std::uint32_t>(v));
  return e;
}

GroupRingElem gr_add(const PrimeField& F, const GroupRingElem& a, const GroupRingElem& b) {
  GroupRingElem out = a;
  for (const auto& [w, c] : b) {
    std::uint64_t v = (out.count(w) ? out[w] : 0u) + c;
    v %= F.p();
    if (v == 0)
      out.erase(w);
    else
      out[w] = static_cast<std::uint32_t>(v);
  }
  return out;
}

GroupRingElem gr_neg(const PrimeField& F, const GroupRingElem& a) {
  GroupRingElem out;
  for (const auto& [w, c] : a) out.emplace(w, F.p() - c);
  return out;
}

GroupRingElem gr_sub(const PrimeField& F, const GroupRingElem& a, const GroupRingElem& b) {
  return gr_add(F, a, gr_neg(F, b));
}

GroupRingElem gr_mul(const PrimeField& F, const GroupRingElem& a, const GroupRingElem& b) {
  GroupRingElem out;
  for (const auto& [wa, ca] : a) {
    for (const auto& [wb, cb] : b) {
      Word w = word_mul(wa, wb);
      std::uint64_t v =
          ((out.count(w) ? out[w] : 0u) + static_cast<std::uint64_t>(ca) * cb) % F.p();
      if (v == 0)
        out.erase(w);
      else
        out[w] = static_cast<std::uint32_t>(v);
    }
  }
  return out;
}

GroupRingElem fox_derivative(const PrimeField& F, const Word& w, std::uint32_t gen) {
  GroupRingElem out;
  Word prefix;
  for (std::int32_t l : w) {
    if (l == static_cast<std::int32_t>(gen)) {
      out = gr_add(F, out, gr_term(F, prefix, 1));
    } else if (-l == static_cast<std::int32_t>(gen)) {
      Word q = prefix;
      q.push_back(l);
      out = gr_add(F, out, gr_term(F, q, F.p() - 1));
    }
    prefix.push_back(l);
  }
  return out;
}

GroupRingMatrix GroupRingMatrix::zero(std::size_t r, std::size_t c) {
  GroupRingMatrix M;
  M.rows = r;
  M.cols = c;
  M.a.assign(r, std::vector<GroupRingElem>(c));
  return M;
}

GroupRingMatrix gr_mat_mul(const PrimeField& F, const GroupRingMatrix& A,
                           const GroupRingMatrix& B) {
  if (A.cols != B.rows) fail(Errc::bad_argument, "matrix shapes do not compose");
  GroupRingMatrix C = GroupRingMatrix::zero(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      if (A.a[i][k].empty()) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        C.a[i][j] = gr_add(F, C.a[i][j], gr_mul(F, A.a[i][k], B.a[k][j]));
    }
  return C;
}

SparseFpMatrix induce_matrix(const QuotientHom& h, const GroupRingMatrix& M) {
  const std::size_t m = h.image_order();
  const std::uint32_t p = h.quotient().p();
  SparseFpMatrix out;
  out.p = p;
  out.rows = M.rows * m;
  out.cols = M.cols * m;
  if (out.cols > std::numeric_limits<std::uint32_t>::max())
    fail(Errc::cap_exceeded, "induced matrix has too many columns");
  std::vector<std::map<std::uint32_t, std::uint64_t>> acc(out.rows);
  for (std::size_t r = 0; r < M.rows; ++r)
    for (std::size_t c = 0; c < M.cols; ++c)
      for (const auto& [word, coeff] : M.a[r][c]) {
        std::uint32_t g = h.image_of_letters(word);
        for (std::uint32_t u = 0; u < m; ++u) {
          std::uint32_t v = h.img_mul(u, g);
          acc[r * m + u][static_cast<std::uint32_t>(c * m + v)] += coeff;
        }
      }
  out.data.resize(out.rows);
  for (std::size_t i = 0; i < out.rows; ++i)
    for (const auto& [col, sum] : acc[i]) {
      std::uint32_t v = static_cast<std::uint32_t>(sum % p);
      if (v != 0) out.data[i].emplace_back(col, v);
    }
  return out;
}

RankValue sylvester_rank(const QuotientHom& h, const GroupRingMatrix& M) {
  RankValue rv;
  rv.image_order = h.image_order();
  rv.rank_induced = rank_fp(induce_matrix(h, M));
  rv.value = Rational(Integer(static_cast<unsigned long>(rv.rank_induced)),
                      Integer(static_cast<unsigned long>(rv.image_order)));
  return rv;
}

namespace {

Word random_word(Rng& rng, std::uint32_t ngens, std::uint32_t max_len) {
  Word w;
  std::uint64_t len = rng.below(max_len + 1);
  for (std::uint64_t i = 0; i < len; ++i) {
    auto idx = static_cast<std::int32_t>(rng.below(ngens)) + 1;
    w = word_mul(w, Word{rng.below(2) ? idx : -idx});
  }
  return w;
}

GroupRingElem random_elem(Rng& rng, const PrimeField& F, std::uint32_t ngens) {
  GroupRingElem e;
  std::uint64_t terms = rng.below(3);
  for (std::uint64_t i = 0; i < terms; ++i) {
    std::uint32_t c = static_cast<std::uint32_t>(1 + rng.below(F.p() - 1));
    e = gr_add(F, e, gr_term(F, random_word(rng, ngens, 3), c));
  }
  return e;
}

GroupRingMatrix random_matrix(Rng& rng, const PrimeField& F, std::uint32_t ngens,
                              std::size_t rows, std::size_t cols) {
  GroupRingMatrix M = GroupRingMatrix::zero(rows, cols);
  for (auto& row : M.a)
    for (auto& e : row) e = random_elem(rng, F, ngens);
  return M;
}

GroupRingMatrix stack_blocks(const GroupRingMatrix& A, const GroupRingMatrix& B,
                             const GroupRingMatrix* upper_right) {
  GroupRingMatrix M = GroupRingMatrix::zero(A.rows + B.rows, A.cols + B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) M.a[i][j] = A.a[i][j];
  for (std::size_t i = 0; i < B.rows; ++i)
    for (std::size_t j = 0; j < B.cols; ++j) M.a[A.rows + i][A.cols + j] = B.a[i][j];
  if (upper_right)
    for (std::size_t i = 0; i < A.rows; ++i)
      for (std::size_t j = 0; j < B.cols; ++j) M.a[i][A.cols + j] = upper_right->a[i][j];
  return M;
}

}  // namespace

SylvesterReport sylvester_axiom_suite(const QuotientHom& h, std::uint64_t seed,
                                      std::uint32_t trials) {
  const PrimeField& F = h.quotient().field();
  auto ngens = static_cast<std::uint32_t>(h.generator_names().size());
  Rng rng(seed);
  SylvesterReport rep;
  rep.trials = trials;

  GroupRingMatrix unit = GroupRingMatrix::zero(1, 1);
  unit.a[0][0] = gr_unit(F);
  rep.normalization = sylvester_rank(h, unit).value == Rational(1) &&
                      sylvester_rank(h, GroupRingMatrix::zero(1, 1)).value == Rational(0);

  rep.additivity = rep.triangular = rep.product = true;
  for (std::uint32_t t = 0; t < trials; ++t) {
    std::size_t r = 1 + rng.below(3), s = 1 + rng.below(3), u = 1 + rng.below(3),
                v = 1 + rng.below(3);
    GroupRingMatrix A = random_matrix(rng, F, ngens, r, s);
    GroupRingMatrix B = random_matrix(rng, F, ngens, u, v);
    GroupRingMatrix C = random_matrix(rng, F, ngens, r, v);
    std::size_t ra = sylvester_rank(h, A).rank_induced;
    std::size_t rb = sylvester_rank(h, B).rank_induced;
    if (sylvester_rank(h, stack_blocks(A, B, nullptr)).rank_induced != ra + rb)
      rep.additivity = false;
    if (sylvester_rank(h, stack_blocks(A, B, &C)).rank_induced < ra + rb)
      rep.triangular = false;
    GroupRingMatrix B2 = random_matrix(rng, F, ngens, s, u);
    std::size_t rb2 = sylvester_rank(h, B2).rank_induced;
    if (sylvester_rank(h, gr_mat_mul(F, A, B2)).rank_induced > std::min(ra, rb2))
      rep.product = false;
  }
  return rep;
}

Json sylvester_report_json(const SylvesterReport& r) {
  Json j;
  j["schema"] = "v1";
  j["kind"] = "sylvester";
  j["normalization"] = r.normalization;
  j["additivity"] = r.additivity;
  j["triangular"] = r.triangular;
  j["product"] = r.product;
  j["trials"] = r.trials;
  j["all"] = r.all();
  return j;
}

void beta1_sequence(const Presentation& pres, const std::vector<std::uint32_t>& levels,
                    std::vector<Beta1Level>& out, const Beta1Options& opt) {
  PrimeField F(pres.p);
  const std::size_t k = pres.generators.size();
  for (std::uint32_t n : levels) {
    auto Q = FiniteQuotient::build(pres.p, pres.ambient_rank, n, opt.cap);
    QuotientHom h = hom_from_words(Q, pres.generators, pres.images, pres.relators, opt.policy);
    const std::size_t m = h.image_order();

    GroupRingMatrix d1 = GroupRingMatrix::zero(k, 1);
    for (std::size_t j = 0; j < k; ++j)
      d1.a[j][0] = gr_sub(F, gr_term(F, Word{static_cast<std::int32_t>(j) + 1}, 1), gr_unit(F));
    std::size_t r1 = rank_fp(induce_matrix(h, d1));

    std::size_t r2 = 0;
    if (!pres.relators.empty()) {
      GroupRingMatrix d2 = GroupRingMatrix::zero(pres.relators.size(), k);
      for (std::size_t i = 0; i < pres.relators.size(); ++i) {
        Word w = word_letters(pres.relators[i], pres.generators);
        for (std::size_t j = 0; j < k; ++j)
          d2.a[i][j] = fox_derivative(F, w, static_cast<std::uint32_t>(j) + 1);
      }
      r2 = rank_fp(induce_matrix(h, d2));
    }

    if (r1 + r2 > k * m) throw std::logic_error("chain ranks exceed total dimension");
    Beta1Level lv;
    lv.level = n;
    lv.order = Q->order();
    lv.index = m;
    lv.h1 = k * m - r1 - r2;
    lv.b = Rational(Integer(static_cast<unsigned long>(lv.h1)),
                    Integer(static_cast<unsigned long>(m)));
    lv.dense = check_density(h);
    lv.factored = h.factored();
    lv.lower_bound_ok =
        lv.dense && lv.h1 >= (static_cast<std::size_t>(pres.ambient_rank) - 1) * lv.order + 1;
    out.push_back(std::move(lv));
  }
}

Json beta1_report(const Presentation& pres, const std::vector<Beta1Level>& levels) {
  Json j;
  j["schema"] = "v1";
  j["kind"] = "beta1";
  j["p"] = pres.p;
  j["ambient_rank"] = pres.ambient_rank;
  j["generators"] = pres.generators;
  Json rel = Json::array();
  for (const auto& r : pres.relators) rel.push_back(r.str());
  j["relators"] = std::move(rel);
  Json arr = Json::array();
  for (const Beta1Level& lv : levels) {
    Json e;
    e["level"] = lv.level;
    e["order"] = lv.order;
    e["index"] = lv.index;
    e["h1"] = lv.h1;
    e["b"] = lv.b.str();
    e["dense"] = lv.dense;
    e["factored"] = lv.factored;
    e["lower_bound_ok"] = lv.lower_bound_ok;
    arr.push_back(std::move(e));
  }
  j["levels"] = std::move(arr);
  return j;
}

}  // namespace promag
