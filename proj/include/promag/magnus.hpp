#pragma once

#include <optional>
#include <string>
#include <vector>

#include "promag/series.hpp"

namespace promag {

// Ambient free generators are named x1..xd by default.
inline std::vector<std::string> ambient_names(std::uint32_t d) {
  std::vector<std::string> names;
  names.reserve(d);
  for (std::uint32_t i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// Evaluation context: coefficient domain, ambient rank, truncation degree,
// and the generator names that map onto 1 + y_i.
template <class D>
struct MagnusContext {
  D dom;
  std::uint32_t d;
  std::uint32_t trunc;
  std::vector<std::string> names;  // size d

  MagnusContext(D dom_, std::uint32_t d_, std::uint32_t trunc_)
      : dom(std::move(dom_)), d(d_), trunc(trunc_), names(ambient_names(d_)) {}
  MagnusContext(D dom_, std::uint32_t d_, std::uint32_t trunc_, std::vector<std::string> names_)
      : dom(std::move(dom_)), d(d_), trunc(trunc_), names(std::move(names_)) {
    if (names.size() != d) fail(Errc::bad_argument, "generator name list must have d entries");
  }

  std::uint32_t index_of(const std::string& name) const {
    for (std::uint32_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    throw Error(Errc::unknown_generator, "generator '" + name + "' is not an ambient generator");
  }
};

// Substitute x_i -> 1 + y_i and evaluate the whole expression in the
// truncated series ring. Every value of a subexpression has constant term 1,
// so powers always go through the binomial series.
template <class D>
Series<D> magnus_eval(const WordExpr& w, const MagnusContext<D>& ctx) {
  switch (w.kind()) {
    case WordExpr::Kind::gen:
      return Series<D>::one_plus_gen(ctx.dom, ctx.d, ctx.trunc, ctx.index_of(w.name()));
    case WordExpr::Kind::prod: {
      Series<D> acc = Series<D>::one(ctx.dom, ctx.d, ctx.trunc);
      for (const WordExpr& f : w.factors()) acc = acc.mul(magnus_eval(f, ctx));
      return acc;
    }
    case WordExpr::Kind::pow:
      return magnus_eval(w.base(), ctx).binomial_power(w.exponent());
    case WordExpr::Kind::comm: {
      Series<D> u = magnus_eval(w.left(), ctx);
      Series<D> v = magnus_eval(w.right(), ctx);
      return u.mul(v).mul(u.invert_unit()).mul(v.invert_unit());
    }
  }
  return Series<D>::one(ctx.dom, ctx.d, ctx.trunc);
}

// Evidence that a word evaluates away from 1: the degree and the exact
// leading homogeneous component of (value - 1).
template <class D>
struct Certificate {
  std::string word;
  std::uint32_t degree = 0;
  Series<D> component;
};

inline std::vector<std::uint32_t> default_schedule(std::uint32_t max_degree = 16) {
  std::vector<std::uint32_t> s;
  for (std::uint32_t n = 2; n < max_degree; n *= 2) s.push_back(n);
  if (s.empty() || s.back() != max_degree) s.push_back(max_degree);
  return s;
}

// Evaluate at increasing truncation degrees until the image separates from 1
// or the schedule is exhausted (inconclusive: nullopt). The certifying degree
// is the lowest nonzero degree of (value - 1), independent of the schedule.
template <class D>
std::optional<Certificate<D>> certify_nontrivial(const WordExpr& w, const D& dom, std::uint32_t d,
                                                 const std::vector<std::uint32_t>& schedule) {
  if (schedule.empty()) fail(Errc::bad_argument, "certification schedule must not be empty");
  std::uint32_t last = 0;
  for (std::uint32_t n : schedule) {
    if (n <= last) fail(Errc::bad_argument, "certification schedule must be strictly increasing");
    last = n;
  }
  for (std::uint32_t n : schedule) {
    MagnusContext<D> ctx(dom, d, n);
    Series<D> value = magnus_eval(w, ctx);
    Series<D> aug = value.sub(Series<D>::one(dom, d, n));
    if (auto lt = aug.lowest_term())
      return Certificate<D>{w.str(), lt->first, std::move(lt->second)};
  }
  return std::nullopt;
}

template <class D>
std::optional<Certificate<D>> certify_nontrivial(const WordExpr& w, const D& dom, std::uint32_t d,
                                                 std::uint32_t max_degree = 16) {
  return certify_nontrivial(w, dom, d, default_schedule(max_degree));
}

// A degree-n certificate pins the word away from 1 in the unit group of the
// series ring truncated at degree n+1, hence in the free nilpotent quotient
// of class n.
struct NilpotenceWitness {
  std::uint32_t degree = 0;
  std::uint32_t nilpotency_class = 0;
  std::string statement;
};

inline NilpotenceWitness nilpotence_witness(std::uint32_t certificate_degree) {
  NilpotenceWitness w;
  w.degree = certificate_degree;
  w.nilpotency_class = certificate_degree;
  w.statement = "the word has a nonzero degree-" + std::to_string(certificate_degree) +
                " leading term, so its image in the degree-" +
                std::to_string(certificate_degree + 1) +
                " truncated unit group is not 1 and it survives in the class-" +
                std::to_string(certificate_degree) + " free nilpotent quotient";
  return w;
}

template <class D>
Json certificate_to_json(const Certificate<D>& c) {
  Json j;
  j["schema"] = "v1";
  j["word"] = c.word;
  j["degree"] = c.degree;
  j["component"] = series_to_json(c.component);
  NilpotenceWitness w = nilpotence_witness(c.degree);
  j["witness"] = Json{{"nilpotency_class", w.nilpotency_class}, {"statement", w.statement}};
  return j;
}

}  // namespace promag
