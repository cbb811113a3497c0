#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <type_traits>
#include <vector>

#include "CLI11.hpp"
#include "promag/errors.hpp"
#include "promag/extcheck.hpp"
#include "promag/foxrank.hpp"
#include "promag/magnus.hpp"
#include "promag/pquot.hpp"

namespace {

using namespace promag;

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::parse_error:
    case Errc::unknown_generator:
      return 2;
    case Errc::relator_violation:
      return 4;
    case Errc::cap_exceeded:
      return 5;
    default:
      return 1;
  }
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse_error:
      return "parse_error";
    case Errc::unknown_generator:
      return "unknown_generator";
    case Errc::domain_mismatch:
      return "domain_mismatch";
    case Errc::division_by_zero:
      return "division_by_zero";
    case Errc::not_invertible:
      return "not_invertible";
    case Errc::precision_exhausted:
      return "precision_exhausted";
    case Errc::cap_exceeded:
      return "cap_exceeded";
    case Errc::relator_violation:
      return "relator_violation";
    case Errc::bad_argument:
      return "bad_argument";
  }
  return "error";
}

void emit(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail(Errc::bad_argument, "cannot open output file '" + out_path + "'");
    f << text;
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::bad_argument, "cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    fail(Errc::parse_error, "invalid JSON in '" + path + "': " + e.what());
  }
}

std::uint64_t env_default_cap() {
  const char* env = std::getenv("PROMAG_CAP");
  if (!env) return kDefaultQuotientCap;
  std::string s = env;
  if (s.empty() || s.size() > 18 ||
      !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) ||
      s == "0")
    fail(Errc::bad_argument, "PROMAG_CAP must be a positive integer");
  return std::stoull(s);
}

// Ambient generators are x1..xd; the rank is the largest index used unless
// an explicit override raises it.
std::uint32_t infer_rank(const WordExpr& w, std::uint32_t override_rank) {
  std::uint32_t max_idx = 0;
  for (const std::string& name : w.generator_names()) {
    bool ok = name.size() >= 2 && name[0] == 'x' && name[1] != '0';
    std::uint64_t idx = 0;
    for (std::size_t i = 1; ok && i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) ok = false;
      idx = idx * 10 + static_cast<std::uint64_t>(name[i] - '0');
      if (idx > 1000000) ok = false;
    }
    if (!ok)
      fail(Errc::parse_error, "ambient generators must be named x1, x2, ...; got '" + name + "'");
    max_idx = std::max<std::uint32_t>(max_idx, static_cast<std::uint32_t>(idx));
  }
  std::uint32_t d = std::max<std::uint32_t>(max_idx, 1);
  if (override_rank != 0) {
    if (override_rank < max_idx)
      fail(Errc::bad_argument, "--rank is smaller than an index used in the word");
    d = override_rank;
  }
  return d;
}

struct DomainOpts {
  std::string domain = "q";
  std::uint32_t p = 0;
  std::uint32_t k = 0;
};

template <class F>
void with_domain(const DomainOpts& o, F&& f) {
  if (o.domain == "q") {
    if (o.p != 0 || o.k != 0)
      fail(Errc::bad_argument, "--p/--k are only meaningful for --domain fp or zpk");
    f(RationalField());
  } else if (o.domain == "fp") {
    if (o.p == 0) fail(Errc::bad_argument, "--domain fp requires --p");
    if (o.k != 0) fail(Errc::bad_argument, "--k is only meaningful for --domain zpk");
    f(PrimeField(o.p));
  } else if (o.domain == "zpk") {
    if (o.p == 0 || o.k == 0) fail(Errc::bad_argument, "--domain zpk requires --p and --k");
    f(PadicRing(o.p, o.k));
  } else {
    fail(Errc::bad_argument, "domain must be one of: q, fp, zpk");
  }
}

RelatorPolicy policy_from(bool require_vanishing) {
  return require_vanishing ? RelatorPolicy::require_vanishing : RelatorPolicy::impose;
}

struct Options {
  std::string expr, presentation, out;
  DomainOpts dom;
  std::uint32_t degree = 0, max_degree = 16, rank = 0, level = 0, root_degree = 0,
                suggest_k = 0;
  std::vector<std::uint32_t> levels, schedule;
  std::uint64_t cap = 0, seed = 0;
  bool require_vanishing = false, impose_relators = false;
  std::string mode, base;
  std::vector<std::string> gens, lambdas, hg, bg, ag;
};

int run_eval(const Options& o) {
  WordExpr w = parse_word(o.expr);
  std::uint32_t d = infer_rank(w, o.rank);
  if (o.degree == 0) fail(Errc::bad_argument, "--degree must be at least 1");
  int rc = 0;
  with_domain(o.dom, [&](const auto& dom) {
    MagnusContext<std::decay_t<decltype(dom)>> ctx(dom, d, o.degree);
    auto value = magnus_eval(w, ctx);
    Json j;
    j["schema"] = "v1";
    j["kind"] = "eval";
    j["word"] = w.str();
    j["is_one"] = value.is_one();
    j["series"] = series_to_json(value);
    emit(j, o.out);
  });
  return rc;
}

int run_certify(const Options& o) {
  WordExpr w = parse_word(o.expr);
  std::uint32_t d = infer_rank(w, o.rank);
  std::vector<std::uint32_t> schedule =
      o.schedule.empty() ? default_schedule(o.max_degree) : o.schedule;
  int rc = 0;
  with_domain(o.dom, [&](const auto& dom) {
    auto cert = certify_nontrivial(w, dom, d, schedule);
    if (cert) {
      Json c = certificate_to_json(*cert);
      Json j;
      j["schema"] = "v1";
      j["kind"] = "certify";
      j["status"] = "certified";
      j["word"] = c.at("word");
      j["degree"] = c.at("degree");
      j["component"] = c.at("component");
      j["witness"] = c.at("witness");
      emit(j, o.out);
    } else {
      Json j;
      j["schema"] = "v1";
      j["kind"] = "certify";
      j["status"] = "inconclusive";
      j["word"] = w.str();
      j["schedule"] = schedule;
      emit(j, o.out);
      rc = 3;
    }
  });
  return rc;
}

int run_beta1(const Options& o) {
  Presentation pres = presentation_from_json(load_json_file(o.presentation));
  if (o.levels.empty()) fail(Errc::bad_argument, "--levels is required");
  Beta1Options bo;
  bo.cap = o.cap;
  bo.policy = policy_from(o.require_vanishing);
  std::vector<Beta1Level> lv;
  beta1_sequence(pres, o.levels, lv, bo);
  emit(beta1_report(pres, lv), o.out);
  return 0;
}

int run_amalgam(const Options& o) {
  Presentation pres = presentation_from_json(load_json_file(o.presentation));
  if (o.levels.empty()) fail(Errc::bad_argument, "--levels is required");
  AmalgamSpec spec;
  for (const auto& t : o.hg) spec.h_gens.push_back(parse_word(t, &pres.generators));
  for (const auto& t : o.bg) spec.b_gens.push_back(parse_word(t, &pres.generators));
  for (const auto& t : o.ag) spec.a_gens.push_back(parse_word(t, &pres.generators));
  AmalgamOptions ao;
  ao.cap = o.cap;
  ao.policy = o.impose_relators ? RelatorPolicy::impose : RelatorPolicy::require_vanishing;
  std::vector<AmalgamLevel> lv;
  amalgam_check(pres, spec, o.levels, lv, ao);
  emit(amalgam_report(pres, spec, lv), o.out);
  return 0;
}

int run_extend(const Options& o) {
  Presentation pres = presentation_from_json(load_json_file(o.presentation));
  Json j;
  j["schema"] = "v1";
  j["kind"] = "extend";
  j["mode"] = o.mode;
  Presentation ext;
  if (o.mode == "root") {
    if (o.gens.size() != 1) fail(Errc::bad_argument, "root mode takes exactly one --gen");
    if (!o.lambdas.empty() || o.suggest_k != 0)
      fail(Errc::bad_argument, "--lambda/--suggest-k are only for centralizer mode");
    WordExpr base = parse_word(o.base, &pres.generators);
    ext = extend_root(pres, o.gens[0], base, o.root_degree);
    j["gen"] = o.gens[0];
    j["base"] = base.str();
    j["degree"] = o.root_degree;
  } else if (o.mode == "centralizer") {
    if (o.gens.empty()) fail(Errc::bad_argument, "centralizer mode needs at least one --gen");
    if (o.root_degree != 0) fail(Errc::bad_argument, "--degree is only for root mode");
    WordExpr base = parse_word(o.base, &pres.generators);
    std::vector<Exponent> lambdas;
    if (!o.lambdas.empty()) {
      if (o.suggest_k != 0) fail(Errc::bad_argument, "give either --lambda or --suggest-k");
      for (const auto& t : o.lambdas) lambdas.push_back(parse_exponent(t));
    } else {
      if (o.suggest_k == 0)
        fail(Errc::bad_argument, "centralizer mode needs --lambda or --suggest-k");
      for (std::size_t i = 0; i < o.gens.size(); ++i)
        lambdas.push_back(
            suggest_central_exponent(pres.p, o.suggest_k, o.seed + static_cast<std::uint64_t>(i)));
    }
    if (lambdas.size() != o.gens.size())
      fail(Errc::bad_argument, "need exactly one --lambda per --gen");
    ext = extend_centralizer(pres, o.gens, base, lambdas);
    j["gens"] = o.gens;
    j["base"] = base.str();
    Json ls = Json::array();
    for (const auto& e : lambdas) ls.push_back(e.str());
    j["lambdas"] = std::move(ls);
  } else {
    fail(Errc::bad_argument, "--mode must be root or centralizer");
  }
  j["presentation"] = presentation_to_json(ext);
  emit(j, "");
  if (!o.out.empty()) emit(presentation_to_json(ext), o.out);
  return 0;
}

int run_quotient_info(const Options& o) {
  if (o.dom.p == 0 || o.rank == 0 || o.level == 0)
    fail(Errc::bad_argument, "--p, --rank and --level are required");
  auto Q = FiniteQuotient::build(o.dom.p, o.rank, o.level, o.cap);
  Integer predicted = predicted_quotient_order(o.dom.p, o.rank, o.level);
  std::uint32_t g = Q->gen(0);
  std::uint32_t t = g;
  std::size_t gen_order = 1;
  while (t != 0) {
    t = Q->mul(t, g);
    ++gen_order;
  }
  Json j;
  j["schema"] = "v1";
  j["kind"] = "quotient-info";
  j["p"] = o.dom.p;
  j["rank"] = o.rank;
  j["level"] = o.level;
  j["order"] = Q->order();
  j["predicted_order"] = predicted.get_str();
  j["matches"] = predicted == Integer(static_cast<unsigned long>(Q->order()));
  j["generator_order"] = gen_order;
  emit(j, o.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact truncated power-series tools for words with rational and p-adic exponents"};
  app.require_subcommand(1);
  Options o;

  auto add_domain = [&](CLI::App* cmd) {
    cmd->add_option("--domain", o.dom.domain, "Coefficient domain: q, fp, or zpk");
    cmd->add_option("--p", o.dom.p, "Prime for fp/zpk");
    cmd->add_option("--k", o.dom.k, "Precision for zpk");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("-o,--out", o.out, "Write the report to this file instead of stdout");
  };
  auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", o.cap, "Maximum quotient order to enumerate");
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a word as a truncated series");
  eval->add_option("--expr", o.expr, "Word over x1..xd")->required();
  eval->add_option("--degree", o.degree, "Truncation degree")->required();
  eval->add_option("--rank", o.rank, "Ambient rank override");
  add_domain(eval);
  add_out(eval);

  CLI::App* certify = app.add_subcommand("certify", "Certify that a word is not the identity");
  certify->add_option("--expr", o.expr, "Word over x1..xd")->required();
  auto* maxdeg = certify->add_option("--max-degree", o.max_degree, "Last scheduled degree");
  certify->add_option("--schedule", o.schedule, "Explicit increasing degree schedule")
      ->delimiter(',')
      ->excludes(maxdeg);
  certify->add_option("--rank", o.rank, "Ambient rank override");
  add_domain(certify);
  add_out(certify);

  CLI::App* beta1 = app.add_subcommand("beta1", "Per-level first homology ratios");
  beta1->add_option("--presentation", o.presentation, "Presentation JSON file")->required();
  beta1->add_option("--levels", o.levels, "Levels, e.g. 2,3,4")->delimiter(',')->required();
  beta1->add_flag("--require-vanishing", o.require_vanishing,
                  "Fail instead of imposing non-vanishing relators");
  add_cap(beta1);
  add_out(beta1);

  CLI::App* amalgam = app.add_subcommand("amalgam", "Compare subgroup difference ideals");
  amalgam->add_option("--presentation", o.presentation, "Presentation JSON file")->required();
  amalgam->add_option("--levels", o.levels, "Levels, e.g. 2,3")->delimiter(',')->required();
  amalgam->add_option("--hg", o.hg, "Generator word of H (repeatable)")->required();
  amalgam->add_option("--bg", o.bg, "Generator word of B (repeatable)")->required();
  amalgam->add_option("--ag", o.ag, "Generator word of A (repeatable)")->required();
  amalgam->add_flag("--impose-relators", o.impose_relators,
                    "Impose non-vanishing relators instead of failing");
  add_cap(amalgam);
  add_out(amalgam);

  CLI::App* extend = app.add_subcommand("extend", "Adjoin a root or a centralizer");
  extend->add_option("--presentation", o.presentation, "Presentation JSON file")->required();
  extend->add_option("--mode", o.mode, "root or centralizer")->required();
  extend->add_option("--gen", o.gens, "New generator name (repeatable)")->required();
  extend->add_option("--base", o.base, "Base word over the presentation generators")->required();
  extend->add_option("--degree", o.root_degree, "Root degree (root mode)");
  extend->add_option("--lambda", o.lambdas, "Exponent per new generator (centralizer mode)");
  extend->add_option("--suggest-k", o.suggest_k, "Generate p-adic exponents at this precision");
  extend->add_option("--seed", o.seed, "Seed for generated exponents");
  add_out(extend);

  CLI::App* qinfo = app.add_subcommand("quotient-info", "Order and shape of a level quotient");
  qinfo->add_option("--p", o.dom.p, "Prime")->required();
  qinfo->add_option("--rank", o.rank, "Ambient rank")->required();
  qinfo->add_option("--level", o.level, "Truncation level")->required();
  add_cap(qinfo);
  add_out(qinfo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (o.cap == 0) o.cap = env_default_cap();
    if (eval->parsed()) return run_eval(o);
    if (certify->parsed()) return run_certify(o);
    if (beta1->parsed()) return run_beta1(o);
    if (amalgam->parsed()) return run_amalgam(o);
    if (extend->parsed()) return run_extend(o);
    if (qinfo->parsed()) return run_quotient_info(o);
  } catch (const Error& err) {
    Json j;
    j["error"] = err.what();
    j["code"] = errc_name(err.code());
    std::cerr << j.dump() << "\n";
    return exit_code_for(err.code());
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
