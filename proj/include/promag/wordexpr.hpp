#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "promag/scalars.hpp"

namespace promag {

using Json = nlohmann::ordered_json;

// Exponent of a group element: an integer, a rational q/r, or a truncated
// p-adic integer Zp(v;k) meaning v mod p^k (the prime comes from the
// evaluation domain).
class Exponent {
public:
  enum class Kind { integer, rational, padic };

  static Exponent of_int(Integer v) {
    Exponent e;
    e.kind_ = Kind::integer;
    e.int_ = std::move(v);
    return e;
  }
  static Exponent of_rational(Rational r) {
    Exponent e;
    e.kind_ = Kind::rational;
    e.rat_ = std::move(r);
    return e;
  }
  static Exponent of_padic(Integer v, std::uint32_t k) {
    if (k == 0) fail(Errc::bad_argument, "p-adic exponent needs precision >= 1");
    Exponent e;
    e.kind_ = Kind::padic;
    e.int_ = std::move(v);
    e.prec_ = k;
    return e;
  }

  Kind kind() const { return kind_; }
  const Integer& int_value() const { return int_; }       // integer / padic value
  const Rational& rational_value() const { return rat_; }
  std::uint32_t padic_precision() const { return prec_; }

  std::string str() const;  // "3", "(1/2)", "Zp(41;4)"

  friend bool operator==(const Exponent&, const Exponent&) = default;

private:
  Kind kind_ = Kind::integer;
  Integer int_ = 0;
  Rational rat_;
  std::uint32_t prec_ = 0;
};

// Group word over named generators.
//
//   expr     := term+                      juxtaposition is product
//   term     := atom ('^' exponent)?
//   atom     := name | '(' expr ')' | '[' expr ',' expr ']' | '1'
//   exponent := int | '(' int '/' posint ')' | 'Zp(' int ';' posint ')'
//
// The identity is the empty product and prints as "1". [u,v] denotes
// u v u^-1 v^-1. Power binds tighter than product.
class WordExpr {
public:
  enum class Kind { gen, prod, pow, comm };

  static WordExpr gen(std::string name);
  static WordExpr prod(std::vector<WordExpr> factors);  // empty => identity
  static WordExpr identity() { return prod({}); }
  static WordExpr pow(WordExpr base, Exponent e);
  static WordExpr inverse(WordExpr base) { return pow(std::move(base), Exponent::of_int(-1)); }
  static WordExpr comm(WordExpr u, WordExpr v);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<WordExpr>& factors() const { return kids_; }  // prod
  const WordExpr& base() const { return kids_[0]; }               // pow
  const Exponent& exponent() const { return exp_; }               // pow
  const WordExpr& left() const { return kids_[0]; }               // comm
  const WordExpr& right() const { return kids_[1]; }              // comm
  bool is_identity() const { return kind_ == Kind::prod && kids_.empty(); }

  std::string str() const;

  // Names in order of first appearance.
  std::vector<std::string> generator_names() const;

  friend bool operator==(const WordExpr&, const WordExpr&) = default;

private:
  Kind kind_ = Kind::prod;
  std::string name_;
  std::vector<WordExpr> kids_;
  Exponent exp_;
};

// Parses a standalone exponent: "3", "(1/2)", or "Zp(41;4)".
Exponent parse_exponent(const std::string& text);

// Throws ParseError with the byte offset of the problem. When a context is
// given, generator names outside it are rejected (unknown_generator).
WordExpr parse_word(const std::string& text,
                    const std::vector<std::string>* allowed_names = nullptr);

// One letter of a freely reduced word: generator name and sign +1 / -1.
struct Letter {
  std::string gen;
  int sign = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Expands integer powers and commutators and cancels adjacent inverse pairs.
// Rejects non-integer exponents and absurdly large expansions.
std::vector<Letter> free_reduce(const WordExpr& w);

// Replaces each generator by its image, keeping the expression structure;
// no free reduction is performed. Every generator of w must be mapped.
WordExpr substitute(const WordExpr& w, const std::map<std::string, WordExpr>& images);

Json word_to_json(const WordExpr& w);
WordExpr word_from_json(const Json& j);

}  // namespace promag
