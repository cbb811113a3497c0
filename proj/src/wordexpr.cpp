#include "promag/wordexpr.hpp"

#include <algorithm>
#include <cctype>

namespace promag {

namespace {

constexpr std::size_t kMaxExpandedLetters = 1u << 24;

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

std::string Exponent::str() const {
  switch (kind_) {
    case Kind::integer:
      return int_.get_str();
    case Kind::rational:
      return "(" + rat_.str() + ")";
    case Kind::padic:
      return "Zp(" + int_.get_str() + ";" + std::to_string(prec_) + ")";
  }
  return {};
}

WordExpr WordExpr::gen(std::string name) {
  WordExpr w;
  w.kind_ = Kind::gen;
  w.name_ = std::move(name);
  return w;
}

WordExpr WordExpr::prod(std::vector<WordExpr> factors) {
  if (factors.size() == 1) return std::move(factors[0]);
  WordExpr w;
  w.kind_ = Kind::prod;
  w.kids_ = std::move(factors);
  return w;
}

WordExpr WordExpr::pow(WordExpr base, Exponent e) {
  WordExpr w;
  w.kind_ = Kind::pow;
  w.kids_.push_back(std::move(base));
  w.exp_ = std::move(e);
  return w;
}

WordExpr WordExpr::comm(WordExpr u, WordExpr v) {
  WordExpr w;
  w.kind_ = Kind::comm;
  w.kids_.push_back(std::move(u));
  w.kids_.push_back(std::move(v));
  return w;
}

std::string WordExpr::str() const {
  switch (kind_) {
    case Kind::gen:
      return name_;
    case Kind::prod: {
      if (kids_.empty()) return "1";
      std::string out;
      for (std::size_t i = 0; i < kids_.size(); ++i) {
        if (i) out += ' ';
        bool parens = kids_[i].kind_ == Kind::prod;  // nested product needs grouping
        if (parens) out += '(';
        out += kids_[i].str();
        if (parens) out += ')';
      }
      return out;
    }
    case Kind::pow: {
      const WordExpr& b = kids_[0];
      bool parens = b.kind_ == Kind::prod || b.kind_ == Kind::pow;
      std::string out = parens ? "(" + b.str() + ")" : b.str();
      return out + "^" + exp_.str();
    }
    case Kind::comm:
      return "[" + kids_[0].str() + "," + kids_[1].str() + "]";
  }
  return {};
}

std::vector<std::string> WordExpr::generator_names() const {
  std::vector<std::string> names;
  auto visit = [&](auto&& self, const WordExpr& w) -> void {
    if (w.kind_ == Kind::gen) {
      if (std::find(names.begin(), names.end(), w.name_) == names.end()) names.push_back(w.name_);
      return;
    }
    for (const WordExpr& k : w.kids_) self(self, k);
  };
  visit(visit, *this);
  return names;
}

namespace {

class Parser {
public:
  Parser(const std::string& text, const std::vector<std::string>* allowed)
      : text_(text), allowed_(allowed) {}

  WordExpr run() {
    WordExpr w = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return w;
  }

  Exponent run_exponent() {
    Exponent e = parse_exponent();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool atom_ahead() {
    char c = peek();
    return is_name_start(c) || c == '(' || c == '[' || c == '1';
  }

  WordExpr parse_expr() {
    std::vector<WordExpr> factors;
    if (!atom_ahead()) throw ParseError("expected a word expression", pos_);
    while (atom_ahead()) factors.push_back(parse_term());
    // "1" parses to the empty product; drop it inside larger products.
    std::vector<WordExpr> kept;
    for (WordExpr& f : factors)
      if (!f.is_identity() || factors.size() == 1) kept.push_back(std::move(f));
    if (kept.empty()) return WordExpr::identity();
    return WordExpr::prod(std::move(kept));
  }

  WordExpr parse_term() {
    WordExpr atom = parse_atom();
    if (peek() == '^') {
      ++pos_;
      return WordExpr::pow(std::move(atom), parse_exponent());
    }
    return atom;
  }

  WordExpr parse_atom() {
    char c = peek();
    if (c == '1') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ < text_.size() && is_name_char(text_[pos_]))
        throw ParseError("generator names may not start with a digit", at);
      return WordExpr::identity();
    }
    if (c == '(') {
      ++pos_;
      WordExpr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      WordExpr u = parse_expr();
      expect(',');
      WordExpr v = parse_expr();
      expect(']');
      return WordExpr::comm(std::move(u), std::move(v));
    }
    if (is_name_start(c)) {
      std::size_t at = pos_;
      std::string name;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) name += text_[pos_++];
      if (name == "Zp") throw ParseError("'Zp' is reserved for p-adic exponents", at);
      if (allowed_ && std::find(allowed_->begin(), allowed_->end(), name) == allowed_->end())
        throw Error(Errc::unknown_generator, "unknown generator '" + name + "'");
      return WordExpr::gen(std::move(name));
    }
    throw ParseError("expected a generator, '(', '[' or '1'", pos_);
  }

  Integer parse_int(bool allow_sign) {
    skip_ws();
    std::size_t at = pos_;
    std::string digits;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
      digits += text_[pos_++];
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      digits += text_[pos_++];
    if (digits.empty() || digits == "-" || digits == "+")
      throw ParseError("expected an integer", at);
    return Integer(digits, 10);
  }

  Exponent parse_exponent() {
    skip_ws();
    if (pos_ + 2 < text_.size() && text_.compare(pos_, 3, "Zp(") == 0) {
      pos_ += 3;
      Integer v = parse_int(true);
      expect(';');
      std::size_t at = pos_;
      Integer k = parse_int(false);
      expect(')');
      if (k <= 0 || !k.fits_uint_p()) throw ParseError("p-adic precision must be a positive integer", at);
      return Exponent::of_padic(std::move(v), static_cast<std::uint32_t>(k.get_ui()));
    }
    if (peek() == '(') {
      ++pos_;
      Integer num = parse_int(true);
      expect('/');
      std::size_t at = pos_;
      Integer den = parse_int(false);
      expect(')');
      if (den == 0) throw ParseError("zero denominator in exponent", at);
      return Exponent::of_rational(Rational(num, den));
    }
    return Exponent::of_int(parse_int(true));
  }

  const std::string& text_;
  const std::vector<std::string>* allowed_;
  std::size_t pos_ = 0;
};

}  // namespace

WordExpr parse_word(const std::string& text, const std::vector<std::string>* allowed_names) {
  return Parser(text, allowed_names).run();
}

Exponent parse_exponent(const std::string& text) { return Parser(text, nullptr).run_exponent(); }

namespace {

void expand_letters(const WordExpr& w, int sign, std::vector<Letter>& out) {
  auto push = [&](Letter l) {
    if (out.size() >= kMaxExpandedLetters)
      fail(Errc::bad_argument, "word expansion exceeds the letter cap");
    // Cancel against the top of the stack.
    if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
      out.pop_back();
    else
      out.push_back(std::move(l));
  };
  switch (w.kind()) {
    case WordExpr::Kind::gen:
      push({w.name(), sign});
      return;
    case WordExpr::Kind::prod:
      if (sign > 0)
        for (const WordExpr& f : w.factors()) expand_letters(f, sign, out);
      else
        for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it)
          expand_letters(*it, sign, out);
      return;
    case WordExpr::Kind::comm:
      if (sign > 0) {
        expand_letters(w.left(), 1, out);
        expand_letters(w.right(), 1, out);
        expand_letters(w.left(), -1, out);
        expand_letters(w.right(), -1, out);
      } else {
        expand_letters(w.right(), 1, out);
        expand_letters(w.left(), 1, out);
        expand_letters(w.right(), -1, out);
        expand_letters(w.left(), -1, out);
      }
      return;
    case WordExpr::Kind::pow: {
      const Exponent& e = w.exponent();
      if (e.kind() != Exponent::Kind::integer)
        fail(Errc::bad_argument,
             "free reduction is defined for integer exponents only (got " + e.str() + ")");
      Integer n = e.int_value();
      int dir = sign;
      if (n < 0) {
        dir = -dir;
        n = -n;
      }
      if (!n.fits_ulong_p() || n.get_ui() > kMaxExpandedLetters)
        fail(Errc::bad_argument, "integer exponent too large to expand");
      for (unsigned long i = 0; i < n.get_ui(); ++i) expand_letters(w.base(), dir, out);
      return;
    }
  }
}

}  // namespace

std::vector<Letter> free_reduce(const WordExpr& w) {
  std::vector<Letter> out;
  expand_letters(w, 1, out);
  return out;
}

WordExpr substitute(const WordExpr& w, const std::map<std::string, WordExpr>& images) {
  switch (w.kind()) {
    case WordExpr::Kind::gen: {
      auto it = images.find(w.name());
      if (it == images.end())
        throw Error(Errc::unknown_generator, "no image supplied for generator '" + w.name() + "'");
      return it->second;
    }
    case WordExpr::Kind::prod: {
      std::vector<WordExpr> factors;
      factors.reserve(w.factors().size());
      for (const WordExpr& f : w.factors()) factors.push_back(substitute(f, images));
      return w.factors().empty() ? WordExpr::identity() : WordExpr::prod(std::move(factors));
    }
    case WordExpr::Kind::pow:
      return WordExpr::pow(substitute(w.base(), images), w.exponent());
    case WordExpr::Kind::comm:
      return WordExpr::comm(substitute(w.left(), images), substitute(w.right(), images));
  }
  return WordExpr::identity();
}

namespace {

Json exponent_to_json(const Exponent& e) {
  switch (e.kind()) {
    case Exponent::Kind::integer:
      return Json{{"kind", "int"}, {"v", e.int_value().get_str()}};
    case Exponent::Kind::rational:
      return Json{{"kind", "rat"}, {"v", e.rational_value().str()}};
    case Exponent::Kind::padic:
      return Json{{"kind", "padic"}, {"v", e.int_value().get_str()}, {"k", e.padic_precision()}};
  }
  return {};
}

Exponent exponent_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "int") return Exponent::of_int(Integer(j.at("v").get<std::string>(), 10));
  if (kind == "rat") return Exponent::of_rational(Rational::parse(j.at("v").get<std::string>()));
  if (kind == "padic")
    return Exponent::of_padic(Integer(j.at("v").get<std::string>(), 10), j.at("k").get<std::uint32_t>());
  fail(Errc::parse_error, "unknown exponent kind '" + kind + "'");
}

}  // namespace

Json word_to_json(const WordExpr& w) {
  switch (w.kind()) {
    case WordExpr::Kind::gen:
      return Json{{"kind", "gen"}, {"name", w.name()}};
    case WordExpr::Kind::prod: {
      Json factors = Json::array();
      for (const WordExpr& f : w.factors()) factors.push_back(word_to_json(f));
      return Json{{"kind", "prod"}, {"factors", std::move(factors)}};
    }
    case WordExpr::Kind::pow:
      return Json{{"kind", "pow"}, {"base", word_to_json(w.base())}, {"exp", exponent_to_json(w.exponent())}};
    case WordExpr::Kind::comm:
      return Json{{"kind", "comm"}, {"u", word_to_json(w.left())}, {"v", word_to_json(w.right())}};
  }
  return {};
}

WordExpr word_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "gen") return WordExpr::gen(j.at("name").get<std::string>());
  if (kind == "prod") {
    std::vector<WordExpr> factors;
    for (const Json& f : j.at("factors")) factors.push_back(word_from_json(f));
    return factors.empty() ? WordExpr::identity() : WordExpr::prod(std::move(factors));
  }
  if (kind == "pow") return WordExpr::pow(word_from_json(j.at("base")), exponent_from_json(j.at("exp")));
  if (kind == "comm") return WordExpr::comm(word_from_json(j.at("u")), word_from_json(j.at("v")));
  fail(Errc::parse_error, "unknown word node kind '" + kind + "'");
}

}  // namespace promag
