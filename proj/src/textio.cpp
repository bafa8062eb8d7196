#include "coxlog/textio.hpp"

#include <cctype>
#include <vector>

namespace coxlog {

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ >= s_.size()) return {Token::End, ""};
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {Token::Number, s_.substr(start, pos_ - start)};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      return {Token::Ident, s_.substr(start, pos_ - start)};
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      ++pos_;
      return {Token::Op, std::string(1, c)};
    }
    throw error(std::string("parse: unexpected character '") + c + "'");
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const VarsPtr& vars, const std::string& text) : vars_(vars), lex_(text) {
    advance();
  }

  RatFunc parse() {
    RatFunc r = sum();
    if (cur_.kind != Token::End) throw error("parse: trailing input near '" + cur_.text + "'");
    return r;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  bool is_op(const char* s) const { return cur_.kind == Token::Op && cur_.text == s; }

  RatFunc sum() {
    bool neg = false;
    if (is_op("-")) {
      neg = true;
      advance();
    } else if (is_op("+")) {
      advance();
    }
    RatFunc acc = product();
    if (neg) acc = -acc;
    while (is_op("+") || is_op("-")) {
      bool minus = cur_.text == "-";
      advance();
      RatFunc t = product();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  RatFunc product() {
    RatFunc acc = power();
    while (is_op("*") || is_op("/")) {
      bool div = cur_.text == "/";
      advance();
      RatFunc t = power();
      acc = div ? acc / t : acc * t;
    }
    return acc;
  }

  RatFunc power() {
    RatFunc base = atom();
    if (!is_op("^")) return base;
    advance();
    bool neg = false;
    if (is_op("-")) {
      neg = true;
      advance();
    }
    if (cur_.kind != Token::Number) throw error("parse: exponent must be an integer");
    long e = std::stol(cur_.text);
    advance();
    return base.pow(neg ? -e : e);
  }

  RatFunc atom() {
    if (is_op("(")) {
      advance();
      RatFunc r = sum();
      if (!is_op(")")) throw error("parse: expected ')'");
      advance();
      return r;
    }
    if (cur_.kind == Token::Number) {
      Rational q(cur_.text);
      q.canonicalize();
      advance();
      return RatFunc(QuadScalar(q));
    }
    if (cur_.kind == Token::Ident) {
      std::string name = cur_.text;
      advance();
      if (name == "sqrt") {
        if (!is_op("(")) throw error("parse: expected '(' after sqrt");
        advance();
        if (cur_.kind != Token::Number) throw error("parse: sqrt needs an integer");
        unsigned long d = std::stoul(cur_.text);
        advance();
        if (!is_op(")")) throw error("parse: expected ')'");
        advance();
        return RatFunc(QuadScalar::sqrt_of(d));
      }
      if (vars_) {
        for (size_t i = 0; i < vars_->size(); ++i)
          if ((*vars_)[i] == name)
            return RatFunc(MultiPoly::variable(vars_, static_cast<int>(i)));
      }
      throw error("parse: unknown identifier '" + name + "'");
    }
    throw error("parse: unexpected token '" + cur_.text + "'");
  }

  VarsPtr vars_;
  Lexer lex_;
  Token cur_;
};

}  // namespace

RatFunc parse_ratfunc(const VarsPtr& vars, const std::string& text) {
  RatFunc r = Parser(vars, text).parse();
  // keep constants in the caller's ring so later coordinate ops see the vars
  if (vars && r.is_constant() && !r.num().vars())
    return RatFunc(MultiPoly::constant(vars, r.constant_value()));
  return r;
}

MultiPoly parse_poly(const VarsPtr& vars, const std::string& text) {
  RatFunc r = parse_ratfunc(vars, text);
  if (!r.is_polynomial()) throw error("parse_poly: input is not a polynomial: " + text);
  MultiPoly p = r.as_polynomial();
  if (vars && !p.vars()) return MultiPoly::constant(vars, p.constant_term());
  return p;
}

QuadScalar parse_quad_scalar(const std::string& text) {
  RatFunc r = parse_ratfunc(nullptr, text);
  if (!r.is_constant())
    throw error("parse_quad_scalar: input is not a scalar: " + text);
  return r.constant_value();
}

}  // namespace coxlog
