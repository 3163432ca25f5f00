#include "epc/expr.hpp"

#include <cctype>
#include <gmpxx.h>

namespace epc {

namespace {

struct Parser {
  const std::string& text;
  Model model;
  size_t pos = 0;

  explicit Parser(const std::string& t, Model m) : text(t), model(m) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw ParseError(std::string("expected ") + what, pos);
  }

  bool at_digit() {
    skip_ws();
    return pos < text.size() && std::isdigit((unsigned char)text[pos]);
  }

  // Digit run as an exact integer; the caller handles any sign.
  mpz_class digits() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
    if (pos == start) throw ParseError("expected a number", pos);
    return mpz_class(text.substr(start, pos - start));
  }

  long small_int(const char* what) {
    skip_ws();
    bool neg = accept('-');
    if (!at_digit()) throw ParseError(std::string("expected ") + what, pos);
    mpz_class v = digits();
    if (!v.fits_slong_p()) throw ParseError(std::string(what) + " out of range", pos);
    long out = v.get_si();
    return neg ? -out : out;
  }

  // rational := int ('/' posint)?, optionally followed by 'i'.
  GaussianRational gaussian_literal() {
    skip_ws();
    bool neg = accept('-');
    mpz_class num = digits();
    mpz_class den = 1;
    if (accept('/')) {
      size_t at = pos;
      den = digits();
      if (den == 0) throw ParseError("zero denominator", at);
    }
    if (neg) num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    bool imaginary = pos < text.size() && text[pos] == 'i';
    if (imaginary) ++pos;
    return imaginary ? GaussianRational(mpq_class(0), q) : GaussianRational(q, mpq_class(0));
  }

  int index_1based(const char* what) {
    skip_ws();
    size_t at = pos;
    if (!at_digit()) throw ParseError(std::string("expected ") + what, pos);
    mpz_class v = digits();
    if (!v.fits_sint_p() || v.get_si() < 1 || v.get_si() > model.dim)
      throw ParseError(std::string(what) + " out of range 1.." + std::to_string(model.dim), at);
    return (int)v.get_si() - 1;
  }

  std::vector<int> int_list(char stop) {
    std::vector<int> out;
    out.push_back((int)small_int("frequency"));
    while (accept(',')) out.push_back((int)small_int("frequency"));
    skip_ws();
    if ((int)out.size() != model.dim)
      throw ParseError("frequency list needs " + std::to_string(model.dim) + " entries", pos);
    expect(stop, stop == ';' ? "';'" : "']'");
    return out;
  }

  CoeffFn atom() {
    skip_ws();
    if (pos >= text.size()) throw ParseError("expected expression", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      CoeffFn inner = expr();
      expect(')', "')'");
      return inner;
    }
    if (c == '-' || std::isdigit((unsigned char)c)) {
      return CoeffFn::constant(model, gaussian_literal());
    }
    if (c == 'z') {
      size_t at = pos;
      ++pos;
      bool bar = pos < text.size() && text[pos] == 'b';
      if (bar) ++pos;
      if (model.kind != ModelKind::Chart)
        throw ParseError("coordinate variables are only available on chart models", at);
      return CoeffFn::coordinate(model, index_1based("coordinate index"), bar);
    }
    if (c == 'e') {
      size_t at = pos;
      ++pos;
      expect('[', "'['");
      if (model.kind != ModelKind::Torus)
        throw ParseError("characters are only available on torus models", at);
      std::vector<int> k = int_list(';');
      std::vector<int> l = int_list(']');
      return CoeffFn::character(model, k, l);
    }
    throw ParseError("expected a literal, variable, character, or '('", pos);
  }

  CoeffFn factor() {
    CoeffFn base = atom();
    if (accept('^')) {
      skip_ws();
      size_t at = pos;
      if (!at_digit()) throw ParseError("expected an unsigned exponent", pos);
      mpz_class e = digits();
      if (!e.fits_sint_p() || e.get_si() > 64) throw ParseError("exponent too large", at);
      return base.pow((int)e.get_si());
    }
    return base;
  }

  CoeffFn term() {
    CoeffFn out = factor();
    while (accept('*')) out = out * factor();
    return out;
  }

  CoeffFn expr() {
    CoeffFn out = term();
    for (;;) {
      if (accept('+')) {
        out = out + term();
      } else if (accept('-')) {
        out = out - term();
      } else {
        return out;
      }
    }
  }
};

}  // namespace

CoeffFn parse_expr(const std::string& text, Model model) {
  Parser p(text, model);
  p.skip_ws();
  if (p.pos >= text.size()) throw ParseError("empty expression", 0);
  CoeffFn out = p.expr();
  p.skip_ws();
  if (p.pos < text.size()) throw ParseError("unexpected trailing input", p.pos);
  return out;
}

}  // namespace epc
