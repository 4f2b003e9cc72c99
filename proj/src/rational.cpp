#include "hc/rational.hpp"

#include <cctype>

namespace hc {

namespace {

std::string positive_term(const Rational& coeff, bool with_eps) {
  const long long num = coeff.num() < 0 ? -coeff.num() : coeff.num();
  const long long den = coeff.den();
  std::string s;
  if (!with_eps) {
    s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
  }
  if (num != 1) s += std::to_string(num);
  s += "e";
  if (den != 1) s += "/" + std::to_string(den);
  return s;
}

struct Scanner {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  char take() {
    skip_ws();
    return text[pos++];
  }

  // unsigned integer or decimal like "0.25", as an exact rational
  Rational number() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected a number in '" + text + "'");
    long long whole = std::stoll(text.substr(start, pos - start));
    Rational value(whole);
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      const std::size_t fstart = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == fstart) throw ParseError("dangling decimal point in '" + text + "'");
      const std::string frac = text.substr(fstart, pos - fstart);
      if (frac.size() > 18) throw ParseError("decimal too long");
      long long scale = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      value = value + Rational(std::stoll(frac), scale);
    }
    return value;
  }

  // number, e, number*e, e*number, with optional /denominator suffixes
  EpsAffine term() {
    bool has_eps = false;
    Rational coeff(1);
    bool saw_number = false;
    if (peek() == 'e') {
      take();
      has_eps = true;
    } else {
      coeff = number();
      saw_number = true;
      if (peek() == '*') {
        take();
        if (peek() != 'e') throw ParseError("expected e after * in '" + text + "'");
        take();
        has_eps = true;
      } else if (peek() == 'e') {
        take();
        has_eps = true;
      }
    }
    while (peek() == '/') {
      take();
      coeff /= number();
    }
    if (has_eps && peek() == '*' && !saw_number) {
      take();
      coeff *= number();
    }
    return has_eps ? EpsAffine(Rational(0), coeff) : EpsAffine(coeff);
  }
};

}  // namespace

std::string EpsAffine::str() const {
  if (c0.is_zero() && c1.is_zero()) return "0";
  std::string out;
  if (!c0.is_zero() || c1.is_zero()) {
    if (c0.is_negative()) out += "-";
    out += positive_term(c0, false);
  }
  if (!c1.is_zero()) {
    if (out.empty()) {
      if (c1.is_negative()) out += "-";
    } else {
      out += c1.is_negative() ? " - " : " + ";
    }
    out += positive_term(c1, true);
  }
  return out;
}

EpsAffine parse_eps_affine(const std::string& text) {
  Scanner sc{text};
  if (sc.eof()) throw ParseError("empty expression");
  EpsAffine result;
  bool negate = false;
  if (sc.peek() == '-') {
    sc.take();
    negate = true;
  } else if (sc.peek() == '+') {
    sc.take();
  }
  while (true) {
    EpsAffine t = sc.term();
    result = negate ? result - t : result + t;
    if (sc.eof()) break;
    const char op = sc.take();
    if (op == '+')
      negate = false;
    else if (op == '-')
      negate = true;
    else
      throw ParseError(std::string("unexpected character '") + op + "' in '" + text + "'");
  }
  return result;
}

Rational parse_rational(const std::string& text) {
  const EpsAffine e = parse_eps_affine(text);
  if (!e.is_constant()) throw ParseError("expected a number, got an expression in e");
  return e.c0;
}

}  // namespace hc
