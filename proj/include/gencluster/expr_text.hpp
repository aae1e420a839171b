#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "gencluster/rational_fn.hpp"
#include "gencluster/semifield.hpp"

// Text form for polynomials and rational functions.  Printing is
// deterministic (graded lex, descending) so printed forms double as canonical
// keys; the parser accepts exactly the printed grammar plus whitespace.

namespace gencluster {

namespace textdetail {

inline bool term_before(const ExpVec& a, const ExpVec& b) {
  __int128 da = 0, db = 0;
  for (Exp e : a) da += e;
  for (Exp e : b) db += e;
  if (da != db) return da > db;
  return a > b;  // lex descending
}

inline void print_int(std::string& out, const Int& c) { out += c.get_str(); }

}  // namespace textdetail

inline std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<const std::pair<const ExpVec, Int>*> terms;
  terms.reserve(p.term_count());
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [](auto* a, auto* b) { return textdetail::term_before(a->first, b->first); });
  std::string out;
  bool first = true;
  for (auto* t : terms) {
    const auto& [e, c] = *t;
    const bool neg = c < 0;
    if (first) {
      if (neg) out += '-';
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    Int mag = neg ? Int(-c) : c;
    std::string syms;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!syms.empty()) syms += '*';
      syms += p.ctx()->name(i);
      if (e[i] != 1) {
        syms += '^';
        syms += std::to_string(e[i]);
      }
    }
    if (syms.empty()) {
      textdetail::print_int(out, mag);
    } else {
      if (mag != 1) {
        textdetail::print_int(out, mag);
        out += '*';
      }
      out += syms;
    }
  }
  return out;
}

// Fractions are displayed with the common monomial factor cleared, so both
// sides print as ordinary polynomials and denominators stay monomial where
// the value allows it. Equal values always print identically.
inline std::string to_string(const RationalFn& f) {
  if (f.num().is_zero()) return "0";
  const CtxPtr& ctx = f.num().ctx();
  ExpVec s(ctx->width(), 0);
  auto lower = [&](const LaurentPoly& p) {
    for (const auto& [e, c] : p.terms()) {
      (void)c;
      for (std::size_t i = 0; i < e.size(); ++i) s[i] = std::min(s[i], e[i]);
    }
  };
  lower(f.num());
  lower(f.den());
  bool shift = false;
  for (auto& v : s) {
    v = exp_neg(v);
    if (v != 0) shift = true;
  }
  if (!shift) {
    if (f.den().is_one()) return to_string(f.num());
    return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
  }
  const LaurentPoly m = LaurentPoly::monomial(ctx, s, 1);
  const LaurentPoly num = f.num() * m;
  const LaurentPoly den = f.den() * m;
  if (den.is_one()) return to_string(num);
  return "(" + to_string(num) + ")/(" + to_string(den) + ")";
}

inline std::string to_string(const TropicalElement& t) {
  std::string out;
  const auto& spec = *t.spec();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    Exp e = t.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += spec.generators()[i];
    if (e != 1) {
      out += '^';
      out += std::to_string(e);
    }
  }
  return out.empty() ? "1" : out;
}

namespace textdetail {

struct Parser {
  const CtxPtr& ctx;
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("parse error at offset " + std::to_string(pos) + ": " + what +
                      " in \"" + std::string(s) + "\"");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  Int parse_int_literal() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return Int(std::string(s.substr(start, pos - start)), 10);
  }

  Exp parse_exponent() {
    bool neg = false;
    bool parens = eat('(');
    if (eat('-')) neg = true;
    Int v = parse_int_literal();
    if (parens && !eat(')')) fail("expected ')'");
    Exp e = to_exp(v);
    return neg ? exp_neg(e) : e;
  }

  RationalFn parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      RationalFn v = parse_sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return RationalFn(LaurentPoly::constant(ctx, parse_int_literal()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      std::string name(s.substr(start, pos - start));
      auto flat = ctx->index_of(name);
      if (!flat) fail("unknown symbol '" + name + "'");
      return RationalFn::symbol(ctx, *flat);
    }
    fail("unexpected character");
  }

  RationalFn parse_power() {
    RationalFn base = parse_atom();
    if (eat('^')) return base.pow(parse_exponent());
    return base;
  }

  RationalFn parse_unary() {
    if (eat('-')) return -parse_unary();
    return parse_power();
  }

  RationalFn parse_product() {
    RationalFn v = parse_unary();
    while (true) {
      if (eat('*'))
        v *= parse_unary();
      else if (eat('/'))
        v /= parse_unary();
      else
        return v;
    }
  }

  RationalFn parse_sum() {
    RationalFn v = parse_product();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        v += parse_product();
      } else if (c == '-') {
        ++pos;
        v -= parse_product();
      } else {
        return v;
      }
    }
  }
};

}  // namespace textdetail

inline RationalFn parse_rational(const CtxPtr& ctx, std::string_view text) {
  textdetail::Parser p{ctx, text};
  RationalFn v = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

// Parses a product of coefficient-semifield generators into a tropical value.
inline TropicalElement parse_tropical(const CtxPtr& ctx, std::string_view text) {
  RationalFn f = parse_rational(ctx, text);
  const LaurentPoly& n = f.num();
  if (!f.den().is_one() || !n.is_monomial())
    throw ConfigError("expected a monomial in coefficient generators: " + std::string(text));
  const auto& [e, c] = *n.terms().begin();
  if (c != 1) throw ConfigError("tropical values carry no integer coefficient: " + std::string(text));
  ExpVec gens(ctx->ng());
  for (std::size_t i = 0; i < ctx->nx(); ++i)
    if (e[i] != 0) throw ConfigError("tropical values cannot involve cluster variables: " + std::string(text));
  for (std::size_t g = 0; g < ctx->ng(); ++g) gens[g] = e[ctx->nx() + g];
  return TropicalElement(ctx->semifield(), std::move(gens));
}

}  // namespace gencluster
