#pragma once

#include <map>

#include "gencluster/common.hpp"

// Shared sparse-term arithmetic: an ordered map from exponent vector to a
// nonzero integer coefficient. Both the coefficient group ring and the
// ambient Laurent-polynomial ring sit on top of this.

namespace gencluster::detail {

using TermMap = std::map<ExpVec, Int>;

inline void add_term(TermMap& m, const ExpVec& e, const Int& c) {
  if (c == 0) return;
  auto it = m.find(e);
  if (it == m.end()) {
    m.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

inline TermMap tm_add(const TermMap& a, const TermMap& b) {
  TermMap r = a;
  for (const auto& [e, c] : b) add_term(r, e, c);
  return r;
}

inline TermMap tm_neg(const TermMap& a) {
  TermMap r = a;
  for (auto& [e, c] : r) c = -c;
  return r;
}

inline TermMap tm_sub(const TermMap& a, const TermMap& b) {
  TermMap r = a;
  for (const auto& [e, c] : b) add_term(r, e, -c);
  return r;
}

inline TermMap tm_mul(const TermMap& a, const TermMap& b) {
  if (a.empty() || b.empty()) return {};
  // Keep the shorter operand outermost: fewer rebalancing passes.
  const TermMap& outer = a.size() <= b.size() ? a : b;
  const TermMap& inner = a.size() <= b.size() ? b : a;
  TermMap r;
  Int prod;
  for (const auto& [ea, ca] : outer)
    for (const auto& [eb, cb] : inner) {
      prod = ca * cb;
      add_term(r, ev_add(ea, eb), prod);
    }
  return r;
}

inline TermMap tm_mul_monomial(const TermMap& a, const ExpVec& e, const Int& c) {
  TermMap r;
  if (c == 0) return r;
  for (const auto& [ea, ca] : a) r.emplace(ev_add(ea, e), ca * c);
  return r;
}

// r -= a shifted by e and scaled by c, updating r in place.
inline void tm_submul_monomial(TermMap& r, const TermMap& a, const ExpVec& e, const Int& c) {
  if (c == 0) return;
  for (const auto& [ea, ca] : a) {
    ExpVec ke = ev_add(ea, e);
    auto it = r.find(ke);
    if (it == r.end()) it = r.emplace(std::move(ke), Int(0)).first;
    mpz_submul(it->second.get_mpz_t(), ca.get_mpz_t(), c.get_mpz_t());
    if (it->second == 0) r.erase(it);
  }
}

inline TermMap tm_mul_int(const TermMap& a, const Int& c) {
  TermMap r;
  if (c == 0) return r;
  for (const auto& [ea, ca] : a) r.emplace(ea, ca * c);
  return r;
}

// gcd of all integer coefficients, always >= 0.
inline Int tm_content(const TermMap& a) {
  Int g = 0;
  for (const auto& [e, c] : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline TermMap tm_div_int(const TermMap& a, const Int& c) {
  TermMap r;
  for (const auto& [e, v] : a) {
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    if (rem != 0) throw InternalError("non-exact integer division of coefficients");
    r.emplace(e, q);
  }
  return r;
}

// Componentwise minimum exponent over all terms. Empty map -> zero vector.
inline ExpVec tm_min_exponents(const TermMap& a, std::size_t width) {
  ExpVec m(width, 0);
  bool first = true;
  for (const auto& [e, c] : a) {
    if (first) {
      m = e;
      first = false;
    } else {
      m = ev_min(m, e);
    }
  }
  return m;
}

inline TermMap tm_pow(const TermMap& a, Exp n, std::size_t width) {
  if (n < 0) throw InternalError("negative power of a multi-term polynomial");
  TermMap r;
  r.emplace(ExpVec(width, 0), Int(1));
  TermMap base = a;
  while (n > 0) {
    if (n & 1) r = tm_mul(r, base);
    n >>= 1;
    if (n > 0) base = tm_mul(base, base);
  }
  return r;
}

}  // namespace gencluster::detail
