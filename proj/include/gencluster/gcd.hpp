#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gencluster/laurent.hpp"

// Multivariate gcd over Z for the flattened Laurent representation.
// Strategy: shift to honest polynomials, strip integer content, certify
// coprimality per variable by modular univariate projection where cheap, try
// exact trial division (the dominant case in rational-function reduction),
// and fall back to a primitive pseudo-remainder sequence.

namespace gencluster {

namespace gcddetail {

using detail::TermMap;

constexpr std::uint64_t kP = 2305843009213693951ull;  // 2^61 - 1
constexpr Exp kDenseLimit = 1024;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kP);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  base %= kP;
  while (e) {
    if (e & 1) r = mulmod(r, base);
    base = mulmod(base, base);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kP - 2); }

inline std::uint64_t coeff_mod_p(const Int& c) {
  return mpz_fdiv_ui(c.get_mpz_t(), kP);
}

// Dense univariate polynomials mod p, index = degree.
using UniPoly = std::vector<std::uint64_t>;

inline int uni_deg(const UniPoly& p) {
  for (int d = static_cast<int>(p.size()) - 1; d >= 0; --d)
    if (p[d]) return d;
  return -1;
}

inline int uni_gcd_degree(UniPoly a, UniPoly b) {
  int da = uni_deg(a), db = uni_deg(b);
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
  }
  while (db >= 0) {
    // a <- a mod b
    std::uint64_t lead_inv = invmod(b[db]);
    for (int d = da; d >= db; --d) {
      if (!a[d]) continue;
      std::uint64_t f = mulmod(a[d], lead_inv);
      for (int j = 0; j <= db; ++j) {
        std::uint64_t sub = mulmod(f, b[j]);
        std::uint64_t& slot = a[d - db + j];
        slot = (slot >= sub) ? slot - sub : slot + kP - sub;
      }
    }
    da = uni_deg(a);
    std::swap(a, b);
    std::swap(da, db);
  }
  return da;  // degree of the gcd
}

// Projects onto variable v by evaluating every other variable at a random
// nonzero residue.  Returns the projected polynomial only if its degree in v
// survives (leading coefficient did not vanish), which makes the resulting
// gcd-degree bound sound.
inline std::optional<UniPoly> project(const TermMap& t, std::size_t v, Exp degv,
                                      const std::vector<std::uint64_t>& vals) {
  UniPoly out(static_cast<std::size_t>(degv) + 1, 0);
  for (const auto& [e, c] : t) {
    std::uint64_t val = coeff_mod_p(c);
    if (!val) continue;
    for (std::size_t w = 0; w < e.size(); ++w) {
      if (w == v || e[w] == 0) continue;
      val = mulmod(val, powmod(vals[w], static_cast<std::uint64_t>(e[w])));
    }
    std::uint64_t& slot = out[static_cast<std::size_t>(e[v])];
    slot = (slot + val) % kP;
  }
  if (uni_deg(out) != static_cast<int>(degv)) return std::nullopt;
  return out;
}

struct VarBound {
  std::size_t var;
  Exp bound;      // upper bound for deg_var(gcd)
  bool certified; // bound came from a sound projection
};

}  // namespace gcddetail

// Exact division in the Laurent ring: a = q * b with q Laurent, if it exists.
inline std::optional<LaurentPoly> try_exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a.ctx(), b.ctx());
  if (b.is_zero()) throw ConfigError("division by zero polynomial");
  if (a.is_zero()) return LaurentPoly::zero(a.ctx());

  const std::size_t w = a.width();
  ExpVec sa = a.min_exponents(), sb = b.min_exponents();
  detail::TermMap A = a.shifted(detail::ev_scale(sa, -1)).terms();
  detail::TermMap B = b.shifted(detail::ev_scale(sb, -1)).terms();

  if (B.size() == 1) {
    // monomial divisor: shifted form is a plain integer constant
    const Int& cb = B.begin()->second;
    detail::TermMap q;
    for (const auto& [e, c] : A) {
      Int cq, rem;
      mpz_tdiv_qr(cq.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), cb.get_mpz_t());
      if (rem != 0) return std::nullopt;
      q.emplace(e, cq);
    }
    return LaurentPoly(a.ctx(), std::move(q)).shifted(detail::ev_sub(sa, sb));
  }

  const auto& [eB, cB] = *B.rbegin();
  detail::TermMap quot;
  detail::TermMap rem = std::move(A);
  while (!rem.empty()) {
    const auto& [eR, cR] = *rem.rbegin();
    ExpVec e(w);
    for (std::size_t i = 0; i < w; ++i) {
      if (eR[i] < eB[i]) return std::nullopt;
      e[i] = eR[i] - eB[i];
    }
    Int cq, r;
    mpz_tdiv_qr(cq.get_mpz_t(), r.get_mpz_t(), cR.get_mpz_t(), cB.get_mpz_t());
    if (r != 0) return std::nullopt;
    detail::tm_submul_monomial(rem, B, e, cq);
    quot.emplace(std::move(e), std::move(cq));
  }
  return LaurentPoly(a.ctx(), std::move(quot)).shifted(detail::ev_sub(sa, sb));
}

inline LaurentPoly exact_divide(const LaurentPoly& a, const LaurentPoly& b) {
  auto q = try_exact_divide(a, b);
  if (!q) throw InternalError("expected exact polynomial division");
  return *q;
}

namespace gcddetail {

LaurentPoly pp_gcd(const LaurentPoly& A, const LaurentPoly& B);

// leading coefficient of P with respect to variable v, with the v slot zeroed
inline LaurentPoly lead_coeff_wrt(const LaurentPoly& p, std::size_t v, Exp deg) {
  TermMap out;
  for (const auto& [e, c] : p.terms()) {
    if (e[v] != deg) continue;
    ExpVec ne = e;
    ne[v] = 0;
    out.emplace(std::move(ne), c);
  }
  return LaurentPoly(p.ctx(), std::move(out));
}

// gcd of the coefficient polynomials of p viewed univariately in v
inline LaurentPoly content_wrt(const LaurentPoly& p, std::size_t v) {
  std::map<Exp, TermMap> groups;
  for (const auto& [e, c] : p.terms()) {
    ExpVec ne = e;
    ne[v] = 0;
    groups[e[v]].emplace(std::move(ne), c);
  }
  LaurentPoly acc = LaurentPoly::zero(p.ctx());
  bool first = true;
  for (auto& [d, tm] : groups) {
    LaurentPoly part(p.ctx(), std::move(tm));
    if (first) {
      acc = std::move(part);
      first = false;
    } else {
      acc = pp_gcd(acc, part);
    }
    if (auto cst = acc.as_constant(); cst && (*cst == 1 || *cst == -1)) break;
  }
  return acc;
}

inline LaurentPoly pseudo_remainder(LaurentPoly F, const LaurentPoly& G, std::size_t v) {
  const Exp dG = G.degree_in(v);
  const LaurentPoly lcG = lead_coeff_wrt(G, v, dG);
  while (!F.is_zero()) {
    // strip the accumulated monomial factor (a unit); without this the
    // repeated lcG multiplications compound exponents geometrically
    ExpVec m = F.min_exponents();
    if (!detail::ev_is_zero(m)) F = F.shifted(detail::ev_scale(m, -1));
    const Exp dF = F.degree_in(v);
    if (dF < dG) break;
    LaurentPoly lcF = lead_coeff_wrt(F, v, dF);
    LaurentPoly shift = LaurentPoly::symbol(F.ctx(), v, dF - dG);
    F = F * lcG - lcF * shift * G;
  }
  return F;
}

// Certified coprimality / degree bounds by modular projection.  Returns one
// entry per variable both polynomials depend on.
inline std::vector<VarBound> projection_bounds(const LaurentPoly& A, const LaurentPoly& B,
                                               const std::vector<std::size_t>& vars) {
  static thread_local std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::vector<VarBound> out;
  const std::size_t w = A.width();
  for (std::size_t v : vars) {
    Exp da = A.degree_in(v), db = B.degree_in(v);
    Exp cap = std::min(da, db);
    if (da > kDenseLimit || db > kDenseLimit) {
      out.push_back({v, cap, false});
      continue;
    }
    bool done = false;
    for (int attempt = 0; attempt < 3 && !done; ++attempt) {
      std::vector<std::uint64_t> vals(w);
      for (auto& x : vals) x = 1 + rng() % (kP - 2);
      auto pa = project(A.terms(), v, da, vals);
      if (!pa) continue;
      auto pb = project(B.terms(), v, db, vals);
      if (!pb) continue;
      int d = uni_gcd_degree(std::move(*pa), std::move(*pb));
      out.push_back({v, std::min<Exp>(cap, d), true});
      done = true;
    }
    if (!done) out.push_back({v, cap, false});
  }
  return out;
}

inline LaurentPoly sign_normalized(LaurentPoly p) {
  if (p.is_zero()) return p;
  if (p.terms().rbegin()->second < 0) return -p;
  return p;
}

inline bool equal_up_to_sign(const LaurentPoly& a, const LaurentPoly& b, bool& negated) {
  if (a.terms() == b.terms()) {
    negated = false;
    return true;
  }
  if (a.term_count() != b.term_count()) return false;
  auto ia = a.terms().begin();
  for (const auto& [e, c] : b.terms()) {
    if (ia->first != e || ia->second != -c) return false;
    ++ia;
  }
  negated = true;
  return true;
}

// gcd in the Laurent sense (up to monomial units): inputs may carry monomial
// shifts, the result may too; integer content is handled exactly.
inline LaurentPoly pp_gcd(const LaurentPoly& A0, const LaurentPoly& B0) {
  const CtxPtr& ctx = A0.ctx();
  if (A0.is_zero()) return sign_normalized(B0);
  if (B0.is_zero()) return sign_normalized(A0);
  bool neg = false;
  if (equal_up_to_sign(A0, B0, neg)) return sign_normalized(A0);

  // strip and fold integer content so the recursion works with primitives
  Int ca = A0.content(), cb = B0.content();
  Int c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  LaurentPoly A = ca == 1 ? A0 : LaurentPoly(ctx, detail::tm_div_int(A0.terms(), ca));
  LaurentPoly B = cb == 1 ? B0 : LaurentPoly(ctx, detail::tm_div_int(B0.terms(), cb));
  LaurentPoly cpart = LaurentPoly::constant(ctx, c);

  // a primitive monomial is a unit here
  if (A.term_count() == 1 || B.term_count() == 1) return cpart;

  // recursion can hand us shifted operands; units are free, so normalize
  ExpVec ma = A.min_exponents(), mb = B.min_exponents();
  if (!detail::ev_is_zero(ma)) A = A.shifted(detail::ev_scale(ma, -1));
  if (!detail::ev_is_zero(mb)) B = B.shifted(detail::ev_scale(mb, -1));

  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < A.width(); ++v)
    if (A.depends_on(v) && B.depends_on(v)) vars.push_back(v);
  if (vars.empty()) return cpart;

  auto bounds = projection_bounds(A, B, vars);
  std::vector<VarBound> live;
  bool gcd_could_be_B = true, gcd_could_be_A = true;
  for (const auto& vb : bounds) {
    if (vb.bound > 0 || !vb.certified) live.push_back(vb);
    if (vb.bound < B.degree_in(vb.var)) gcd_could_be_B = false;
    if (vb.bound < A.degree_in(vb.var)) gcd_could_be_A = false;
  }
  // degree 0 certified in every shared variable: gcd is the content
  if (live.empty()) return cpart;

  // trial division covers full cancellation, the common case in reduction
  if (gcd_could_be_B) {
    bool deg_ok = true;
    for (std::size_t v = 0; v < A.width(); ++v)
      if (B.degree_in(v) > A.degree_in(v)) deg_ok = false;
    if (deg_ok && try_exact_divide(A, B)) {
      LaurentPoly g = sign_normalized(B);
      return LaurentPoly(ctx, detail::tm_mul_int(g.terms(), c));
    }
  }
  if (gcd_could_be_A) {
    bool deg_ok = true;
    for (std::size_t v = 0; v < A.width(); ++v)
      if (A.degree_in(v) > B.degree_in(v)) deg_ok = false;
    if (deg_ok && try_exact_divide(B, A)) {
      LaurentPoly g = sign_normalized(A);
      return LaurentPoly(ctx, detail::tm_mul_int(g.terms(), c));
    }
  }

  // primitive pseudo-remainder sequence over the tightest live variable
  std::size_t u = live.front().var;
  Exp best = live.front().bound;
  for (const auto& vb : live)
    if (vb.bound < best) {
      best = vb.bound;
      u = vb.var;
    }

  LaurentPoly contA = content_wrt(A, u);
  LaurentPoly contB = content_wrt(B, u);
  LaurentPoly gamma = pp_gcd(contA, contB);
  auto primitive_part = [](const LaurentPoly& p, const LaurentPoly& cont) {
    LaurentPoly q = exact_divide(p, cont);
    ExpVec m = q.min_exponents();
    return detail::ev_is_zero(m) ? q : q.shifted(detail::ev_scale(m, -1));
  };
  LaurentPoly F = primitive_part(A, contA);
  LaurentPoly G = primitive_part(B, contB);
  if (F.degree_in(u) < G.degree_in(u)) std::swap(F, G);

  LaurentPoly res = LaurentPoly::one(ctx);
  while (true) {
    LaurentPoly R = pseudo_remainder(F, G, u);
    if (R.is_zero()) {
      res = G;
      break;
    }
    if (R.degree_in(u) == 0) break;  // coprime apart from content
    Int ic = R.content();
    if (ic != 1) R = LaurentPoly(ctx, detail::tm_div_int(R.terms(), ic));
    LaurentPoly rc = content_wrt(R, u);
    R = rc.is_one() ? std::move(R) : primitive_part(R, rc);
    F = std::move(G);
    G = std::move(R);
  }

  LaurentPoly g = gamma * res;
  Int gc = g.content();
  if (gc != 1 && gc != 0) g = LaurentPoly(ctx, detail::tm_div_int(g.terms(), gc));
  g = sign_normalized(g);
  if (c != 1) g = LaurentPoly(ctx, detail::tm_mul_int(g.terms(), c));
  return g;
}

}  // namespace gcddetail

// gcd in the Laurent ring, normalized to an honest polynomial with
// componentwise-minimal exponent zero, positive leading coefficient, and the
// full common integer content included.
inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a.ctx(), b.ctx());
  auto shift_down = [](const LaurentPoly& p) {
    ExpVec m = p.min_exponents();
    return detail::ev_is_zero(m) ? p : p.shifted(detail::ev_scale(m, -1));
  };
  if (a.is_zero() && b.is_zero()) return LaurentPoly::zero(a.ctx());
  if (a.is_zero()) return gcddetail::sign_normalized(shift_down(b));
  if (b.is_zero()) return gcddetail::sign_normalized(shift_down(a));
  return gcddetail::sign_normalized(shift_down(gcddetail::pp_gcd(shift_down(a), shift_down(b))));
}

}  // namespace gencluster
