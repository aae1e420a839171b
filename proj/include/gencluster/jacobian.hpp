#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gencluster/expr_text.hpp"
#include "gencluster/pattern.hpp"

namespace gencluster {

using RfMat = Mat<RationalFn>;

inline RfMat rf_identity(const CtxPtr& ctx, std::size_t n) {
  RfMat m(n, n, RationalFn::zero(ctx));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RationalFn::one(ctx);
  return m;
}

inline RfMat rf_from_rat(const CtxPtr& ctx, const RatMat& a) {
  RfMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = RationalFn::constant(ctx, a(i, j));
  return m;
}

inline std::optional<RatMat> rf_to_rat(const RfMat& m) {
  RatMat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      auto c = m(i, j).as_constant();
      if (!c) return std::nullopt;
      out(i, j) = *c;
    }
  return out;
}

// right-multiplication by a rational diagonal or constant matrix
inline RfMat rf_mul_rat(const RfMat& h, const RatMat& a) {
  if (h.cols() != a.rows()) throw InternalError("matrix shape mismatch in product");
  const CtxPtr& ctx = h(0, 0).ctx();
  RfMat out(h.rows(), a.cols(), RationalFn::zero(ctx));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      RationalFn acc = RationalFn::zero(ctx);
      for (std::size_t k = 0; k < h.cols(); ++k) {
        if (a(k, j) == 0) continue;
        acc += h(i, k) * RationalFn::constant(ctx, a(k, j));
      }
      out(i, j) = std::move(acc);
    }
  return out;
}

// Determinant by clearing denominators rowwise and running fraction-free
// elimination on the polynomial parts.
inline RationalFn rf_det(const RfMat& m) {
  if (!m.square()) throw InternalError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw InternalError("determinant of empty matrix");
  const CtxPtr& ctx = m(0, 0).ctx();

  Mat<LaurentPoly> a(n, n);
  LaurentPoly denprod = LaurentPoly::one(ctx);
  for (std::size_t i = 0; i < n; ++i) {
    LaurentPoly rowden = LaurentPoly::one(ctx);
    for (std::size_t j = 0; j < n; ++j) {
      const LaurentPoly& d = m(i, j).den();
      if (d.is_one()) continue;
      LaurentPoly g = poly_gcd(rowden, d);
      rowden = rowden * (g.is_one() ? d : exact_divide(d, g));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const RationalFn& f = m(i, j);
      a(i, j) = f.den().is_one() ? f.num() * rowden : f.num() * exact_divide(rowden, f.den());
    }
    denprod = denprod * rowden;
  }

  // Bareiss
  bool negate = false;
  LaurentPoly prev = LaurentPoly::one(ctx);
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return RationalFn::zero(ctx);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      negate = !negate;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j)
        a(i, j) = exact_divide(a(i, j) * a(c, c) - a(i, c) * a(c, j), prev);
      a(i, c) = LaurentPoly::zero(ctx);
    }
    prev = a(c, c);
  }
  RationalFn det(a(n - 1, n - 1), denprod);
  return negate ? -det : det;
}

inline std::optional<RfMat> rf_inverse(RfMat m) {
  if (!m.square()) throw InternalError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  const CtxPtr& ctx = m(0, 0).ctx();
  RfMat inv = rf_identity(ctx, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    RationalFn piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (!m(c, j).is_zero()) m(c, j) /= piv;
      if (!inv(c, j).is_zero()) inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      RationalFn f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        if (!inv(c, j).is_zero()) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// ---- scaled Jacobians --------------------------------------------------------

// Entries (x_i / X_l) dX_l/dx_i for a list of rational functions of the
// initial cluster variables; one row per cluster variable of the context.
inline RfMat h_matrix_direct(const CtxPtr& ctx, const std::vector<RationalFn>& xs) {
  const std::size_t rows = ctx->nx();
  RfMat h(rows, xs.size(), RationalFn::zero(ctx));
  for (std::size_t l = 0; l < xs.size(); ++l) {
    const RationalFn& f = xs[l];
    require_same_context(ctx, f.ctx());
    if (f.is_zero()) throw ConfigError("cluster variable is zero");
    for (std::size_t i = 0; i < rows; ++i) {
      if (f.den().is_one()) {
        LaurentPoly d = f.num().derivative(i);
        if (d.is_zero()) continue;
        ExpVec shift(ctx->width(), 0);
        shift[i] = 1;
        h(i, l) = RationalFn(d.shifted(shift), f.num());
      } else {
        RationalFn d = partial_derivative(f, i);
        if (d.is_zero()) continue;
        h(i, l) = RationalFn::symbol(ctx, i) * d / f;
      }
    }
  }
  return h;
}

inline RfMat h_matrix_direct(const PatternConfig& cfg, const Seed& seed) {
  return h_matrix_direct(cfg.ctx, seed.x);
}

// One mutation step: identity except in column k, expressed through the
// initial cluster variables via the seed's x-values.
inline RfMat one_step_h(const PatternConfig& cfg, const Seed& seed, std::size_t k) {
  const std::size_t n = cfg.rank();
  if (k >= n) throw ConfigError("mutation direction out of range");
  const Exp rk = cfg.kit.degree(k);

  std::vector<Exp> bcol(n);
  for (std::size_t j = 0; j < n; ++j)
    bcol[j] = patterndetail::int_entry(seed.b(j, k), "jacobian step");

  LaurentPoly p = LaurentPoly::one(cfg.ctx);
  LaurentPoly q = LaurentPoly::one(cfg.ctx);
  for (std::size_t j = 0; j < n; ++j) {
    if (bcol[j] == 0) continue;
    const LaurentPoly xl = exact_laurent_division(seed.x[j]);
    if (bcol[j] > 0)
      q = q * xl.pow(bcol[j]);
    else
      p = p * xl.pow(exp_neg(bcol[j]));
  }

  const TropicalElement& yk = seed.y[k];
  LaurentPoly nw = LaurentPoly::zero(cfg.ctx);
  LaurentPoly dw = LaurentPoly::zero(cfg.ctx);
  TropicalElement ykpow = TropicalElement::one(cfg.kit.spec);
  for (Exp m = 0; m <= rk; ++m) {
    LaurentPoly term =
        LaurentPoly::embed(cfg.ctx, trop_mul(cfg.kit.z_at(k, m), ykpow)) * q.pow(m) * p.pow(rk - m);
    dw = dw + term;
    if (m > 0) nw = nw + term * Int(m);
    if (m < rk) ykpow = trop_mul(ykpow, yk);
  }
  RationalFn w(nw, dw);

  RfMat h = rf_identity(cfg.ctx, n);
  h(k, k) = RationalFn::constant(cfg.ctx, Rat(-1));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    const Exp bik = bcol[i];
    Rat lead = bik < 0 ? Rat(Int(exp_neg(bik)) * Int(rk)) : Rat(0);
    RationalFn entry = RationalFn::constant(cfg.ctx, lead);
    if (bik != 0) entry += RationalFn::constant(cfg.ctx, Rat(Int(bik))) * w;
    h(i, k) = std::move(entry);
  }
  return h;
}

struct ChainResult {
  RfMat h;
  Seed seed;  // the endpoint of the walk
};

// Product of one-step factors along a walk; each factor is identity outside
// one column, so the product updates one column per step.
inline ChainResult h_matrix_chain(const PatternConfig& cfg, const std::vector<int>& walk) {
  const std::size_t n = cfg.rank();
  RfMat acc = rf_identity(cfg.ctx, n);
  Seed seed = initial_seed(cfg);
  for (int kk : walk) {
    if (kk < 0 || static_cast<std::size_t>(kk) >= n) throw ConfigError("walk direction out of range");
    const std::size_t k = static_cast<std::size_t>(kk);
    RfMat e = one_step_h(cfg, seed, k);
    std::vector<RationalFn> col(n);
    for (std::size_t i = 0; i < n; ++i) {
      RationalFn v = -acc(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k || e(j, k).is_zero() || acc(i, j).is_zero()) continue;
        v += acc(i, j) * e(j, k);
      }
      col[i] = std::move(v);
    }
    for (std::size_t i = 0; i < n; ++i) acc(i, k) = std::move(col[i]);
    seed = mutate(cfg, seed, k);
  }
  return ChainResult{std::move(acc), std::move(seed)};
}

// ---- identities --------------------------------------------------------------

// diag(1/(s_i r_i)) applied on the right of b
inline RatMat omega_of(const PatternConfig& cfg, const RatMat& b) {
  RatMat out = b;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    Rat d = Rat(1) / (Rat(cfg.s[j]) * Rat(cfg.kit.r[j]));
    for (std::size_t i = 0; i < b.rows(); ++i) out(i, j) *= d;
  }
  return out;
}

// Transformation law h * omega_t * h^T == omega_t0 for a vertex-wise
// assignment of rational matrices.
inline IdentityReport verify_two_form_law(const RfMat& h, const RatMat& omega_t,
                                          const RatMat& omega_t0) {
  RfMat lhs = rf_mul_rat(h, omega_t) * h.transpose();
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      auto c = lhs(i, j).as_constant();
      if (!c || *c != omega_t0(i, j)) {
        return {false, "two-form entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           "): got " + to_string(lhs(i, j)) + ", want " + omega_t0(i, j).get_str()};
      }
    }
  return {};
}

// Checks h * (b_t diag(1/(sr))) * h^T == b_0 diag(1/(sr)) and det h == (-1)^steps.
inline IdentityReport verify_cluster_formula(const PatternConfig& cfg, const RfMat& h,
                                             const RatMat& b_t, std::size_t steps) {
  IdentityReport rep = verify_two_form_law(h, omega_of(cfg, b_t), omega_of(cfg, cfg.b0));
  if (!rep.pass) return rep;
  auto d = rf_det(h).as_constant();
  Rat want = (steps % 2) ? Rat(-1) : Rat(1);
  if (!d || *d != want)
    return {false, "determinant: got " + (d ? d->get_str() : std::string("non-constant")) +
                       ", want " + want.get_str()};
  return {};
}

// The signed limit matrix in direction k: identity except column k, with
// (k,k) = -1 and (i,k) = [sign * b_ik]_+ r_k.
inline IntMat e_matrix(const RatMat& b, const std::vector<Int>& r, std::size_t k, int sign) {
  const std::size_t n = b.rows();
  if (k >= n) throw ConfigError("direction out of range");
  IntMat e = IntMat::identity(n);
  e(k, k) = -1;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) continue;
    Rat v = Rat(sign) * b(i, k);
    if (v > 0) {
      if (v.get_den() != 1) throw ConfigError("non-integral exchange entry");
      e(i, k) = v.get_num() * r[k];
    }
  }
  return e;
}

// Degeneration check: tying together the cluster variables with positive
// column entries and sending them to infinity (resp. zero) recovers the
// signed limit matrix for + (resp. -). Vacuous when the column has no
// positive entry, since then nothing carries the degeneration parameter.
inline IdentityReport verify_e_limits(const PatternConfig& cfg, const Seed& seed, std::size_t k) {
  const std::size_t n = cfg.rank();
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i)
    if (seed.b(i, k) > 0) idx.push_back(i);
  if (idx.empty()) return {true, "vacuous: no positive entries in the column"};

  // the statement degenerates the step in the seed's own frame, so feed the
  // step formula formal symbols instead of the accumulated expressions
  Seed local;
  for (std::size_t i = 0; i < n; ++i) local.x.push_back(RationalFn::symbol(cfg.ctx, i));
  local.y = seed.y;
  local.b = seed.b;
  RfMat h = one_step_h(cfg, local, k);
  const std::size_t s = idx.front();
  std::map<std::size_t, RationalFn> sub;
  for (std::size_t i : idx)
    if (i != s) sub.emplace(i, RationalFn::symbol(cfg.ctx, s));

  for (int sign : {+1, -1}) {
    IntMat want = e_matrix(seed.b, cfg.kit.r, k, sign);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        RationalFn g = sub.empty() ? h(i, j) : substitute(h(i, j), sub);
        auto lim = formal_limit(g, s, sign > 0);
        if (!lim) return {false, "limit diverges at entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ")"};
        auto c = lim->as_constant();
        if (!c || *c != Rat(want(i, j)))
          return {false, std::string("limit mismatch for sign ") + (sign > 0 ? "+" : "-") +
                             " at entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "): got " + to_string(*lim) + ", want " + want(i, j).get_str()};
      }
  }
  return {};
}

// Constant term of h in the tracked generators; integral by design.
inline IntMat g_matrix_from_h(const PatternConfig& cfg, const RfMat& h) {
  if (!cfg.frozen) throw ConfigError("pattern has no tracked coefficient block");
  std::set<std::size_t> drops;
  for (std::size_t g : cfg.frozen->gens) drops.insert(cfg.ctx->nx() + g);
  IntMat out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) {
      auto c = specialize_zero(h(i, j), drops).as_constant();
      if (!c || c->get_den() != 1)
        throw InternalError("degree matrix entry is not an integer constant");
      out(i, j) = c->get_num();
    }
  return out;
}

// diag(sr) c diag(1/(sr)) g^T == identity
inline bool g_duality_holds(const PatternConfig& cfg, const IntMat& c_t, const IntMat& g_t) {
  const std::size_t n = cfg.rank();
  if (c_t.rows() != n || !c_t.square() || g_t.rows() != n || !g_t.square()) return false;
  RatMat m = to_rat(c_t);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) *= Rat(cfg.s[i]) * Rat(cfg.kit.r[i]) / (Rat(cfg.s[j]) * Rat(cfg.kit.r[j]));
  return m * to_rat(g_t).transpose() == RatMat::identity(n);
}

// ---- recovery from a cluster -------------------------------------------------

inline RatMat recover_b_from_cluster(const PatternConfig& cfg, const std::vector<RationalFn>& xt) {
  const std::size_t n = cfg.rank();
  if (xt.size() != n) throw ConfigError("cluster size must equal the rank");
  RfMat h = h_matrix_direct(cfg.ctx, xt);
  auto hinv = rf_inverse(h);
  if (!hinv) throw ConfigError("cluster has singular scaled Jacobian");
  RfMat m = rf_mul_rat(*hinv, omega_of(cfg, cfg.b0)) * hinv->transpose();
  // multiply back by diag(s r)
  RatMat sr(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) sr(i, i) = Rat(cfg.s[i]) * Rat(cfg.kit.r[i]);
  auto out = rf_to_rat(rf_mul_rat(m, sr));
  if (!out) throw ConfigError("cluster does not satisfy the two-form identity");
  return *out;
}

struct ExtendedJacobian {
  RfMat h;   // rank x rank, derivatives in the base variables
  RfMat ht;  // extra x rank, derivatives in the promoted variables
};

inline ExtendedJacobian extended_jacobian(const ExtendedPattern& ext,
                                          const std::vector<RationalFn>& xt_lifted) {
  const std::size_t n = ext.base_rank, h = ext.extra;
  RfMat full = h_matrix_direct(ext.config.ctx, xt_lifted);  // columns: the n base variables
  RfMat top(n, n), bottom(h, n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) top(i, l) = full(i, l);
    for (std::size_t j = 0; j < h; ++j) bottom(j, l) = full(n + j, l);
  }
  return {std::move(top), std::move(bottom)};
}

inline IntMat recover_c_from_cluster(const PatternConfig& cfg, const std::vector<RationalFn>& xt) {
  if (!cfg.frozen) throw ConfigError("pattern has no tracked coefficient block");
  const std::size_t n = cfg.rank();
  if (xt.size() != n) throw ConfigError("cluster size must equal the rank");
  ExtendedPattern ext = extend_weak_geometric(cfg);
  std::vector<RationalFn> lifted;
  lifted.reserve(n);
  for (const auto& f : xt) lifted.push_back(remap(f, ext.config.ctx, ext.to_ext_flat));
  ExtendedJacobian j = extended_jacobian(ext, lifted);

  auto hinv = rf_inverse(j.h);
  if (!hinv) throw ConfigError("cluster has singular scaled Jacobian");
  auto htinv = rf_inverse(j.h.transpose());
  if (!htinv) throw ConfigError("cluster has singular scaled Jacobian");

  const CtxPtr& ctx = ext.config.ctx;
  const std::size_t hh = ext.extra;
  RatMat dinv(n, n, Rat(0)), d(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    Rat v = Rat(cfg.s[i]) * Rat(cfg.kit.r[i]);
    d(i, i) = v;
    dinv(i, i) = Rat(1) / v;
  }
  RatMat c0dinv = to_rat(cfg.frozen->c0) * dinv;
  RatMat b0dinv = cfg.b0 * dinv;

  RfMat lhs = rf_from_rat(ctx, c0dinv) - j.ht * rf_mul_rat(*hinv, b0dinv);
  RfMat ct = rf_mul_rat(lhs * *htinv, d);

  IntMat out(hh, n);
  for (std::size_t i = 0; i < hh; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      auto c = ct(i, l).as_constant();
      if (!c || c->get_den() != 1)
        throw ConfigError("cluster does not determine an integral coefficient matrix");
      out(i, l) = c->get_num();
    }
  return out;
}

}  // namespace gencluster
