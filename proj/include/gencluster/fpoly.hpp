#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gencluster/pattern.hpp"

namespace gencluster {

// A cluster variable written as a Laurent polynomial in the initial cluster
// with coefficient generators appearing with nonnegative exponents.
struct XFunction {
  LaurentPoly poly;
  std::vector<int> walk;
  std::size_t index = 0;
};

inline XFunction x_function_of(const Seed& seed, std::size_t i) {
  if (i >= seed.x.size()) throw ConfigError("cluster index out of range");
  LaurentPoly p = exact_laurent_division(seed.x[i]);
  const CtxPtr& ctx = p.ctx();
  for (const auto& [e, c] : p.terms()) {
    (void)c;
    for (std::size_t g = ctx->nx(); g < ctx->width(); ++g)
      if (e[g] < 0) throw InternalError("negative coefficient exponent in X-function");
  }
  return XFunction{std::move(p), seed.walk, i};
}

inline XFunction x_function(const PatternConfig& cfg, const std::vector<int>& walk,
                            std::size_t i) {
  return x_function_of(apply_walk(cfg, walk), i);
}

// Degree under the grading that gives x_i the i-th unit vector, y_j minus the
// j-th column of the initial exchange matrix, and every z generator zero.
// Every monomial of an X-function must land on the same degree.
inline std::vector<Int> g_vector(const PatternConfig& cfg, const XFunction& xf) {
  const std::size_t n = cfg.rank();
  const std::size_t nx = cfg.ctx->nx();
  std::optional<std::vector<Int>> deg;
  for (const auto& [e, c] : xf.poly.terms()) {
    (void)c;
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rat acc(Int(e[i]));
      for (std::size_t j = 0; j < n; ++j)
        if (e[nx + j] != 0) acc -= cfg.b0(i, j) * Rat(Int(e[nx + j]));
      if (acc.get_den() != 1) throw InternalError("fractional degree in X-function grading");
      d[i] = acc.get_num();
    }
    if (!deg) deg = std::move(d);
    else if (*deg != d) throw InternalError("X-function is not homogeneous");
  }
  if (!deg) throw InternalError("X-function has no terms");
  return *deg;
}

// Specialize every cluster variable to 1. The result has constant term 1.
inline LaurentPoly f_polynomial(const XFunction& xf) {
  const CtxPtr& ctx = xf.poly.ctx();
  const std::size_t nx = ctx->nx();
  detail::TermMap out;
  for (const auto& [e, c] : xf.poly.terms()) {
    ExpVec ne = e;
    for (std::size_t i = 0; i < nx; ++i) ne[i] = 0;
    detail::add_term(out, ne, c);
  }
  LaurentPoly f(ctx, std::move(out));
  auto it = f.terms().find(ExpVec(ctx->width(), 0));
  if (it == f.terms().end() || it->second != 1)
    throw InternalError("F-polynomial constant term is not 1");
  return f;
}

// Columns are the g-vectors of the cluster variables at the end of the walk.
inline IntMat g_matrix_of(const PatternConfig& cfg, const std::vector<int>& walk) {
  const std::size_t n = cfg.rank();
  Seed s = apply_walk(cfg, walk);
  IntMat g(n, n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<Int> v = g_vector(cfg, x_function_of(s, i));
    for (std::size_t k = 0; k < n; ++k) g(k, i) = v[k];
  }
  return g;
}

// Fold the polynomial's monomials with oplus after substituting tropical
// values for the coefficient generators; integer coefficients play no role.
inline TropicalElement tropical_eval(const LaurentPoly& f, const SpecPtr& spec,
                                     const std::vector<TropicalElement>& gen_vals) {
  const std::size_t nx = f.ctx()->nx();
  if (f.ctx()->ng() != gen_vals.size())
    throw ConfigError("generator count mismatch in tropical evaluation");
  std::vector<TropicalElement> parts;
  parts.reserve(f.term_count());
  for (const auto& [e, c] : f.terms()) {
    (void)c;
    TropicalElement m = TropicalElement::one(spec);
    for (std::size_t g = 0; g < gen_vals.size(); ++g)
      if (e[nx + g] != 0) m = trop_mul(m, trop_pow(gen_vals[g], e[nx + g]));
    parts.push_back(std::move(m));
  }
  if (parts.empty()) throw InternalError("tropical evaluation of the zero polynomial");
  return oplus_fold(parts);
}

// Substitute a Laurent monomial (given by its exponent vector in the target
// context) for each generator; cluster exponents carry over by position.
inline LaurentPoly monomial_eval(const LaurentPoly& f, const CtxPtr& target,
                                 const std::vector<ExpVec>& gen_images) {
  const std::size_t nx = f.ctx()->nx();
  if (target->nx() != nx) throw ConfigError("cluster size mismatch in substitution");
  if (f.ctx()->ng() != gen_images.size())
    throw ConfigError("generator count mismatch in substitution");
  detail::TermMap out;
  for (const auto& [e, c] : f.terms()) {
    ExpVec ne(target->width(), 0);
    for (std::size_t k = 0; k < nx; ++k) ne[k] = e[k];
    for (std::size_t g = 0; g < gen_images.size(); ++g) {
      const Exp k = e[nx + g];
      if (k == 0) continue;
      ne = detail::ev_add(ne, detail::ev_scale(gen_images[g], k));
    }
    detail::add_term(out, ne, c);
  }
  return LaurentPoly(target, std::move(out));
}

// Rebuild the seed at the end of the walk in the target pattern from data of
// the companion pattern with principal-type coefficients: the same exchange
// matrix and degrees, one formal generator per y and per free coefficient
// slot. Cluster variables come from g-vectors and F-polynomials, Y-values
// from the C-matrix and the tropcalized F-polynomials.
inline Seed reconstruct_seed(const PatternConfig& target, const std::vector<int>& walk) {
  const std::size_t n = target.rank();
  const auto b0i = to_int(target.b0);
  if (!b0i) throw ConfigError("separation needs an integral exchange matrix");
  PatternConfig comp = principal_config(*b0i, target.kit.r);

  // free coefficient slots in companion generator order
  std::vector<std::pair<std::size_t, Exp>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (Exp m = 1; 2 * m <= comp.kit.degree(i); ++m) slots.emplace_back(i, m);

  const SpecPtr& spec = target.kit.spec;
  const std::size_t ngc = comp.ctx->ng();
  std::vector<TropicalElement> tvals;
  tvals.reserve(ngc);
  std::vector<ExpVec> images;
  images.reserve(ngc);
  const std::size_t w = target.ctx->width();
  for (std::size_t j = 0; j < n; ++j) {
    tvals.push_back(target.y0[j]);
    ExpVec e(w, 0);
    for (std::size_t k = 0; k < n; ++k) e[k] = to_exp((*b0i)(k, j));
    const ExpVec& ye = target.y0[j].exponents();
    for (std::size_t g = 0; g < ye.size(); ++g) e[n + g] = ye[g];
    images.push_back(std::move(e));
  }
  for (const auto& [i, m] : slots) {
    TropicalElement zv = target.kit.z_at(i, m);
    ExpVec e(w, 0);
    const ExpVec& ze = zv.exponents();
    for (std::size_t g = 0; g < ze.size(); ++g) e[n + g] = ze[g];
    tvals.push_back(std::move(zv));
    images.push_back(std::move(e));
  }

  Seed sp = apply_walk(comp, walk);
  const IntMat c = c_matrix_of(comp, sp);

  std::vector<LaurentPoly> fp;
  std::vector<TropicalElement> folds;
  std::vector<std::vector<Int>> gv;
  fp.reserve(n);
  folds.reserve(n);
  gv.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    XFunction xf = x_function_of(sp, i);
    gv.push_back(g_vector(comp, xf));
    fp.push_back(f_polynomial(xf));
    folds.push_back(tropical_eval(fp.back(), spec, tvals));
  }

  Seed out;
  out.walk = walk;
  out.b = sp.b;
  out.x.reserve(n);
  out.y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ExpVec ge(w, 0);
    for (std::size_t k = 0; k < n; ++k) ge[k] = to_exp(gv[i][k]);
    LaurentPoly v = monomial_eval(fp[i], target.ctx, images) *
                    LaurentPoly::monomial(target.ctx, ge, 1) *
                    LaurentPoly::embed(target.ctx, trop_inv(folds[i]));
    out.x.push_back(RationalFn(std::move(v)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    TropicalElement yi = TropicalElement::one(spec);
    for (std::size_t j = 0; j < n; ++j) {
      const Exp cji = to_exp(c(j, i));
      if (cji != 0) yi = trop_mul(yi, trop_pow(target.y0[j], cji));
      const Exp bji = patterndetail::int_entry(sp.b(j, i), "exchange matrix entry");
      if (bji != 0) yi = trop_mul(yi, trop_pow(folds[j], bji));
    }
    out.y.push_back(std::move(yi));
  }
  return out;
}

}  // namespace gencluster
