#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gencluster/gcd.hpp"
#include "gencluster/matrix.hpp"
#include "gencluster/rational_fn.hpp"

namespace gencluster {

// Exchange degrees r_i together with the reciprocal coefficient tuples
// z_{i,0..r_i}.  The endpoints are pinned to 1 and z_{i,m} = z_{i,r_i-m}, so
// only slots 1 <= m <= r_i/2 are stored.
struct MutationKit {
  SpecPtr spec;
  std::vector<Int> r;
  std::map<std::pair<std::size_t, Exp>, TropicalElement> z;

  Exp degree(std::size_t i) const { return to_exp(r.at(i)); }

  TropicalElement z_at(std::size_t i, Exp m) const {
    const Exp ri = degree(i);
    if (m < 0 || m > ri) throw InternalError("coefficient slot out of range");
    const Exp slot = std::min(m, ri - m);
    if (slot == 0) return TropicalElement::one(spec);
    auto it = z.find({i, slot});
    return it == z.end() ? TropicalElement::one(spec) : it->second;
  }

  void set_z(std::size_t i, Exp m, TropicalElement v) {
    require_same_spec(spec, v.spec());
    const Exp ri = degree(i);
    if (m <= 0 || m >= ri) throw ConfigError("coefficient slot must lie strictly between 0 and the degree");
    const Exp slot = std::min(m, ri - m);
    auto it = z.find({i, slot});
    if (it != z.end() && it->second != v)
      throw ConfigError("conflicting values for reciprocal coefficient slots");
    z.emplace(std::pair{i, slot}, std::move(v));
  }
};

inline MutationKit make_kit(SpecPtr spec, std::vector<Int> r) {
  for (const Int& ri : r)
    if (ri <= 0) throw ConfigError("mutation degrees must be positive");
  return MutationKit{std::move(spec), std::move(r), {}};
}

// A distinguished block of semifield generators whose exponents in the
// Y-values are tracked as an integer matrix.
struct FrozenBlock {
  std::vector<std::size_t> gens;  // generator indices within the semifield
  IntMat c0;                      // gens.size() x rank
};

struct PatternConfig {
  CtxPtr ctx;
  RatMat b0;
  MutationKit kit;
  std::vector<Int> t;  // minimal symmetrizer of b0
  std::vector<Int> s;  // balancing diagonal: diag(s*r)*b0 is skew-symmetric
  std::vector<TropicalElement> y0;
  std::optional<FrozenBlock> frozen;

  std::size_t rank() const { return ctx->nx(); }
};

struct Seed {
  std::vector<RationalFn> x;
  std::vector<TropicalElement> y;
  RatMat b;
  std::vector<int> walk;  // directions applied from the initial seed, 0-based
};

namespace patterndetail {

// exponents of the y-values on the frozen generators, with purity check
inline IntMat frozen_exponents(const std::vector<std::size_t>& gens,
                               const std::vector<TropicalElement>& ys) {
  IntMat c(gens.size(), ys.size());
  for (std::size_t j = 0; j < ys.size(); ++j) {
    const ExpVec& e = ys[j].exponents();
    std::set<std::size_t> inside(gens.begin(), gens.end());
    for (std::size_t g = 0; g < e.size(); ++g)
      if (e[g] != 0 && !inside.count(g))
        throw ConfigError("coefficient value leaves the tracked generator block");
    for (std::size_t i = 0; i < gens.size(); ++i) c(i, j) = e[gens[i]];
  }
  return c;
}

}  // namespace patterndetail

inline PatternConfig make_pattern_config(CtxPtr ctx, RatMat b0, MutationKit kit,
                                         std::vector<TropicalElement> y0,
                                         std::optional<std::vector<Int>> s_override = std::nullopt,
                                         std::optional<std::vector<std::size_t>> frozen_gens = std::nullopt) {
  const std::size_t n = ctx->nx();
  if (!b0.square() || b0.rows() != n) throw ConfigError("exchange matrix must be rank x rank");
  require_same_spec(ctx->semifield(), kit.spec);
  if (kit.r.size() != n) throw ConfigError("degree vector size must equal the rank");
  if (y0.size() != n) throw ConfigError("initial coefficient tuple size must equal the rank");
  for (const auto& y : y0) require_same_spec(ctx->semifield(), y.spec());

  auto t = find_symmetrizer(b0);
  if (!t) throw ConfigError("exchange matrix is not skew-symmetrizable");

  std::vector<Int> s;
  if (s_override) {
    s = *s_override;
    if (s.size() != n) throw ConfigError("balancing diagonal size must equal the rank");
    for (const Int& si : s)
      if (si <= 0) throw ConfigError("balancing diagonal entries must be positive");
    std::vector<Int> sr(n);
    for (std::size_t i = 0; i < n; ++i) sr[i] = s[i] * kit.r[i];
    if (!is_skew_symmetric(scale_rows(sr, b0)))
      throw ConfigError("balancing diagonal does not skew-symmetrize the weighted exchange matrix");
  } else {
    s = skew_balance(*t, kit.r);
  }

  PatternConfig cfg{std::move(ctx), std::move(b0), std::move(kit), std::move(*t),
                    std::move(s),   std::move(y0),  std::nullopt};

  if (frozen_gens) {
    for (std::size_t g : *frozen_gens)
      if (g >= cfg.ctx->ng()) throw ConfigError("tracked generator index out of range");
    IntMat c0 = patterndetail::frozen_exponents(*frozen_gens, cfg.y0);
    // every z tuple must tropically sum to 1, otherwise the tracked block
    // does not stay closed under mutation
    for (std::size_t k = 0; k < cfg.rank(); ++k) {
      const Exp rk = cfg.kit.degree(k);
      TropicalElement fold = TropicalElement::one(cfg.kit.spec);
      for (Exp m = 1; m <= rk; ++m) fold = trop_oplus(fold, cfg.kit.z_at(k, m));
      if (!fold.is_one())
        throw ConfigError("coefficient tuples must tropically sum to 1 for geometric tracking");
    }
    cfg.frozen = FrozenBlock{std::move(*frozen_gens), std::move(c0)};
  }
  return cfg;
}

inline Seed initial_seed(const PatternConfig& cfg) {
  Seed s;
  const std::size_t n = cfg.rank();
  s.x.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.x.push_back(RationalFn::symbol(cfg.ctx, i));
  s.y = cfg.y0;
  s.b = cfg.b0;
  return s;
}

// Exchange matrix mutation in direction k with degrees r.
inline RatMat mutate_matrix(const RatMat& b, const std::vector<Int>& r, std::size_t k) {
  const std::size_t n = b.rows();
  if (k >= b.cols() || r.size() != b.cols()) throw ConfigError("mutation direction out of range");
  const Rat rk{r[k]};
  RatMat out(n, b.cols());
  auto pos = [](const Rat& q) { return q > 0 ? q : Rat(0); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (i == k || j == k)
        out(i, j) = -b(i, j);
      else
        out(i, j) = b(i, j) + rk * (b(i, k) * pos(-b(k, j)) + pos(b(i, k)) * b(k, j));
    }
  return out;
}

inline IntMat standard_matrix_mutation(const IntMat& q, std::size_t k) {
  const std::size_t n = q.rows();
  if (k >= n || !q.square()) throw ConfigError("mutation direction out of range");
  IntMat out(n, n);
  auto pos = [](const Int& v) { return v > 0 ? v : Int(0); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == k || j == k)
        out(i, j) = -q(i, j);
      else
        out(i, j) = q(i, j) + q(i, k) * pos(-q(k, j)) + pos(q(i, k)) * q(k, j);
    }
  return out;
}

namespace patterndetail {

inline Exp int_entry(const Rat& q, const char* what) {
  if (q.get_den() != 1) throw ConfigError(std::string(what) + ": non-integral exchange entry");
  return to_exp(q.get_num());
}

}  // namespace patterndetail

inline Seed mutate(const PatternConfig& cfg, const Seed& seed, std::size_t k) {
  const std::size_t n = cfg.rank();
  if (k >= n) throw ConfigError("mutation direction out of range");
  const Exp rk = cfg.kit.degree(k);

  // column k (cluster exponents) must be integral; row k entries only need
  // integrality where they actually exponentiate a nontrivial value, which
  // keeps extended patterns with rational off-blocks mutable
  std::vector<Exp> bcol(n);
  for (std::size_t j = 0; j < n; ++j)
    bcol[j] = patterndetail::int_entry(seed.b(j, k), "mutation");

  // exchange monomials P (negative part) and Q (positive part) of column k
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
  LaurentPoly num = LaurentPoly::zero(cfg.ctx);
  TropicalElement fold = TropicalElement::one(cfg.kit.spec);
  TropicalElement ykpow = TropicalElement::one(cfg.kit.spec);
  for (Exp m = 0; m <= rk; ++m) {
    const TropicalElement zm = cfg.kit.z_at(k, m);
    const TropicalElement coef = trop_mul(zm, ykpow);
    num = num + LaurentPoly::embed(cfg.ctx, coef) * q.pow(m) * p.pow(rk - m);
    fold = m == 0 ? coef : trop_oplus(fold, coef);
    if (m < rk) ykpow = trop_mul(ykpow, yk);
  }
  num = num * LaurentPoly::embed(cfg.ctx, trop_inv(fold));

  auto quotient = try_exact_divide(num, exact_laurent_division(seed.x[k]));
  if (!quotient) throw InternalError("mutation produced a non-Laurent cluster variable");

  Seed out;
  out.x = seed.x;
  out.x[k] = RationalFn(std::move(*quotient));
  const bool trivial_step = yk.is_one() && fold.is_one();
  out.y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == k) {
      out.y.push_back(trop_inv(yk));
    } else if (trivial_step || seed.b(k, i) == 0) {
      out.y.push_back(seed.y[i]);
    } else {
      const Exp bki = patterndetail::int_entry(seed.b(k, i), "mutation");
      TropicalElement yi = seed.y[i];
      if (bki > 0) yi = trop_mul(yi, trop_pow(yk, exp_mul(rk, bki)));
      yi = trop_mul(yi, trop_pow(fold, exp_neg(bki)));
      out.y.push_back(std::move(yi));
    }
  }
  out.b = mutate_matrix(seed.b, cfg.kit.r, k);
  out.walk = seed.walk;
  out.walk.push_back(static_cast<int>(k));

  // per-seed invariants
  std::vector<Int> sr(n);
  for (std::size_t i = 0; i < n; ++i) sr[i] = cfg.s[i] * cfg.kit.r[i];
  if (!is_skew_symmetric(scale_rows(sr, out.b)))
    throw InternalError("mutated exchange matrix lost weighted skew-symmetry");
  return out;
}

inline Seed apply_walk(const PatternConfig& cfg, const std::vector<int>& walk) {
  Seed s = initial_seed(cfg);
  for (int k : walk) {
    if (k < 0 || static_cast<std::size_t>(k) >= cfg.rank())
      throw ConfigError("walk direction out of range");
    s = mutate(cfg, s, static_cast<std::size_t>(k));
  }
  return s;
}

// Exponent matrix of the y-values on the tracked generator block.
inline IntMat c_matrix_of(const PatternConfig& cfg, const Seed& seed) {
  if (!cfg.frozen) throw ConfigError("pattern has no tracked coefficient block");
  return patterndetail::frozen_exponents(cfg.frozen->gens, seed.y);
}

// ---- standard config builders ----------------------------------------------

inline std::vector<std::string> default_var_names(std::size_t n, const std::string& stem = "x") {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = stem + std::to_string(i + 1);
  return names;
}

inline PatternConfig trivial_config(const IntMat& b0, std::vector<Int> r,
                                    std::vector<std::string> xnames = {}) {
  const std::size_t n = b0.rows();
  if (xnames.empty()) xnames = default_var_names(n);
  auto spec = trivial_spec();
  auto ctx = make_context(std::move(xnames), spec);
  MutationKit kit = make_kit(spec, std::move(r));
  std::vector<TropicalElement> y0(n, TropicalElement::one(spec));
  return make_pattern_config(std::move(ctx), to_rat(b0), std::move(kit), std::move(y0));
}

// Principal-type coefficients: one generator y_i per index, plus formal
// generators z{i}_{m} for the free coefficient slots; the y-block is tracked
// with c0 = identity.
inline PatternConfig principal_config(const IntMat& b0, std::vector<Int> r,
                                      std::vector<std::string> xnames = {}) {
  const std::size_t n = b0.rows();
  if (xnames.empty()) xnames = default_var_names(n);
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back("y" + std::to_string(i + 1));
  std::vector<std::pair<std::size_t, Exp>> zslots;
  for (std::size_t i = 0; i < n; ++i) {
    const Exp ri = to_exp(r[i]);
    for (Exp m = 1; 2 * m <= ri; ++m) {
      gens.push_back("z" + std::to_string(i + 1) + "_" + std::to_string(m));
      zslots.emplace_back(i, m);
    }
  }
  auto spec = make_spec(SemifieldSpec::single_block(std::move(gens)));
  auto ctx = make_context(std::move(xnames), spec);
  MutationKit kit = make_kit(spec, std::move(r));
  for (std::size_t idx = 0; idx < zslots.size(); ++idx)
    kit.set_z(zslots[idx].first, zslots[idx].second,
              TropicalElement::generator(spec, n + idx));
  std::vector<TropicalElement> y0;
  std::vector<std::size_t> tracked;
  for (std::size_t i = 0; i < n; ++i) {
    y0.push_back(TropicalElement::generator(spec, i));
    tracked.push_back(i);
  }
  return make_pattern_config(std::move(ctx), to_rat(b0), std::move(kit), std::move(y0),
                             std::nullopt, std::move(tracked));
}

// Geometric-type coefficients over Trop(u1..uh): y_j = prod_i u_i^{c0(i,j)},
// with optional coefficient tuples given as exponent vectors in the u's.
inline PatternConfig geometric_config(const IntMat& b0, std::vector<Int> r, const IntMat& c0,
                                      const std::map<std::pair<std::size_t, Exp>, ExpVec>& zvals = {},
                                      std::vector<std::string> xnames = {}) {
  const std::size_t n = b0.rows(), h = c0.rows();
  if (c0.cols() != n) throw ConfigError("tracked exponent matrix must have rank many columns");
  if (xnames.empty()) xnames = default_var_names(n);
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < h; ++i) gens.push_back("u" + std::to_string(i + 1));
  auto spec = make_spec(SemifieldSpec::single_block(std::move(gens)));
  auto ctx = make_context(std::move(xnames), spec);
  MutationKit kit = make_kit(spec, std::move(r));
  for (const auto& [slot, e] : zvals) kit.set_z(slot.first, slot.second, TropicalElement(spec, e));
  std::vector<TropicalElement> y0;
  std::vector<std::size_t> tracked(h);
  for (std::size_t i = 0; i < h; ++i) tracked[i] = i;
  for (std::size_t j = 0; j < n; ++j) {
    ExpVec e(h);
    for (std::size_t i = 0; i < h; ++i) e[i] = to_exp(c0(i, j));
    y0.emplace_back(spec, std::move(e));
  }
  return make_pattern_config(std::move(ctx), to_rat(b0), std::move(kit), std::move(y0),
                             std::nullopt, std::move(tracked));
}

// The induced pattern with all degrees 1 over the same coefficient semifield:
// exchange matrix b0 * diag(r), trivial coefficient tuples.
inline PatternConfig standard_config_of(const PatternConfig& cfg) {
  RatMat b = scale_cols(cfg.b0, cfg.kit.r);
  MutationKit kit = make_kit(cfg.kit.spec, std::vector<Int>(cfg.rank(), 1));
  std::optional<std::vector<std::size_t>> tracked;
  if (cfg.frozen) tracked = cfg.frozen->gens;
  return make_pattern_config(cfg.ctx, std::move(b), std::move(kit), cfg.y0, std::nullopt,
                             std::move(tracked));
}

// ---- restriction ------------------------------------------------------------

struct RestrictedPattern {
  PatternConfig config;
  std::vector<std::size_t> keep;         // original indices kept, ascending
  std::vector<std::size_t> to_new_flat;  // old flat symbol -> new flat symbol
};

// Freezes the cluster variables outside `keep` at the initial seed: they
// become semifield generators in a fresh tropical block and feed the
// coefficient tuple through their exchange entries.
inline RestrictedPattern restrict_pattern(const PatternConfig& cfg, std::vector<std::size_t> keep) {
  const std::size_t n = cfg.rank();
  std::set<std::size_t> kept(keep.begin(), keep.end());
  if (kept.size() != keep.size()) throw ConfigError("restriction indices repeat");
  for (std::size_t j : keep)
    if (j >= n) throw ConfigError("restriction index out of range");
  std::vector<std::size_t> dropped;
  for (std::size_t i = 0; i < n; ++i)
    if (!kept.count(i)) dropped.push_back(i);

  // new semifield: previous blocks followed by one block of frozen variables
  std::vector<std::vector<std::string>> blocks;
  {
    const auto& spec = *cfg.ctx->semifield();
    std::size_t at = 0;
    for (std::size_t bs : spec.block_sizes()) {
      blocks.emplace_back(spec.generators().begin() + at, spec.generators().begin() + at + bs);
      at += bs;
    }
  }
  if (!dropped.empty()) {
    std::vector<std::string> frozen_names;
    for (std::size_t i : dropped) frozen_names.push_back(cfg.ctx->xvars()[i]);
    blocks.push_back(std::move(frozen_names));
  }
  auto spec = make_spec(SemifieldSpec::product(std::move(blocks)));

  std::vector<std::string> xnames;
  for (std::size_t j : keep) xnames.push_back(cfg.ctx->xvars()[j]);
  auto ctx = make_context(std::move(xnames), spec);

  const std::size_t ng_old = cfg.ctx->ng();
  std::vector<std::size_t> to_new_flat(cfg.ctx->width());
  for (std::size_t j = 0; j < keep.size(); ++j) to_new_flat[keep[j]] = j;
  for (std::size_t d = 0; d < dropped.size(); ++d)
    to_new_flat[dropped[d]] = keep.size() + ng_old + d;
  for (std::size_t g = 0; g < ng_old; ++g) to_new_flat[n + g] = keep.size() + g;

  auto lift_tropical = [&](const TropicalElement& old) {
    ExpVec e(spec->size(), 0);
    for (std::size_t g = 0; g < ng_old; ++g) e[g] = old.exponent(g);
    return e;
  };

  std::vector<Int> r;
  for (std::size_t j : keep) r.push_back(cfg.kit.r[j]);
  MutationKit kit = make_kit(spec, std::move(r));
  for (std::size_t jj = 0; jj < keep.size(); ++jj) {
    const std::size_t j = keep[jj];
    const Exp rj = cfg.kit.degree(j);
    for (Exp m = 1; 2 * m <= rj; ++m) {
      TropicalElement zv = cfg.kit.z_at(j, m);
      if (!zv.is_one()) kit.set_z(jj, m, TropicalElement(spec, lift_tropical(zv)));
    }
  }

  std::vector<TropicalElement> y0;
  for (std::size_t j : keep) {
    ExpVec e = lift_tropical(cfg.y0[j]);
    for (std::size_t d = 0; d < dropped.size(); ++d)
      e[ng_old + d] = patterndetail::int_entry(cfg.b0(dropped[d], j), "restriction");
    y0.emplace_back(spec, std::move(e));
  }

  RatMat b0 = cfg.b0.submatrix(keep, keep);

  // track the old block (if any) together with the new frozen variables when
  // that stays consistent; otherwise fall back to an untracked pattern
  std::optional<std::vector<std::size_t>> tracked;
  {
    std::vector<std::size_t> cand;
    if (cfg.frozen)
      for (std::size_t g : cfg.frozen->gens) cand.push_back(g);
    else
      for (std::size_t g = 0; g < ng_old; ++g) cand.push_back(g);
    for (std::size_t d = 0; d < dropped.size(); ++d) cand.push_back(ng_old + d);
    bool pure = !cand.empty();
    std::set<std::size_t> inside(cand.begin(), cand.end());
    for (const auto& y : y0)
      for (std::size_t g = 0; g < y.exponents().size(); ++g)
        if (y.exponent(g) != 0 && !inside.count(g)) pure = false;
    for (std::size_t kk = 0; kk < keep.size() && pure; ++kk) {
      const Exp rk = kit.degree(kk);
      TropicalElement fold = TropicalElement::one(spec);
      for (Exp m = 1; m <= rk; ++m) fold = trop_oplus(fold, kit.z_at(kk, m));
      if (!fold.is_one()) pure = false;
    }
    if (pure) tracked = std::move(cand);
  }

  PatternConfig rc = make_pattern_config(std::move(ctx), std::move(b0), std::move(kit),
                                         std::move(y0), std::nullopt, std::move(tracked));
  return RestrictedPattern{std::move(rc), std::move(keep), std::move(to_new_flat)};
}

// ---- extension --------------------------------------------------------------

struct ExtendedPattern {
  PatternConfig config;
  std::size_t base_rank = 0;
  std::size_t extra = 0;
  std::vector<std::size_t> to_ext_flat;  // old flat symbol -> extended flat symbol
};

// Turns the tracked generator block into honest (frozen-by-weighting) cluster
// variables: rank grows by the block size, the exchange matrix gains the
// block c0 below and a balanced rational block to the right, and coefficients
// become trivial on the enlarged pattern.
inline ExtendedPattern extend_weak_geometric(const PatternConfig& cfg) {
  if (!cfg.frozen) throw ConfigError("pattern has no tracked coefficient block to extend");
  const std::size_t n = cfg.rank();
  const std::size_t h = cfg.frozen->gens.size();
  const auto& spec_old = *cfg.ctx->semifield();

  std::vector<std::string> xnames = cfg.ctx->xvars();
  for (std::size_t g : cfg.frozen->gens) xnames.push_back(spec_old.generators()[g]);

  // remaining generators keep their blocks
  std::set<std::size_t> promoted(cfg.frozen->gens.begin(), cfg.frozen->gens.end());
  std::vector<std::vector<std::string>> blocks;
  std::vector<std::size_t> kept_gens;
  {
    std::size_t at = 0;
    for (std::size_t bs : spec_old.block_sizes()) {
      std::vector<std::string> blk;
      for (std::size_t g = at; g < at + bs; ++g)
        if (!promoted.count(g)) {
          blk.push_back(spec_old.generators()[g]);
          kept_gens.push_back(g);
        }
      if (!blk.empty()) blocks.push_back(std::move(blk));
      at += bs;
    }
  }
  auto spec = make_spec(SemifieldSpec::product(std::move(blocks)));
  auto ctx = make_context(std::move(xnames), spec);

  std::vector<std::size_t> to_ext_flat(cfg.ctx->width());
  for (std::size_t i = 0; i < n; ++i) to_ext_flat[i] = i;
  {
    std::vector<std::size_t> gen_to_new(spec_old.size(), std::size_t(-1));
    for (std::size_t idx = 0; idx < kept_gens.size(); ++idx)
      gen_to_new[kept_gens[idx]] = n + h + idx;
    for (std::size_t idx = 0; idx < h; ++idx) gen_to_new[cfg.frozen->gens[idx]] = n + idx;
    for (std::size_t g = 0; g < spec_old.size(); ++g) to_ext_flat[n + g] = gen_to_new[g];
  }

  // b = [[b0, -R^{-1}S^{-1}c0^T], [c0, 0]]
  RatMat b(n + h, n + h, Rat(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = cfg.b0(i, j);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      b(n + i, j) = Rat(cfg.frozen->c0(i, j));
      b(j, n + i) = -Rat(cfg.frozen->c0(i, j)) / (Rat(cfg.s[j]) * Rat(cfg.kit.r[j]));
    }

  std::vector<Int> r = cfg.kit.r;
  r.insert(r.end(), h, Int(1));
  MutationKit kit = make_kit(spec, std::move(r));
  for (std::size_t k = 0; k < n; ++k) {
    const Exp rk = cfg.kit.degree(k);
    for (Exp m = 1; 2 * m <= rk; ++m) {
      TropicalElement zv = cfg.kit.z_at(k, m);
      if (zv.is_one()) continue;
      ExpVec e(spec->size(), 0);
      for (std::size_t idx = 0; idx < kept_gens.size(); ++idx) e[idx] = zv.exponent(kept_gens[idx]);
      for (std::size_t g : cfg.frozen->gens)
        if (zv.exponent(g) != 0)
          throw ConfigError("coefficient tuples may not involve the tracked block under extension");
      kit.set_z(k, m, TropicalElement(spec, std::move(e)));
    }
  }

  std::vector<Int> s = cfg.s;
  s.insert(s.end(), h, Int(1));
  std::vector<TropicalElement> y0(n + h, TropicalElement::one(spec));

  PatternConfig ext = make_pattern_config(std::move(ctx), std::move(b), std::move(kit),
                                          std::move(y0), std::move(s));
  return ExtendedPattern{std::move(ext), n, h, std::move(to_ext_flat)};
}

}  // namespace gencluster
