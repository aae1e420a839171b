#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gencluster/coeff_ring.hpp"
#include "gencluster/detail/term_map.hpp"
#include "gencluster/semifield.hpp"

namespace gencluster {

// Naming context for the ambient field: cluster variables first, then the
// semifield generators.  A Laurent polynomial over Z[P] is stored flat, as a
// Laurent polynomial over Z in all nx + ng symbols.
class PolyContext {
 public:
  PolyContext(std::vector<std::string> xvars, SpecPtr semifield)
      : xvars_(std::move(xvars)), semifield_(std::move(semifield)) {
    for (std::size_t i = 0; i < xvars_.size(); ++i) {
      if (semifield_->index_of(xvars_[i]))
        throw ConfigError("name '" + xvars_[i] + "' is both a variable and a generator");
      for (std::size_t j = i + 1; j < xvars_.size(); ++j)
        if (xvars_[i] == xvars_[j]) throw ConfigError("duplicate variable '" + xvars_[i] + "'");
    }
  }

  std::size_t nx() const { return xvars_.size(); }
  std::size_t ng() const { return semifield_->size(); }
  std::size_t width() const { return nx() + ng(); }

  const std::vector<std::string>& xvars() const { return xvars_; }
  const SpecPtr& semifield() const { return semifield_; }

  const std::string& name(std::size_t flat) const {
    return flat < nx() ? xvars_[flat] : semifield_->generators()[flat - nx()];
  }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < xvars_.size(); ++i)
      if (xvars_[i] == name) return i;
    if (auto g = semifield_->index_of(name)) return nx() + *g;
    return std::nullopt;
  }

  bool operator==(const PolyContext& o) const {
    return xvars_ == o.xvars_ && *semifield_ == *o.semifield_;
  }

 private:
  std::vector<std::string> xvars_;
  SpecPtr semifield_;
};

using CtxPtr = std::shared_ptr<const PolyContext>;

inline CtxPtr make_context(std::vector<std::string> xvars, SpecPtr semifield) {
  return std::make_shared<const PolyContext>(std::move(xvars), std::move(semifield));
}

inline bool same_context(const CtxPtr& a, const CtxPtr& b) { return a == b || (a && b && *a == *b); }

inline void require_same_context(const CtxPtr& a, const CtxPtr& b) {
  if (!same_context(a, b)) throw ConfigError("operands belong to different polynomial contexts");
}

class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}
  LaurentPoly(CtxPtr ctx, detail::TermMap terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {}

  static LaurentPoly zero(CtxPtr ctx) { return LaurentPoly(std::move(ctx)); }

  static LaurentPoly constant(CtxPtr ctx, const Int& c) {
    LaurentPoly p(std::move(ctx));
    if (c != 0) p.terms_.emplace(ExpVec(p.ctx_->width(), 0), c);
    return p;
  }

  static LaurentPoly one(CtxPtr ctx) { return constant(std::move(ctx), 1); }

  static LaurentPoly monomial(CtxPtr ctx, const ExpVec& e, const Int& c) {
    LaurentPoly p(std::move(ctx));
    if (e.size() != p.ctx_->width()) throw ConfigError("monomial width does not match context");
    if (c != 0) p.terms_.emplace(e, c);
    return p;
  }

  // flat symbol index: variables 0..nx-1, generators nx..nx+ng-1
  static LaurentPoly symbol(CtxPtr ctx, std::size_t flat, Exp power = 1) {
    LaurentPoly p(std::move(ctx));
    if (flat >= p.ctx_->width()) throw ConfigError("symbol index out of range");
    ExpVec e(p.ctx_->width(), 0);
    e[flat] = power;
    p.terms_.emplace(std::move(e), Int(1));
    return p;
  }

  static LaurentPoly embed(CtxPtr ctx, const CoeffRingElement& c) {
    require_same_spec(ctx->semifield(), c.spec());
    LaurentPoly p(ctx);
    const std::size_t nx = ctx->nx();
    for (const auto& [e, v] : c.terms()) {
      ExpVec full(ctx->width(), 0);
      std::copy(e.begin(), e.end(), full.begin() + nx);
      p.terms_.emplace(std::move(full), v);
    }
    return p;
  }

  static LaurentPoly embed(CtxPtr ctx, const TropicalElement& t) {
    return embed(std::move(ctx), CoeffRingElement::embed(t));
  }

  const CtxPtr& ctx() const { return ctx_; }
  const detail::TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t width() const { return ctx_->width(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->second == 1 && detail::ev_is_zero(terms_.begin()->first);
  }
  bool is_monomial() const { return terms_.size() == 1; }

  std::optional<Int> as_constant() const {
    if (terms_.empty()) return Int(0);
    if (terms_.size() == 1 && detail::ev_is_zero(terms_.begin()->first)) return terms_.begin()->second;
    return std::nullopt;
  }

  // Group the x-exponent part: coefficient of x^e as a group-ring element.
  CoeffRingElement coefficient_of(const ExpVec& xexp) const {
    const std::size_t nx = ctx_->nx();
    if (xexp.size() != nx) throw ConfigError("x-exponent width mismatch");
    detail::TermMap out;
    for (const auto& [e, c] : terms_) {
      if (!std::equal(xexp.begin(), xexp.end(), e.begin())) continue;
      out.emplace(ExpVec(e.begin() + nx, e.end()), c);
    }
    return CoeffRingElement(ctx_->semifield(), std::move(out));
  }

  ExpVec min_exponents() const { return detail::tm_min_exponents(terms_, width()); }

  Exp degree_in(std::size_t v) const {
    Exp d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[v] > d) d = e[v];
      first = false;
    }
    return d;
  }

  Exp low_degree_in(std::size_t v) const {
    Exp d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (first || e[v] < d) d = e[v];
      first = false;
    }
    return d;
  }

  bool depends_on(std::size_t v) const {
    for (const auto& [e, c] : terms_)
      if (e[v] != 0) return true;
    return false;
  }

  // gcd of the integer coefficients (>= 0).
  Int content() const { return detail::tm_content(terms_); }

  LaurentPoly shifted(const ExpVec& by) const {
    return LaurentPoly(ctx_, detail::tm_mul_monomial(terms_, by, 1));
  }

  // Formal partial derivative in symbol v (usually a cluster variable).
  LaurentPoly derivative(std::size_t v) const {
    detail::TermMap out;
    for (const auto& [e, c] : terms_) {
      if (e[v] == 0) continue;
      ExpVec ne = e;
      ne[v] = exp_sub(ne[v], 1);
      out.emplace(std::move(ne), c * Int(e[v]));
    }
    return LaurentPoly(ctx_, std::move(out));
  }

  LaurentPoly pow(Exp n) const {
    if (n < 0) throw InternalError("negative power of a Laurent polynomial");
    if (terms_.size() == 1) {
      const auto& [e, c] = *terms_.begin();
      Int cc;
      mpz_pow_ui(cc.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(n));
      return monomial(ctx_, detail::ev_scale(e, n), cc);
    }
    return LaurentPoly(ctx_, detail::tm_pow(terms_, n, width()));
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    return LaurentPoly(a.ctx_, detail::tm_add(a.terms_, b.terms_));
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    return LaurentPoly(a.ctx_, detail::tm_sub(a.terms_, b.terms_));
  }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly(a.ctx_, detail::tm_neg(a.terms_)); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_same_context(a.ctx_, b.ctx_);
    return LaurentPoly(a.ctx_, detail::tm_mul(a.terms_, b.terms_));
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const Int& c) {
    return LaurentPoly(a.ctx_, detail::tm_mul_int(a.terms_, c));
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  // Deterministic total order (used by canonical seed encodings).
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ < b.terms_; }

 private:
  CtxPtr ctx_;
  detail::TermMap terms_;
};

}  // namespace gencluster
