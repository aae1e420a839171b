#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gencluster/gcd.hpp"
#include "gencluster/laurent.hpp"

namespace gencluster {

// Quotient of Laurent polynomials in canonical form: the denominator is an
// honest polynomial (componentwise-minimal exponent zero in every symbol)
// with positive lexicographically-least coefficient, coprime to the shifted
// numerator; monomial units live in the numerator.
class RationalFn {
 public:
  RationalFn() = default;

  RationalFn(LaurentPoly num, LaurentPoly den) { canonicalize(std::move(num), std::move(den)); }

  explicit RationalFn(LaurentPoly num)
      : num_(std::move(num)), den_(LaurentPoly::one(num_.ctx())) {}

  static RationalFn zero(const CtxPtr& ctx) { return RationalFn(LaurentPoly::zero(ctx)); }
  static RationalFn one(const CtxPtr& ctx) { return RationalFn(LaurentPoly::one(ctx)); }
  static RationalFn constant(const CtxPtr& ctx, const Rat& q) {
    return RationalFn(LaurentPoly::constant(ctx, q.get_num()),
                      LaurentPoly::constant(ctx, q.get_den()));
  }
  static RationalFn symbol(const CtxPtr& ctx, std::size_t flat, Exp power = 1) {
    return RationalFn(LaurentPoly::symbol(ctx, flat, power));
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  const CtxPtr& ctx() const { return num_.ctx(); }
  bool valid() const { return static_cast<bool>(num_.ctx()); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  std::optional<Rat> as_constant() const {
    auto n = num_.as_constant();
    auto d = den_.as_constant();
    if (!n || !d) return std::nullopt;
    Rat q(*n, *d);
    q.canonicalize();
    return q;
  }

  RationalFn operator+(const RationalFn& o) const { return add_sub(o, false); }
  RationalFn operator-(const RationalFn& o) const { return add_sub(o, true); }
  RationalFn operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
  }
  RationalFn operator*(const RationalFn& o) const {
    // cross-reduce before multiplying to keep intermediates small
    RationalFn a = reduced(num_, o.den_);
    RationalFn b = reduced(o.num_, den_);
    RationalFn r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_ * b.den_;
    r.fix_den_sign();
    return r;
  }
  RationalFn operator/(const RationalFn& o) const {
    if (o.is_zero()) throw ConfigError("division by zero");
    return *this * o.inverse();
  }
  RationalFn inverse() const {
    if (is_zero()) throw ConfigError("inverse of zero");
    return RationalFn(den_, num_);
  }
  RationalFn pow(Exp e) const {
    if (e == 0) return one(ctx());
    const RationalFn base = e < 0 ? inverse() : *this;
    Exp k = e < 0 ? exp_neg(e) : e;
    RationalFn r;
    r.num_ = base.num_.pow(k);
    r.den_ = base.den_.pow(k);
    // powers of a reduced fraction stay reduced; the sign convention survives
    return r;
  }

  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }

  bool operator==(const RationalFn& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalFn& o) const { return !(*this == o); }
  bool operator<(const RationalFn& o) const {
    if (num_ < o.num_) return true;
    if (o.num_ < num_) return false;
    return den_ < o.den_;
  }

  // caller promises num and den share no non-unit factor
  static RationalFn from_reduced(LaurentPoly num, LaurentPoly den) {
    RationalFn r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.fix_den_sign();
    return r;
  }

 private:
  LaurentPoly num_;
  LaurentPoly den_;

  // Common-denominator addition: with d1 = da*g, d2 = db*g, g = gcd(d1, d2),
  // the sum num1*db + num2*da over da*db*g can only share factors of g, so
  // one small gcd replaces the full gcd against d1*d2.
  RationalFn add_sub(const RationalFn& o, bool subtract) const {
    if (is_zero()) return subtract ? -o : o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
      RationalFn r;
      r.num_ = subtract ? num_ - o.num_ : num_ + o.num_;
      r.den_ = den_;
      return r;
    }
    if (den_ == o.den_) {
      LaurentPoly t = subtract ? num_ - o.num_ : num_ + o.num_;
      if (t.is_zero()) return zero(ctx());
      LaurentPoly g2 = poly_gcd(t, den_);
      if (g2.is_one()) return from_reduced(std::move(t), den_);
      return from_reduced(exact_divide(t, g2), exact_divide(den_, g2));
    }
    LaurentPoly g = poly_gcd(den_, o.den_);
    const bool trivial = g.is_one();
    LaurentPoly da = trivial ? den_ : exact_divide(den_, g);
    LaurentPoly db = trivial ? o.den_ : exact_divide(o.den_, g);
    LaurentPoly t = subtract ? num_ * db - o.num_ * da : num_ * db + o.num_ * da;
    if (t.is_zero()) return zero(ctx());
    if (trivial) return from_reduced(std::move(t), den_ * db);
    LaurentPoly g2 = poly_gcd(t, g);
    if (g2.is_one()) return from_reduced(std::move(t), da * g * db);
    return from_reduced(exact_divide(t, g2), da * exact_divide(g, g2) * db);
  }

  // builds num/den already known to be coprime
  static RationalFn reduced(const LaurentPoly& n, const LaurentPoly& d) {
    RationalFn r;
    if (n.is_zero() || d.is_one()) {
      r.num_ = n;
      r.den_ = LaurentPoly::one(n.ctx());
      return r;
    }
    LaurentPoly g = poly_gcd(n, d);
    if (g.is_one()) {
      r.num_ = n;
      r.den_ = d;
    } else {
      r.num_ = exact_divide(n, g);
      r.den_ = exact_divide(d, g);
    }
    return r;
  }

  void fix_den_sign() {
    // move the monomial part of the denominator into the numerator and make
    // the lexicographically-least denominator coefficient positive
    ExpVec sd = den_.min_exponents();
    if (!detail::ev_is_zero(sd)) {
      den_ = den_.shifted(detail::ev_scale(sd, -1));
      num_ = num_.shifted(detail::ev_scale(sd, -1));
    }
    if (!den_.is_zero() && den_.terms().begin()->second < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  void canonicalize(LaurentPoly n, LaurentPoly d) {
    require_same_context(n.ctx(), d.ctx());
    if (d.is_zero()) throw ConfigError("zero denominator");
    if (n.is_zero()) {
      num_ = std::move(n);
      den_ = LaurentPoly::one(num_.ctx());
      return;
    }
    RationalFn r = reduced(n, d);
    num_ = std::move(r.num_);
    den_ = std::move(r.den_);
    fix_den_sign();
  }
};

// The content as a Laurent polynomial; requires the denominator to be
// trivial, which is how cluster variables certify the Laurent property.
inline LaurentPoly exact_laurent_division(const RationalFn& f) {
  if (!f.den().is_one())
    throw ConfigError("not a Laurent polynomial: denominator " +
                      std::to_string(f.den().term_count()) + " terms remain");
  return f.num();
}

inline RationalFn rf_embed(const CtxPtr& ctx, const TropicalElement& t) {
  return RationalFn(LaurentPoly::embed(ctx, t));
}

// Simultaneous substitution of rational functions for flat symbols; symbols
// absent from the map stay formal.
inline RationalFn substitute(const RationalFn& f, const std::map<std::size_t, RationalFn>& values) {
  const CtxPtr& ctx = f.ctx();
  for (const auto& [flat, v] : values) {
    if (flat >= ctx->width()) throw ConfigError("substitution index out of range");
    require_same_context(ctx, v.ctx());
  }
  // per-symbol power cache
  std::map<std::pair<std::size_t, Exp>, RationalFn> powers;
  auto power_of = [&](std::size_t flat, Exp e) -> const RationalFn& {
    auto it = powers.find({flat, e});
    if (it == powers.end()) it = powers.emplace(std::pair{flat, e}, values.at(flat).pow(e)).first;
    return it->second;
  };
  auto eval_side = [&](const LaurentPoly& p) {
    RationalFn acc = RationalFn::zero(ctx);
    for (const auto& [e, c] : p.terms()) {
      ExpVec kept(e.size(), 0);
      RationalFn tv;
      bool have = false;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!values.count(i)) {
          kept[i] = e[i];
          continue;
        }
        const RationalFn& pw = power_of(i, e[i]);
        tv = have ? tv * pw : pw;
        have = true;
      }
      detail::TermMap tm;
      tm.emplace(std::move(kept), c);
      RationalFn mono{LaurentPoly(ctx, std::move(tm))};
      acc += have ? mono * tv : mono;
    }
    return acc;
  };
  RationalFn n = eval_side(f.num());
  if (f.den().is_one()) return n;
  RationalFn d = eval_side(f.den());
  return n / d;
}

inline RationalFn partial_derivative(const RationalFn& f, std::size_t flat) {
  const LaurentPoly dn = f.num().derivative(flat);
  if (f.den().is_one()) return RationalFn(dn);
  const LaurentPoly dd = f.den().derivative(flat);
  if (dd.is_zero()) return RationalFn(dn, f.den());
  LaurentPoly t = dn * f.den() - f.num() * dd;
  if (t.is_zero()) return RationalFn::zero(f.ctx());
  // the squared denominator can only cancel factors of the denominator, at
  // multiplicity up to two; two one-denominator gcd passes remove exactly that
  LaurentPoly d2 = f.den() * f.den();
  for (int pass = 0; pass < 2; ++pass) {
    LaurentPoly g = poly_gcd(t, f.den());
    if (g.is_one()) break;
    t = exact_divide(t, g);
    d2 = exact_divide(d2, g);
  }
  return RationalFn::from_reduced(std::move(t), std::move(d2));
}

// Sets the listed flat symbols to zero: terms with a positive exponent in any
// of them drop; a negative exponent anywhere is an error, as is a vanishing
// denominator.
inline RationalFn specialize_zero(const RationalFn& f, const std::set<std::size_t>& flats) {
  auto filter = [&](const LaurentPoly& p) {
    detail::TermMap out;
    for (const auto& [e, c] : p.terms()) {
      bool drop = false;
      for (std::size_t i : flats) {
        if (e[i] < 0)
          throw ConfigError("negative exponent on a symbol being set to zero");
        if (e[i] > 0) {
          drop = true;
          break;
        }
      }
      if (!drop) out.emplace(e, c);
    }
    return LaurentPoly(p.ctx(), std::move(out));
  };
  LaurentPoly n = filter(f.num());
  LaurentPoly d = filter(f.den());
  if (d.is_zero()) throw ConfigError("denominator vanishes under specialization");
  return RationalFn(std::move(n), std::move(d));
}

// Sets the listed flat symbols to one.
inline RationalFn specialize_one(const RationalFn& f, const std::set<std::size_t>& flats) {
  auto collapse = [&](const LaurentPoly& p) {
    detail::TermMap out;
    for (const auto& [e, c] : p.terms()) {
      ExpVec ne = e;
      for (std::size_t i : flats) ne[i] = 0;
      detail::add_term(out, std::move(ne), c);
    }
    return LaurentPoly(p.ctx(), std::move(out));
  };
  LaurentPoly n = collapse(f.num());
  LaurentPoly d = collapse(f.den());
  if (d.is_zero()) throw ConfigError("denominator vanishes under specialization");
  return RationalFn(std::move(n), std::move(d));
}

// Formal one-sided limit in a single symbol: the value as it grows without
// bound (at_infinity) or goes to zero.  Divergence yields nullopt.
inline std::optional<RationalFn> formal_limit(const RationalFn& f, std::size_t flat, bool at_infinity) {
  if (f.is_zero()) return f;
  const LaurentPoly &n = f.num(), &d = f.den();
  auto part = [&](const LaurentPoly& p, Exp deg) {
    detail::TermMap out;
    for (const auto& [e, c] : p.terms()) {
      if (e[flat] != deg) continue;
      ExpVec ne = e;
      ne[flat] = 0;
      out.emplace(std::move(ne), c);
    }
    return LaurentPoly(p.ctx(), std::move(out));
  };
  Exp dn = at_infinity ? n.degree_in(flat) : n.low_degree_in(flat);
  Exp dd = at_infinity ? d.degree_in(flat) : d.low_degree_in(flat);
  bool diverges = at_infinity ? dn > dd : dn < dd;
  if (diverges) return std::nullopt;
  bool vanishes = at_infinity ? dn < dd : dn > dd;
  if (vanishes) return RationalFn::zero(f.ctx());
  return RationalFn(part(n, dn), part(d, dd));
}

// Rebuilds f over another context, sending flat symbol i of the source to
// flat symbol to_flat[i] of the target (injective).
inline LaurentPoly remap(const LaurentPoly& p, const CtxPtr& target, const std::vector<std::size_t>& to_flat) {
  if (to_flat.size() != p.width()) throw ConfigError("remap table has wrong width");
  detail::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    ExpVec ne(target->width(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (to_flat[i] >= target->width()) throw ConfigError("remap target out of range");
      ne[to_flat[i]] = e[i];
    }
    auto [it, fresh] = out.emplace(std::move(ne), c);
    if (!fresh) throw ConfigError("remap table is not injective on used symbols");
  }
  return LaurentPoly(target, std::move(out));
}

inline RationalFn remap(const RationalFn& f, const CtxPtr& target, const std::vector<std::size_t>& to_flat) {
  RationalFn r(remap(f.num(), target, to_flat), remap(f.den(), target, to_flat));
  return r;
}

}  // namespace gencluster
