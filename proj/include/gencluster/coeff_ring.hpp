#pragma once

#include <map>
#include <vector>

#include "gencluster/detail/term_map.hpp"
#include "gencluster/semifield.hpp"

namespace gencluster {

// Element of the group ring Z[P]: a finite integer combination of tropical
// monomials.  Since P is a free abelian group on the generators, this is a
// Laurent polynomial ring over Z and in particular a domain.
class CoeffRingElement {
 public:
  CoeffRingElement() : spec_(trivial_spec()) {}
  explicit CoeffRingElement(SpecPtr spec) : spec_(std::move(spec)) {}

  static CoeffRingElement zero(SpecPtr spec) { return CoeffRingElement(std::move(spec)); }

  static CoeffRingElement constant(SpecPtr spec, const Int& c) {
    CoeffRingElement r(std::move(spec));
    if (c != 0) r.terms_.emplace(ExpVec(r.spec_->size(), 0), c);
    return r;
  }

  static CoeffRingElement one(SpecPtr spec) { return constant(std::move(spec), 1); }

  // The multiplicative group of P embeds as single-term elements with
  // integer coefficient 1.
  static CoeffRingElement embed(const TropicalElement& t) {
    CoeffRingElement r(t.spec());
    r.terms_.emplace(t.exponents(), Int(1));
    return r;
  }

  const SpecPtr& spec() const { return spec_; }
  const detail::TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->second == 1 && detail::ev_is_zero(terms_.begin()->first);
  }

  // Single tropical monomial with coefficient 1?
  bool is_unit_monomial() const { return terms_.size() == 1 && terms_.begin()->second == 1; }

  friend CoeffRingElement operator+(const CoeffRingElement& a, const CoeffRingElement& b) {
    require_same_spec(a.spec_, b.spec_);
    return CoeffRingElement(a.spec_, detail::tm_add(a.terms_, b.terms_));
  }
  friend CoeffRingElement operator-(const CoeffRingElement& a, const CoeffRingElement& b) {
    require_same_spec(a.spec_, b.spec_);
    return CoeffRingElement(a.spec_, detail::tm_sub(a.terms_, b.terms_));
  }
  friend CoeffRingElement operator-(const CoeffRingElement& a) {
    return CoeffRingElement(a.spec_, detail::tm_neg(a.terms_));
  }
  friend CoeffRingElement operator*(const CoeffRingElement& a, const CoeffRingElement& b) {
    require_same_spec(a.spec_, b.spec_);
    return CoeffRingElement(a.spec_, detail::tm_mul(a.terms_, b.terms_));
  }

  friend bool operator==(const CoeffRingElement& a, const CoeffRingElement& b) {
    return same_spec(a.spec_, b.spec_) && a.terms_ == b.terms_;
  }
  friend bool operator!=(const CoeffRingElement& a, const CoeffRingElement& b) { return !(a == b); }

  CoeffRingElement(SpecPtr spec, detail::TermMap terms) : spec_(std::move(spec)), terms_(std::move(terms)) {}

 private:
  SpecPtr spec_;
  detail::TermMap terms_;
};

}  // namespace gencluster
