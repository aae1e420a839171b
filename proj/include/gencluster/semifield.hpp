#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gencluster/common.hpp"

namespace gencluster {

// A finite product of free tropical semifields, described by its ordered,
// named generators and the partition of them into tropical blocks.  The
// trivial semifield is the empty product.  Addition is componentwise min on
// exponents, which never crosses blocks, so the block structure only matters
// for construction and serialization.
class SemifieldSpec {
 public:
  SemifieldSpec() = default;

  static SemifieldSpec single_block(std::vector<std::string> gens) {
    if (gens.empty()) return SemifieldSpec{};
    return product({std::move(gens)});
  }

  static SemifieldSpec product(std::vector<std::vector<std::string>> blocks) {
    SemifieldSpec s;
    for (auto& b : blocks) {
      if (b.empty()) continue;
      s.block_sizes_.push_back(b.size());
      for (auto& g : b) s.gens_.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < s.gens_.size(); ++i)
      for (std::size_t j = i + 1; j < s.gens_.size(); ++j)
        if (s.gens_[i] == s.gens_[j])
          throw ConfigError("duplicate semifield generator '" + s.gens_[i] + "'");
    return s;
  }

  std::size_t size() const { return gens_.size(); }
  bool trivial() const { return gens_.empty(); }
  const std::vector<std::string>& generators() const { return gens_; }
  const std::vector<std::size_t>& block_sizes() const { return block_sizes_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const SemifieldSpec&) const = default;

 private:
  std::vector<std::string> gens_;
  std::vector<std::size_t> block_sizes_;
};

using SpecPtr = std::shared_ptr<const SemifieldSpec>;

inline SpecPtr make_spec(SemifieldSpec s) { return std::make_shared<const SemifieldSpec>(std::move(s)); }

inline SpecPtr trivial_spec() {
  static const SpecPtr s = make_spec(SemifieldSpec{});
  return s;
}

inline bool same_spec(const SpecPtr& a, const SpecPtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_spec(const SpecPtr& a, const SpecPtr& b) {
  if (!same_spec(a, b)) throw ConfigError("operands belong to different semifields");
}

// One element of the semifield: a Laurent monomial in the generators,
// stored as a dense exponent vector.
class TropicalElement {
 public:
  TropicalElement() : spec_(trivial_spec()), e_() {}
  explicit TropicalElement(SpecPtr spec) : spec_(std::move(spec)), e_(spec_->size(), 0) {}
  TropicalElement(SpecPtr spec, ExpVec e) : spec_(std::move(spec)), e_(std::move(e)) {
    if (e_.size() != spec_->size()) throw ConfigError("exponent vector width does not match semifield");
  }

  static TropicalElement one(SpecPtr spec) { return TropicalElement(std::move(spec)); }

  static TropicalElement generator(SpecPtr spec, std::size_t i) {
    TropicalElement t(spec);
    if (i >= spec->size()) throw ConfigError("semifield generator index out of range");
    t.e_[i] = 1;
    return t;
  }

  const SpecPtr& spec() const { return spec_; }
  const ExpVec& exponents() const { return e_; }
  Exp exponent(std::size_t i) const { return e_.at(i); }
  bool is_one() const { return detail::ev_is_zero(e_); }

  friend bool operator==(const TropicalElement& a, const TropicalElement& b) {
    return same_spec(a.spec_, b.spec_) && a.e_ == b.e_;
  }
  friend bool operator!=(const TropicalElement& a, const TropicalElement& b) { return !(a == b); }
  friend bool operator<(const TropicalElement& a, const TropicalElement& b) { return a.e_ < b.e_; }

 private:
  SpecPtr spec_;
  ExpVec e_;
};

inline TropicalElement trop_mul(const TropicalElement& a, const TropicalElement& b) {
  require_same_spec(a.spec(), b.spec());
  return TropicalElement(a.spec(), detail::ev_add(a.exponents(), b.exponents()));
}

inline TropicalElement trop_div(const TropicalElement& a, const TropicalElement& b) {
  require_same_spec(a.spec(), b.spec());
  return TropicalElement(a.spec(), detail::ev_sub(a.exponents(), b.exponents()));
}

inline TropicalElement trop_inv(const TropicalElement& a) {
  ExpVec e(a.exponents().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exp_neg(a.exponents()[i]);
  return TropicalElement(a.spec(), std::move(e));
}

inline TropicalElement trop_pow(const TropicalElement& a, Exp n) {
  return TropicalElement(a.spec(), detail::ev_scale(a.exponents(), n));
}

inline TropicalElement trop_pow(const TropicalElement& a, const Int& n) { return trop_pow(a, to_exp(n)); }

// Tropical addition: componentwise min of exponent vectors.
inline TropicalElement trop_oplus(const TropicalElement& a, const TropicalElement& b) {
  require_same_spec(a.spec(), b.spec());
  return TropicalElement(a.spec(), detail::ev_min(a.exponents(), b.exponents()));
}

inline TropicalElement oplus_fold(std::span<const TropicalElement> elems) {
  if (elems.empty()) throw ConfigError("tropical sum of an empty list");
  TropicalElement acc = elems[0];
  for (std::size_t i = 1; i < elems.size(); ++i) acc = trop_oplus(acc, elems[i]);
  return acc;
}

inline TropicalElement oplus_fold(const std::vector<TropicalElement>& elems) {
  return oplus_fold(std::span<const TropicalElement>(elems));
}

}  // namespace gencluster
