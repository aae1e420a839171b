#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gencluster {

using Int = mpz_class;  // coefficients, matrix entries
using Rat = mpq_class;  // fraction-field scalars

// Monomial exponents. Kept machine-width for fast ordered-map keys; every
// arithmetic step goes through the checked helpers below, so overflow aborts
// loudly instead of wrapping.
using Exp = std::int64_t;
using ExpVec = std::vector<Exp>;

// Bad user input or operands from mismatched algebraic contexts.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Violated structural invariant: indicates a bug, not bad input.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

// Outcome of an identity check; detail carries a witness on failure.
struct IdentityReport {
  bool pass = true;
  std::string detail;
};

inline Exp exp_add(Exp a, Exp b) {
  Exp r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("exponent overflow (add)");
  return r;
}

inline Exp exp_sub(Exp a, Exp b) {
  Exp r;
  if (__builtin_sub_overflow(a, b, &r)) throw InternalError("exponent overflow (sub)");
  return r;
}

inline Exp exp_mul(Exp a, Exp b) {
  Exp r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("exponent overflow (mul)");
  return r;
}

inline Exp exp_neg(Exp a) { return exp_sub(0, a); }

inline Exp to_exp(const Int& v) {
  if (!v.fits_slong_p()) throw InternalError("integer too large for a monomial exponent");
  return static_cast<Exp>(v.get_si());
}

inline Int to_int(const Rat& q) {
  if (q.get_den() != 1) throw InternalError("expected an integer, got " + q.get_str());
  return q.get_num();
}

inline Int positive_part(const Int& v) { return v > 0 ? v : Int(0); }

namespace detail {

inline ExpVec ev_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = exp_add(a[i], b[i]);
  return r;
}

inline ExpVec ev_sub(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = exp_sub(a[i], b[i]);
  return r;
}

inline ExpVec ev_min(const ExpVec& a, const ExpVec& b) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

inline ExpVec ev_scale(const ExpVec& a, Exp c) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = exp_mul(a[i], c);
  return r;
}

inline bool ev_is_zero(const ExpVec& a) {
  for (Exp e : a)
    if (e != 0) return false;
  return true;
}

}  // namespace detail
}  // namespace gencluster
