#pragma once

#include <algorithm>
#include <sstream>
#include <vector>

#include "gencluster/pattern.hpp"

namespace gencluster {

// Negated minimal exponent of each cluster variable across the Laurent
// expansion; entry j is the exponent of x_j in the cleared denominator.
inline std::vector<Int> d_vector(const RationalFn& x) {
  LaurentPoly p = exact_laurent_division(x);
  if (p.is_zero()) throw ConfigError("zero has no denominator vector");
  const std::size_t nx = p.ctx()->nx();
  std::vector<Exp> mn(nx, 0);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    (void)c;
    for (std::size_t i = 0; i < nx; ++i)
      mn[i] = first ? e[i] : std::min(mn[i], e[i]);
    first = false;
  }
  std::vector<Int> d(nx);
  for (std::size_t i = 0; i < nx; ++i) d[i] = Int(-mn[i]);
  return d;
}

// Columns are the d-vectors of the seed's cluster variables.
inline IntMat d_matrix_of(const Seed& seed) {
  const std::size_t n = seed.x.size();
  IntMat out(n, n, Int(0));
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<Int> d = d_vector(seed.x[j]);
    for (std::size_t i = 0; i < n; ++i) out(i, j) = d[i];
  }
  return out;
}

struct MatrixSeed {
  IntMat d;
  IntMat q;

  bool operator==(const MatrixSeed& o) const { return d == o.d && q == o.q; }
};

inline MatrixSeed initial_matrix_seed(const IntMat& q0) {
  if (q0.rows() != q0.cols()) throw ConfigError("exchange matrix must be square");
  const std::size_t n = q0.rows();
  IntMat d(n, n, Int(0));
  for (std::size_t i = 0; i < n; ++i) d(i, i) = Int(-1);
  return MatrixSeed{std::move(d), q0};
}

// Column k of D is rebuilt from (D, Q) alone; with Q carrying the degrees on
// its columns the factor b_{lk} r_k is exactly Q_{lk}.
inline MatrixSeed mutate_matrix_seed(const MatrixSeed& ms, std::size_t k) {
  const std::size_t n = ms.q.rows();
  if (k >= n) throw ConfigError("mutation direction out of range");
  if (ms.d.rows() != n || ms.d.cols() != n) throw ConfigError("matrix seed shape mismatch");
  IntMat nd = ms.d;
  for (std::size_t i = 0; i < n; ++i) {
    Int s1(0), s2(0);
    for (std::size_t l = 0; l < n; ++l) {
      const Int& qlk = ms.q(l, k);
      if (qlk > 0) s1 += ms.d(i, l) * qlk;
      else if (qlk < 0) s2 -= ms.d(i, l) * qlk;
    }
    nd(i, k) = -ms.d(i, k) + std::max(s1, s2);
  }
  return MatrixSeed{std::move(nd), standard_matrix_mutation(ms.q, k)};
}

inline MatrixSeed matrix_seed_along(const IntMat& q0, const std::vector<int>& walk) {
  MatrixSeed ms = initial_matrix_seed(q0);
  for (int k : walk) {
    if (k < 0) throw ConfigError("mutation direction out of range");
    ms = mutate_matrix_seed(ms, static_cast<std::size_t>(k));
  }
  return ms;
}

inline IntMat scale_cols_by(const IntMat& b, const std::vector<Int>& r) {
  if (b.cols() != r.size()) throw ConfigError("degree vector length mismatch");
  IntMat out = b;
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t i = 0; i < b.rows(); ++i) out(i, j) *= r[j];
  return out;
}

namespace dmatdetail {

inline std::string mat_witness(const char* what, const IntMat& got, const IntMat& want) {
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      if (got(i, j) != want(i, j)) {
        std::ostringstream os;
        os << what << " entry (" << i << "," << j << "): got " << got(i, j).get_str()
           << ", want " << want(i, j).get_str();
        return os.str();
      }
  return {};
}

}  // namespace dmatdetail

// Runs the degree-weighted pattern and the degree-one pattern with exchange
// matrix scaled by the degrees along the same walk; their denominator
// matrices must agree with each other and with the column recurrence.
inline IdentityReport d_vectors_match_standard(const IntMat& b0, const std::vector<Int>& r,
                                               const std::vector<int>& walk) {
  PatternConfig gen = trivial_config(b0, r);
  PatternConfig std_cfg = trivial_config(scale_cols_by(b0, r), std::vector<Int>(r.size(), Int(1)));
  const IntMat dg = d_matrix_of(apply_walk(gen, walk));
  const IntMat ds = d_matrix_of(apply_walk(std_cfg, walk));
  if (!(dg == ds))
    return {false, "generalized vs degree-one: " + dmatdetail::mat_witness("D", dg, ds)};
  const MatrixSeed ms = matrix_seed_along(scale_cols_by(b0, r), walk);
  if (!(dg == ms.d))
    return {false, "extraction vs recurrence: " + dmatdetail::mat_witness("D", dg, ms.d)};
  return {};
}

}  // namespace gencluster
