#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gencluster/common.hpp"

namespace gencluster {

template <class T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
  Mat(std::size_t r, std::size_t c, const T& fill) : rows_(r), cols_(c), a_(r * c, fill) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat diagonal(const std::vector<T>& d) {
    Mat m(d.size(), d.size(), T(0));
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Mat transpose() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Mat operator+(const Mat& o) const {
    check_shape(o);
    Mat m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
  }
  Mat operator-(const Mat& o) const {
    check_shape(o);
    Mat m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
  }
  Mat operator-() const {
    Mat m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
    return m;
  }
  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw InternalError("matrix shape mismatch in product");
    Mat m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        T acc = (*this)(i, 0) * o(0, j);
        for (std::size_t k = 1; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
        m(i, j) = std::move(acc);
      }
    return m;
  }

  bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat submatrix(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
    Mat m(ri.size(), ci.size());
    for (std::size_t i = 0; i < ri.size(); ++i)
      for (std::size_t j = 0; j < ci.size(); ++j) m(i, j) = (*this)(ri[i], ci[j]);
    return m;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> a_;

  void check_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix shape mismatch");
  }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

inline std::optional<IntMat> to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

inline std::string to_string(const RatMat& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += m(i, j).get_str();
    }
    out += "]";
  }
  return out + "]";
}

inline std::string to_string(const IntMat& m) { return to_string(to_rat(m)); }

inline bool is_skew_symmetric(const RatMat& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m(i, j) != -m(j, i)) return false;
  return true;
}

// Left-multiplication by a positive integer diagonal.
inline RatMat scale_rows(const std::vector<Int>& d, const RatMat& m) {
  if (d.size() != m.rows()) throw InternalError("diagonal size mismatch");
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) * Rat(d[i]);
  return r;
}

inline RatMat scale_cols(const RatMat& m, const std::vector<Int>& d) {
  if (d.size() != m.cols()) throw InternalError("diagonal size mismatch");
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) * Rat(d[j]);
  return r;
}

inline RatMat divide_rows(const std::vector<Int>& d, const RatMat& m) {
  RatMat r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) / Rat(d[i]);
  return r;
}

inline Rat rat_det(RatMat m) {
  if (!m.square()) throw InternalError("determinant of non-square matrix");
  const std::size_t n = m.rows();
  Rat det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = c; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline std::size_t rat_rank(RatMat m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(rank, j));
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) / m(rank, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(rank, j);
    }
    ++rank;
  }
  return rank;
}

inline std::optional<RatMat> rat_inverse(RatMat m) {
  if (!m.square()) throw InternalError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMat inv = RatMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

// Minimal positive integer diagonal T with T*B skew-symmetric, if one exists.
// Minimality is per connected component of the off-diagonal support graph;
// isolated indices get 1.
inline std::optional<std::vector<Int>> find_symmetrizer(const RatMat& b) {
  if (!b.square()) return std::nullopt;
  const std::size_t n = b.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (b(i, i) != 0) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      if ((b(i, j) == 0) != (b(j, i) == 0)) return std::nullopt;
      if (b(i, j) != 0 && ((b(i, j) > 0) == (b(j, i) > 0))) return std::nullopt;
    }
  }
  std::vector<Rat> t(n, Rat(0));
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    const int cid = ncomp++;
    comp[root] = cid;
    t[root] = 1;
    std::vector<std::size_t> stack{root};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (b(i, j) == 0) continue;
        Rat tj = -t[i] * b(i, j) / b(j, i);
        if (comp[j] < 0) {
          comp[j] = cid;
          t[j] = tj;
          stack.push_back(j);
        } else if (t[j] != tj) {
          return std::nullopt;  // inconsistent cycle
        }
      }
    }
    // scale this component to minimal positive integers
    Int l = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == cid) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t[i].get_den().get_mpz_t());
    Int g = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == cid) {
        t[i] *= Rat(l);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t[i].get_num().get_mpz_t());
      }
    for (std::size_t i = 0; i < n; ++i)
      if (comp[i] == cid) t[i] /= Rat(g);
  }
  std::vector<Int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i] <= 0 || t[i].get_den() != 1) return std::nullopt;
    out[i] = t[i].get_num();
  }
  // full verification
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (Rat(out[i]) * b(i, j) != -Rat(out[j]) * b(j, i)) return std::nullopt;
  return out;
}

// The default balancing diagonal: (prod of degrees) * T * R^{-1}.
inline std::vector<Int> skew_balance(const std::vector<Int>& t, const std::vector<Int>& r) {
  if (t.size() != r.size()) throw ConfigError("symmetrizer and degree vectors differ in size");
  Int prod = 1;
  for (const Int& ri : r) {
    if (ri <= 0) throw ConfigError("mutation degrees must be positive");
    prod *= ri;
  }
  std::vector<Int> s(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 0) throw ConfigError("symmetrizer entries must be positive");
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), Int(prod * t[i]).get_mpz_t(), r[i].get_mpz_t());
    if (rem != 0) throw InternalError("balancing diagonal is not integral");
    s[i] = q;
  }
  return s;
}

}  // namespace gencluster
