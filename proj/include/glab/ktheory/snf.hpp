#pragma once

#include "glab/error.hpp"
#include "glab/exact/qphi.hpp"

#include <string>
#include <vector>

namespace glab {

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw PreconditionError("ragged matrix literal");
      for (auto v : r) a_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix dimensions do not match for a product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  std::vector<Integer> apply(const std::vector<Integer>& v) const {
    if (v.size() != cols_) throw PreconditionError("vector length does not match the matrix");
    std::vector<Integer> out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && (*this)(i, j) != 0) return false;
    return true;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  /// row_i += q row_j
  void add_row(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += q * (*this)(j, c);
  }
  /// col_i += q col_j
  void add_col(std::size_t i, std::size_t j, const Integer& q) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += q * (*this)(r, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw PreconditionError("determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix d;
  IntMatrix p;  // rows x rows, unimodular
  IntMatrix q;  // cols x cols, unimodular

  /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
  std::vector<Integer> invariants() const {
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
      if (d(i, i) != 0) out.push_back(d(i, i));
    return out;
  }
};

/// P M Q = D with D diagonal, positive nonzero entries first, each dividing the next.
/// The result is checked before it is returned.
inline SmithForm snf(const IntMatrix& m) {
  IntMatrix d = m, p = IntMatrix::identity(m.rows()), q = IntMatrix::identity(m.cols());
  const std::size_t r = m.rows(), c = m.cols();
  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (d(i, j) != 0 && (pi == r || abs(d(i, j)) < abs(d(pi, pj)))) pi = i, pj = j;
      if (pi == r) goto done;
      if (pi != t) d.swap_rows(t, pi), p.swap_rows(t, pi);
      if (pj != t) d.swap_cols(t, pj), q.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        const Integer k = d(i, t) / d(t, t);
        d.add_row(i, t, -k), p.add_row(i, t, -k);
        clean = clean && d(i, t) == 0;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        const Integer k = d(t, j) / d(t, t);
        d.add_col(j, t, -k), q.add_col(j, t, -k);
        clean = clean && d(t, j) == 0;
      }
      if (!clean) continue;
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (d(i, j) % d(t, t) != 0) { bad = i; break; }
      if (bad == r) break;
      d.add_row(t, bad, 1), p.add_row(t, bad, 1);
    }
    // sign fixed on the column side, so P (and unit coordinates) are untouched
    if (d(t, t) < 0) d.negate_col(t), q.negate_col(t);
  }
done:
  if (!(p * m * q == d) || !d.is_diagonal()) throw Error("internal: Smith form check failed for " + m.to_string());
  if (abs(determinant(p)) != 1 || abs(determinant(q)) != 1) throw Error("internal: Smith transform is not unimodular");
  return {std::move(d), std::move(p), std::move(q)};
}

}  // namespace glab
