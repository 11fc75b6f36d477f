#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcm/errors.hpp"
#include "mcm/field.hpp"

namespace mcm {

/// Row-major dense matrix over an exact field.
template <class Field>
class DenseMatrix {
 public:
  using Element = typename Field::Element;

  DenseMatrix() = default;
  DenseMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static DenseMatrix identity(const Field& field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  static DenseMatrix from_ints(const Field& field,
                               const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw UsageError("ragged matrix literal");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Element> column(std::size_t c) const {
    std::vector<Element> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

using Matrix = DenseMatrix<PrimeField>;
using QMatrix = DenseMatrix<RationalField>;
using Vec = std::vector<PrimeField::Element>;

template <class Field>
DenseMatrix<Field> transpose(const DenseMatrix<Field>& m) {
  DenseMatrix<Field> t(m.field(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class Field>
DenseMatrix<Field> operator*(const DenseMatrix<Field>& a, const DenseMatrix<Field>& b) {
  if (a.cols() != b.rows())
    throw UsageError("matrix product shape mismatch: " + std::to_string(a.cols()) + " vs " +
                     std::to_string(b.rows()));
  const Field& f = a.field();
  DenseMatrix<Field> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      auto brow = b.row(k);
      auto crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!f.is_zero(brow[j])) crow[j] = f.add(crow[j], f.mul(aik, brow[j]));
    }
  return c;
}

template <class Field>
DenseMatrix<Field> operator+(const DenseMatrix<Field>& a, const DenseMatrix<Field>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("matrix sum shape mismatch");
  DenseMatrix<Field> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

template <class Field>
DenseMatrix<Field> operator-(const DenseMatrix<Field>& a, const DenseMatrix<Field>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("matrix difference shape mismatch");
  DenseMatrix<Field> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  return c;
}

template <class Field>
DenseMatrix<Field> scale(const DenseMatrix<Field>& a, const typename Field::Element& s) {
  DenseMatrix<Field> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().mul(s, a(i, j));
  return c;
}

template <class Field>
std::vector<typename Field::Element> apply(const DenseMatrix<Field>& a,
                                           std::span<const typename Field::Element> v) {
  if (a.cols() != v.size()) throw UsageError("matrix-vector shape mismatch");
  const Field& f = a.field();
  std::vector<typename Field::Element> out(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    auto acc = f.zero();
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!f.is_zero(r[j]) && !f.is_zero(v[j])) acc = f.add(acc, f.mul(r[j], v[j]));
    out[i] = acc;
  }
  return out;
}

/// Reduced row echelon form together with its pivot columns.
template <class Field>
struct RowEchelon {
  DenseMatrix<Field> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return pivots.size(); }
};

template <class Field>
RowEchelon<Field> rref(DenseMatrix<Field> m) {
  const Field f = m.field();
  RowEchelon<Field> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Field>
std::size_t rank(const DenseMatrix<Field>& m) {
  return rref(m).rank();
}

/// Basis of the right null space as a list of vectors.
template <class Field>
std::vector<std::vector<typename Field::Element>> nullspace_vectors(const DenseMatrix<Field>& m) {
  const Field& f = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<typename Field::Element>> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<typename Field::Element> v(m.cols(), f.zero());
    v[c] = f.one();
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, c));
    out.push_back(std::move(v));
  }
  return out;
}

/// Basis of the right null space; its columns span ker m.
template <class Field>
DenseMatrix<Field> kernel_basis(const DenseMatrix<Field>& m) {
  auto vs = nullspace_vectors(m);
  DenseMatrix<Field> k(m.field(), m.cols(), vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, j) = vs[j][i];
  return k;
}

/// A solution x of m x = b, or nothing when the system is inconsistent.
template <class Field>
std::optional<std::vector<typename Field::Element>> solve(
    const DenseMatrix<Field>& m, std::span<const typename Field::Element> b) {
  if (b.size() != m.rows()) throw UsageError("solve: right-hand side has wrong length");
  const Field& f = m.field();
  DenseMatrix<Field> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<typename Field::Element> x(m.cols(), f.zero());
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

/// Solves m X = rhs column by column; nothing when some column is
/// outside the column space of m.
template <class Field>
std::optional<DenseMatrix<Field>> solve(const DenseMatrix<Field>& m, const DenseMatrix<Field>& rhs) {
  if (rhs.rows() != m.rows()) throw UsageError("solve: row counts differ");
  DenseMatrix<Field> x(m.field(), m.cols(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    auto col = rhs.column(j);
    auto s = solve(m, std::span<const typename Field::Element>(col));
    if (!s) return std::nullopt;
    for (std::size_t i = 0; i < m.cols(); ++i) x(i, j) = (*s)[i];
  }
  return x;
}

template <class Field>
std::optional<DenseMatrix<Field>> inverse(const DenseMatrix<Field>& m) {
  if (m.rows() != m.cols()) throw UsageError("inverse of a non-square matrix");
  const Field& f = m.field();
  std::size_t n = m.rows();
  DenseMatrix<Field> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  DenseMatrix<Field> inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// Incrementally built subspace basis in semi-echelon form. Each stored
/// row has a pivot at which all later rows vanish; reducing a vector
/// against the rows in insertion order clears every pivot coordinate and
/// gives a canonical representative modulo the span.
template <class Field>
class EchelonBasis {
 public:
  using Element = typename Field::Element;

  EchelonBasis() = default;
  EchelonBasis(Field field, std::size_t ambient)
      : field_(std::move(field)), ambient_(ambient), pivot_row_(ambient, npos) {}

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<std::vector<Element>>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_pivot(std::size_t c) const { return pivot_row_[c] != npos; }

  void reduce(std::span<Element> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      auto c = v[pivots_[k]];
      if (field_.is_zero(c)) continue;
      const auto& r = rows_[k];
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!field_.is_zero(r[j])) v[j] = field_.sub(v[j], field_.mul(c, r[j]));
    }
  }

  /// Reduces v and records the coefficients used, so that
  /// original = reduced + sum coeffs[k] * rows()[k].
  std::vector<Element> reduce_with_coefficients(std::span<Element> v) const {
    std::vector<Element> coeffs(rows_.size(), field_.zero());
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      auto c = v[pivots_[k]];
      if (field_.is_zero(c)) continue;
      coeffs[k] = c;
      const auto& r = rows_[k];
      for (std::size_t j = 0; j < ambient_; ++j)
        if (!field_.is_zero(r[j])) v[j] = field_.sub(v[j], field_.mul(c, r[j]));
    }
    return coeffs;
  }

  bool contains(std::span<const Element> v) const {
    std::vector<Element> w(v.begin(), v.end());
    reduce(w);
    for (const auto& x : w)
      if (!field_.is_zero(x)) return false;
    return true;
  }

  /// Adds v to the span; returns false when v was already inside it.
  bool insert(std::vector<Element> v) {
    if (v.size() != ambient_) throw UsageError("EchelonBasis: vector has wrong length");
    reduce(v);
    std::size_t p = 0;
    while (p < ambient_ && field_.is_zero(v[p])) ++p;
    if (p == ambient_) return false;
    auto inv = field_.inv(v[p]);
    for (auto& x : v) x = field_.mul(x, inv);
    pivot_row_[p] = rows_.size();
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    return true;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Field field_{};
  std::size_t ambient_ = 0;
  std::vector<std::vector<Element>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
};

inline bool is_zero_vec(std::span<const PrimeField::Element> v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

/// Adds c * src to dst over GF(p).
inline void axpy(const PrimeField& f, PrimeField::Element c, std::span<const PrimeField::Element> src,
                 std::span<PrimeField::Element> dst) {
  if (c == 0) return;
  for (std::size_t i = 0; i < src.size(); ++i)
    if (src[i] != 0) dst[i] = f.add(dst[i], f.mul(c, src[i]));
}

}  // namespace mcm
