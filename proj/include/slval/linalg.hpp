#pragma once

// Exact vectors and matrices over Scalar, fraction-free determinants and
// seeded generation of SL(n) elements.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "slval/error.hpp"
#include "slval/exactnum.hpp"

namespace slval {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t n) : c_(n) {}
  explicit Vector(std::vector<Scalar> coords) : c_(std::move(coords)) {}
  Vector(std::initializer_list<Scalar> coords) : c_(coords) {}

  static Vector unit(std::size_t n, std::size_t i) {
    Vector v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const noexcept { return c_.size(); }
  Scalar& operator[](std::size_t i) { return c_[i]; }
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }
  const std::vector<Scalar>& coords() const noexcept { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Scalar& x) { return x.is_zero(); });
  }

  Vector operator-() const {
    Vector r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = -c_[i];
    return r;
  }

  friend Vector operator+(const Vector& x, const Vector& y) {
    check_same(x, y);
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
  }

  friend Vector operator-(const Vector& x, const Vector& y) {
    check_same(x, y);
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
  }

  friend Vector operator*(const Scalar& s, const Vector& x) {
    Vector r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = s * x[i];
    return r;
  }

  friend Scalar dot(const Vector& x, const Vector& y) {
    check_same(x, y);
    Scalar s;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i].is_zero() && !y[i].is_zero()) s += x[i] * y[i];
    }
    return s;
  }

  friend bool operator==(const Vector&, const Vector&) = default;

  // Lexicographic by exact real value.
  friend std::strong_ordering operator<=>(const Vector& x, const Vector& y) {
    const std::size_t m = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (auto c = x[i] <=> y[i]; c != 0) return c;
    }
    return x.size() <=> y.size();
  }

 private:
  static void check_same(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw GeometryError("vector dimension mismatch");
  }
  std::vector<Scalar> c_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw GeometryError("ragged matrix literal");
      e_.insert(e_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(std::span<const Vector> rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw GeometryError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(std::span<const Vector> cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw GeometryError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    Vector r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw GeometryError("matrix product dimension mismatch");
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Scalar& a = x(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          if (!y(k, j).is_zero()) r(i, j) += a * y(k, j);
        }
      }
    }
    return r;
  }

  friend Vector operator*(const Matrix& m, const Vector& v) {
    if (m.cols_ != v.size()) throw GeometryError("matrix-vector dimension mismatch");
    Vector r(m.rows_);
    for (std::size_t i = 0; i < m.rows_; ++i) {
      Scalar s;
      for (std::size_t j = 0; j < m.cols_; ++j) {
        if (!m(i, j).is_zero() && !v[j].is_zero()) s += m(i, j) * v[j];
      }
      r[i] = std::move(s);
    }
    return r;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> e_;
};

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// division is exact, so entries stay minors of the input.
inline Scalar det(const Matrix& m) {
  if (!m.is_square()) throw GeometryError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Scalar(1);
  Matrix a = m;
  Scalar prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return Scalar(0);
      a.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = Scalar(0);
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

namespace detail {

// Reduced row echelon form in place; returns pivot columns. Columns at index
// >= `limit` are carried along but never chosen as pivots.
inline std::vector<std::size_t> rref(Matrix& a, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    const Scalar inv = Scalar(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) {
      if (!a(r, j).is_zero()) a(r, j) *= inv;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Scalar f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) {
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(const Matrix& m) {
  Matrix a = m;
  return detail::rref(a, a.cols()).size();
}

/// Basis of {w : m w = 0}.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  Matrix a = m;
  const auto pivots = detail::rref(a, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector w(a.cols());
    w[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) w[pivots[r]] = -a(r, f);
    basis.push_back(std::move(w));
  }
  return basis;
}

/// Unique x with m x = rhs; throws SingularMatrix carrying rank(m) otherwise.
inline Vector solve(const Matrix& m, const Vector& rhs) {
  if (!m.is_square() || rhs.size() != m.rows()) throw GeometryError("solve: dimension mismatch");
  const std::size_t n = m.rows();
  Matrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n) = rhs[i];
  }
  const auto pivots = detail::rref(a, n);
  if (pivots.size() < n) throw SingularMatrix(pivots.size());
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a(i, n);
  return x;
}

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw GeometryError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const Vector col = solve(m, Vector::unit(n, c));
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = col[r];
  }
  return inv;
}

/// Dimension of the affine hull of a nonempty point list.
inline std::size_t affine_rank(std::span<const Vector> points) {
  if (points.empty()) throw GeometryError("affine_rank of an empty point list");
  const std::size_t n = points.front().size();
  std::vector<Vector> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points.front());
  if (diffs.empty()) return 0;
  return rank(Matrix::from_rows(diffs, n));
}

/// Deterministic integer source. The range mapping is done by hand so that
/// sequences do not depend on the standard library's distribution code.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  /// Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1)); }
  bool coin() { return (engine_() & 1u) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Product of `steps` elementary shears I + lambda*E_ij (i != j) with
/// lambda = p/q, 0 < |p| <= bound, 1 <= q <= bound. det = 1 by construction.
inline Matrix random_sl_matrix(std::uint64_t seed, std::size_t n, std::size_t steps, std::int64_t bound = 5) {
  if (n < 2) throw GeometryError("random_sl_matrix requires n >= 2");
  if (bound < 1) throw GeometryError("random_sl_matrix requires bound >= 1");
  SeededRng rng(seed, 0x534c4d41ull);
  Matrix m = Matrix::identity(n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.index(n);
    std::size_t j = rng.index(n - 1);
    if (j >= i) ++j;
    std::int64_t p = rng.uniform(1, bound);
    if (rng.coin()) p = -p;
    const std::int64_t q = rng.uniform(1, bound);
    const Scalar lambda = Scalar::fraction(p, q);
    // m <- m * (I + lambda E_ij): column j gains lambda * column i.
    for (std::size_t r = 0; r < n; ++r) {
      if (!m(r, i).is_zero()) m(r, j) += lambda * m(r, i);
    }
  }
  return m;
}

}  // namespace slval
