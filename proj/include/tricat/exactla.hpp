#pragma once

// Exact dense linear algebra over a prime field F_p or the rationals.
//
// Everything here is templated on a field policy type exposing
//   value_type, zero(), one(), add, sub, neg, mul, inv, is_zero, equal.
// Matrices are row-major and carry a copy of their field.

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tricat::la {

class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = 2) : p_(p) {
    if (!is_prime(p)) {
      throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
    }
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

  std::uint32_t characteristic() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1U) result = (result * base) % p_;
      base = (base * base) % p_;
      e >>= 1U;
    }
    return static_cast<value_type>(result);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  value_type from_int(std::int64_t v) const {
    std::int64_t m = v % static_cast<std::int64_t>(p_);
    if (m < 0) m += p_;
    return static_cast<value_type>(m);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

// Exact fractions; boost::rational keeps the sign on the numerator and
// the terms gcd-reduced.
// Mixed int/rational comparisons recurse under C++20 operator rewriting,
// so zero tests go through the numerator.
class RationalField {
 public:
  using value_type = boost::rational<std::int64_t>;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a.numerator() == 0) throw std::domain_error("inverse of zero");
    return value_type(1) / a;
  }
  bool is_zero(const value_type& a) const { return a.numerator() == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  value_type from_int(std::int64_t v) const { return value_type(v); }

  bool operator==(const RationalField&) const { return true; }
};

template <class F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}
  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count mismatch");
  }

  static Matrix identity(const F& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<value_type>& data() const { return data_; }

  value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<value_type> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }
  std::vector<value_type> col(std::size_t c) const {
    std::vector<value_type> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  void set_col(std::size_t c, const std::vector<value_type>& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!field_.is_zero(x)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<value_type> apply(const std::vector<value_type>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<value_type> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      value_type acc = field_.zero();
      for (std::size_t c = 0; c < cols_; ++c) {
        const auto& a = (*this)(r, c);
        if (!field_.is_zero(a) && !field_.is_zero(v[c])) acc = field_.add(acc, field_.mul(a, v[c]));
      }
      out[r] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product dimension mismatch");
    Matrix out(a.field_, a.rows_, b.cols_);
    const F& k = a.field_;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const auto& x = a(i, l);
        if (k.is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!k.is_zero(b(l, j))) out(i, j) = k.add(out(i, j), k.mul(x, b(l, j)));
        }
      }
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference dimension mismatch");
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Stack rows of `below` under this matrix.
  Matrix vstack(const Matrix& below) const {
    if (below.cols_ != cols_) throw std::invalid_argument("vstack column mismatch");
    Matrix out(field_, rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
  }

  Matrix hstack(const Matrix& right) const {
    if (right.rows_ != rows_) throw std::invalid_argument("hstack row mismatch");
    Matrix out(field_, rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
      for (std::size_t c = 0; c < right.cols_; ++c) out(r, cols_ + c) = right(r, c);
    }
    return out;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <class F>
struct Echelon {
  std::size_t rank = 0;
  Matrix<F> rref;  // same shape as the input; rows past `rank` are zero
  std::vector<std::size_t> pivots;
};

// Reduced row-echelon form by Gauss-Jordan elimination.
template <class F>
Echelon<F> rank_and_echelon(Matrix<F> m) {
  const F& k = m.field();
  Echelon<F> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && k.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    }
    const auto scale = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!k.is_zero(m(r, j))) m(i, j) = k.sub(m(i, j), k.mul(factor, m(r, j)));
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rref = std::move(m);
  return out;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  return rank_and_echelon(m).rank;
}

// A subspace of F^n stored by its canonical reduced echelon basis, so two
// equal subspaces compare equal representation-wise.
template <class F>
class Subspace {
 public:
  using value_type = typename F::value_type;
  using Vector = std::vector<value_type>;

  Subspace() = default;
  Subspace(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

  static Subspace span(const F& field, std::size_t ambient, const std::vector<Vector>& vectors) {
    Subspace s(field, ambient);
    if (vectors.empty()) return s;
    Matrix<F> m(field, vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient) throw std::invalid_argument("subspace vector dimension mismatch");
      for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
    }
    auto e = rank_and_echelon(std::move(m));
    for (std::size_t i = 0; i < e.rank; ++i) s.basis_.push_back(e.rref.row(i));
    s.pivots_ = e.pivots;
    return s;
  }

  static Subspace full(const F& field, std::size_t ambient) {
    std::vector<Vector> unit;
    for (std::size_t i = 0; i < ambient; ++i) {
      Vector v(ambient, field.zero());
      v[i] = field.one();
      unit.push_back(std::move(v));
    }
    return span(field, ambient, unit);
  }

  const F& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // The unique element of v + U vanishing at every pivot position of U.
  Vector coset_representative(Vector v) const {
    check_dim(v.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        if (!field_.is_zero(basis_[i][j])) v[j] = field_.sub(v[j], field_.mul(c, basis_[i][j]));
      }
    }
    return v;
  }

  bool contains(const Vector& v) const {
    auto r = coset_representative(v);
    for (const auto& x : r) {
      if (!field_.is_zero(x)) return false;
    }
    return true;
  }

  bool contains(const Subspace& other) const {
    for (const auto& b : other.basis_) {
      if (!contains(b)) return false;
    }
    return true;
  }

  // Coordinates of v (which must lie in U) with respect to the echelon basis.
  Vector coordinates(const Vector& v) const {
    check_dim(v.size());
    Vector c(basis_.size(), field_.zero());
    for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  // Positions not occupied by pivots; unit vectors there span a complement.
  std::vector<std::size_t> free_positions() const {
    std::vector<std::size_t> out;
    std::size_t p = 0;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (p < pivots_.size() && pivots_[p] == j) {
        ++p;
      } else {
        out.push_back(j);
      }
    }
    return out;
  }

  friend Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_ != v.ambient_) throw std::invalid_argument("subspace ambient dimension mismatch");
    std::vector<Vector> all = u.basis_;
    all.insert(all.end(), v.basis_.begin(), v.basis_.end());
    return span(u.field_, u.ambient_, all);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  void check_dim(std::size_t n) const {
    if (n != ambient_) throw std::invalid_argument("vector does not match subspace ambient dimension");
  }

  F field_{};
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

template <class F>
Subspace<F> nullspace(const Matrix<F>& a) {
  const F& k = a.field();
  auto e = rank_and_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<typename Subspace<F>::Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    typename Subspace<F>::Vector v(a.cols(), k.zero());
    v[free] = k.one();
    for (std::size_t i = 0; i < e.rank; ++i) v[e.pivots[i]] = k.neg(e.rref(i, free));
    basis.push_back(std::move(v));
  }
  return Subspace<F>::span(k, a.cols(), basis);
}

template <class F>
Subspace<F> column_space(const Matrix<F>& a) {
  std::vector<typename Subspace<F>::Vector> cols;
  for (std::size_t c = 0; c < a.cols(); ++c) cols.push_back(a.col(c));
  return Subspace<F>::span(a.field(), a.rows(), cols);
}

template <class F>
struct Solution {
  typename Subspace<F>::Vector particular;
  Subspace<F> nullspace;
};

// Solve A x = b. An inconsistent system yields std::nullopt.
template <class F>
std::optional<Solution<F>> solve(const Matrix<F>& a, const typename Subspace<F>::Vector& b) {
  const F& k = a.field();
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side dimension mismatch");
  Matrix<F> aug(k, a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto e = rank_and_echelon(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  typename Subspace<F>::Vector x(a.cols(), k.zero());
  for (std::size_t i = 0; i < e.rank; ++i) x[e.pivots[i]] = e.rref(i, a.cols());
  return Solution<F>{std::move(x), nullspace(a)};
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  auto e = rank_and_echelon(a.hstack(Matrix<F>::identity(a.field(), n)));
  if (e.rank < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix<F> inv(a.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.rref(r, n + c);
  return inv;
}

}  // namespace tricat::la
