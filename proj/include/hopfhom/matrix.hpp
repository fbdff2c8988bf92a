#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfhom/field.hpp"

namespace hopfhom {

// Dense exact matrix.  Conventions used throughout the project:
//   * vectors are columns; a linear map V -> W is a (dim W x dim V) matrix,
//     composition of maps is matrix multiplication;
//   * the basis of V (x) W is indexed i*dimW + j for e_i (x) f_j, so the
//     matrix of f (x) g is kron(F, G).
template <FieldScalar K>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = K::one();
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  // Standard basis column vector e_i in dimension n.
  static Matrix basis_col(std::size_t n, std::size_t i) {
    Matrix m(n, 1);
    m(i, 0) = K::one();
    return m;
  }
  // The flip V (x) W -> W (x) V, v (x) w -> w (x) v.
  static Matrix swap(std::size_t dim_v, std::size_t dim_w) {
    Matrix m(dim_v * dim_w, dim_v * dim_w);
    for (std::size_t i = 0; i < dim_v; ++i)
      for (std::size_t j = 0; j < dim_w; ++j) m(j * dim_v + i, i * dim_w + j) = K::one();
    return m;
  }
  static Matrix from_rows(std::size_t cols, const std::vector<std::vector<K>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  K& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const K& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
  K& at(std::size_t r, std::size_t c) {
    check_index(r, c);
    return (*this)(r, c);
  }
  const K& at(std::size_t r, std::size_t c) const {
    check_index(r, c);
    return (*this)(r, c);
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Matrix operator-() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = -e_[i];
    return m;
  }
  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o, "+");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o, "-");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix scaled(const K& s) const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  // First entry where the two matrices differ, as (row, col).
  friend std::optional<std::pair<std::size_t, std::size_t>> first_diff(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return std::make_pair(std::size_t{0}, std::size_t{0});
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < a.cols_; ++c)
        if (a(r, c) != b(r, c)) return std::make_pair(r, c);
    return std::nullopt;
  }

  // Stacks rows of `o` below this matrix.
  Matrix vcat(const Matrix& o) const {
    if (cols_ != o.cols_) throw std::invalid_argument("Matrix::vcat: column mismatch");
    Matrix m(rows_ + o.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < o.rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(rows_ + r, c) = o(r, c);
    return m;
  }
  Matrix hcat(const Matrix& o) const {
    if (rows_ != o.rows_) throw std::invalid_argument("Matrix::hcat: row mismatch");
    Matrix m(rows_, cols_ + o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
      for (std::size_t c = 0; c < o.cols_; ++c) m(r, cols_ + c) = o(r, c);
    }
    return m;
  }
  Matrix row(std::size_t r) const {
    Matrix m(1, cols_);
    for (std::size_t c = 0; c < cols_; ++c) m(0, c) = (*this)(r, c);
    return m;
  }
  Matrix col(std::size_t c) const {
    Matrix m(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) m(r, 0) = (*this)(r, c);
    return m;
  }
  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    Matrix m(nrows, ncols);
    for (std::size_t r = 0; r < nrows; ++r)
      for (std::size_t c = 0; c < ncols; ++c) m(r, c) = at(r0 + r, c0 + c);
    return m;
  }

  std::string str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      s += "[";
      for (std::size_t c = 0; c < cols_; ++c) {
        if (c) s += ", ";
        s += (*this)(r, c).str();
      }
      s += "]\n";
    }
    return s;
  }

  const std::vector<K>& data() const { return e_; }
  std::vector<K>& data() { return e_; }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("Matrix: index out of range");
  }
  void check_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("Matrix: shape mismatch in ") + op);
  }

  std::size_t rows_, cols_;
  std::vector<K> e_;
};

namespace kernels {

// Serial reference implementations.  Kept deliberately plain; the unit tests
// check the OpenMP kernels against these on random inputs.
template <FieldScalar K>
Matrix<K> mul_serial(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: inner dimension mismatch");
  Matrix<K> out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const K& av = a(r, k);
      if (av.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) {
        const K& bv = b(k, c);
        if (!bv.is_zero()) out(r, c) += av * bv;
      }
    }
  return out;
}

// Nonzero entries of each row, shared by the product kernels below.  Most
// matrices here are structure-constant assemblies and extremely sparse, so
// one linear scan beats repeated dense inner loops.
template <FieldScalar K>
std::vector<std::vector<std::pair<std::size_t, const K*>>> row_nonzeros(const Matrix<K>& m) {
  std::vector<std::vector<std::pair<std::size_t, const K*>>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const K& v = m(r, c);
      if (!v.is_zero()) rows[r].emplace_back(c, &v);
    }
  return rows;
}

template <FieldScalar K>
Matrix<K> kron_serial(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const K& av = a(ra, ca);
      if (av.is_zero()) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
          const K& bv = b(rb, cb);
          if (!bv.is_zero()) out(ra * b.rows() + rb, ca * b.cols() + cb) = av * bv;
        }
    }
  return out;
}

// OpenMP kernels.  Each output row is owned by exactly one iteration, so the
// result is entry-for-entry identical to the serial reference.
template <FieldScalar K>
Matrix<K> mul_omp(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: inner dimension mismatch");
  Matrix<K> out(a.rows(), b.cols());
  const auto brows = row_nonzeros(b);
  const std::int64_t nr = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static) if (nr >= 64)
  for (std::int64_t r = 0; r < nr; ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const K& av = a(static_cast<std::size_t>(r), k);
      if (av.is_zero()) continue;
      for (const auto& [c, bv] : brows[k]) out(static_cast<std::size_t>(r), c) += av * *bv;
    }
  }
  return out;
}

template <FieldScalar K>
Matrix<K> kron_omp(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::int64_t nra = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t ra = 0; ra < nra; ++ra) {
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const K& av = a(static_cast<std::size_t>(ra), ca);
      if (av.is_zero()) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
          const K& bv = b(rb, cb);
          if (!bv.is_zero())
            out(static_cast<std::size_t>(ra) * b.rows() + rb, ca * b.cols() + cb) = av * bv;
        }
    }
  }
  return out;
}

}  // namespace kernels

template <FieldScalar K>
Matrix<K> operator*(const Matrix<K>& a, const Matrix<K>& b) {
  return kernels::mul_omp(a, b);
}

// Reorders the tensor legs that index the rows of a matrix: the row whose
// legs read (i_{ord[0]}, ..., i_{ord[k-1]}) in the output is the input row
// with legs (i_0, ..., i_{k-1}).  Equivalent to multiplying by the
// corresponding permutation matrix, without materializing it.
template <FieldScalar K>
Matrix<K> permute_row_legs(const Matrix<K>& m, const std::vector<std::size_t>& dims,
                           const std::vector<std::size_t>& ord) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  if (total != m.rows()) throw std::invalid_argument("permute_row_legs: leg dims do not match rows");
  if (ord.size() != dims.size()) throw std::invalid_argument("permute_row_legs: bad order");
  const std::size_t k = dims.size();
  Matrix<K> out(m.rows(), m.cols());
  std::vector<std::size_t> legs(k);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::size_t rest = r;
    for (std::size_t i = k; i-- > 0;) {
      legs[i] = rest % dims[i];
      rest /= dims[i];
    }
    std::size_t out_r = 0;
    for (std::size_t j = 0; j < k; ++j) out_r = out_r * dims[ord[j]] + legs[ord[j]];
    for (std::size_t c = 0; c < m.cols(); ++c) out(out_r, c) = m(r, c);
  }
  return out;
}

template <FieldScalar K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b) {
  return kernels::kron_omp(a, b);
}

template <FieldScalar K>
Matrix<K> kron(const Matrix<K>& a, const Matrix<K>& b, const Matrix<K>& c) {
  return kron(kron(a, b), c);
}

}  // namespace hopfhom
