#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hopfhom/matrix.hpp"

namespace hopfhom {

template <FieldScalar K>
struct Echelon {
  Matrix<K> rref;                  // reduced row-echelon form, zero rows dropped
  std::vector<std::size_t> pivots; // pivot column per surviving row
};

// Gauss-Jordan with leftmost-pivot tie-breaking.  This is the single source
// of canonical forms: two spans are equal iff their RREFs are equal.
template <FieldScalar K>
Echelon<K> row_echelon(Matrix<K> m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && m(pr, c).is_zero()) ++pr;
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(pr, j));
    const K inv = m(r, c).inv();
    for (std::size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<K> out;
  out.rref = m.submatrix(0, 0, r, cols);
  out.pivots = std::move(pivots);
  return out;
}

// A linear subspace of k^n in canonical form (RREF basis rows).
template <FieldScalar K>
class Subspace {
 public:
  Subspace() : ambient_(0), basis_(0, 0) {}

  static Subspace zero(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<K>(0, ambient);
    return s;
  }
  static Subspace full(std::size_t ambient) {
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<K>::identity(ambient);
    return s;
  }
  // Span of the rows of `rows`.
  static Subspace from_rows(const Matrix<K>& rows) {
    Subspace s;
    s.ambient_ = rows.cols();
    s.basis_ = row_echelon(rows).rref;
    return s;
  }
  // Span of the columns of `cols` (e.g. the image of a map).
  static Subspace from_cols(const Matrix<K>& cols) { return from_rows(cols.transpose()); }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<K>& basis_rows() const { return basis_; }

  // The inclusion map k^dim -> k^ambient (columns are basis vectors).
  Matrix<K> embedding() const { return basis_.transpose(); }

  // A left inverse of embedding(): reads off the pivot coordinates.  For
  // v in the subspace, embedding() * coords(v) == v.
  Matrix<K> coords_projection() const {
    const auto piv = pivot_columns();
    Matrix<K> p(dim(), ambient_);
    for (std::size_t i = 0; i < piv.size(); ++i) p(i, piv[i]) = K::one();
    return p;
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> piv;
    for (std::size_t r = 0; r < basis_.rows(); ++r)
      for (std::size_t c = 0; c < ambient_; ++c)
        if (!basis_(r, c).is_zero()) {
          piv.push_back(c);
          break;
        }
    return piv;
  }

  bool contains(const Matrix<K>& col_vec) const {
    if (col_vec.rows() != ambient_ || col_vec.cols() != 1)
      throw std::invalid_argument("Subspace::contains: expected ambient column vector");
    std::vector<K> v(ambient_);
    for (std::size_t i = 0; i < ambient_; ++i) v[i] = col_vec(i, 0);
    reduce_against_basis(v);
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  bool contains(const Subspace& other) const {
    check_ambient(other);
    for (std::size_t r = 0; r < other.basis_.rows(); ++r)
      if (!contains(other.basis_.row(r).transpose())) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    return from_rows(a.basis_.vcat(b.basis_));
  }

  // Zassenhaus: RREF of [A|A; B|0]; rows with zero left block span A cap B
  // in the right block.
  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    a.check_ambient(b);
    const std::size_t n = a.ambient_;
    Matrix<K> top = a.basis_.hcat(a.basis_);
    Matrix<K> bot = b.basis_.hcat(Matrix<K>(b.basis_.rows(), n));
    Echelon<K> e = row_echelon(top.vcat(bot));
    std::vector<std::vector<K>> rows;
    for (std::size_t r = 0; r < e.rref.rows(); ++r) {
      bool left_zero = true;
      for (std::size_t c = 0; c < n && left_zero; ++c)
        if (!e.rref(r, c).is_zero()) left_zero = false;
      if (!left_zero) continue;
      std::vector<K> v(n);
      for (std::size_t c = 0; c < n; ++c) v[c] = e.rref(r, n + c);
      rows.push_back(std::move(v));
    }
    return from_rows(Matrix<K>::from_rows(n, rows));
  }

  // Orthogonal complement w.r.t. the standard bilinear form: the null space
  // of the basis-row matrix.  dim + dim-perp = ambient.
  Subspace perp() const;

  // Quotient data for k^ambient / this: `proj` sends a vector to the
  // coordinates of its class w.r.t. the complement basis (standard basis
  // vectors at non-pivot columns), `section` embeds those representatives.
  struct Quotient {
    Matrix<K> proj;     // (ambient - dim) x ambient
    Matrix<K> section;  // ambient x (ambient - dim)
    std::size_t dim = 0;
  };
  Quotient quotient() const {
    const auto piv = pivot_columns();
    std::vector<bool> is_piv(ambient_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> comp;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (!is_piv[c]) comp.push_back(c);

    Quotient q;
    q.dim = comp.size();
    q.section = Matrix<K>(ambient_, comp.size());
    for (std::size_t j = 0; j < comp.size(); ++j) q.section(comp[j], j) = K::one();

    // Class coordinates: subtract the basis-row combination that clears the
    // pivot coordinates, then read the complement coordinates.
    // For v: coeffs = pivot coords of v; class-rep = v - basis^T coeffs.
    q.proj = Matrix<K>(comp.size(), ambient_);
    for (std::size_t col = 0; col < ambient_; ++col) {
      std::vector<K> v(ambient_);
      v[col] = K::one();
      reduce_against_basis(v);
      for (std::size_t j = 0; j < comp.size(); ++j) q.proj(j, col) = v[comp[j]];
    }
    return q;
  }

  // Deterministic total order (by dimension, then basis entries).
  friend int cmp(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_ ? -1 : 1;
    if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
    for (std::size_t r = 0; r < a.basis_.rows(); ++r)
      for (std::size_t c = 0; c < a.ambient_; ++c) {
        const int s = cmp(a.basis_(r, c), b.basis_(r, c));
        if (s != 0) return s;
      }
    return 0;
  }

 private:
  void check_ambient(const Subspace& other) const {
    if (ambient_ != other.ambient_)
      throw std::invalid_argument("Subspace: ambient dimension mismatch");
  }
  void reduce_against_basis(std::vector<K>& v) const {
    const auto piv = pivot_columns();
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      const K f = v[piv[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < ambient_; ++c) v[c] -= f * basis_(r, c);
    }
  }

  std::size_t ambient_;
  Matrix<K> basis_;
};

template <FieldScalar K>
struct RankKernelImage {
  std::size_t rank = 0;
  Subspace<K> kernel;  // subspace of the domain k^cols
  Subspace<K> image;   // subspace of the codomain k^rows
};

// Exact rank, null space and column space of a matrix.
template <FieldScalar K>
RankKernelImage<K> rank_kernel_image(const Matrix<K>& m) {
  RankKernelImage<K> out;
  Echelon<K> e = row_echelon(m);
  out.rank = e.rref.rows();
  out.image = Subspace<K>::from_cols(m);

  // Null space from the RREF: one generator per free column.
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : e.pivots) is_piv[c] = true;
  std::vector<std::vector<K>> gens;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_piv[c]) continue;
    std::vector<K> v(m.cols());
    v[c] = K::one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, c);
    gens.push_back(std::move(v));
  }
  out.kernel = Subspace<K>::from_rows(Matrix<K>::from_rows(m.cols(), gens));
  return out;
}

template <FieldScalar K>
Subspace<K> Subspace<K>::perp() const {
  return rank_kernel_image(basis_).kernel;
}

// Solves A x = b exactly; returns the RREF-canonical particular solution or
// nullopt when inconsistent.
template <FieldScalar K>
std::optional<Matrix<K>> solve(const Matrix<K>& a, const Matrix<K>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
  Echelon<K> e = row_echelon(a.hcat(b));
  Matrix<K> x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.rref.rows(); ++r) {
    const std::size_t p = e.pivots[r];
    if (p >= a.cols()) return std::nullopt;  // pivot in the RHS block: inconsistent
    for (std::size_t c = 0; c < b.cols(); ++c) x(p, c) = e.rref(r, a.cols() + c);
  }
  return x;
}

// Inverse of a square matrix, or nullopt if singular.
template <FieldScalar K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  Echelon<K> e = row_echelon(m.hcat(Matrix<K>::identity(m.rows())));
  if (e.rref.rows() != m.rows()) return std::nullopt;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (e.pivots[r] != r) return std::nullopt;
  return e.rref.submatrix(0, m.cols(), m.rows(), m.cols());
}

}  // namespace hopfhom
