#pragma once

#include <optional>
#include <string>

#include "hopfhom/check.hpp"
#include "hopfhom/subspace.hpp"
#include "hopfhom/tensor.hpp"

namespace hopfhom {

// A finite-dimensional Hopf algebra by structure constants.
//   mult(i,j,k):   e_i e_j = sum_k mult(i,j,k) e_k
//   comult(i,j,k): Delta e_i = sum_{j,k} comult(i,j,k) e_j (x) e_k
//   unit:          coefficients of 1 (column)
//   counit:        row functional
//   antipode:      column-action matrix, S e_j = sum_i antipode(i,j) e_i
template <FieldScalar K>
struct FinHopfAlgebra {
  std::string name;
  std::size_t dim = 0;
  std::vector<std::string> basis_labels;
  Tensor3<K> mult;
  Matrix<K> unit;
  Tensor3<K> comult;
  Matrix<K> counit;
  Matrix<K> antipode;

  // Multiplication as a map V (x) V -> V, column index i*dim + j.
  Matrix<K> mult_matrix() const {
    Matrix<K> m(dim, dim * dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) m(k, i * dim + j) = mult(i, j, k);
    return m;
  }
  // Comultiplication as a map V -> V (x) V, row index j*dim + k.
  Matrix<K> comult_matrix() const {
    Matrix<K> m(dim * dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) m(j * dim + k, i) = comult(i, j, k);
    return m;
  }

  std::string label(std::size_t i) const {
    return i < basis_labels.size() ? basis_labels[i] : "e" + std::to_string(i);
  }

  void check_dims() const {
    const bool ok = mult.dim(0) == dim && mult.dim(1) == dim && mult.dim(2) == dim &&
                    comult.dim(0) == dim && comult.dim(1) == dim && comult.dim(2) == dim &&
                    unit.rows() == dim && unit.cols() == 1 && counit.rows() == 1 &&
                    counit.cols() == dim && antipode.rows() == dim && antipode.cols() == dim;
    if (!ok) throw std::invalid_argument("FinHopfAlgebra '" + name + "': inconsistent tensor dimensions");
  }
};

namespace detail {

template <FieldScalar K>
void add_identity_check(Report& rep, const std::string& name, const Matrix<K>& lhs, const Matrix<K>& rhs,
                        const std::vector<std::size_t>& col_legs) {
  auto diff = first_diff(lhs, rhs);
  if (!diff) {
    rep.add(name, true);
    return;
  }
  const auto [r, c] = *diff;
  rep.add(name, false,
          "fails on basis input " + decode_legs(c, col_legs) + ", output row " + std::to_string(r) +
              ": lhs=" + lhs(r, c).str() + " rhs=" + rhs(r, c).str());
}

}  // namespace detail

// The eight named Hopf axioms, each verified as an exact matrix identity.
template <FieldScalar K>
Report verify_hopf_axioms(const FinHopfAlgebra<K>& h) {
  h.check_dims();
  const std::size_t n = h.dim;
  const Matrix<K> I = Matrix<K>::identity(n);
  const Matrix<K> M = h.mult_matrix();
  const Matrix<K> D = h.comult_matrix();
  const Matrix<K>& u = h.unit;
  const Matrix<K>& e = h.counit;
  const Matrix<K>& S = h.antipode;
  const Matrix<K> sw = Matrix<K>::swap(n, n);

  Report rep;
  detail::add_identity_check(rep, "mult_associative", M * kron(M, I), M * kron(I, M), {n, n, n});
  {
    // Left and right unit law combined into one check with two identities.
    const Matrix<K> lu = M * kron(u, I);
    const Matrix<K> ru = M * kron(I, u);
    if (lu == I && ru == I) {
      rep.add("mult_unital", true);
    } else {
      auto d = first_diff(lu == I ? ru : lu, I);
      rep.add("mult_unital", false,
              std::string(lu == I ? "right" : "left") + " unit law fails on basis vector " +
                  std::to_string(d->second));
    }
  }
  detail::add_identity_check(rep, "comult_coassociative", kron(D, I) * D, kron(I, D) * D, {n});
  {
    const Matrix<K> lc = kron(e, I) * D;
    const Matrix<K> rc = kron(I, e) * D;
    if (lc == I && rc == I) {
      rep.add("comult_counital", true);
    } else {
      auto d = first_diff(lc == I ? rc : lc, I);
      rep.add("comult_counital", false,
              std::string(lc == I ? "right" : "left") + " counit law fails on basis vector " +
                  std::to_string(d->second));
    }
  }
  {
    // Delta is an algebra map: Delta(ab) = Delta(a)Delta(b), Delta(1) = 1 (x) 1.
    const Matrix<K> lhs = D * M;
    const Matrix<K> rhs = kron(M, M) * kron(kron(I, sw), I) * kron(D, D);
    Report sub;
    detail::add_identity_check(sub, "comult_algebra_map", lhs, rhs, {n, n});
    if (sub.checks.back().pass && D * u != kron(u, u))
      sub.checks.back() = {"comult_algebra_map", false, "Delta(1) != 1 (x) 1"};
    rep.merge(sub);
  }
  {
    const Matrix<K> lhs = e * M;
    const Matrix<K> rhs = kron(e, e);
    Report sub;
    detail::add_identity_check(sub, "counit_algebra_map", lhs, rhs, {n, n});
    if (sub.checks.back().pass && (e * u)(0, 0) != K::one())
      sub.checks.back() = {"counit_algebra_map", false, "eps(1) != 1"};
    rep.merge(sub);
  }
  const Matrix<K> ue = u * e;
  detail::add_identity_check(rep, "antipode_left", M * kron(S, I) * D, ue, {n});
  detail::add_identity_check(rep, "antipode_right", M * kron(I, S) * D, ue, {n});
  return rep;
}

inline const std::vector<std::string>& hopf_axiom_names() {
  static const std::vector<std::string> names{
      "mult_associative",   "mult_unital",        "comult_coassociative", "comult_counital",
      "comult_algebra_map", "counit_algebra_map", "antipode_left",        "antipode_right"};
  return names;
}

template <FieldScalar K>
struct AntipodeInverseResult {
  bool invertible = false;
  Matrix<K> inverse;  // empty when not invertible
  Report report;      // skew-antipode identities, when invertible
};

// Matrix inverse of S plus verification of the skew-antipode identities
//   sum S^-1(h_(2)) h_(1) = eps(h) 1 = sum h_(2) S^-1(h_(1)).
template <FieldScalar K>
AntipodeInverseResult<K> antipode_inverse(const FinHopfAlgebra<K>& h) {
  AntipodeInverseResult<K> out;
  auto inv = inverse(h.antipode);
  if (!inv) {
    out.report.add("antipode_invertible", false, "S is singular");
    return out;
  }
  out.invertible = true;
  out.inverse = *inv;
  const std::size_t n = h.dim;
  const Matrix<K> I = Matrix<K>::identity(n);
  const Matrix<K> M = h.mult_matrix();
  const Matrix<K> D = h.comult_matrix();
  const Matrix<K> sw = Matrix<K>::swap(n, n);
  const Matrix<K> ue = h.unit * h.counit;
  out.report.add("antipode_invertible", true);
  detail::add_identity_check(out.report, "skew_antipode_left", M * kron(out.inverse, I) * sw * D, ue, {n});
  detail::add_identity_check(out.report, "skew_antipode_right", M * kron(I, out.inverse) * sw * D, ue, {n});
  return out;
}

// Transposes multiplication and comultiplication, swaps unit and counit.
// With the index conventions above, double dualization is literally the
// identity on structure constants.
template <FieldScalar K>
FinHopfAlgebra<K> dual_hopf(const FinHopfAlgebra<K>& h) {
  const std::size_t n = h.dim;
  FinHopfAlgebra<K> d;
  d.name = h.name + "^*";
  d.dim = n;
  for (std::size_t i = 0; i < n; ++i) d.basis_labels.push_back(h.label(i) + "^*");
  d.mult = Tensor3<K>(n, n, n);
  d.comult = Tensor3<K>(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        d.mult(i, j, k) = h.comult(k, i, j);
        d.comult(i, j, k) = h.mult(j, k, i);
      }
  d.unit = h.counit.transpose();
  d.counit = h.unit.transpose();
  d.antipode = h.antipode.transpose();
  return d;
}

// A Hopf algebra surjection pi: P -> H with its certificate.
template <FieldScalar K>
struct HopfSurjection {
  FinHopfAlgebra<K> source;  // P
  FinHopfAlgebra<K> target;  // H
  Matrix<K> matrix;          // dim H x dim P
};

// Verifies all morphism identities and surjectivity by rank.  The antipode
// compatibility follows from the rest but is checked anyway; redundant
// certificates catch data-entry mistakes early.
template <FieldScalar K>
Report check_hopf_surjection(const FinHopfAlgebra<K>& p, const FinHopfAlgebra<K>& h,
                             const Matrix<K>& m) {
  if (m.rows() != h.dim || m.cols() != p.dim)
    throw std::invalid_argument("surjection: matrix must be dim H x dim P");
  Report rep;
  const std::size_t np = p.dim;
  detail::add_identity_check(rep, "algebra_map", h.mult_matrix() * kron(m, m), m * p.mult_matrix(),
                             {np, np});
  detail::add_identity_check(rep, "unit_preserved", m * p.unit, h.unit, {std::size_t{1}});
  detail::add_identity_check(rep, "coalgebra_map", h.comult_matrix() * m, kron(m, m) * p.comult_matrix(),
                             {np});
  detail::add_identity_check(rep, "counit_compatible", h.counit * m, p.counit, {np});
  detail::add_identity_check(rep, "antipode_compatible", m * p.antipode, h.antipode * m, {np});
  const std::size_t rank = rank_kernel_image(m).rank;
  rep.add("surjective", rank == h.dim,
          rank == h.dim ? "" : "rank " + std::to_string(rank) + " < dim H = " + std::to_string(h.dim));
  return rep;
}

// Certifying constructor; throws CheckFailure when an identity fails.
template <FieldScalar K>
HopfSurjection<K> make_hopf_surjection(const FinHopfAlgebra<K>& p, const FinHopfAlgebra<K>& h,
                                       const Matrix<K>& m) {
  Report rep = check_hopf_surjection(p, h, m);
  if (!rep.all_pass()) throw CheckFailure(rep, "hopf surjection " + p.name + " -> " + h.name);
  return HopfSurjection<K>{p, h, m};
}

}  // namespace hopfhom
