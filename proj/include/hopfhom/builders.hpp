#pragma once

#include "hopfhom/groups.hpp"
#include "hopfhom/hopf.hpp"

namespace hopfhom {

// Group algebra kG: grouplike basis, Delta g = g (x) g, S g = g^-1.
template <FieldScalar K>
FinHopfAlgebra<K> build_group_algebra(const GroupTable& g, std::string name = "") {
  const std::size_t n = g.order();
  FinHopfAlgebra<K> h;
  h.name = name.empty() ? "k[G" + std::to_string(n) + "]" : std::move(name);
  h.dim = n;
  h.basis_labels = g.labels();
  h.mult = Tensor3<K>(n, n, n);
  h.comult = Tensor3<K>(n, n, n);
  h.unit = Matrix<K>(n, 1);
  h.counit = Matrix<K>(1, n);
  h.antipode = Matrix<K>(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) h.mult(a, b, g.mul(a, b)) = K::one();
    h.comult(a, a, a) = K::one();
    h.counit(0, a) = K::one();
    h.antipode(g.inverse(a), a) = K::one();
  }
  h.unit(g.identity(), 0) = K::one();
  return h;
}

// Function algebra k(G): delta-function basis, pointwise product,
// Delta d_g = sum_{ab=g} d_a (x) d_b.  Dual of the group algebra.
template <FieldScalar K>
FinHopfAlgebra<K> build_function_algebra(const GroupTable& g, std::string name = "") {
  const std::size_t n = g.order();
  FinHopfAlgebra<K> h;
  h.name = name.empty() ? "k(G" + std::to_string(n) + ")" : std::move(name);
  h.dim = n;
  for (std::size_t a = 0; a < n; ++a) h.basis_labels.push_back("d_" + g.labels()[a]);
  h.mult = Tensor3<K>(n, n, n);
  h.comult = Tensor3<K>(n, n, n);
  h.unit = Matrix<K>(n, 1);
  h.counit = Matrix<K>(1, n);
  h.antipode = Matrix<K>(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    h.mult(a, a, a) = K::one();
    h.unit(a, 0) = K::one();
    for (std::size_t b = 0; b < n; ++b) h.comult(g.mul(a, b), a, b) = K::one();
    h.antipode(g.inverse(a), a) = K::one();
  }
  h.counit(0, g.identity()) = K::one();
  return h;
}

// Sweedler's four-dimensional Hopf algebra H4 (char != 2): basis
// {1, g, x, gx}, g^2 = 1, x^2 = 0, xg = -gx, Delta x = x (x) 1 + g (x) x.
// The antipode has order 4.
template <FieldScalar K>
FinHopfAlgebra<K> build_sweedler() {
  FinHopfAlgebra<K> h;
  h.name = "sweedler";
  h.dim = 4;
  h.basis_labels = {"1", "g", "x", "gx"};
  h.mult = Tensor3<K>(4, 4, 4);
  const K one = K::one();
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const K& v) { h.mult(i, j, k) = v; };
  for (std::size_t j = 0; j < 4; ++j) set(0, j, j, one);
  for (std::size_t i = 1; i < 4; ++i) set(i, 0, i, one);
  set(1, 1, 0, one);   // g g = 1
  set(1, 2, 3, one);   // g x = gx
  set(1, 3, 2, one);   // g gx = x
  set(2, 1, 3, -one);  // x g = -gx
  set(3, 1, 2, -one);  // gx g = -x
  // x x = x gx = gx x = gx gx = 0
  h.unit = Matrix<K>::basis_col(4, 0);
  h.comult = Tensor3<K>(4, 4, 4);
  h.comult(0, 0, 0) = one;
  h.comult(1, 1, 1) = one;
  h.comult(2, 2, 0) = one;  // Delta x = x (x) 1 + g (x) x
  h.comult(2, 1, 2) = one;
  h.comult(3, 3, 1) = one;  // Delta gx = gx (x) g + 1 (x) gx
  h.comult(3, 0, 3) = one;
  h.counit = Matrix<K>(1, 4);
  h.counit(0, 0) = one;
  h.counit(0, 1) = one;
  h.antipode = Matrix<K>(4, 4);
  h.antipode(0, 0) = one;
  h.antipode(1, 1) = one;
  h.antipode(3, 2) = -one;  // S x = -gx
  h.antipode(2, 3) = one;   // S gx = x
  return h;
}

// The one-dimensional Hopf algebra k.
template <FieldScalar K>
FinHopfAlgebra<K> build_trivial() {
  FinHopfAlgebra<K> h;
  h.name = "k";
  h.dim = 1;
  h.basis_labels = {"1"};
  h.mult = Tensor3<K>(1, 1, 1);
  h.mult(0, 0, 0) = K::one();
  h.unit = Matrix<K>::basis_col(1, 0);
  h.comult = Tensor3<K>(1, 1, 1);
  h.comult(0, 0, 0) = K::one();
  h.counit = Matrix<K>(1, 1);
  h.counit(0, 0) = K::one();
  h.antipode = Matrix<K>::identity(1);
  return h;
}

// The counit as the unique Hopf surjection P -> k.
template <FieldScalar K>
HopfSurjection<K> trivial_surjection(const FinHopfAlgebra<K>& p) {
  return make_hopf_surjection(p, build_trivial<K>(), p.counit);
}

// Restriction of functions k(G) -> k(K) for a subgroup K <= G:
// (pi f)(k) = f(k).
template <FieldScalar K>
HopfSurjection<K> restriction_surjection(const GroupTable& g, const std::vector<std::size_t>& sub_elems,
                                         std::string source_name = "", std::string target_name = "") {
  auto sub = g.subgroup(sub_elems);
  FinHopfAlgebra<K> p = build_function_algebra<K>(g, std::move(source_name));
  FinHopfAlgebra<K> h = build_function_algebra<K>(sub.group, std::move(target_name));
  Matrix<K> m(h.dim, p.dim);
  for (std::size_t i = 0; i < sub.parent_index.size(); ++i) m(i, sub.parent_index[i]) = K::one();
  return make_hopf_surjection(p, h, m);
}

// H4 -> k[Z2], g -> u, x -> 0.
template <FieldScalar K>
HopfSurjection<K> sweedler_surjection() {
  FinHopfAlgebra<K> p = build_sweedler<K>();
  FinHopfAlgebra<K> h = build_group_algebra<K>(GroupTable::cyclic(2), "k[Z2]");
  h.basis_labels = {"1", "u"};
  Matrix<K> m(2, 4);
  m(0, 0) = K::one();
  m(1, 1) = K::one();
  return make_hopf_surjection(p, h, m);
}

}  // namespace hopfhom
