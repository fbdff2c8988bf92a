#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfhom/subspace.hpp"
#include "hopfhom/tensor.hpp"

using namespace hopfhom;

namespace {

std::mt19937 rng(20240811);

Rational rand_rat() {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 4);
  return Rational(num(rng), den(rng));
}

template <typename K>
Matrix<K> rand_matrix(std::size_t r, std::size_t c) {
  Matrix<K> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      if constexpr (std::is_same_v<K, Rational>)
        m(i, j) = rand_rat();
      else
        m(i, j) = K::from_int(std::uniform_int_distribution<long>(-20, 20)(rng));
    }
  return m;
}

}  // namespace

TEST_CASE("rational arithmetic and canonical strings") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(2, -4).str() == "-1/2");
  CHECK(Rational::parse("-6/4").value() == Rational(-3, 2));
  CHECK(Rational::parse("7").value() == Rational(7));
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("x").has_value());
  CHECK(Rational(3, 7).inv() == Rational(7, 3));
  CHECK_THROWS_AS(Rational(1).operator/=(Rational(0)), std::domain_error);
}

TEST_CASE("field axioms on random triples") {
  auto check_axioms = [](auto a, auto b, auto c) {
    using K = decltype(a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + K::zero() == a);
    CHECK(a * K::one() == a);
    CHECK(a - a == K::zero());
    if (!a.is_zero()) CHECK(a * a.inv() == K::one());
  };
  for (int i = 0; i < 50; ++i) check_axioms(rand_rat(), rand_rat(), rand_rat());
  GfpScope scope(7);
  std::uniform_int_distribution<long> d(-30, 30);
  for (int i = 0; i < 50; ++i)
    check_axioms(Gfp::from_int(d(rng)), Gfp::from_int(d(rng)), Gfp::from_int(d(rng)));
}

TEST_CASE("gfp parse and modulus guards") {
  CHECK_THROWS_AS(Gfp::set_modulus(6), std::domain_error);
  GfpScope scope(7);
  CHECK(Gfp::parse("10").value() == Gfp::from_int(3));
  CHECK(Gfp::parse("-1").value() == Gfp::from_int(6));
  CHECK(Gfp::parse("1/2").value() == Gfp::from_int(4));  // 2*4 = 8 = 1 mod 7
  CHECK(!Gfp::parse("1/7").has_value());
  CHECK(Gfp::from_int(3) * Gfp::from_int(5) == Gfp::from_int(1));
}

TEST_CASE("openmp kernels match serial reference") {
  for (int round = 0; round < 5; ++round) {
    auto a = rand_matrix<Rational>(7, 5);
    auto b = rand_matrix<Rational>(5, 9);
    CHECK(kernels::mul_omp(a, b) == kernels::mul_serial(a, b));
    auto c = rand_matrix<Rational>(3, 4);
    CHECK(kernels::kron_omp(a, c) == kernels::kron_serial(a, c));
  }
  GfpScope scope(13);
  auto a = rand_matrix<Gfp>(8, 8);
  auto b = rand_matrix<Gfp>(8, 8);
  CHECK(kernels::mul_omp(a, b) == kernels::mul_serial(a, b));
  CHECK(kernels::kron_omp(a, b) == kernels::kron_serial(a, b));
}

TEST_CASE("rank_kernel_image on the three pinned cases") {
  // identity 3x3
  auto rki = rank_kernel_image(Matrix<Rational>::identity(3));
  CHECK(rki.rank == 3);
  CHECK(rki.kernel.dim() == 0);
  CHECK(rki.image == Subspace<Rational>::full(3));

  // zero 2x4
  rki = rank_kernel_image(Matrix<Rational>(2, 4));
  CHECK(rki.rank == 0);
  CHECK(rki.kernel.dim() == 4);
  CHECK(rki.image.dim() == 0);

  // [[1,2],[2,4]]: rank 1, kernel spanned by (2,-1) -- hand Gaussian elimination
  Matrix<Rational> m = Matrix<Rational>::from_rows(2, {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
  rki = rank_kernel_image(m);
  CHECK(rki.rank == 1);
  Matrix<Rational> v(2, 1);
  v(0, 0) = Rational(2);
  v(1, 0) = Rational(-1);
  CHECK(rki.kernel.dim() == 1);
  CHECK(rki.kernel.contains(v));
}

TEST_CASE("rank + kernel dim = cols on random matrices") {
  for (int round = 0; round < 10; ++round) {
    auto m = rand_matrix<Rational>(6, 8);
    auto rki = rank_kernel_image(m);
    CHECK(rki.rank + rki.kernel.dim() == m.cols());
    CHECK(rki.image.dim() == rki.rank);
  }
}

TEST_CASE("subspace operations") {
  auto e1 = Matrix<Rational>::basis_col(2, 0).transpose();
  auto e2 = Matrix<Rational>::basis_col(2, 1).transpose();
  auto a = Subspace<Rational>::from_rows(e1);
  auto b = Subspace<Rational>::from_rows(e2);
  CHECK(sum(a, b) == Subspace<Rational>::full(2));
  CHECK(intersect(a, b).dim() == 0);
  CHECK(a.contains(a));
  CHECK(!a.contains(b));
  CHECK_THROWS_AS(sum(a, Subspace<Rational>::zero(3)), std::invalid_argument);
}

TEST_CASE("canonical form is idempotent and unique") {
  for (int round = 0; round < 10; ++round) {
    auto rows = rand_matrix<Rational>(3, 5);
    auto s = Subspace<Rational>::from_rows(rows);
    auto again = Subspace<Rational>::from_rows(s.basis_rows());
    CHECK(s == again);
    // A shuffled/scaled spanning set gives the same canonical form.
    Matrix<Rational> scaled(3, 5);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 5; ++j) scaled(i, j) = rows(2 - i, j) * Rational(3);
    CHECK(Subspace<Rational>::from_rows(scaled) == s);
  }
}

TEST_CASE("modular dimension law on random pairs") {
  for (int round = 0; round < 15; ++round) {
    auto a = Subspace<Rational>::from_rows(rand_matrix<Rational>(2, 6));
    auto b = Subspace<Rational>::from_rows(rand_matrix<Rational>(3, 6));
    CHECK(a.dim() + b.dim() == sum(a, b).dim() + intersect(a, b).dim());
    CHECK(sum(a, b).contains(a));
    CHECK(a.contains(intersect(a, b)));
  }
}

TEST_CASE("quotient projection and section") {
  auto w = Subspace<Rational>::from_rows(rand_matrix<Rational>(2, 5));
  auto q = w.quotient();
  CHECK(q.dim == 5 - w.dim());
  // proj . section = identity on the quotient
  CHECK(q.proj * q.section == Matrix<Rational>::identity(q.dim));
  // proj kills the subspace
  CHECK((q.proj * w.embedding()).is_zero());
  // v - section(proj(v)) lies in w for every standard basis vector
  for (std::size_t i = 0; i < 5; ++i) {
    auto v = Matrix<Rational>::basis_col(5, i);
    auto rep = v - q.section * (q.proj * v);
    CHECK(w.contains(rep));
  }
}

TEST_CASE("perp and solve") {
  auto w = Subspace<Rational>::from_rows(rand_matrix<Rational>(2, 5));
  CHECK(w.dim() + w.perp().dim() == 5);
  auto a = rand_matrix<Rational>(4, 3);
  auto x = rand_matrix<Rational>(3, 2);
  auto b = a * x;
  auto sol = solve(a, b);
  REQUIRE(sol.has_value());
  CHECK(a * *sol == b);
}

TEST_CASE("einsum: unitality of a multiplication tensor") {
  // Multiplication tensor of k[Z2]: e_i e_j = e_{i xor j}; unit = e_0.
  Tensor3<Rational> m(2, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m(i, j, i ^ j) = Rational(1);
  TensorData<Rational> mt = TensorData<Rational>::from_tensor3(m);
  TensorData<Rational> unit{{2}, {Rational(1), Rational(0)}};
  auto id = einsum<Rational>("ijk,i->jk", mt, unit);
  CHECK(id.to_matrix() == Matrix<Rational>::identity(2));
  auto id2 = einsum<Rational>("ijk,j->ik", mt, unit);
  CHECK(id2.to_matrix() == Matrix<Rational>::identity(2));
}

TEST_CASE("einsum: contraction order independence") {
  for (int round = 0; round < 5; ++round) {
    auto a = TensorData<Rational>::from_matrix(rand_matrix<Rational>(3, 4));
    auto b = TensorData<Rational>::from_matrix(rand_matrix<Rational>(4, 5));
    auto c = TensorData<Rational>::from_matrix(rand_matrix<Rational>(5, 2));
    auto ab_c = einsum<Rational>("ik,kl->il", einsum<Rational>("ij,jk->ik", a, b), c);
    auto a_bc = einsum<Rational>("ij,jl->il", a, einsum<Rational>("jk,kl->jl", b, c));
    auto direct = einsum<Rational>("ij,jk,kl->il", a, b, c);
    CHECK(ab_c.vals == a_bc.vals);
    CHECK(ab_c.vals == direct.vals);
  }
}

TEST_CASE("einsum rejects extent mismatches") {
  auto a = TensorData<Rational>::from_matrix(rand_matrix<Rational>(3, 4));
  auto b = TensorData<Rational>::from_matrix(rand_matrix<Rational>(5, 2));
  CHECK_THROWS_AS(einsum<Rational>("ij,jk->ik", a, b), std::invalid_argument);
  CHECK_THROWS_AS(einsum<Rational>("ij->ik", a), std::invalid_argument);
}

TEST_CASE("matrix inverse") {
  Matrix<Rational> m = Matrix<Rational>::from_rows(
      2, {{Rational(1), Rational(2)}, {Rational(3), Rational(4)}});
  auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == Matrix<Rational>::identity(2));
  Matrix<Rational> sing = Matrix<Rational>::from_rows(
      2, {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
  CHECK(!inverse(sing).has_value());
}
