#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfhom/builders.hpp"

using namespace hopfhom;

namespace {

template <typename K>
bool mult_commutative(const FinHopfAlgebra<K>& h) {
  for (std::size_t i = 0; i < h.dim; ++i)
    for (std::size_t j = 0; j < h.dim; ++j)
      for (std::size_t k = 0; k < h.dim; ++k)
        if (h.mult(i, j, k) != h.mult(j, i, k)) return false;
  return true;
}

template <typename K>
bool comult_cocommutative(const FinHopfAlgebra<K>& h) {
  for (std::size_t i = 0; i < h.dim; ++i)
    for (std::size_t j = 0; j < h.dim; ++j)
      for (std::size_t k = 0; k < h.dim; ++k)
        if (h.comult(i, j, k) != h.comult(i, k, j)) return false;
  return true;
}

template <typename K>
bool same_structure(const FinHopfAlgebra<K>& a, const FinHopfAlgebra<K>& b) {
  return a.dim == b.dim && a.mult == b.mult && a.comult == b.comult && a.unit == b.unit &&
         a.counit == b.counit && a.antipode == b.antipode;
}

}  // namespace

TEST_CASE("group algebra kZ2 passes all eight axioms") {
  auto h = build_group_algebra<Rational>(GroupTable::cyclic(2));
  auto rep = verify_hopf_axioms(h);
  CHECK(rep.all_pass());
  CHECK(rep.checks.size() == 8);
  CHECK(mult_commutative(h));
  CHECK(comult_cocommutative(h));
}

TEST_CASE("all builders pass the axiom suite over Q and GF(7)") {
  auto run = [](auto tag) {
    using K = decltype(tag);
    CHECK(verify_hopf_axioms(build_group_algebra<K>(GroupTable::cyclic(2))).all_pass());
    CHECK(verify_hopf_axioms(build_group_algebra<K>(GroupTable::symmetric3())).all_pass());
    CHECK(verify_hopf_axioms(build_function_algebra<K>(GroupTable::symmetric3())).all_pass());
    CHECK(verify_hopf_axioms(build_sweedler<K>()).all_pass());
    CHECK(verify_hopf_axioms(build_trivial<K>()).all_pass());
  };
  run(Rational());
  GfpScope scope(7);
  run(Gfp());
}

TEST_CASE("kZ3 over GF(2) still passes") {
  GfpScope scope(2);
  CHECK(verify_hopf_axioms(build_group_algebra<Gfp>(GroupTable::cyclic(3))).all_pass());
}

TEST_CASE("sweedler: antipode has order four") {
  auto h = build_sweedler<Rational>();
  CHECK(verify_hopf_axioms(h).all_pass());
  auto s2 = h.antipode * h.antipode;
  CHECK(s2 != Matrix<Rational>::identity(4));
  CHECK(s2 * s2 == Matrix<Rational>::identity(4));
  // counit on generators
  CHECK(h.counit(0, 2) == Rational(0));
  CHECK(h.counit(0, 1) == Rational(1));
}

TEST_CASE("sweedler: S(x) solved from the antipode axiom on the x slot") {
  auto h = build_sweedler<Rational>();
  // Delta x = x (x) 1 + g (x) x, so the axiom forces S(x) * 1 + S(g) * (g x-term):
  // S(x) = -(S(g) x) = -(g x).  Evaluate g*x from the raw multiplication tensor.
  Matrix<Rational> gx(4, 1);
  for (std::size_t k = 0; k < 4; ++k) gx(k, 0) = h.mult(1, 2, k);
  Matrix<Rational> expected = -gx;
  CHECK(h.antipode.col(2) == expected);
}

TEST_CASE("mutated multiplication breaks associativity with a witness") {
  auto h = build_sweedler<Rational>();
  h.mult(1, 1, 2) = Rational(1);  // perturb g*g by +x
  auto rep = verify_hopf_axioms(h);
  CHECK(!rep.all_pass());
  const CheckResult* assoc = rep.find("mult_associative");
  REQUIRE(assoc != nullptr);
  CHECK(!assoc->pass);
  CHECK(!assoc->witness.empty());
}

TEST_CASE("antipode inverses") {
  // Function algebras: S is the inverse-transposition permutation, S^2 = id.
  auto fs3 = build_function_algebra<Rational>(GroupTable::symmetric3());
  CHECK(fs3.antipode * fs3.antipode == Matrix<Rational>::identity(6));
  auto inv = antipode_inverse(fs3);
  REQUIRE(inv.invertible);
  CHECK(inv.report.all_pass());
  CHECK(inv.inverse == fs3.antipode);

  // kZ2: S = id.
  auto kz2 = build_group_algebra<Rational>(GroupTable::cyclic(2));
  auto inv2 = antipode_inverse(kz2);
  REQUIRE(inv2.invertible);
  CHECK(inv2.inverse == Matrix<Rational>::identity(2));

  // Sweedler: S^-1 = S^3.
  auto h4 = build_sweedler<Rational>();
  auto inv4 = antipode_inverse(h4);
  REQUIRE(inv4.invertible);
  CHECK(inv4.report.all_pass());
  CHECK(inv4.inverse == h4.antipode * h4.antipode * h4.antipode);
}

TEST_CASE("group builders: commutativity and cocommutativity") {
  auto ks3 = build_group_algebra<Rational>(GroupTable::symmetric3());
  CHECK(ks3.dim == 6);
  CHECK(!mult_commutative(ks3));
  CHECK(comult_cocommutative(ks3));

  auto fz2 = build_function_algebra<Rational>(GroupTable::cyclic(2));
  CHECK(mult_commutative(fz2));
  CHECK(comult_cocommutative(fz2));

  auto fs3 = build_function_algebra<Rational>(GroupTable::symmetric3());
  CHECK(mult_commutative(fs3));
  CHECK(!comult_cocommutative(fs3));
}

TEST_CASE("duality: k(G) equals dual of kG, and dual is an involution") {
  auto g = GroupTable::symmetric3();
  CHECK(same_structure(dual_hopf(build_group_algebra<Rational>(g)),
                       build_function_algebra<Rational>(g)));
  auto z2 = GroupTable::cyclic(2);
  CHECK(same_structure(dual_hopf(build_group_algebra<Rational>(z2)),
                       build_function_algebra<Rational>(z2)));
  auto h4 = build_sweedler<Rational>();
  CHECK(same_structure(dual_hopf(dual_hopf(h4)), h4));
  CHECK(verify_hopf_axioms(dual_hopf(h4)).all_pass());
}

TEST_CASE("group table validation") {
  CHECK_THROWS_WITH_AS(GroupTable::from_cayley({{0, 1, 2}, {1, 2, 1}, {2, 0, 0}}),
                       doctest::Contains("associativity"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(GroupTable::from_cayley({{0, 1}, {1, 1}}), doctest::Contains("inverse"),
                       std::invalid_argument);
  // Z4 via a single 4-cycle generator.
  auto z4 = GroupTable::from_permutation_generators({{1, 2, 3, 0}});
  CHECK(z4.order() == 4);
  CHECK(z4.is_abelian());
  CHECK(GroupTable::symmetric3().order() == 6);
  CHECK(!GroupTable::symmetric3().is_abelian());
  CHECK_THROWS_WITH_AS(GroupTable::from_permutation_generators({{1, 2, 3, 0}}, 3),
                       doctest::Contains("cap"), std::invalid_argument);
}

TEST_CASE("hopf surjections") {
  // pi = eps: P -> k is always a valid surjection.
  auto h4 = build_sweedler<Rational>();
  auto triv = trivial_surjection(h4);
  CHECK(check_hopf_surjection(triv.source, triv.target, triv.matrix).all_pass());

  // restriction k(S3) -> k(K), K = {e, (12)}.
  auto g = GroupTable::symmetric3();
  std::size_t k12 = 0;
  for (std::size_t a = 0; a < 6; ++a)
    if (a != g.identity() && g.mul(a, a) == g.identity() && g.labels()[a] == "[1 0 2]") k12 = a;
  auto restr = restriction_surjection<Rational>(g, {g.identity(), k12});
  CHECK(restr.target.dim == 2);
  CHECK(check_hopf_surjection(restr.source, restr.target, restr.matrix).all_pass());

  // H4 -> kZ2, g -> u, x -> 0.
  auto sw = sweedler_surjection<Rational>();
  CHECK(check_hopf_surjection(sw.source, sw.target, sw.matrix).all_pass());

  // Non-surjective map is rejected with its rank.
  Matrix<Rational> bad(2, 4);
  bad(0, 0) = Rational(1);
  auto rep = check_hopf_surjection(sw.source, sw.target, bad);
  const CheckResult* surj = rep.find("surjective");
  REQUIRE(surj != nullptr);
  CHECK(!surj->pass);
  CHECK(surj->witness.find("rank 1") != std::string::npos);
  CHECK_THROWS_AS(make_hopf_surjection(sw.source, sw.target, bad), CheckFailure);
}
