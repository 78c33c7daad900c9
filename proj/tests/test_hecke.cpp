#include "coxcoh/hecke.hpp"

#include <random>

#include "catch_amalgamated.hpp"

using namespace coxcoh;

namespace {

CoxeterSystem make(std::vector<std::string> gens, std::vector<std::vector<int>> m) {
  return CoxeterSystem(CoxeterMatrix{std::move(gens), std::move(m)});
}

CoxeterSystem s3() { return make({"s", "t"}, {{1, 3}, {3, 1}}); }
CoxeterSystem a3() { return make({"s", "t", "u"}, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}); }
CoxeterSystem dinf() { return make({"s", "t"}, {{1, 0}, {0, 1}}); }
CoxeterSystem ra2() { return make({"s", "t"}, {{1, 2}, {2, 1}}); }
CoxeterSystem free3() { return make({"s", "t", "u"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

}  // namespace

TEST_CASE("parameter validation") {
  auto W = s3();
  CHECK_THROWS_AS(HeckeAlgebra(W, {Rat(2), Rat(3)}), error);  // s, t conjugate via odd bond
  CHECK_NOTHROW(HeckeAlgebra(W, {Rat(2), Rat(2)}));
  CHECK_THROWS_AS(HeckeAlgebra(W, {Rat(0), Rat(0)}), error);

  auto V = ra2();  // even bond: parameters may differ
  CHECK_NOTHROW(HeckeAlgebra(V, {Rat(2), Rat(3)}));
  auto D = dinf();
  CHECK_NOTHROW(HeckeAlgebra(D, {Rat(1, 2), Rat(3)}));

  auto A = a3();
  auto cls = generator_conjugacy_classes(A);
  CHECK(cls[0] == cls[1]);
  CHECK(cls[1] == cls[2]);
}

TEST_CASE("multiplication rules") {
  auto W = s3();
  HeckeAlgebra H(W, {Rat(3), Rat(3)});
  const Gen s = 0, t = 1;
  ElemId es = W.element(Word{s});

  SECTION("quadratic relation") {
    auto prod = H.mul(H.e(es), H.e(es));
    REQUIRE(prod.size() == 2);
    CHECK(prod.at(es) == Rat(2));           // q - 1
    CHECK(prod.at(W.identity()) == Rat(3)); // q
  }
  SECTION("length-additive products multiply basis elements") {
    auto prod = H.mul(H.e(es), H.e(W.element(Word{t})));
    REQUIRE(prod.size() == 1);
    CHECK(prod.at(W.element(Word{s, t})) == Rat(1));
  }
  SECTION("associativity on random triples") {
    Ball b = W.full_group();
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 15; ++trial) {
      auto x = H.e(b.elements[rng() % b.elements.size()]);
      auto y = H.e(b.elements[rng() % b.elements.size()]);
      auto z = H.e(b.elements[rng() % b.elements.size()]);
      CHECK(H.equal(H.mul(H.mul(x, y), z), H.mul(x, H.mul(y, z))));
    }
  }
  SECTION("q = 1 recovers the group ring") {
    HeckeAlgebra H1(W, {Rat(1), Rat(1)});
    GroupRing A(W);
    Ball b = W.full_group();
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      ElemId u = b.elements[rng() % b.elements.size()];
      ElemId v = b.elements[rng() % b.elements.size()];
      auto hecke = H1.mul(H1.e(u), H1.e(v));
      REQUIRE(hecke.size() == 1);
      CHECK(hecke.begin()->first == W.mul(u, v));
    }
  }
}

TEST_CASE("q weights") {
  auto W = s3();
  HeckeAlgebra H(W, {Rat(5), Rat(5)});
  CHECK(H.q_weight(W.identity()) == 1);
  CHECK(H.q_weight(W.element(Word{0, 1, 0})) == Rat(125));

  HeckeAlgebra H1(W, {Rat(1), Rat(1)});
  Ball b = W.full_group();
  for (ElemId w : b.elements) CHECK(H1.q_weight(w) == 1);
}

TEST_CASE("q weight is constant on braid orbits") {
  auto A = a3();
  HeckeAlgebra H(A, {Rat(2), Rat(2), Rat(2)});
  Ball b = A.full_group();
  std::mt19937_64 rng(20250810);
  int checked = 0;
  while (checked < 1000) {
    ElemId w = b.elements[rng() % b.elements.size()];
    auto orbit = A.braid_orbit(A.word(w));
    const Word& pick = orbit[rng() % orbit.size()];
    Rat weight = 1;
    for (Gen g : pick) weight *= H.q(g);
    CHECK(weight == H.q_weight(w));
    ++checked;
  }
}

TEST_CASE("special elements") {
  SECTION("worked rank-one example") {
    auto W = s3();
    HeckeAlgebra H(W, {Rat(2), Rat(2)});
    auto as = H.a(0b01);
    REQUIRE(as.size() == 2);
    CHECK(as.at(W.identity()) == Rat(1, 3));
    CHECK(as.at(W.element(Word{0})) == Rat(1, 3));
    CHECK(H.equal(H.mul(as, as), as));

    auto hs = H.h(0b01);
    CHECK(hs.at(W.identity()) == Rat(2, 3));
    CHECK(hs.at(W.element(Word{0})) == Rat(-1, 3));
    CHECK(H.equal(H.mul(hs, hs), hs));
  }
  SECTION("idempotency across the parameter grid and corpus") {
    for (auto& W : {s3(), a3(), dinf(), ra2(), free3()}) {
      auto poset = W.spherical_poset();
      for (Rat qv : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
        HeckeAlgebra H(W, std::vector<Rat>(W.rank(), qv));
        for (const auto& entry : poset.subsets) {
          auto av = H.a(entry.mask);
          auto hv = H.h(entry.mask);
          CHECK(H.equal(H.mul(av, av), av));
          CHECK(H.equal(H.mul(hv, hv), hv));
          // alpha-character: e_s a_T = q_s a_T for s in T
          for (Gen s : bits_of(entry.mask)) {
            CHECK(H.equal(H.mul_gen_left(av, s), H.scale(av, H.q(s))));
            CHECK(H.equal(H.mul_gen_left(hv, s), H.scale(hv, Rat(-1))));
          }
        }
      }
    }
  }
  SECTION("q = 1 specializes to normalized group-ring elements") {
    auto W = s3();
    HeckeAlgebra H(W, {Rat(1), Rat(1)});
    GroupRing A(W);
    auto av = H.a(0b11);
    auto ag = A.symmetrizer(0b11);
    for (const auto& [w, coeff] : av) CHECK(coeff == Rat(ag.coeff(w), 6));
  }
  SECTION("non-spherical subsets are rejected") {
    auto D = dinf();
    HeckeAlgebra H(D, {Rat(2), Rat(2)});
    CHECK_THROWS_MATCHES(H.a(0b11), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                           return e.code() == errc::not_spherical;
                         }));
  }
}

TEST_CASE("deformed descent basis") {
  auto W = s3();
  HeckeAlgebra H(W, {Rat(2), Rat(2)});
  Ball b = W.full_group();

  SECTION("unitriangular with invertible leads") {
    for (ElemId w : b.elements) {
      CHECK(H.bprime_lead(w) != 0);
      for (const auto& [v, coeff] : H.bprime(w))
        if (v != w) CHECK(W.length(v) < W.length(w));
    }
  }
  SECTION("decompose round trips") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 15; ++trial) {
      HeckeAlgebra::El x;
      for (int k = 0; k < 4; ++k)
        HeckeAlgebra::add_term(x, b.elements[rng() % b.elements.size()],
                               Rat(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3));
      CHECK(H.equal(H.assemble(H.decompose(x)), x));
    }
  }
}

TEST_CASE("graded computation") {
  SECTION("ranks match the assembly and the sign character appears") {
    auto W = s3();
    GroupRing A(W);
    auto K = davis_chamber(W);
    for (Rat qv : {Rat(1), Rat(2), Rat(1, 2)}) {
      HeckeAlgebra H(W, {qv, qv});
      for (int p = 0; p <= W.rank() + 1; ++p) {
        auto rep = hecke_graded_term(H, A, K, 12, p);
        CHECK(rep.ranks_equal);
        CHECK(rep.deformed_basis_ok);
        CHECK(rep.ideal_ranks_ok);
        CHECK(rep.empty_slice_sign_action);
        CHECK(rep.matches_group_ring_at_one);
      }
    }
  }
  SECTION("q = 1 rank tables equal the integer ones") {
    auto W = ra2();
    GroupRing A(W);
    auto K = davis_chamber(W);
    HeckeAlgebra H(W, {Rat(1), Rat(1)});
    for (int p = 0; p <= W.rank() + 1; ++p) {
      auto hrep = hecke_graded_term(H, A, K, 12, p);
      auto grep = graded_term(W, A, K, 12, p, Variance::invariants, false);
      for (const auto& [deg, s] : grep.lhs.by_degree) {
        int hr = hrep.lhs_betti.count(deg) ? hrep.lhs_betti.at(deg) : 0;
        CHECK(hr == s.betti);
      }
      CHECK(hrep.matches_group_ring_at_one);
    }
  }
  SECTION("level beyond the rank is zero") {
    auto W = s3();
    GroupRing A(W);
    auto K = davis_chamber(W);
    HeckeAlgebra H(W, {Rat(3), Rat(3)});
    auto rep = hecke_graded_term(H, A, K, 12, W.rank() + 1);
    for (const auto& [deg, betti] : rep.lhs_betti) CHECK(betti == 0);
    CHECK(rep.ranks_equal);
  }
  SECTION("infinite dihedral with unequal parameters") {
    auto W = dinf();
    GroupRing A(W);
    auto K = davis_chamber(W);
    HeckeAlgebra H(W, {Rat(2), Rat(3)});
    auto rep = hecke_graded_term(H, A, K, 4, 0);
    CHECK(rep.ranks_equal);
    CHECK(rep.deformed_basis_ok);
    CHECK(rep.ideal_ranks_ok);
    CHECK(rep.empty_slice_sign_action);
    CHECK(rep.lhs_betti.at(1) == 1);
  }
}
