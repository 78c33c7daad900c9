#include "coxcoh/coxeter.hpp"

#include <random>

#include "catch_amalgamated.hpp"

using namespace coxcoh;

namespace {

CoxeterMatrix mat(std::vector<std::string> gens, std::vector<std::vector<int>> m) {
  return CoxeterMatrix{std::move(gens), std::move(m)};
}

CoxeterMatrix z2() { return mat({"s"}, {{1}}); }
CoxeterMatrix s3() { return mat({"s", "t"}, {{1, 3}, {3, 1}}); }
CoxeterMatrix dinf() { return mat({"s", "t"}, {{1, 0}, {0, 1}}); }
CoxeterMatrix a3() { return mat({"s", "t", "u"}, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}); }
CoxeterMatrix free3() { return mat({"s", "t", "u"}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }
CoxeterMatrix ra_square() { return mat({"s", "t"}, {{1, 2}, {2, 1}}); }

}  // namespace

TEST_CASE("matrix validation") {
  CHECK_NOTHROW(CoxeterSystem(z2()));
  CHECK_NOTHROW(CoxeterSystem(s3()));

  auto bad_sym = mat({"s", "t"}, {{1, 2}, {3, 1}});
  CHECK_THROWS_MATCHES(CoxeterSystem(bad_sym), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::non_symmetric; }));

  auto bad_diag = mat({"s", "t"}, {{2, 3}, {3, 1}});
  CHECK_THROWS_MATCHES(CoxeterSystem(bad_diag), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::bad_diagonal; }));

  auto bad_entry = mat({"s", "t"}, {{1, 1}, {1, 1}});
  CHECK_THROWS_MATCHES(CoxeterSystem(bad_entry), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::bad_entry; }));
}

TEST_CASE("canonicalization basics") {
  CoxeterSystem W(s3());
  const Gen s = 0, t = 1;

  CHECK(W.element(Word{s, s}) == W.identity());
  CHECK(W.word(W.element(Word{t, s, t})) == Word{s, t, s});  // braid move
  CHECK(W.element(Word{s, t, s}) == W.element(Word{t, s, t}));
  CHECK(W.length(W.element(Word{s, t, s, t})) == 2);  // stst = ts in S3

  CoxeterSystem D(dinf());
  ElemId w = D.element(Word{s, t, s, t});
  CHECK(D.length(w) == 4);  // alternating words are reduced, no braid moves
  CHECK(D.word(w) == Word{s, t, s, t});

  CHECK_THROWS_AS(W.element(Word{5}), error);
}

TEST_CASE("canonicalize is idempotent and constant on braid orbits") {
  CoxeterSystem W(a3());
  std::mt19937_64 rng(12345);
  Ball b = W.ball(6);
  for (int trial = 0; trial < 60; ++trial) {
    ElemId w = b.elements[rng() % b.elements.size()];
    // idempotency: re-canonicalizing the canonical word is a fixed point
    CHECK(W.element(W.word(w)) == w);
    // every reduced expression canonicalizes to the same element
    auto orbit = W.braid_orbit(W.word(w));
    for (const Word& rw : orbit) CHECK(W.element(rw) == w);
  }
}

TEST_CASE("length changes by one under generator multiplication") {
  for (auto m : {s3(), dinf(), a3(), free3()}) {
    CoxeterSystem W(m);
    Ball b = W.ball(4);
    for (ElemId w : b.elements) {
      if (W.length(w) >= 4) continue;  // stay strictly inside the ball
      for (Gen s = 0; s < W.rank(); ++s) {
        CHECK(std::abs(W.length(W.mul_gen(w, s, Side::right)) - W.length(w)) == 1);
        CHECK(std::abs(W.length(W.mul_gen(w, s, Side::left)) - W.length(w)) == 1);
      }
    }
  }
}

TEST_CASE("descents") {
  CoxeterSystem W(s3());
  const Gen s = 0, t = 1;

  auto de = W.descents(W.identity());
  CHECK(de.in_right == 0);
  CHECK(de.in_left == 0);

  ElemId st = W.element(Word{s, t});
  auto dst = W.descents(st);
  CHECK(dst.in_left == Subset(1) << s);
  CHECK(dst.in_right == Subset(1) << t);

  ElemId sts = W.element(Word{s, t, s});
  auto dsts = W.descents(sts);
  CHECK(dsts.in_left == 0b11u);
  CHECK(dsts.in_right == 0b11u);
}

TEST_CASE("descent duality with inverse") {
  CoxeterSystem W(a3());
  Ball b = W.full_group();
  for (ElemId w : b.elements) {
    ElemId wi = W.inverse(w);
    CHECK(W.right_descents(w) == W.left_descents(wi));
  }
}

TEST_CASE("right descent sets are spherical") {
  CoxeterSystem W(free3());
  Ball b = W.ball(5);
  for (ElemId w : b.elements) CHECK(W.is_finite_type(W.right_descents(w)));
}

TEST_CASE("finite type classification") {
  CoxeterSystem W3(a3());
  CHECK(W3.subgroup_order(0b111).value() == 24);  // A3
  CHECK(W3.subgroup_order(0b011).value() == 6);
  CHECK(W3.subgroup_order(0b101).value() == 4);  // s,u commute
  CHECK(W3.subgroup_order(0).value() == 1);

  CoxeterSystem D(dinf());
  CHECK(!D.is_finite_type(0b11));
  CHECK(D.is_finite_type(0b01));

  // B3 = path with labels 4,3
  CoxeterSystem B3(mat({"a", "b", "c"}, {{1, 4, 2}, {4, 1, 3}, {2, 3, 1}}));
  CHECK(B3.subgroup_order(0b111).value() == 48);

  // H3 = path with labels 5,3
  CoxeterSystem H3(mat({"a", "b", "c"}, {{1, 5, 2}, {5, 1, 3}, {2, 3, 1}}));
  CHECK(H3.subgroup_order(0b111).value() == 120);

  // D4 = star with three arms
  CoxeterSystem D4(mat({"a", "b", "c", "d"},
                       {{1, 3, 2, 2}, {3, 1, 3, 3}, {2, 3, 1, 2}, {2, 3, 2, 1}}));
  CHECK(D4.subgroup_order(0b1111).value() == 192);

  // F4 = path with labels 3,4,3
  CoxeterSystem F4(mat({"a", "b", "c", "d"},
                       {{1, 3, 2, 2}, {3, 1, 4, 2}, {2, 4, 1, 3}, {2, 2, 3, 1}}));
  CHECK(F4.subgroup_order(0b1111).value() == 1152);

  // affine A2 (triangle of 3s) is infinite
  CoxeterSystem aA2(mat({"a", "b", "c"}, {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}}));
  CHECK(!aA2.is_finite_type(0b111));

  // affine B2 = path with labels 4,4 is infinite
  CoxeterSystem aB2(mat({"a", "b", "c"}, {{1, 4, 2}, {4, 1, 4}, {2, 4, 1}}));
  CHECK(!aB2.is_finite_type(0b111));

  // affine G2 = path with labels 6,3 is infinite
  CoxeterSystem aG2(mat({"a", "b", "c"}, {{1, 6, 2}, {6, 1, 3}, {2, 3, 1}}));
  CHECK(!aG2.is_finite_type(0b111));
}

TEST_CASE("spherical posets") {
  CoxeterSystem F(free3());
  auto pf = F.spherical_poset();
  REQUIRE(pf.size() == 4);  // empty set and three singletons
  CHECK(pf.subsets[0].mask == 0);
  CHECK(pf.subsets[1].mask == 0b001);
  CHECK(pf.subsets[2].mask == 0b010);
  CHECK(pf.subsets[3].mask == 0b100);

  CoxeterSystem D(dinf());
  CHECK(D.spherical_poset().size() == 3);

  CoxeterSystem W(s3());
  auto pw = W.spherical_poset();
  CHECK(pw.size() == 4);
  CHECK(pw.find(0b11)->group_order == 6);
  CHECK(W.word(pw.find(0b11)->longest) == Word{0, 1, 0});

  // downward closure
  for (const auto& entry : pw.subsets)
    for (Gen g : bits_of(entry.mask))
      CHECK(pw.contains(entry.mask & ~(Subset(1) << g)));
}

TEST_CASE("balls") {
  CoxeterSystem Z(z2());
  Ball b0 = Z.ball(0);
  CHECK(b0.size() == 1);
  CHECK(!b0.complete);
  CHECK(Z.ball(1).complete);

  CoxeterSystem D(dinf());
  Ball b3 = D.ball(3);
  CHECK(b3.size() == 7);  // e, s, t, st, ts, sts, tst
  CHECK(!b3.complete);

  CoxeterSystem W(s3());
  Ball bw = W.ball(10);
  CHECK(bw.size() == 6);
  CHECK(bw.complete);

  CoxeterSystem A(a3());
  CHECK(A.ball(10).size() == 24);
  CHECK(A.full_group().size() == 24);

  // sortedness by (length, ShortLex)
  for (int i = 0; i + 1 < bw.size(); ++i)
    CHECK(W.elem_less(bw.elements[i], bw.elements[i + 1]));
}

TEST_CASE("ball growth of the free product") {
  CoxeterSystem F(free3());
  // 3 * 2^(k-1) words of length k
  Ball b = F.ball(4);
  CHECK(b.size() == 1 + 3 + 6 + 12 + 24);
}

TEST_CASE("element cap") {
  CoxeterSystem D(dinf());
  D.set_element_cap(5);
  CHECK_THROWS_MATCHES(D.ball(10), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::resource_limit; }));
}

TEST_CASE("reduced representatives") {
  CoxeterSystem W(s3());
  Ball b = W.full_group();

  auto all = W.reduced_reps(0, Side::left, b);
  CHECK(all.size() == b.elements.size());

  auto xs = W.reduced_reps(0b01, Side::left, b);  // U = {s}
  std::vector<Word> words;
  for (ElemId w : xs) words.push_back(W.word(w));
  CHECK(words == std::vector<Word>{{}, {1}, {1, 0}});  // e, t, ts

  CoxeterSystem D(dinf());
  Ball bd = D.ball(2);
  auto ys = D.reduced_reps(0b11, Side::right, bd);
  REQUIRE(ys.size() == 1);
  CHECK(ys[0] == D.identity());
}

TEST_CASE("longest elements") {
  CoxeterSystem W(s3());
  CHECK(W.longest_element(0) == W.identity());
  CHECK(W.word(W.longest_element(0b01)) == Word{0});
  ElemId w0 = W.longest_element(0b11);
  CHECK(W.length(w0) == 3);
  CHECK(W.right_descents(w0) == 0b11u);

  // the longest element is the unique one with full descent set
  Ball b = W.full_group();
  int count = 0;
  for (ElemId w : b.elements)
    if (W.right_descents(w) == 0b11u) ++count;
  CHECK(count == 1);

  CoxeterSystem D(dinf());
  CHECK_THROWS_MATCHES(D.longest_element(0b11), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::not_spherical; }));
}

TEST_CASE("coset minimal representatives") {
  CoxeterSystem W(a3());
  Ball b = W.full_group();
  for (ElemId w : b.elements) {
    ElemId r = W.coset_min_rep(w, 0b011, Side::right);
    CHECK((W.right_descents(r) & 0b011u) == 0);
    // r and w differ by an element of the subgroup on the right
    ElemId d = W.mul(W.inverse(r), w);
    for (Gen g : W.word(d)) CHECK((Subset(1) << g & 0b011u) != 0);
  }
}

TEST_CASE("subgroup enumeration") {
  CoxeterSystem W(a3());
  CHECK(W.subgroup_elements(0b011).size() == 6);
  CHECK(W.subgroup_elements(0b101).size() == 4);
  CHECK(W.subgroup_elements(0).size() == 1);
}

namespace {

// independent model of a type-A system: generators act as adjacent
// transpositions of {0..n}, products compose permutations
std::vector<int> perm_of_word(const Word& w, int points) {
  std::vector<int> p(points);
  for (int i = 0; i < points; ++i) p[i] = i;
  for (Gen g : w) std::swap(p[g], p[g + 1]);  // left-to-right composition
  return p;
}

}  // namespace

TEST_CASE("type A systems match the symmetric group model") {
  for (int rank : {2, 3}) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
    for (int i = 0; i < rank; ++i) {
      names.push_back(std::string(1, static_cast<char>('a' + i)));
      m[i][i] = 1;
      if (i + 1 < rank) m[i][i + 1] = m[i + 1][i] = 3;
    }
    CoxeterSystem W(CoxeterMatrix{names, m});
    int points = rank + 1;
    Ball b = W.full_group();

    // the canonical-word model and the permutation model have the same size
    std::set<std::vector<int>> perms;
    for (ElemId w : b.elements) perms.insert(perm_of_word(W.word(w), points));
    CHECK(perms.size() == b.elements.size());

    // multiplication agrees with composition of permutations
    std::mt19937_64 rng(rank * 1000 + 7);
    for (int trial = 0; trial < 50; ++trial) {
      ElemId u = b.elements[rng() % b.elements.size()];
      ElemId v = b.elements[rng() % b.elements.size()];
      Word concat = W.word(u);
      const Word& wv = W.word(v);
      concat.insert(concat.end(), wv.begin(), wv.end());
      CHECK(perm_of_word(W.word(W.mul(u, v)), points) == perm_of_word(concat, points));
    }

    // lengths equal inversion counts in the permutation model
    for (ElemId w : b.elements) {
      auto p = perm_of_word(W.word(w), points);
      int inversions = 0;
      for (int i = 0; i < points; ++i)
        for (int j = i + 1; j < points; ++j)
          if (p[i] > p[j]) ++inversions;
      CHECK(W.length(w) == inversions);
    }

    // right descents are the descents of the inverse permutation's word;
    // check against the model directly: s is a descent iff it shortens
    for (ElemId w : b.elements) {
      auto p = perm_of_word(W.word(w), points);
      for (Gen s = 0; s < rank; ++s) {
        Word ws = W.word(w);
        ws.push_back(s);
        auto q = perm_of_word(ws, points);
        int inv_p = 0, inv_q = 0;
        for (int i = 0; i < points; ++i)
          for (int j = i + 1; j < points; ++j) {
            if (p[i] > p[j]) ++inv_p;
            if (q[i] > q[j]) ++inv_q;
          }
        bool model_descent = inv_q < inv_p;
        bool lib_descent = ((W.right_descents(w) >> s) & 1u) != 0;
        CHECK(model_descent == lib_descent);
      }
    }
  }
}
