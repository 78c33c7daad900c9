#pragma once

// The verification suite run by `coxcoh verify` and by the acceptance
// binary: each check is exact (tolerance zero) and reports the smallest
// failing witness it encounters.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coxcoh/buildings.hpp"
#include "coxcoh/corpus.hpp"
#include "coxcoh/equivariant.hpp"
#include "coxcoh/group_ring.hpp"
#include "coxcoh/hecke.hpp"

namespace coxcoh {

struct CheckResult {
  std::string id;
  std::string description;
  bool pass = true;
  std::string detail;

  void fail_with(const std::string& witness) {
    pass = false;
    if (detail.empty()) detail = witness;  // keep the first (smallest) witness
  }
};

namespace verify_detail {

inline std::string subset_str(const CoxeterSystem& w, Subset t) {
  std::string s = "{";
  bool first = true;
  for (Gen g : bits_of(t)) {
    if (!first) s += ",";
    s += w.gen_name(g);
    first = false;
  }
  return s + "}";
}

inline Ball corpus_ball(const CoxeterSystem& w, int radius) {
  Ball b = w.ball(radius);
  if (!b.complete) return b;
  return w.full_group();
}

// chambers used in the oracle-equivalence criterion: the Davis chamber,
// a bare point, and an interval with mirrored endpoints
inline std::vector<MirroredComplex> test_chambers(const CoxeterSystem& w) {
  std::vector<MirroredComplex> out;
  out.push_back(davis_chamber(w));
  out.push_back(point_complex());
  if (w.rank() >= 2)
    out.push_back(interval_complex({w.gen_name(0), w.gen_name(1)}));
  else
    out.push_back(interval_complex({w.gen_name(0)}));
  return out;
}

}  // namespace verify_detail

// 1: descent bases are unitriangular with determinant one, and the
// coinvariant projections of the right descent vectors have full rank.
inline CheckResult check_basis_theorems() {
  using namespace verify_detail;
  CheckResult r{"1", "descent bases and coinvariant projections", true, ""};
  for (const auto& entry : corpus()) {
    CoxeterSystem w(entry.matrix);
    GroupRing a(w);
    for (int radius : {4, 6}) {
      Ball ball = corpus_ball(w, radius);
      for (Side side : {Side::left, Side::right}) {
        for (ElemId v : ball.elements) {
          const auto& b = a.descent_vector(v, side);
          if (b.coeff(v) != 1)
            r.fail_with(entry.name + ": diagonal != 1 at length " +
                        std::to_string(w.length(v)));
          for (const auto& [u, coeff] : b.c)
            if (u != v && w.length(u) >= w.length(v))
              r.fail_with(entry.name + ": triangularity failed at length " +
                          std::to_string(w.length(v)));
        }
      }
      // coinvariant projections: for every U, the projected right descent
      // vectors with In(w) inside U are independent
      for (Subset u = 0; u <= full_mask(w.rank()); ++u) {
        Subset co = full_mask(w.rank()) & ~u;
        std::vector<ElemId> cols;
        for (ElemId v : ball.elements)
          if (subset_contains(u, w.right_descents(v))) cols.push_back(v);
        std::map<ElemId, int> rows;
        for (ElemId v : ball.elements) {
          ElemId rep = w.coset_min_rep(v, co, Side::right);
          if (!rows.count(rep)) rows.emplace(rep, static_cast<int>(rows.size()));
        }
        IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (int j = 0; j < static_cast<int>(cols.size()); ++j)
          for (const auto& [rep, coeff] : a.coinvariants_project(a.descent_vector(cols[j], Side::right), co))
            m.at(rows.at(rep), j) = coeff;
        if (rank(m) != static_cast<int>(cols.size()))
          r.fail_with(entry.name + ": projection rank deficit at U = " + subset_str(w, u));
        if (static_cast<int>(cols.size()) !=
            static_cast<int>(w.reduced_reps(co, Side::right, ball).size()))
          r.fail_with(entry.name + ": column count mismatch at U = " + subset_str(w, u));
      }
      if (ball.complete) break;  // the two radii coincide for finite groups
    }
  }
  return r;
}

// 2: partition of the invariant ideals by descent classes, with honest
// rank computations on the truncated spans.
inline CheckResult check_ideal_partitions() {
  using namespace verify_detail;
  CheckResult r{"2", "invariant ideals partition into descent slices", true, ""};
  for (const auto& entry : corpus()) {
    CoxeterSystem w(entry.matrix);
    GroupRing a(w);
    Ball ball = corpus_ball(w, 4);
    SphericalPoset poset = w.spherical_poset();
    for (const auto& uu : poset.subsets) {
      int max_t = 0;
      for (ElemId g : a.subgroup(uu.mask)) max_t = std::max(max_t, w.length(g));
      // labels with In' containing U, truncation-matched to the span below
      int labels = 0;
      int slice_sum = 0;
      std::map<Subset, int> per_slice;
      for (ElemId v : ball.elements) {
        if (!subset_contains(w.left_descents(v), uu.mask)) continue;
        ElemId rep = w.coset_min_rep(v, uu.mask, Side::left);
        if (!ball.complete && w.length(rep) + max_t > ball.radius) continue;
        ++labels;
        ++per_slice[w.left_descents(v)];
      }
      for (const auto& [slice, count] : per_slice) {
        if (!w.is_finite_type(slice))
          r.fail_with(entry.name + ": non-spherical descent class");
        slice_sum += count;
      }
      if (slice_sum != labels) r.fail_with(entry.name + ": slice partition miscount");
      auto cols = a.ideal_columns(uu.mask, ball);
      int rk = cols.empty() ? 0 : rank(a.to_columns(cols, ball));
      if (rk != labels)
        r.fail_with(entry.name + ": rank(A^U) = " + std::to_string(rk) + " but " +
                    std::to_string(labels) + " labels at U = " + subset_str(w, uu.mask));
    }
  }
  return r;
}

// 3: direct (co)homology of the basic construction equals the assembled
// right-hand side for every finite corpus entry and chamber.
inline CheckResult check_homology_oracle() {
  using namespace verify_detail;
  CheckResult r{"3", "equivariant (co)homology matches the assembled form", true, ""};
  for (const auto& entry : corpus()) {
    if (!entry.finite) continue;
    CoxeterSystem w(entry.matrix);
    int chamber_index = 0;
    for (const auto& x : test_chambers(w)) {
      for (auto variance : {Variance::invariants, Variance::coinvariants}) {
        auto rep = homology_formula(w, x, 12, variance);
        if (!rep.finite) r.fail_with(entry.name + ": expected a finite group");
        if (!rep.lhs_equals_rhs)
          r.fail_with(entry.name + ": mismatch on chamber " +
                      std::to_string(chamber_index) +
                      (variance == Variance::invariants ? " (cohomology)" : " (homology)"));
      }
      ++chamber_index;
    }
  }
  return r;
}

// 4: the two infinite desk examples.
inline CheckResult check_infinite_desk() {
  CheckResult r{"4", "infinite dihedral and free-product desk checks", true, ""};
  {
    CoxeterSystem w(corpus_entry("dihedral-inf").matrix);
    auto k = davis_chamber(w);
    auto rep = homology_formula(w, k, 4, Variance::invariants);
    if (rep.rhs.betti(1) != 1 || rep.rhs.betti(0) != 0)
      r.fail_with("dihedral-inf: degree-one report is not Z");
    if (!rep.contributing_slices_stable) r.fail_with("dihedral-inf: unstable slice ranks");
    for (const auto& piece : rep.pieces) {
      bool contributes = false;
      for (const auto& [deg, s] : piece.rel.by_degree)
        if (!s.trivial()) contributes = true;
      if (contributes != (piece.t == 0))
        r.fail_with("dihedral-inf: contribution outside the empty slice");
    }
  }
  {
    CoxeterSystem w(corpus_entry("free-3").matrix);
    auto k = davis_chamber(w);
    auto rep = homology_formula(w, k, 3, Variance::invariants);
    for (const auto& piece : rep.pieces) {
      if (piece.t == 0) {
        if (piece.rel.betti(1) != 2 || piece.slice_rank != 1)
          r.fail_with("free-3: bottom piece should contribute rank two");
      } else {
        if (piece.rel.betti(1) != 1)
          r.fail_with("free-3: singleton relative factor should be Z");
        if (piece.slice_rank != 7)
          r.fail_with("free-3: singleton slice count at radius 3 should be 7, got " +
                      std::to_string(piece.slice_rank));
      }
    }
  }
  return r;
}

// 5: graded terms and degeneration of the spectral sequence, with
// character checks on finite groups and the sign action on the bottom slice.
inline CheckResult check_graded_and_spectral() {
  using namespace verify_detail;
  CheckResult r{"5", "graded terms, characters, spectral degeneration", true, ""};
  for (const auto& entry : corpus()) {
    CoxeterSystem w(entry.matrix);
    GroupRing a(w);
    auto k = davis_chamber(w);
    int radius = entry.finite ? 12 : 4;
    Ball ball = corpus_ball(w, radius);
    for (int p = 0; p <= w.rank() + 1; ++p) {
      auto rep = graded_term(w, a, k, radius, p, Variance::invariants);
      if (!rep.ranks_equal)
        r.fail_with(entry.name + ": graded rank mismatch at level " + std::to_string(p));
      if (entry.finite && !rep.traces_computed)
        r.fail_with(entry.name + ": traces not computed on a finite group");
      if (rep.traces_computed && !rep.traces_equal)
        r.fail_with(entry.name + ": character mismatch at level " + std::to_string(p));
      auto reph = graded_term(w, a, k, radius, p, Variance::coinvariants);
      if (!reph.ranks_equal)
        r.fail_with(entry.name + ": homology graded rank mismatch at level " +
                    std::to_string(p));
      for (int q = -p; p + q <= k.top_dim(); ++q) {
        auto sp = spectral_degeneration_check(w, k, ball, p, q);
        if (!sp.equal)
          r.fail_with(entry.name + ": E1 != Einf at (" + std::to_string(p) + "," +
                      std::to_string(q) + ")");
      }
    }
    // the bottom slice carries the sign action
    for (Gen s = 0; s < w.rank(); ++s) {
      auto qa = a.quotient_action(0, s, Side::left, ball);
      if (qa.m.rows() != 1 || qa.m.at(0, 0) != -1)
        r.fail_with(entry.name + ": bottom slice action is not the sign character");
    }
  }
  return r;
}

// 6: Solomon-style dimension bookkeeping for S3 and A3.
inline CheckResult check_solomon() {
  CheckResult r{"6", "graded dimensions equal descent-class counts", true, ""};
  {
    CoxeterSystem w(corpus_entry("dihedral-3").matrix);
    GroupRing a(w);
    auto rep = a.solomon_check();
    if (!rep.pass) r.fail_with("dihedral-3: dimension bookkeeping failed");
    std::vector<int> dims;
    for (const auto& [t, d] : rep.dim_a) dims.push_back(d);
    std::sort(dims.begin(), dims.end());
    if (dims != std::vector<int>{1, 1, 2, 2})
      r.fail_with("dihedral-3: expected dimensions 1,2,2,1");
  }
  {
    CoxeterSystem w(corpus_entry("a3").matrix);
    GroupRing a(w);
    auto rep = a.solomon_check();
    if (!rep.pass) r.fail_with("a3: dimension bookkeeping failed");
    Int total = 0;
    for (const auto& [t, d] : rep.dim_a) total += d;
    if (total != 24) r.fail_with("a3: dimensions do not sum to the group order");
  }
  return r;
}

// 7: building bases and realizations.
inline CheckResult check_buildings() {
  using namespace verify_detail;
  CheckResult r{"7", "building bases and realizations", true, ""};
  {
    CoxeterSystem w(corpus_entry("ra-square").matrix);
    Building b(w, {2, 2});
    for (Subset t = 0; t <= full_mask(w.rank()); ++t) {
      auto rep = basis_bt(b, t, 2);
      if (!rep.independent || !rep.spanning)
        r.fail_with("3x3: basis failure at T = " + subset_str(w, t));
      if (!rep.det || (*rep.det != 1 && *rep.det != -1))
        r.fail_with("3x3: change of basis is not unimodular at T = " + subset_str(w, t));
    }
    auto rr = realize_report(b, davis_chamber(w), 2);
    if (!rr.cohomology_equal) r.fail_with("3x3: realization cohomology mismatch");
    if (!rr.partition_ok) r.fail_with("3x3: per-cell partition failed");
  }
  {
    CoxeterMatrix m{{"s", "t", "u"}, {{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}};
    CoxeterSystem w(m);
    Building b(w, {2, 2, 2});
    for (Subset t = 0; t <= full_mask(w.rank()); ++t) {
      auto rep = basis_bt(b, t, 3);
      if (!rep.independent || !rep.spanning)
        r.fail_with("3x3x3: basis failure at T = " + subset_str(w, t));
      if (!rep.det || (*rep.det != 1 && *rep.det != -1))
        r.fail_with("3x3x3: change of basis is not unimodular at T = " + subset_str(w, t));
    }
    auto rr = realize_report(b, davis_chamber(w), 3);
    if (!rr.cohomology_equal) r.fail_with("3x3x3: realization cohomology mismatch");
    if (!rr.partition_ok) r.fail_with("3x3x3: per-cell partition failed");
  }
  {
    CoxeterSystem w(corpus_entry("ra-dinf").matrix);
    Building b(w, {2, 2});
    if (!b.thick()) r.fail_with("ra-dinf: building is not thick");
    for (Subset t : {Subset(0), Subset(0b01), Subset(0b10)}) {
      auto rep = basis_bt(b, t, 4);
      if (!rep.independent)
        r.fail_with("ra-dinf: dependent basis at T = " + subset_str(w, t));
      if (!rep.spanning)
        r.fail_with("ra-dinf: spanning failure at T = " + subset_str(w, t));
      if (rep.residues_checked == 0) r.fail_with("ra-dinf: no residues inside the ball");
    }
    auto rr = realize_report(b, davis_chamber(w), 4);
    if (!rr.partition_ok) r.fail_with("ra-dinf: per-cell partition failed");
  }
  return r;
}

// 8: Hecke idempotents over the parameter grid, braid invariance of the
// weights, and the q = 1 specialization of the graded rank tables.
inline CheckResult check_hecke() {
  using namespace verify_detail;
  CheckResult r{"8", "Hecke idempotents, weights, q = 1 specialization", true, ""};
  for (const auto& entry : corpus()) {
    CoxeterSystem w(entry.matrix);
    SphericalPoset poset = w.spherical_poset();
    for (Rat qv : {Rat(1, 2), Rat(1), Rat(2), Rat(3)}) {
      HeckeAlgebra h(w, std::vector<Rat>(w.rank(), qv));
      for (const auto& tt : poset.subsets) {
        auto av = h.a(tt.mask);
        auto hv = h.h(tt.mask);
        std::ostringstream qs;
        qs << qv;
        if (!h.equal(h.mul(av, av), av))
          r.fail_with(entry.name + ": symmetrizer not idempotent at q = " + qs.str());
        if (!h.equal(h.mul(hv, hv), hv))
          r.fail_with(entry.name + ": alternator not idempotent at q = " + qs.str());
      }
    }
  }
  {
    // braid invariance of the weights: 1000 samples with zero failures
    CoxeterSystem w(corpus_entry("a3").matrix);
    HeckeAlgebra h(w, {Rat(2), Rat(2), Rat(2)});
    Ball b = w.full_group();
    std::mt19937_64 rng(97531);
    for (int trial = 0; trial < 1000; ++trial) {
      ElemId v = b.elements[rng() % b.elements.size()];
      auto orbit = w.braid_orbit(w.word(v));
      const Word& pick = orbit[rng() % orbit.size()];
      Rat weight = 1;
      for (Gen g : pick) weight *= h.q(g);
      if (weight != h.q_weight(v)) {
        r.fail_with("a3: braid-variant weight at length " + std::to_string(w.length(v)));
        break;
      }
    }
  }
  for (const auto& entry : corpus()) {
    CoxeterSystem w(entry.matrix);
    GroupRing a(w);
    HeckeAlgebra h(w, std::vector<Rat>(w.rank(), Rat(1)));
    auto k = davis_chamber(w);
    int radius = entry.finite ? 12 : 4;
    for (int p = 0; p <= w.rank() + 1; ++p) {
      auto hrep = hecke_graded_term(h, a, k, radius, p);
      auto grep = graded_term(w, a, k, radius, p, Variance::invariants, false);
      if (!hrep.ranks_equal || !hrep.deformed_basis_ok || !hrep.ideal_ranks_ok)
        r.fail_with(entry.name + ": deformed graded failure at level " + std::to_string(p));
      if (!hrep.empty_slice_sign_action)
        r.fail_with(entry.name + ": bottom slice is not the sign character");
      if (!hrep.matches_group_ring_at_one)
        r.fail_with(entry.name + ": q = 1 actions differ from the integer ones");
      std::set<int> degrees;
      for (auto& [d, v] : hrep.lhs_betti) degrees.insert(d);
      for (auto& [d, s] : grep.lhs.by_degree) degrees.insert(d);
      for (int d : degrees) {
        int hr = hrep.lhs_betti.count(d) ? hrep.lhs_betti.at(d) : 0;
        if (hr != grep.lhs.betti(d))
          r.fail_with(entry.name + ": rank table differs from the integer one at level " +
                      std::to_string(p));
      }
    }
  }
  return r;
}

// 9: the free-product cocycle pairings.
inline CheckResult check_tripod_demo() {
  CheckResult r{"9", "free-product cocycle pairings", true, ""};
  for (int radius : {4, 6}) {
    auto rep = tripod_cocycle_demo(radius);
    if (rep.pairing_x != 1)
      r.fail_with("pairing of the cocycle with the line is not 1 at radius " +
                  std::to_string(radius));
    if (rep.pairing_xs != 0)
      r.fail_with("pairing of the translate with the line is not 0 at radius " +
                  std::to_string(radius));
    if (!rep.delta_x_zero) r.fail_with("the cocycle has a nonzero coboundary");
    if (!rep.line_is_cycle) r.fail_with("the line is not a locally finite cycle");
    if (!rep.sum_vanishes_in_graded)
      r.fail_with("the symmetrized cocycle does not vanish in the bottom graded piece");
  }
  return r;
}

inline std::vector<CheckResult> run_verification_suite(const std::string& suite = "all") {
  const std::vector<std::pair<std::string, std::function<CheckResult()>>> checks = {
      {"1", check_basis_theorems}, {"2", check_ideal_partitions},
      {"3", check_homology_oracle}, {"4", check_infinite_desk},
      {"5", check_graded_and_spectral}, {"6", check_solomon},
      {"7", check_buildings}, {"8", check_hecke},
      {"9", check_tripod_demo},
  };
  std::vector<CheckResult> out;
  for (const auto& [id, fn] : checks)
    if (suite == "all" || suite == id) out.push_back(fn());
  require(!out.empty(), errc::validation_error, "unknown suite '" + suite + "'");
  return out;
}

}  // namespace coxcoh
