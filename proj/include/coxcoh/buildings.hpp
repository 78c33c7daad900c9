#pragma once

// Right-angled buildings of finite thickness, modelled as graph products
// of cyclic groups: one cyclic factor of order q_s + 1 per generator,
// with factors commuting exactly when the Coxeter matrix entry is 2.
// Chambers are group elements in a canonical normal form; s-equivalence
// is differing by a right factor in the s-cyclic subgroup.  This model
// realizes the building axioms: the W-distance is the projection of the
// normal form to the Coxeter group.
//
// On top of the chamber system: foldings, residues, the characteristic
// functions g and f built from per-residue foldings, the bases B^T of
// the spaces of finitely supported functions constant on T-residues, and
// the X-realization of the building over a mirrored complex.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "coxcoh/group_ring.hpp"
#include "coxcoh/mirrored_complex.hpp"

namespace coxcoh {

using ChamberId = std::uint32_t;

struct Syllable {
  Gen s;
  int k;  // exponent in the cyclic factor, 1..q_s
  bool operator==(const Syllable& o) const { return s == o.s && k == o.k; }
  bool operator<(const Syllable& o) const { return s != o.s ? s < o.s : k < o.k; }
};

using ChamberWord = std::vector<Syllable>;

struct BuildingFunction {
  std::map<ChamberId, Int> c;
  int trust = kExactRadius;

  bool is_zero() const { return c.empty(); }
};

class Building {
 public:
  Building(const CoxeterSystem& w, std::vector<int> thickness)
      : w_(&w), q_(std::move(thickness)) {
    require(w.matrix().right_angled(), errc::validation_error,
            "buildings require a right-angled Coxeter matrix");
    require(static_cast<int>(q_.size()) == w.rank(), errc::validation_error,
            "one thickness parameter per generator");
    for (int qs : q_) {
      require(qs >= 1, errc::validation_error, "thickness parameters must be >= 1");
      require(qs <= thickness_cap_, errc::resource_limit, "thickness parameter above cap");
    }
    intern(ChamberWord{});
  }

  const CoxeterSystem& coxeter() const { return *w_; }
  int rank() const { return w_->rank(); }
  int thickness(Gen s) const { return q_[s]; }
  bool thick() const {
    for (int qs : q_)
      if (qs < 2) return false;
    return true;
  }

  ChamberId base() const { return 0; }
  const ChamberWord& word(ChamberId c) const { return words_[c]; }
  int syl_length(ChamberId c) const { return static_cast<int>(words_[c].size()); }

  bool chamber_less(ChamberId a, ChamberId b) const {
    const ChamberWord& wa = words_[a];
    const ChamberWord& wb = words_[b];
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    return wa < wb;
  }

  ChamberId chamber(ChamberWord raw) const { return intern(normalize(std::move(raw))); }

  ChamberId mul_syl(ChamberId c, Gen s, int k) const {
    ChamberWord w = words_[c];
    w.push_back({s, k});
    return chamber(std::move(w));
  }

  ChamberId mul(ChamberId a, ChamberId b) const {
    ChamberWord w = words_[a];
    const ChamberWord other = words_[b];
    w.insert(w.end(), other.begin(), other.end());
    return chamber(std::move(w));
  }

  ChamberId inv(ChamberId c) const {
    ChamberWord w;
    const ChamberWord& src = words_[c];
    for (auto it = src.rbegin(); it != src.rend(); ++it)
      w.push_back({it->s, q_[it->s] + 1 - it->k});
    return chamber(std::move(w));
  }

  // image in the Coxeter group of the syllable types
  ElemId w_project(ChamberId c) const {
    Word letters;
    for (const Syllable& syl : words_[c]) letters.push_back(syl.s);
    return w_->element(letters);
  }

  // the W-valued distance
  ElemId delta(ChamberId a, ChamberId b) const { return w_project(mul(inv(a), b)); }

  // folding centered at the base chamber
  ElemId pi(ChamberId c) const { return w_project(c); }

  bool s_equivalent(ChamberId a, ChamberId b, Gen s) const {
    ChamberWord d = words_[mul(inv(a), b)];
    if (d.empty()) return true;
    return d.size() == 1 && d[0].s == s;
  }

  std::vector<ChamberId> ball(int radius) const {
    std::vector<ChamberId> out{0};
    std::set<ChamberId> seen{0};
    std::vector<ChamberId> shell{0};
    for (int len = 1; len <= radius; ++len) {
      std::vector<ChamberId> next;
      for (ChamberId c : shell)
        for (Gen s = 0; s < rank(); ++s)
          for (int k = 1; k <= q_[s]; ++k) {
            ChamberId d = mul_syl(c, s, k);
            if (syl_length(d) == len && seen.insert(d).second) next.push_back(d);
          }
      if (next.empty()) break;
      std::sort(next.begin(), next.end(),
                [&](ChamberId a, ChamberId b) { return chamber_less(a, b); });
      out.insert(out.end(), next.begin(), next.end());
      shell = std::move(next);
    }
    return out;
  }

  // the T-residue through a chamber; finite exactly when T is spherical
  std::vector<ChamberId> residue(ChamberId c, Subset t) const {
    require(w_->is_finite_type(t), errc::not_spherical, "residue of infinite type");
    std::set<ChamberId> seen{c};
    std::vector<ChamberId> queue{c};
    while (!queue.empty()) {
      ChamberId x = queue.back();
      queue.pop_back();
      for (Gen s : bits_of(t))
        for (int k = 1; k <= q_[s]; ++k) {
          ChamberId y = mul_syl(x, s, k);
          if (seen.insert(y).second) queue.push_back(y);
        }
    }
    std::vector<ChamberId> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(),
              [&](ChamberId a, ChamberId b) { return chamber_less(a, b); });
    return out;
  }

  // lexicographically least chamber of the residue (also the gate: it
  // minimizes the folding length)
  ChamberId residue_min(ChamberId c, Subset t) const { return residue(c, t).front(); }

  // chambers with the longest folding image within a residue
  std::vector<ChamberId> residue_longest(const std::vector<ChamberId>& res) const {
    int best = -1;
    for (ChamberId c : res) best = std::max(best, w_->length(pi(c)));
    std::vector<ChamberId> out;
    for (ChamberId c : res)
      if (w_->length(pi(c)) == best) out.push_back(c);
    return out;
  }

  bool is_greedy(const std::vector<ChamberId>& res, Subset type) const {
    const auto longest = residue_longest(res);
    for (ChamberId c : longest) {
      if (w_->right_descents(pi(c)) != type) return false;
      if (residue_min(c, w_->right_descents(pi(c))) != res.front()) return false;
    }
    return true;
  }

  // characteristic function of Res(phi, S - In(pi(phi))): the basis
  // functions of spherical buildings
  BuildingFunction g_phi(ChamberId phi) const {
    require(spherical(), errc::not_right_angled_spherical,
            "g functions need a spherical right-angled building");
    Subset out = full_mask(rank()) & ~w_->right_descents(pi(phi));
    BuildingFunction f;
    for (ChamberId c : residue(phi, out)) f.c[c] = 1;
    return f;
  }

  // the per-residue folding base: lexicographically least chamber of L_R,
  // unless overridden (any choice of folding yields a basis); residues are
  // keyed by their minimal chamber together with their type
  using FoldingChoice = std::map<std::pair<ChamberId, Subset>, ChamberId>;

  ChamberId folding_base(ChamberId residue_key, Subset type,
                         const std::vector<ChamberId>& longest,
                         const FoldingChoice* override_base) const {
    if (override_base) {
      auto it = override_base->find({residue_key, type});
      if (it != override_base->end()) return it->second;
    }
    return longest.front();
  }

  // characteristic function of Res(phi, Out(pi_{L_R}(phi))) with Out
  // computed inside the type of the residue R = Res(phi, In(pi(phi)))
  BuildingFunction f_phi(ChamberId phi, const FoldingChoice* override_base = nullptr) const {
    Subset u = w_->right_descents(pi(phi));
    auto res = residue(phi, u);
    auto longest = residue_longest(res);
    require(std::count(longest.begin(), longest.end(), phi) == 1, errc::internal,
            "a chamber must have the longest folding image in its descent residue");
    ChamberId fb = folding_base(res.front(), u, longest, override_base);
    ElemId v = delta(fb, phi);
    for (Gen g : w_->word(v))
      require((u >> g) & 1u, errc::internal, "local folding left the residue type");
    Subset out_local = u & ~w_->right_descents(v);
    BuildingFunction f;
    for (ChamberId c : residue(phi, out_local)) f.c[c] = 1;
    return f;
  }

  bool spherical() const {
    return w_->is_finite_type(full_mask(rank()));
  }

  // all chambers of a spherical building
  std::vector<ChamberId> all_chambers() const {
    require(spherical(), errc::not_right_angled_spherical, "building is not spherical");
    return residue(0, full_mask(rank()));
  }

  std::size_t chamber_cap() const { return chamber_cap_; }
  void set_chamber_cap(std::size_t cap) { chamber_cap_ = cap; }

 private:
  ChamberWord normalize(ChamberWord w) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i].s == w[i + 1].s) {
          int k = (w[i].k + w[i + 1].k) % (q_[w[i].s] + 1);
          Gen s = w[i].s;
          w.erase(w.begin() + i, w.begin() + i + 2);
          if (k != 0) w.insert(w.begin() + i, {s, k});
          changed = true;
          break;
        }
        if (w_->matrix().order(w[i].s, w[i + 1].s) == 2 && w[i + 1].s < w[i].s) {
          std::swap(w[i], w[i + 1]);
          changed = true;
        }
      }
    }
    return w;
  }

  ChamberId intern(const ChamberWord& nf) const {
    auto it = index_.find(nf);
    if (it != index_.end()) return it->second;
    require(words_.size() < chamber_cap_, errc::resource_limit, "chamber cap exceeded");
    ChamberId id = static_cast<ChamberId>(words_.size());
    words_.push_back(nf);
    index_.emplace(nf, id);
    return id;
  }

  const CoxeterSystem* w_;
  std::vector<int> q_;
  int thickness_cap_ = 4;
  std::size_t chamber_cap_ = 200000;
  mutable std::vector<ChamberWord> words_;
  mutable std::map<ChamberWord, ChamberId> index_;
};

// A spherical right-angled building is a product of finite sets; the
// graph-product model with all entries 2 realizes it directly.
inline Building spherical_building(const CoxeterSystem& w, std::vector<int> thickness) {
  require(w.matrix().right_angled() && w.is_finite_type(full_mask(w.rank())),
          errc::not_right_angled_spherical, "need m_st = 2 for all pairs");
  return Building(w, std::move(thickness));
}

// --- bases of the residue-constant function spaces -------------------------

struct BuildingBasisFunction {
  ChamberId phi = 0;
  Subset residue_type = 0;   // In(pi(phi))
  Subset out_local = 0;      // letters not used by the local folding image
  std::set<ChamberId> support;
};

struct BuildingBasisReport {
  Subset t = 0;
  std::vector<BuildingBasisFunction> functions;
  bool a_t_is_zero = false;   // T not spherical: no nonzero finitely supported invariants
  bool independent = false;
  bool spanning = false;      // every in-ball T-residue indicator is in the span
  int residues_checked = 0;
  std::optional<Int> det;     // spherical buildings: determinant over residue indicators
};

// The basis B^T of functions constant on T-residues, truncated to the
// ball, with independence, spanning and (for spherical buildings)
// unitriangularity verification.
inline BuildingBasisReport basis_bt(const Building& b, Subset t, int radius,
                                    const Building::FoldingChoice* override_base = nullptr) {
  const CoxeterSystem& w = b.coxeter();
  BuildingBasisReport rep;
  rep.t = t;
  if (!w.is_finite_type(t)) {
    // residues of type T are infinite: a finitely supported function
    // constant on them must vanish
    rep.a_t_is_zero = true;
    rep.independent = true;
    rep.spanning = true;
    return rep;
  }
  std::vector<ChamberId> chambers = b.ball(radius);
  std::map<ChamberId, int> chamber_pos;
  for (std::size_t i = 0; i < chambers.size(); ++i)
    chamber_pos[chambers[i]] = static_cast<int>(i);

  for (ChamberId phi : chambers) {
    Subset u = w.right_descents(b.pi(phi));
    if (!subset_contains(u, t)) continue;
    BuildingFunction f = b.f_phi(phi, override_base);
    BuildingBasisFunction bf;
    bf.phi = phi;
    bf.residue_type = u;
    // recompute the local folding image to record which letters are free
    auto res = b.residue(phi, u);
    auto longest = b.residue_longest(res);
    ElemId v = b.delta(b.folding_base(res.front(), u, longest, override_base), phi);
    bf.out_local = u & ~w.right_descents(v);
    if (!subset_contains(bf.out_local, t)) continue;
    bool inside = true;
    for (const auto& [c, coeff] : f.c) {
      if (!chamber_pos.count(c)) inside = false;
      bf.support.insert(c);
    }
    if (!inside) continue;  // keep only functions supported in the ball
    rep.functions.push_back(std::move(bf));
  }

  // linear independence over the chambers of the ball
  IntMatrix m(static_cast<int>(chambers.size()), static_cast<int>(rep.functions.size()));
  for (int j = 0; j < static_cast<int>(rep.functions.size()); ++j)
    for (ChamberId c : rep.functions[j].support) m.at(chamber_pos.at(c), j) = 1;
  rep.independent = rank(m) == static_cast<int>(rep.functions.size());

  // spanning: indicator functions of T-residues lying inside the ball
  std::set<ChamberId> seen_residues;
  rep.spanning = true;
  RatMatrix mq = to_rational(m);
  for (ChamberId c : chambers) {
    auto res = b.residue(c, t);
    if (res.front() != c) continue;  // one representative per residue
    bool inside = true;
    for (ChamberId x : res)
      if (!chamber_pos.count(x)) inside = false;
    if (!inside) continue;
    ++rep.residues_checked;
    std::vector<Rat> target(chambers.size(), Rat(0));
    for (ChamberId x : res) target[chamber_pos.at(x)] = 1;
    if (!solve(mq, target).has_value()) rep.spanning = false;
  }

  // unitriangular change of basis for spherical buildings: order the basis
  // functions by the folding length of their defining chamber and express
  // them over the residue indicators
  if (b.spherical()) {
    std::vector<ChamberId> reps;  // minimal chambers of T-residues
    for (ChamberId c : b.all_chambers())
      if (b.residue_min(c, t) == c) reps.push_back(c);
    if (reps.size() == rep.functions.size()) {
      std::map<ChamberId, int> res_index;
      for (std::size_t i = 0; i < reps.size(); ++i) res_index[reps[i]] = static_cast<int>(i);
      std::vector<int> order(rep.functions.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
      std::sort(order.begin(), order.end(), [&](int i, int j) {
        return w.length(b.pi(rep.functions[i].phi)) < w.length(b.pi(rep.functions[j].phi));
      });
      IntMatrix cb(static_cast<int>(reps.size()), static_cast<int>(rep.functions.size()));
      for (int col = 0; col < static_cast<int>(order.size()); ++col) {
        const auto& f = rep.functions[order[col]];
        // expand the function over residue indicators: it is constant on
        // T-residues, so record the value at each residue representative
        for (ChamberId r : reps)
          if (f.support.count(r)) cb.at(res_index.at(r), col) = 1;
      }
      rep.det = determinant(cb);
    }
  }
  return rep;
}

// --- realization over a mirrored complex -------------------------------------

struct RealizedBuilding {
  struct Cell {
    ChamberId residue_key;
    int base;
  };
  std::vector<std::vector<Cell>> cells;
  ChainComplexZ complex;
  bool full = false;
};

struct RealizeReport {
  bool full = false;
  HomologySummary lhs;            // direct cohomology (complete case)
  HomologySummary rhs;            // assembled from relative factors and hat counts
  std::map<Subset, int> hat_counts;
  bool cohomology_equal = false;  // complete case
  bool partition_ok = false;      // per-cell partition of basis keys
  Int euler_cells = 0;
};

// Cells of (Phi x X)/~ : pairs (S(c)-residue, c), with boundary through
// residue inclusion.
inline RealizedBuilding realize_complex(const Building& b, const MirroredComplex& x,
                                        int radius) {
  const CoxeterSystem& w = b.coxeter();
  auto mask = x.mirror_masks(w);
  for (int c = 0; c < x.num_cells(); ++c)
    require(w.is_finite_type(mask[c]), errc::non_spherical_mirror_intersection,
            "realization requires spherical mirror intersections");
  RealizedBuilding u;
  std::vector<ChamberId> chambers = b.spherical() ? b.all_chambers() : b.ball(radius);
  u.full = b.spherical();
  std::set<ChamberId> in_ball(chambers.begin(), chambers.end());
  int top = x.top_dim();
  if (top < 0) return u;
  u.cells.resize(top + 1);
  std::map<std::pair<ChamberId, int>, std::pair<int, int>> index;
  for (int k = 0; k <= top; ++k)
    for (int c : x.cells_of_dim(k)) {
      std::set<ChamberId> keys;
      for (ChamberId phi : chambers) keys.insert(b.residue_min(phi, mask[c]));
      for (ChamberId key : keys) {
        if (!in_ball.count(key)) continue;
        index[{key, c}] = {k, static_cast<int>(u.cells[k].size())};
        u.cells[k].push_back({key, c});
      }
    }
  u.complex.lo = 0;
  u.complex.dims.resize(top + 1);
  for (int k = 0; k <= top; ++k) u.complex.dims[k] = static_cast<int>(u.cells[k].size());
  u.complex.d.resize(top + 1);
  for (int k = 0; k <= top; ++k)
    u.complex.d[k] = IntMatrix(k == 0 ? 0 : u.complex.dims[k - 1], u.complex.dims[k]);
  for (const auto& e : x.incidences()) {
    int k = x.cell_dim(e.cell);
    for (std::size_t pos = 0; pos < u.cells[k].size(); ++pos) {
      const auto& cell = u.cells[k][pos];
      if (cell.base != e.cell) continue;
      ChamberId fkey = b.residue_min(cell.residue_key, mask[e.face]);
      auto it = index.find({fkey, e.face});
      require(it != index.end(), errc::internal, "face residue left the ball");
      u.complex.d[k].at(it->second.second, static_cast<int>(pos)) += e.coeff;
    }
  }
  u.complex.validate();
  return u;
}

inline RealizeReport realize_report(const Building& b, const MirroredComplex& x, int radius) {
  const CoxeterSystem& w = b.coxeter();
  RealizedBuilding u = realize_complex(b, x, radius);
  RealizeReport rep;
  rep.full = u.full;
  rep.euler_cells = euler_characteristic_cells(u.complex);
  std::vector<ChamberId> chambers = b.spherical() ? b.all_chambers() : b.ball(radius);

  // hat counts: functions whose local folding image uses exactly S - T
  auto hat_class = [&](ChamberId phi) {
    Subset uu = w.right_descents(b.pi(phi));
    auto res = b.residue(phi, uu);
    auto longest = b.residue_longest(res);
    ElemId v = b.delta(b.folding_base(res.front(), uu, longest, nullptr), phi);
    return uu & ~w.right_descents(v);
  };
  std::map<ChamberId, Subset> classes;
  for (ChamberId phi : chambers) classes[phi] = hat_class(phi);
  SphericalPoset poset = w.spherical_poset();
  for (const auto& entry : poset.subsets) rep.hat_counts[entry.mask] = 0;
  for (const auto& [phi, cls] : classes) rep.hat_counts[cls]++;

  // per-cell partition: the basis keys for A^{S(c)} are exactly the union
  // of the hat classes above S(c)
  rep.partition_ok = true;
  auto mask = x.mirror_masks(w);
  for (int c = 0; c < x.num_cells(); ++c) {
    int direct = 0, partitioned = 0;
    for (const auto& [phi, cls] : classes)
      if (subset_contains(cls, mask[c])) ++direct;
    for (const auto& entry : poset.subsets)
      if (subset_contains(entry.mask, mask[c])) partitioned += rep.hat_counts[entry.mask];
    if (direct != partitioned) rep.partition_ok = false;
  }

  // assembled cohomology
  std::map<int, DegreeSummary> rhs;
  for (const auto& entry : poset.subsets) {
    auto rel = cohomology(x.relative_chain_complex(
        x.mirror_union_cells(w, full_mask(w.rank()) & ~entry.mask)));
    for (const auto& [deg, s] : rel.by_degree) {
      rhs[deg].betti += s.betti * rep.hat_counts[entry.mask];
      for (int copy = 0; copy < rep.hat_counts[entry.mask]; ++copy)
        rhs[deg].torsion.insert(rhs[deg].torsion.end(), s.torsion.begin(), s.torsion.end());
    }
  }
  rep.rhs.by_degree = std::move(rhs);
  if (u.full) {
    rep.lhs = cohomology(u.complex);
    rep.cohomology_equal = rep.lhs == rep.rhs;
  }
  return rep;
}

}  // namespace coxcoh
