#pragma once

// Finite regular CW complexes with mirror structures: a family of
// subcomplexes X_s indexed by generator names.  Includes the Davis
// chamber (order complex of the poset of spherical subsets), mirror
// unions/intersections, and relative chain complexes.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "coxcoh/coxeter.hpp"
#include "coxcoh/homology.hpp"

namespace coxcoh {

class MirroredComplex {
 public:
  struct Incidence {
    int cell;
    int face;
    Int coeff;
  };

  MirroredComplex() = default;
  MirroredComplex(std::vector<int> cell_dims, std::vector<Incidence> incidence,
                  std::map<std::string, std::set<int>> mirrors)
      : dims_(std::move(cell_dims)), inc_(std::move(incidence)), mirrors_(std::move(mirrors)) {
    validate();
  }

  int num_cells() const { return static_cast<int>(dims_.size()); }
  int cell_dim(int c) const { return dims_[c]; }
  int top_dim() const {
    int d = -1;
    for (int x : dims_) d = std::max(d, x);
    return d;
  }
  const std::vector<Incidence>& incidences() const { return inc_; }
  const std::map<std::string, std::set<int>>& mirrors() const { return mirrors_; }

  bool empty() const { return dims_.empty(); }

  std::vector<int> cells_of_dim(int k) const {
    std::vector<int> out;
    for (int c = 0; c < num_cells(); ++c)
      if (dims_[c] == k) out.push_back(c);
    return out;
  }

  // S(c) as a bitmask in the generator order of W; every mirror name must
  // be a generator of W.
  std::vector<Subset> mirror_masks(const CoxeterSystem& w) const {
    std::vector<Subset> mask(num_cells(), 0);
    for (const auto& [name, cells] : mirrors_) {
      Gen s = w.gen_index(name);
      for (int c : cells) mask[c] |= Subset(1) << s;
    }
    return mask;
  }

  // Cells lying in the union of the mirrors over U (the subcomplex X^U).
  std::vector<int> mirror_union_cells(const CoxeterSystem& w, Subset u) const {
    auto mask = mirror_masks(w);
    std::vector<int> out;
    for (int c = 0; c < num_cells(); ++c)
      if ((mask[c] & u) != 0) out.push_back(c);
    return out;
  }

  // Cells in the intersection of the mirrors over T (the subcomplex X_T);
  // T empty gives the whole complex.
  std::vector<int> mirror_intersection_cells(const CoxeterSystem& w, Subset t) const {
    auto mask = mirror_masks(w);
    std::vector<int> out;
    for (int c = 0; c < num_cells(); ++c)
      if (subset_contains(mask[c], t)) out.push_back(c);
    return out;
  }

  // Stand-alone complex on a face-closed cell subset, mirrors restricted.
  MirroredComplex restrict(const std::vector<int>& cells) const {
    std::set<int> keep(cells.begin(), cells.end());
    require_face_closed(keep);
    std::map<int, int> remap;
    std::vector<int> dims;
    for (int c = 0; c < num_cells(); ++c)
      if (keep.count(c)) {
        remap[c] = static_cast<int>(dims.size());
        dims.push_back(dims_[c]);
      }
    std::vector<Incidence> inc;
    for (const auto& e : inc_)
      if (keep.count(e.cell) && keep.count(e.face))
        inc.push_back({remap[e.cell], remap[e.face], e.coeff});
    std::map<std::string, std::set<int>> mirrors;
    for (const auto& [name, cs] : mirrors_) {
      std::set<int> sub;
      for (int c : cs)
        if (keep.count(c)) sub.insert(remap[c]);
      mirrors[name] = std::move(sub);
    }
    return MirroredComplex(std::move(dims), std::move(inc), std::move(mirrors));
  }

  ChainComplexZ chain_complex() const { return relative_chain_complex({}); }

  // Chain complex of X relative to a face-closed subcomplex given by its
  // cell ids; spanned by the remaining cells.
  ChainComplexZ relative_chain_complex(const std::vector<int>& subcomplex) const {
    std::set<int> dropped(subcomplex.begin(), subcomplex.end());
    for (int c : subcomplex)
      require(c >= 0 && c < num_cells(), errc::not_a_subcomplex, "cell id out of range");
    require_face_closed(dropped, errc::not_a_subcomplex);

    ChainComplexZ cc;
    int top = top_dim();
    if (top < 0) return cc;
    cc.lo = 0;
    cc.dims.assign(top + 1, 0);
    std::vector<std::map<int, int>> index(top + 1);  // cell -> position within its degree
    for (int c = 0; c < num_cells(); ++c) {
      if (dropped.count(c)) continue;
      index[dims_[c]][c] = cc.dims[dims_[c]]++;
    }
    cc.d.resize(top + 1);
    for (int k = 0; k <= top; ++k)
      cc.d[k] = IntMatrix(k == 0 ? 0 : cc.dims[k - 1], cc.dims[k]);
    for (const auto& e : inc_) {
      if (dropped.count(e.cell) || dropped.count(e.face)) continue;
      int k = dims_[e.cell];
      cc.d[k].at(index[k - 1][e.face], index[k][e.cell]) += e.coeff;
    }
    cc.validate();
    return cc;
  }

  void validate() const {
    for (const auto& e : inc_) {
      require(e.cell >= 0 && e.cell < num_cells() && e.face >= 0 && e.face < num_cells(),
              errc::bad_incidence, "incidence references unknown cell");
      require(dims_[e.face] == dims_[e.cell] - 1, errc::bad_incidence,
              "incidence must relate a cell to a codimension-1 face");
      require(e.coeff != 0, errc::bad_incidence, "zero incidence coefficient");
    }
    {
      std::set<std::pair<int, int>> seen;
      for (const auto& e : inc_)
        require(seen.insert({e.cell, e.face}).second, errc::bad_incidence,
                "duplicate incidence pair");
    }
    // dd = 0
    ChainComplexZ cc;
    int top = top_dim();
    if (top >= 0) {
      cc.lo = 0;
      cc.dims.assign(top + 1, 0);
      std::vector<std::map<int, int>> index(top + 1);
      for (int c = 0; c < num_cells(); ++c) index[dims_[c]][c] = cc.dims[dims_[c]]++;
      cc.d.resize(top + 1);
      for (int k = 0; k <= top; ++k)
        cc.d[k] = IntMatrix(k == 0 ? 0 : cc.dims[k - 1], cc.dims[k]);
      for (const auto& e : inc_)
        cc.d[dims_[e.cell]].at(index[dims_[e.cell] - 1][e.face], index[dims_[e.cell]][e.cell]) +=
            e.coeff;
      cc.validate();
    }
    // each mirror is a subcomplex
    for (const auto& [name, cells] : mirrors_) {
      for (int c : cells)
        require(c >= 0 && c < num_cells(), errc::mirror_not_subcomplex,
                "mirror references unknown cell");
      std::set<int> set(cells.begin(), cells.end());
      require_face_closed(set, errc::mirror_not_subcomplex);
    }
  }

 private:
  void require_face_closed(const std::set<int>& cells,
                           errc code = errc::not_a_subcomplex) const {
    for (const auto& e : inc_)
      if (cells.count(e.cell))
        require(cells.count(e.face) != 0, code, "cell set is not closed under faces");
  }

  std::vector<int> dims_;
  std::vector<Incidence> inc_;
  std::map<std::string, std::set<int>> mirrors_;
};

// The Davis chamber: the order complex of the poset of spherical subsets.
// Simplices are strictly increasing chains T_0 < ... < T_k; deleting the
// j-th entry is a face with sign (-1)^j.  The mirror for s is the full
// subcomplex on chains whose members all contain s.
inline MirroredComplex davis_chamber(const CoxeterSystem& w) {
  SphericalPoset poset = w.spherical_poset();
  std::vector<std::vector<Subset>> chains;
  // enumerate chains by DFS in (popcount, mask) order
  std::vector<Subset> masks;
  for (const auto& entry : poset.subsets) masks.push_back(entry.mask);
  std::vector<std::vector<Subset>> stack;
  for (Subset m : masks) stack.push_back({m});
  while (!stack.empty()) {
    std::vector<Subset> chain = stack.back();
    stack.pop_back();
    chains.push_back(chain);
    for (Subset m : masks)
      if (m != chain.back() && subset_contains(m, chain.back())) {
        auto next = chain;
        next.push_back(m);
        stack.push_back(std::move(next));
      }
  }
  std::sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (popcount(a[i]) != popcount(b[i])) return popcount(a[i]) < popcount(b[i]);
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });

  std::map<std::vector<Subset>, int> id_of;
  std::vector<int> dims;
  for (const auto& chain : chains) {
    id_of[chain] = static_cast<int>(dims.size());
    dims.push_back(static_cast<int>(chain.size()) - 1);
  }
  std::vector<MirroredComplex::Incidence> inc;
  for (const auto& chain : chains) {
    if (chain.size() < 2) continue;
    for (std::size_t j = 0; j < chain.size(); ++j) {
      auto face = chain;
      face.erase(face.begin() + j);
      inc.push_back({id_of[chain], id_of[face], (j % 2 == 0) ? Int(1) : Int(-1)});
    }
  }
  std::map<std::string, std::set<int>> mirrors;
  for (Gen s = 0; s < w.rank(); ++s) {
    std::set<int> cells;
    for (const auto& chain : chains)
      if ((chain.front() >> s) & 1u) cells.insert(id_of[chain]);  // chains are nested
    mirrors[w.gen_name(s)] = std::move(cells);
  }
  return MirroredComplex(std::move(dims), std::move(inc), std::move(mirrors));
}

// A point without mirrors.
inline MirroredComplex point_complex() { return MirroredComplex({0}, {}, {}); }

// An interval whose endpoints are the given mirrors (one or two names).
inline MirroredComplex interval_complex(const std::vector<std::string>& end_mirrors) {
  std::map<std::string, std::set<int>> mirrors;
  if (!end_mirrors.empty()) mirrors[end_mirrors[0]] = {0};
  if (end_mirrors.size() >= 2) mirrors[end_mirrors[1]] = {1};
  return MirroredComplex({0, 0, 1}, {{2, 0, -1}, {2, 1, 1}}, std::move(mirrors));
}

}  // namespace coxcoh
