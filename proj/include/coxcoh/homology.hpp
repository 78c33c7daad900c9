#pragma once

// Chain complexes of finitely generated free abelian groups and their
// exact (co)homology: Betti numbers plus torsion as invariant factors.

#include <map>

#include "coxcoh/intmatrix.hpp"
#include "coxcoh/snf.hpp"

namespace coxcoh {

// Differential lowers degree: d[k] maps degree lo+k to degree lo+k-1.
// d[0] maps the bottom degree to the zero group (0-row matrix).
struct ChainComplexZ {
  int lo = 0;
  std::vector<int> dims;
  std::vector<IntMatrix> d;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  int dim(int degree) const {
    int k = degree - lo;
    return (k >= 0 && k < static_cast<int>(dims.size())) ? dims[k] : 0;
  }
  const IntMatrix* boundary(int degree) const {
    int k = degree - lo;
    return (k >= 0 && k < static_cast<int>(d.size())) ? &d[k] : nullptr;
  }

  void validate() const {
    require(dims.size() == d.size(), errc::bad_incidence, "complex shape mismatch");
    for (std::size_t k = 0; k < d.size(); ++k) {
      int below = k == 0 ? 0 : dims[k - 1];
      require(d[k].rows() == below && d[k].cols() == dims[k], errc::bad_incidence,
              "boundary matrix shape mismatch");
      if (k > 0) {
        IntMatrix comp = d[k - 1] * d[k];
        require(comp.is_zero(), errc::bad_incidence, "dd != 0");
      }
    }
  }
};

// Differential raises degree: delta[k] maps degree lo+k to degree lo+k+1.
// The last map goes to the zero group.
struct CochainComplexZ {
  int lo = 0;
  std::vector<int> dims;
  std::vector<IntMatrix> delta;

  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
  int dim(int degree) const {
    int k = degree - lo;
    return (k >= 0 && k < static_cast<int>(dims.size())) ? dims[k] : 0;
  }

  void validate() const {
    require(dims.size() == delta.size(), errc::bad_incidence, "complex shape mismatch");
    for (std::size_t k = 0; k < delta.size(); ++k) {
      int above = k + 1 < dims.size() ? dims[k + 1] : 0;
      require(delta[k].cols() == dims[k] && delta[k].rows() == above, errc::bad_incidence,
              "coboundary matrix shape mismatch");
      if (k > 0) {
        IntMatrix comp = delta[k] * delta[k - 1];
        require(comp.is_zero(), errc::bad_incidence, "delta delta != 0");
      }
    }
  }
};

inline CochainComplexZ dualize(const ChainComplexZ& c) {
  CochainComplexZ out;
  out.lo = c.lo;
  out.dims = c.dims;
  out.delta.resize(c.dims.size());
  for (std::size_t k = 0; k + 1 < c.dims.size(); ++k) out.delta[k] = c.d[k + 1].transpose();
  if (!c.dims.empty()) out.delta.back() = IntMatrix(0, c.dims.back());
  return out;
}

struct DegreeSummary {
  int betti = 0;
  std::vector<Int> torsion;  // invariant factors >= 2, each dividing the next

  bool trivial() const { return betti == 0 && torsion.empty(); }
  bool operator==(const DegreeSummary& o) const {
    return betti == o.betti && torsion == o.torsion;
  }
};

struct HomologySummary {
  std::map<int, DegreeSummary> by_degree;

  int betti(int degree) const {
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? 0 : it->second.betti;
  }
  std::vector<Int> torsion(int degree) const {
    auto it = by_degree.find(degree);
    return it == by_degree.end() ? std::vector<Int>{} : it->second.torsion;
  }
  // degrees with trivial summary compare equal whether present or absent
  bool operator==(const HomologySummary& o) const {
    std::set<int> degrees;
    for (auto& [k, v] : by_degree) degrees.insert(k);
    for (auto& [k, v] : o.by_degree) degrees.insert(k);
    for (int k : degrees) {
      if (betti(k) != o.betti(k)) return false;
      if (prime_power_multiset(torsion(k)) != prime_power_multiset(o.torsion(k))) return false;
    }
    return true;
  }
};

namespace detail {
inline std::vector<Int> torsion_factors(const SNFResult& snf) {
  std::vector<Int> out;
  for (const Int& f : snf.invariant_factors())
    if (f >= 2) out.push_back(f);
  return out;
}
}  // namespace detail

// H_i = ker d_i / im d_{i+1}; the torsion of H_i comes from the Smith
// normal form of d_{i+1}.
inline HomologySummary homology(const ChainComplexZ& c) {
  c.validate();
  HomologySummary h;
  int n = static_cast<int>(c.dims.size());
  std::vector<SNFResult> snf(n);
  for (int k = 0; k < n; ++k) snf[k] = smith_normal_form(c.d[k]);
  for (int k = 0; k < n; ++k) {
    DegreeSummary deg;
    int rank_in = k + 1 < n ? snf[k + 1].rank() : 0;
    deg.betti = c.dims[k] - snf[k].rank() - rank_in;
    if (k + 1 < n) deg.torsion = detail::torsion_factors(snf[k + 1]);
    h.by_degree[c.lo + k] = deg;
  }
  return h;
}

inline HomologySummary cohomology(const CochainComplexZ& c) {
  c.validate();
  HomologySummary h;
  int n = static_cast<int>(c.dims.size());
  std::vector<SNFResult> snf(n);
  for (int k = 0; k < n; ++k) snf[k] = smith_normal_form(c.delta[k]);
  for (int k = 0; k < n; ++k) {
    DegreeSummary deg;
    int rank_from_below = k > 0 ? snf[k - 1].rank() : 0;
    deg.betti = c.dims[k] - snf[k].rank() - rank_from_below;
    if (k > 0) deg.torsion = detail::torsion_factors(snf[k - 1]);
    h.by_degree[c.lo + k] = deg;
  }
  return h;
}

inline HomologySummary cohomology(const ChainComplexZ& c) { return cohomology(dualize(c)); }

inline Int euler_characteristic_cells(const ChainComplexZ& c) {
  Int chi = 0;
  for (int k = 0; k < static_cast<int>(c.dims.size()); ++k)
    chi += ((c.lo + k) % 2 == 0 ? 1 : -1) * Int(c.dims[k]);
  return chi;
}

inline Int euler_characteristic_betti(const HomologySummary& h) {
  Int chi = 0;
  for (auto& [degree, deg] : h.by_degree) chi += (degree % 2 == 0 ? 1 : -1) * Int(deg.betti);
  return chi;
}

}  // namespace coxcoh
