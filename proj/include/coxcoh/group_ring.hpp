#pragma once

// The integral group ring of a Coxeter group, truncated to balls when the
// group is infinite: symmetrizers a_T and alternators h_T, the descent
// bases b'_w = a_{In'(w)} e_w and b_w = e_w h_{In(w)}, decomposition by
// triangular solve, invariants and coinvariants, the filtration by the
// number of descents, and generator actions on the graded quotients
// A^T / A^{>T} and H^T / H^{>T}.
//
// Truncated values carry a trust radius: the ball radius within which
// they agree with the untruncated object.  Exact elements use
// kExactRadius.

#include <map>
#include <utility>
#include <vector>

#include "coxcoh/coxeter.hpp"
#include "coxcoh/intmatrix.hpp"

namespace coxcoh {

constexpr int kExactRadius = 1 << 28;

struct GroupRingElement {
  std::map<ElemId, Int> c;  // finitely supported; zero coefficients absent
  int trust = kExactRadius;

  bool is_zero() const { return c.empty(); }
  Int coeff(ElemId w) const {
    auto it = c.find(w);
    return it == c.end() ? Int(0) : it->second;
  }
};

struct DescentBasisSlice {
  Subset t = 0;
  Side side = Side::left;             // left: b'_w with In'(w)=T; right: b_w with In(w)=T
  std::vector<ElemId> elements;       // sorted by (length, ShortLex)
};

struct FiltrationSlice {
  int p = 0;
  Side side = Side::left;
  std::vector<ElemId> f_basis;  // descents >= p
  std::vector<ElemId> e_basis;  // descents < p
};

struct QuotientAction {
  Subset t = 0;
  Gen s = 0;
  Side side = Side::left;          // left: right action on A^T/A^{>T}
  std::vector<ElemId> basis;       // slice elements inside the ball
  IntMatrix m;                     // action matrix, columns indexed like basis
  std::vector<bool> valid_col;     // false when the column needed data outside the ball
  int guaranteed_radius = 0;       // columns with l(w) <= this are always valid
};

struct SolomonReport {
  Int group_order = 0;
  // per spherical subset: honest rank of A^T/A^{>T} (resp. H-side) over Q,
  // and the descent-class count it must match
  std::map<Subset, int> dim_a, dim_h;
  std::map<Subset, int> count_left, count_right;
  bool pass = false;
};

class GroupRing {
 public:
  using El = GroupRingElement;

  explicit GroupRing(const CoxeterSystem& w) : w_(&w) {}

  const CoxeterSystem& system() const { return *w_; }

  // --- arithmetic ---------------------------------------------------------

  El zero() const { return El{}; }

  El e(ElemId w) const {
    El x;
    x.c[w] = 1;
    return x;
  }

  static void add_term(El& x, ElemId w, const Int& a) {
    if (a == 0) return;
    auto [it, inserted] = x.c.emplace(w, a);
    if (!inserted) {
      it->second += a;
      if (it->second == 0) x.c.erase(it);
    }
  }

  El add(const El& x, const El& y) const {
    El z = x;
    z.trust = std::min(x.trust, y.trust);
    for (const auto& [w, a] : y.c) add_term(z, w, a);
    return z;
  }

  El sub(const El& x, const El& y) const { return add(x, scale(y, Int(-1))); }

  El scale(const El& x, const Int& a) const {
    El z;
    z.trust = x.trust;
    if (a == 0) return z;
    for (const auto& [w, cw] : x.c) z.c[w] = cw * a;
    return z;
  }

  int max_len(const El& x) const {
    int m = 0;
    for (const auto& [w, a] : x.c) m = std::max(m, w_->length(w));
    return m;
  }

  // Convolution product.  The result is exact as an element of the group
  // ring; the trust radius reflects how far each truncated factor can
  // shift the other's support.
  El mul(const El& x, const El& y) const {
    El z;
    z.trust = combine_trust(x, y);
    for (const auto& [u, a] : x.c)
      for (const auto& [v, b] : y.c) add_term(z, w_->mul(u, v), a * b);
    return z;
  }

  El mul_gen(const El& x, Gen s, Side side) const {
    El z;
    z.trust = x.trust == kExactRadius ? kExactRadius : x.trust - 1;
    for (const auto& [w, a] : x.c) add_term(z, w_->mul_gen(w, s, side), a);
    return z;
  }

  bool equal(const El& x, const El& y) const { return x.c == y.c; }

  // --- special elements -----------------------------------------------------

  const std::vector<ElemId>& subgroup(Subset t) const {
    auto it = subgroup_memo_.find(t);
    if (it == subgroup_memo_.end())
      it = subgroup_memo_.emplace(t, w_->subgroup_elements(t)).first;
    return it->second;
  }

  // a_T = sum of e_u over the finite subgroup W_T
  El symmetrizer(Subset t) const {
    El x;
    for (ElemId u : subgroup(t)) x.c[u] = 1;
    return x;
  }

  // h_T = sum of (-1)^{l(u)} e_u over W_T
  El alternator(Subset t) const {
    El x;
    for (ElemId u : subgroup(t)) x.c[u] = w_->length(u) % 2 == 0 ? 1 : -1;
    return x;
  }

  // c_(U,T) and d_(U,T) with a_U = a_T c_(U,T) and h_U = d_(U,T) h_T.
  std::pair<El, El> connecting_elements(Subset u, Subset t) const {
    require(subset_contains(u, t), errc::not_nested, "T must be contained in U");
    require(w_->is_finite_type(u), errc::not_spherical, "U must be spherical");
    El c, d;
    for (ElemId x : subgroup(u)) {
      if ((w_->left_descents(x) & t) == 0) c.c[x] = 1;            // x in X_T
      if ((w_->right_descents(x) & t) == 0)                        // x in Y_T
        d.c[x] = w_->length(x) % 2 == 0 ? 1 : -1;
    }
    require(equal(mul(symmetrizer(t), c), symmetrizer(u)), errc::verification_failure,
            "a_U = a_T c_(U,T) failed");
    require(equal(mul(d, alternator(t)), alternator(u)), errc::verification_failure,
            "h_U = d_(U,T) h_T failed");
    return {c, d};
  }

  // --- descent bases --------------------------------------------------------

  Subset slice_of(ElemId w, Side side) const {
    return side == Side::left ? w_->left_descents(w) : w_->right_descents(w);
  }

  // b'_w (side = left) or b_w (side = right)
  const El& descent_vector(ElemId w, Side side) const {
    auto key = std::make_pair(w, side == Side::left ? 0 : 1);
    auto it = basis_memo_.find(key);
    if (it != basis_memo_.end()) return it->second;
    El x;
    if (side == Side::left) {
      for (ElemId u : subgroup(w_->left_descents(w))) x.c[w_->mul(u, w)] = 1;
    } else {
      for (ElemId u : subgroup(w_->right_descents(w)))
        x.c[w_->mul(w, u)] = w_->length(u) % 2 == 0 ? 1 : -1;
    }
    return basis_memo_.emplace(key, std::move(x)).first->second;
  }

  std::vector<DescentBasisSlice> descent_basis(Side side, const Ball& ball) const {
    std::map<Subset, DescentBasisSlice> by_t;
    for (ElemId w : ball.elements) {
      Subset t = slice_of(w, side);
      auto& slice = by_t[t];
      slice.t = t;
      slice.side = side;
      slice.elements.push_back(w);
    }
    std::vector<DescentBasisSlice> out;
    for (auto& [t, slice] : by_t) out.push_back(std::move(slice));
    return out;
  }

  // Exact coefficients of x over the descent basis, by triangular solve
  // from the longest support element down.
  std::map<ElemId, Int> decompose(const El& x, Side side) const {
    require(x.trust >= max_len(x), errc::out_of_trust_radius,
            "support reaches beyond the trust radius");
    std::map<ElemId, Int> out;
    El r = x;
    while (!r.is_zero()) {
      ElemId v = r.c.begin()->first;
      for (const auto& [w, a] : r.c)
        if (w_->elem_less(v, w)) v = w;
      Int a = r.c.at(v);
      out[v] = a;
      r = sub(r, scale(descent_vector(v, side), a));
      require(max_len(r) <= w_->length(v), errc::internal, "triangular solve diverged");
    }
    return out;
  }

  // Reassemble an element from descent-basis coefficients.
  El assemble(const std::map<ElemId, Int>& coeffs, Side side) const {
    El x;
    for (const auto& [w, a] : coeffs) x = add(x, scale(descent_vector(w, side), a));
    return x;
  }

  // Is x invariant under left multiplication by W_T?  Checked directly and
  // against the descent-basis decomposition.
  bool invariants_membership(const El& x, Subset t) const {
    require(w_->is_finite_type(t), errc::not_spherical, "T must be spherical");
    require(x.trust >= max_len(x) + 1, errc::out_of_trust_radius,
            "membership test needs one step of headroom");
    bool direct = true;
    for (Gen s : bits_of(t))
      if (!equal(mul_gen(x, s, Side::left), x)) direct = false;
    bool from_basis = true;
    for (const auto& [v, a] : decompose(x, Side::left))
      if (!subset_contains(w_->left_descents(v), t)) from_basis = false;
    require(direct == from_basis, errc::internal,
            "invariance test and descent decomposition disagree");
    return direct;
  }

  // Image of x in the coinvariants A_U, as coordinates over the cosets
  // w W_U, keyed by the minimal-length representative.
  std::map<ElemId, Int> coinvariants_project(const El& x, Subset u) const {
    require(x.trust >= max_len(x), errc::out_of_trust_radius,
            "support reaches beyond the trust radius");
    std::map<ElemId, Int> out;
    for (const auto& [w, a] : x.c) {
      ElemId r = w_->coset_min_rep(w, u, Side::right);
      out[r] += a;
      if (out[r] == 0) out.erase(r);
    }
    return out;
  }

  FiltrationSlice filtration(int p, Side side, const Ball& ball) const {
    require(p >= 0, errc::validation_error, "filtration level must be nonnegative");
    FiltrationSlice f;
    f.p = p;
    f.side = side;
    for (ElemId w : ball.elements)
      (popcount(slice_of(w, side)) >= p ? f.f_basis : f.e_basis).push_back(w);
    return f;
  }

  // Action of the generator s on the graded quotient:
  //   side = left:  right action of e_s on A^T/A^{>T} in the b' slice basis;
  //   side = right: left action of e_s on H^T/H^{>T} in the b slice basis.
  QuotientAction quotient_action(Subset t, Gen s, Side side, const Ball& ball) const {
    require(w_->is_finite_type(t), errc::not_spherical, "T must be spherical");
    QuotientAction qa;
    qa.t = t;
    qa.s = s;
    qa.side = side;
    for (ElemId w : ball.elements)
      if (slice_of(w, side) == t) qa.basis.push_back(w);
    int n = static_cast<int>(qa.basis.size());
    std::map<ElemId, int> row;
    for (int i = 0; i < n; ++i) row[qa.basis[i]] = i;
    qa.m = IntMatrix(n, n);
    qa.valid_col.assign(n, true);
    int max_t = 0;
    for (ElemId u : subgroup(t)) max_t = std::max(max_t, w_->length(u));
    qa.guaranteed_radius = ball.radius - max_t - 1;
    for (int j = 0; j < n; ++j) {
      El z = mul_gen(descent_vector(qa.basis[j], side), s,
                     side == Side::left ? Side::right : Side::left);
      for (const auto& [v, a] : decompose(z, side)) {
        Subset dv = slice_of(v, side);
        require(subset_contains(dv, t), errc::internal,
                "graded image left the invariant ideal");
        if (dv != t) continue;  // lands in A^{>T}: zero in the quotient
        auto it = row.find(v);
        if (it == row.end()) {
          qa.valid_col[j] = false;  // needs a slice element outside the ball
          continue;
        }
        qa.m.at(it->second, j) = a;
      }
      if (w_->length(qa.basis[j]) <= qa.guaranteed_radius)
        require(qa.valid_col[j], errc::internal, "flagged column inside guaranteed radius");
    }
    return qa;
  }

  // --- honest-span helpers (columns over a ball, e_w coordinates) ---------

  // Matrix whose columns are the given elements in e_w coordinates over the
  // ball.  Throws if a support element escapes the ball.
  IntMatrix to_columns(const std::vector<El>& v, const Ball& ball) const {
    IntMatrix m(ball.size(), static_cast<int>(v.size()));
    for (int j = 0; j < static_cast<int>(v.size()); ++j)
      for (const auto& [w, a] : v[j].c) m.at(ball.index_of(w), j) = a;
    return m;
  }

  // Generating columns for the right ideal a_T A within the ball: a_T e_x
  // for every x short enough that the support stays inside.
  std::vector<El> ideal_columns(Subset t, const Ball& ball) const {
    std::vector<El> cols;
    int max_t = 0;
    for (ElemId u : subgroup(t)) max_t = std::max(max_t, w_->length(u));
    El at = symmetrizer(t);
    for (ElemId x : ball.elements)
      if (w_->length(x) + max_t <= ball.radius || ball.complete)
        cols.push_back(mul(at, e(x)));
    return cols;
  }

  std::vector<El> left_ideal_columns(Subset t, const Ball& ball) const {
    std::vector<El> cols;
    int max_t = 0;
    for (ElemId u : subgroup(t)) max_t = std::max(max_t, w_->length(u));
    El ht = alternator(t);
    for (ElemId x : ball.elements)
      if (w_->length(x) + max_t <= ball.radius || ball.complete)
        cols.push_back(mul(e(x), ht));
    return cols;
  }

  // Solomon-style dimension bookkeeping for a finite group: the graded
  // quotient dimensions computed from honest ideal ranks over Q must match
  // the descent-class counts.
  SolomonReport solomon_check() const {
    require(w_->is_finite_type(full_mask(w_->rank())), errc::not_finite,
            "group must be finite");
    Ball full = w_->full_group();
    SolomonReport rep;
    rep.group_order = full.size();
    SphericalPoset poset = w_->spherical_poset();
    for (ElemId w : full.elements) {
      rep.count_left[w_->left_descents(w)]++;
      rep.count_right[w_->right_descents(w)]++;
    }
    rep.pass = true;
    Int total_a = 0, total_h = 0;
    for (const auto& entry : poset.subsets) {
      Subset t = entry.mask;
      auto rank_of = [&](const std::vector<El>& cols) {
        return cols.empty() ? 0 : rank(to_columns(cols, full));
      };
      std::vector<El> at_cols = ideal_columns(t, full);
      std::vector<El> above_a, above_h;
      for (const auto& other : poset.subsets)
        if (other.mask != t && subset_contains(other.mask, t)) {
          auto more = ideal_columns(other.mask, full);
          above_a.insert(above_a.end(), more.begin(), more.end());
          auto moreh = left_ideal_columns(other.mask, full);
          above_h.insert(above_h.end(), moreh.begin(), moreh.end());
        }
      int dim_a = rank_of(at_cols) - rank_of(above_a);
      int dim_h = rank_of(left_ideal_columns(t, full)) - rank_of(above_h);
      rep.dim_a[t] = dim_a;
      rep.dim_h[t] = dim_h;
      total_a += dim_a;
      total_h += dim_h;
      if (dim_a != rep.count_left[t]) rep.pass = false;
      if (dim_h != rep.count_right[t]) rep.pass = false;
    }
    if (total_a != rep.group_order || total_h != rep.group_order) rep.pass = false;
    // directness of the lifted sum: the full descent basis is unimodular
    std::vector<El> all;
    for (ElemId w : full.elements) all.push_back(descent_vector(w, Side::left));
    if (rank(to_columns(all, full)) != full.size()) rep.pass = false;
    return rep;
  }

 private:
  int combine_trust(const El& x, const El& y) const {
    int tx = x.trust == kExactRadius ? kExactRadius : x.trust - max_len(y);
    int ty = y.trust == kExactRadius ? kExactRadius : y.trust - max_len(x);
    return std::min(tx, ty);
  }

  const CoxeterSystem* w_;
  mutable std::map<Subset, std::vector<ElemId>> subgroup_memo_;
  mutable std::map<std::pair<ElemId, int>, El> basis_memo_;
};

}  // namespace coxcoh
