#pragma once

// Coxeter systems: the word problem via elementary (braid) operations,
// canonical ShortLex reduced words, descent sets, spherical subsets and
// their classification, and breadth-first balls in the Cayley graph.
//
// Elements are interned: every group element ever seen gets a dense id,
// and products by a single generator are memoized.  Construction of
// balls and memo tables must happen from one thread at a time; after
// that, all accessors that hit only memoized data are safe for
// concurrent reads.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxcoh/base.hpp"
#include "coxcoh/errors.hpp"

namespace coxcoh {

constexpr int kInfiniteOrder = 0;  // sentinel for m_st = infinity

struct CoxeterMatrix {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> m;

  int rank() const { return static_cast<int>(generators.size()); }
  int order(Gen s, Gen t) const { return m[s][t]; }
  bool is_infinite(Gen s, Gen t) const { return m[s][t] == kInfiniteOrder; }

  bool right_angled() const {
    for (int s = 0; s < rank(); ++s)
      for (int t = s + 1; t < rank(); ++t)
        if (m[s][t] != 2 && m[s][t] != kInfiniteOrder) return false;
    return true;
  }

  void validate() const {
    int n = rank();
    require(n >= 1 && n <= 31, errc::bad_entry, "rank must be between 1 and 31");
    require(static_cast<int>(m.size()) == n, errc::bad_entry, "matrix size mismatch");
    for (int i = 0; i < n; ++i)
      require(static_cast<int>(m[i].size()) == n, errc::bad_entry, "matrix row size mismatch");
    for (int i = 0; i < n; ++i)
      require(m[i][i] == 1, errc::bad_diagonal, "diagonal entries must equal 1");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i != j)
          require(m[i][j] == kInfiniteOrder || m[i][j] >= 2, errc::bad_entry,
                  "off-diagonal entries must be >= 2 or infinity");
        require(m[i][j] == m[j][i], errc::non_symmetric, "matrix must be symmetric");
      }
    std::set<std::string> names(generators.begin(), generators.end());
    require(static_cast<int>(names.size()) == n, errc::bad_entry, "duplicate generator names");
  }
};

struct DescentData {
  ElemId element = 0;
  Subset in_right = 0;  // s with l(ws) < l(w)
  Subset in_left = 0;   // s with l(sw) < l(w)
};

struct Ball {
  int radius = 0;
  bool complete = false;  // the group was exhausted before reaching the radius
  std::vector<ElemId> elements;  // sorted by (length, ShortLex)
  std::unordered_map<ElemId, int> position;

  int size() const { return static_cast<int>(elements.size()); }
  bool contains(ElemId w) const { return position.count(w) != 0; }
  int index_of(ElemId w) const {
    auto it = position.find(w);
    require(it != position.end(), errc::out_of_trust_radius, "element outside ball");
    return it->second;
  }
};

struct SphericalSubset {
  Subset mask = 0;
  Int group_order = 1;
  ElemId longest = 0;
};

struct SphericalPoset {
  std::vector<SphericalSubset> subsets;  // sorted by (popcount, mask)

  bool contains(Subset t) const { return find(t) != nullptr; }
  const SphericalSubset* find(Subset t) const {
    for (const auto& s : subsets)
      if (s.mask == t) return &s;
    return nullptr;
  }
  std::size_t size() const { return subsets.size(); }
};

enum class Side { left, right };

class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterMatrix matrix) : mat_(std::move(matrix)) {
    mat_.validate();
    rank_ = mat_.rank();
    intern(Word{});  // identity gets id 0
  }

  const CoxeterMatrix& matrix() const { return mat_; }
  int rank() const { return rank_; }
  const std::string& gen_name(Gen s) const { return mat_.generators[s]; }

  Gen gen_index(const std::string& name) const {
    for (int s = 0; s < rank_; ++s)
      if (mat_.generators[s] == name) return s;
    fail(errc::unknown_generator, "unknown generator '" + name + "'");
  }

  std::size_t element_cap() const { return element_cap_; }
  void set_element_cap(std::size_t cap) { element_cap_ = cap; }

  ElemId identity() const { return 0; }

  // Canonical representative of an arbitrary word, built letter by letter
  // so that each reduction step works on a word of length at most l+1.
  ElemId element(const Word& letters) const {
    ElemId w = 0;
    for (Gen g : letters) {
      require(g >= 0 && g < rank_, errc::unknown_generator,
              "generator index out of range");
      w = mul_gen(w, g, Side::right);
    }
    return w;
  }

  ElemId element(const std::vector<std::string>& names) const {
    Word w;
    w.reserve(names.size());
    for (const auto& n : names) w.push_back(gen_index(n));
    return element(w);
  }

  const Word& word(ElemId w) const { return words_[w]; }
  int length(ElemId w) const { return static_cast<int>(words_[w].size()); }

  // (length, ShortLex) order; the ordering used for every basis in the library.
  bool elem_less(ElemId a, ElemId b) const {
    const Word& wa = words_[a];
    const Word& wb = words_[b];
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    return wa < wb;
  }

  ElemId mul_gen(ElemId w, Gen s, Side side) const {
    auto& table = side == Side::right ? right_mult_ : left_mult_;
    ElemId cached = table[w][s];
    if (cached != kNone) return cached;
    Word prod = words_[w];
    if (side == Side::right)
      prod.push_back(s);
    else
      prod.insert(prod.begin(), s);
    ElemId r = intern(canonical_word(std::move(prod)));
    table[w][s] = r;
    table[r][s] = w;  // s is an involution
    return r;
  }

  ElemId mul(ElemId a, ElemId b) const {
    ElemId r = a;
    for (Gen g : Word(words_[b]))  // copy: interning may reallocate words_
      r = mul_gen(r, g, Side::right);
    return r;
  }

  ElemId inverse(ElemId w) const {
    Word rev(words_[w].rbegin(), words_[w].rend());
    return element(rev);
  }

  Subset right_descents(ElemId w) const {
    Subset d = 0;
    for (Gen s = 0; s < rank_; ++s)
      if (length(mul_gen(w, s, Side::right)) < length(w)) d |= Subset(1) << s;
    return d;
  }

  Subset left_descents(ElemId w) const {
    Subset d = 0;
    for (Gen s = 0; s < rank_; ++s)
      if (length(mul_gen(w, s, Side::left)) < length(w)) d |= Subset(1) << s;
    return d;
  }

  Subset descent_set(ElemId w, Side side) const {
    return side == Side::right ? right_descents(w) : left_descents(w);
  }

  DescentData descents(ElemId w) const {
    return DescentData{w, right_descents(w), left_descents(w)};
  }

  // --- spherical subsets -------------------------------------------------

  // Finite-type recognition by matching each connected component of the
  // diagram against the classification of finite Coxeter groups.
  bool is_finite_type(Subset t) const { return subgroup_order(t).has_value(); }

  // |W_T| when finite, nullopt otherwise.
  std::optional<Int> subgroup_order(Subset t) const {
    Int total = 1;
    std::vector<Gen> gens = bits_of(t);
    std::set<Gen> todo(gens.begin(), gens.end());
    while (!todo.empty()) {
      // extract the connected component (edges: m != 2) of the first vertex
      std::vector<Gen> comp;
      std::deque<Gen> queue{*todo.begin()};
      todo.erase(todo.begin());
      while (!queue.empty()) {
        Gen v = queue.front();
        queue.pop_front();
        comp.push_back(v);
        for (auto it = todo.begin(); it != todo.end();) {
          if (mat_.order(v, *it) != 2) {
            queue.push_back(*it);
            it = todo.erase(it);
          } else {
            ++it;
          }
        }
      }
      auto ord = component_order(comp);
      if (!ord) return std::nullopt;
      total *= *ord;
    }
    return total;
  }

  bool is_spherical(Subset t) const { return is_finite_type(t); }

  SphericalPoset spherical_poset() const {
    require(rank_ <= 20, errc::resource_limit, "poset enumeration capped at rank 20");
    SphericalPoset poset;
    for (Subset t = 0; t <= full_mask(rank_); ++t) {
      auto ord = subgroup_order(t);
      if (ord) poset.subsets.push_back({t, *ord, longest_element(t)});
    }
    std::sort(poset.subsets.begin(), poset.subsets.end(),
              [](const SphericalSubset& a, const SphericalSubset& b) {
                if (popcount(a.mask) != popcount(b.mask))
                  return popcount(a.mask) < popcount(b.mask);
                return a.mask < b.mask;
              });
    return poset;
  }

  // Longest element of a finite standard subgroup, by greedy ascent.
  ElemId longest_element(Subset t) const {
    require(is_finite_type(t), errc::not_spherical, "subset does not generate a finite subgroup");
    ElemId w = 0;
    bool moved = true;
    while (moved) {
      moved = false;
      for (Gen s : bits_of(t)) {
        ElemId ws = mul_gen(w, s, Side::right);
        if (length(ws) > length(w)) {
          w = ws;
          moved = true;
          break;
        }
      }
    }
    return w;
  }

  // All elements of W_T for spherical T (their reduced words only use T).
  std::vector<ElemId> subgroup_elements(Subset t) const {
    require(is_finite_type(t), errc::not_spherical, "subset does not generate a finite subgroup");
    std::vector<ElemId> out{0};
    std::set<ElemId> seen{0};
    std::deque<ElemId> queue{0};
    while (!queue.empty()) {
      ElemId w = queue.front();
      queue.pop_front();
      for (Gen s : bits_of(t)) {
        ElemId ws = mul_gen(w, s, Side::right);
        if (seen.insert(ws).second) {
          out.push_back(ws);
          queue.push_back(ws);
          require(out.size() <= element_cap_, errc::resource_limit, "element cap exceeded");
        }
      }
    }
    std::sort(out.begin(), out.end(), [&](ElemId a, ElemId b) { return elem_less(a, b); });
    return out;
  }

  // --- balls ---------------------------------------------------------------

  Ball ball(int radius) const {
    require(radius >= 0, errc::validation_error, "radius must be nonnegative");
    Ball b;
    b.radius = radius;
    std::vector<ElemId> shell{0};
    b.elements.push_back(0);
    std::set<ElemId> seen{0};
    for (int len = 1; len <= radius; ++len) {
      std::vector<ElemId> next;
      for (ElemId w : shell)
        for (Gen s = 0; s < rank_; ++s) {
          ElemId ws = mul_gen(w, s, Side::right);
          if (length(ws) == len && seen.insert(ws).second) next.push_back(ws);
        }
      if (next.empty()) {
        b.complete = true;
        break;
      }
      std::sort(next.begin(), next.end(), [&](ElemId a, ElemId b2) { return elem_less(a, b2); });
      for (ElemId w : next) b.elements.push_back(w);
      require(b.elements.size() <= element_cap_, errc::resource_limit, "element cap exceeded");
      shell = std::move(next);
    }
    if (!b.complete) {
      // peek one more shell to detect stabilization exactly at the radius
      bool grows = false;
      for (ElemId w : shell) {
        for (Gen s = 0; s < rank_ && !grows; ++s)
          if (length(mul_gen(w, s, Side::right)) == radius + 1) grows = true;
        if (grows) break;
      }
      b.complete = !grows;
    }
    for (int i = 0; i < static_cast<int>(b.elements.size()); ++i)
      b.position.emplace(b.elements[i], i);
    return b;
  }

  // Enumerate a finite group completely.  ResourceLimit if the cap is hit
  // (in particular for infinite groups).
  Ball full_group() const {
    int radius = 0;
    while (true) {
      Ball b = ball(radius);
      if (b.complete) return b;
      radius += 4;
      require(radius < 4096, errc::resource_limit, "group appears to be infinite");
    }
  }

  // Elements of the ball that are (U,empty)-reduced (left) or
  // (empty,U)-reduced (right): no descent in U on that side.
  std::vector<ElemId> reduced_reps(Subset u, Side side, const Ball& b) const {
    std::vector<ElemId> out;
    for (ElemId w : b.elements)
      if ((descent_set(w, side) & u) == 0) out.push_back(w);
    return out;
  }

  // Minimal-length representative of the coset wW_U (side = right) or
  // W_U w (side = left).
  ElemId coset_min_rep(ElemId w, Subset u, Side side) const {
    while (true) {
      Subset d = descent_set(w, side) & u;
      if (d == 0) return w;
      w = mul_gen(w, bits_of(d).front(), side);
    }
  }

  // All words braid-equivalent to a reduced word (the word must be reduced;
  // callers use this for reduced-expression sampling).
  std::vector<Word> braid_orbit(const Word& reduced, std::size_t cap = 1u << 20) const {
    std::set<Word> visited{reduced};
    std::deque<Word> queue{reduced};
    while (!queue.empty()) {
      Word v = queue.front();
      queue.pop_front();
      expand_braid_moves(v, [&](Word&& w) {
        if (visited.insert(w).second) queue.push_back(std::move(w));
        require(visited.size() <= cap, errc::resource_limit, "braid orbit cap exceeded");
      });
    }
    return std::vector<Word>(visited.begin(), visited.end());
  }

 private:
  static constexpr ElemId kNone = std::numeric_limits<ElemId>::max();

  CoxeterMatrix mat_;
  int rank_ = 0;
  std::size_t element_cap_ = 200000;
  std::size_t braid_cap_ = 1u << 20;

  mutable std::vector<Word> words_;
  mutable std::unordered_map<Word, ElemId, WordHash> index_;
  mutable std::vector<std::vector<ElemId>> right_mult_;
  mutable std::vector<std::vector<ElemId>> left_mult_;

  ElemId intern(const Word& canon) const {
    auto it = index_.find(canon);
    if (it != index_.end()) return it->second;
    require(words_.size() < element_cap_, errc::resource_limit, "element cap exceeded");
    ElemId id = static_cast<ElemId>(words_.size());
    words_.push_back(canon);
    index_.emplace(canon, id);
    right_mult_.emplace_back(rank_, kNone);
    left_mult_.emplace_back(rank_, kNone);
    return id;
  }

  template <typename F>
  void expand_braid_moves(const Word& v, F&& emit) const {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      Gen a = v[i], b = v[i + 1];
      if (a == b) continue;
      int m = mat_.order(a, b);
      if (m == kInfiniteOrder || i + m > v.size()) continue;
      bool alternating = true;
      for (int k = 0; k < m && alternating; ++k)
        if (v[i + k] != (k % 2 == 0 ? a : b)) alternating = false;
      if (!alternating) continue;
      Word w = v;
      for (int k = 0; k < m; ++k) w[i + k] = (k % 2 == 0 ? b : a);
      emit(std::move(w));
    }
  }

  // Tits' solution to the word problem: a word is reduced iff its closure
  // under braid moves contains no word with an adjacent repeated letter;
  // the canonical form is the ShortLex-least member of the closure.
  Word canonical_word(Word w) const {
    while (true) {
      std::set<Word> visited{w};
      std::deque<Word> queue{w};
      Word best = w;
      std::optional<Word> shortened;
      while (!queue.empty() && !shortened) {
        Word v = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
          if (v[i] == v[i + 1]) {
            Word r = v;
            r.erase(r.begin() + i, r.begin() + i + 2);
            shortened = std::move(r);
            break;
          }
        if (shortened) break;
        expand_braid_moves(v, [&](Word&& next) {
          if (visited.insert(next).second) {
            if (next < best) best = next;
            queue.push_back(std::move(next));
          }
          require(visited.size() <= braid_cap_, errc::resource_limit,
                  "braid closure cap exceeded");
        });
      }
      if (!shortened) return best;
      w = std::move(*shortened);
    }
  }

  // Order of the finite Coxeter group on a connected diagram component,
  // nullopt when the component is of infinite type.
  std::optional<Int> component_order(const std::vector<Gen>& comp) const {
    int n = static_cast<int>(comp.size());
    if (n == 1) return Int(2);
    // collect edges; any infinite bond makes the component infinite
    std::vector<std::tuple<int, int, int>> edges;  // indices into comp, label
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int m = mat_.order(comp[i], comp[j]);
        if (m == kInfiniteOrder) return std::nullopt;
        if (m >= 3) edges.push_back({i, j, m});
      }
    if (n == 2) {
      int m = std::get<2>(edges[0]);
      return Int(2 * m);  // dihedral I2(m)
    }
    if (static_cast<int>(edges.size()) != n - 1) return std::nullopt;  // cycle
    std::vector<int> degree(n, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, label)
    for (auto [i, j, m] : edges) {
      ++degree[i];
      ++degree[j];
      adj[i].push_back({j, m});
      adj[j].push_back({i, m});
    }
    int branch = -1;
    for (int i = 0; i < n; ++i) {
      if (degree[i] >= 4) return std::nullopt;
      if (degree[i] == 3) {
        if (branch != -1) return std::nullopt;
        branch = i;
      }
    }
    if (branch != -1) {
      // branched diagrams must be simply laced: D_n or E_6, E_7, E_8
      for (auto [i, j, m] : edges)
        if (m != 3) return std::nullopt;
      std::vector<int> arms;
      for (auto [nb, m] : adj[branch]) {
        int len = 1, prev = branch, cur = nb;
        while (degree[cur] == 2) {
          for (auto [nx, lm] : adj[cur])
            if (nx != prev) {
              prev = cur;
              cur = nx;
              break;
            }
          ++len;
        }
        arms.push_back(len);
      }
      std::sort(arms.begin(), arms.end());
      if (arms[0] == 1 && arms[1] == 1) {
        int nn = arms[2] + 3;  // D_n
        return factorial(nn) * (Int(1) << (nn - 1));
      }
      if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return Int(51840);      // E6
      if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return Int(2903040);    // E7
      if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return Int(696729600);  // E8
      return std::nullopt;
    }
    // a path: read the edge labels from one end
    int end = -1;
    for (int i = 0; i < n; ++i)
      if (degree[i] == 1) { end = i; break; }
    std::vector<int> labels;
    {
      int prev = -1, cur = end;
      while (static_cast<int>(labels.size()) < n - 1) {
        for (auto [nx, m] : adj[cur])
          if (nx != prev) {
            labels.push_back(m);
            prev = cur;
            cur = nx;
            break;
          }
      }
    }
    std::vector<int> big;
    for (int i = 0; i < n - 1; ++i)
      if (labels[i] != 3) big.push_back(i);
    if (big.empty()) return factorial(n + 1);  // A_n
    if (big.size() > 1) return std::nullopt;
    int pos = big[0], m = labels[pos];
    bool at_end = (pos == 0 || pos == n - 2);
    if (m == 4) {
      if (at_end) return factorial(n) * (Int(1) << n);  // B_n
      if (n == 4) return Int(1152);                     // F4
      return std::nullopt;
    }
    if (m == 5 && at_end) {
      if (n == 3) return Int(120);    // H3
      if (n == 4) return Int(14400);  // H4
      return std::nullopt;
    }
    return std::nullopt;
  }
};

}  // namespace coxcoh
