#pragma once

// The built-in test corpus: small Coxeter systems exercising every code
// path at desk scale (one finite and one infinite dihedral pair, a rank-3
// symmetric group, the right-angled square group, a free product, and the
// right-angled infinite dihedral system used for thick buildings).

#include <string>
#include <vector>

#include "coxcoh/coxeter.hpp"

namespace coxcoh {

struct CorpusEntry {
  std::string name;
  std::string description;
  CoxeterMatrix matrix;
  bool finite;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const int inf = kInfiniteOrder;
  static const std::vector<CorpusEntry> entries = {
      {"z2", "cyclic group of order two", {{"s"}, {{1}}}, true},
      {"dihedral-3", "symmetric group S3", {{"s", "t"}, {{1, 3}, {3, 1}}}, true},
      {"dihedral-inf", "infinite dihedral group", {{"s", "t"}, {{1, inf}, {inf, 1}}}, false},
      {"a3",
       "symmetric group S4",
       {{"s", "t", "u"}, {{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}},
       true},
      {"ra-square", "direct product of two involutions", {{"s", "t"}, {{1, 2}, {2, 1}}}, true},
      {"free-3",
       "free product of three involutions",
       {{"s", "t", "u"}, {{1, inf, inf}, {inf, 1, inf}, {inf, inf, 1}}},
       false},
      {"ra-dinf",
       "right-angled infinite dihedral system (building base)",
       {{"s", "t"}, {{1, inf}, {inf, 1}}},
       false},
  };
  return entries;
}

inline const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  fail(errc::validation_error, "unknown corpus entry '" + name + "'");
}

}  // namespace coxcoh
