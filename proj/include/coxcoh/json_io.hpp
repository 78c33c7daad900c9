#pragma once

// JSON encodings for the CLI: Coxeter matrices (infinity encoded as 0),
// mirrored complexes, and report fragments.  Serialization uses ordered
// JSON throughout so that identical inputs produce byte-identical output.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "coxcoh/coxeter.hpp"
#include "coxcoh/homology.hpp"
#include "coxcoh/intmatrix.hpp"
#include "coxcoh/mirrored_complex.hpp"

namespace coxcoh {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

inline Json coxeter_matrix_to_json(const CoxeterMatrix& m) {
  Json j;
  j["generators"] = m.generators;
  j["m"] = m.m;
  return j;
}

inline CoxeterMatrix coxeter_matrix_from_json(const Json& j) {
  try {
    CoxeterMatrix m;
    m.generators = j.at("generators").get<std::vector<std::string>>();
    m.m = j.at("m").get<std::vector<std::vector<int>>>();
    m.validate();
    return m;
  } catch (const Json::exception& e) {
    fail(errc::parse_error, std::string("bad Coxeter matrix document: ") + e.what());
  }
}

inline Json complex_to_json(const MirroredComplex& x) {
  Json j;
  j["cells"] = Json::array();
  for (int c = 0; c < x.num_cells(); ++c) j["cells"].push_back({{"dim", x.cell_dim(c)}});
  j["incidence"] = Json::array();
  for (const auto& e : x.incidences())
    j["incidence"].push_back({e.cell, e.face, static_cast<long long>(e.coeff)});
  j["mirrors"] = Json::object();
  for (const auto& [name, cells] : x.mirrors())
    j["mirrors"][name] = std::vector<int>(cells.begin(), cells.end());
  return j;
}

inline MirroredComplex complex_from_json(const Json& j) {
  std::vector<int> dims;
  std::vector<MirroredComplex::Incidence> inc;
  std::map<std::string, std::set<int>> mirrors;
  try {
    for (const auto& cell : j.at("cells")) dims.push_back(cell.at("dim").get<int>());
    if (j.contains("incidence"))
      for (const auto& row : j.at("incidence"))
        inc.push_back({row.at(0).get<int>(), row.at(1).get<int>(),
                       Int(row.at(2).get<long long>())});
    if (j.contains("mirrors"))
      for (const auto& [name, cells] : j.at("mirrors").items()) {
        std::set<int> set;
        for (const auto& c : cells) set.insert(c.get<int>());
        mirrors[name] = std::move(set);
      }
  } catch (const Json::exception& e) {
    fail(errc::parse_error, std::string("bad complex document: ") + e.what());
  }
  return MirroredComplex(std::move(dims), std::move(inc), std::move(mirrors));
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::parse_error, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(errc::parse_error, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return j;
}

inline Json int_matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json rat_matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) {
      std::ostringstream os;
      os << m.at(i, j);
      row.push_back(os.str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json summary_to_json(const HomologySummary& h) {
  Json j = Json::object();
  for (const auto& [deg, s] : h.by_degree) {
    Json entry;
    entry["betti"] = s.betti;
    Json tors = Json::array();
    for (const Int& t : s.torsion) tors.push_back(t.str());
    entry["torsion"] = std::move(tors);
    j[std::to_string(deg)] = std::move(entry);
  }
  return j;
}

inline std::vector<std::string> word_names(const CoxeterSystem& w, ElemId v) {
  std::vector<std::string> out;
  for (Gen g : w.word(v)) out.push_back(w.gen_name(g));
  return out;
}

inline Json subset_to_json(const CoxeterSystem& w, Subset t) {
  Json j = Json::array();
  for (Gen g : bits_of(t)) j.push_back(w.gen_name(g));
  return j;
}

}  // namespace coxcoh
