// coxcoh: exact computations around Coxeter groups, mirrored complexes,
// right-angled buildings and Hecke algebras.  All input and output is
// JSON; the infinity entry of a Coxeter matrix is encoded as 0.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "coxcoh/buildings.hpp"
#include "coxcoh/corpus.hpp"
#include "coxcoh/equivariant.hpp"
#include "coxcoh/group_ring.hpp"
#include "coxcoh/hecke.hpp"
#include "coxcoh/json_io.hpp"
#include "coxcoh/verification.hpp"

namespace {

using namespace coxcoh;

int exit_code_for(errc code) {
  switch (code) {
    case errc::parse_error: return 2;
    case errc::verification_failure: return 4;
    case errc::resource_limit: return 5;
    default: return 3;
  }
}

CoxeterSystem load_system(const std::string& path) {
  CoxeterSystem w(coxeter_matrix_from_json(load_json_file(path)));
  if (const char* cap = std::getenv("COXCOH_MAX_ELEMENTS")) {
    char* end = nullptr;
    long v = std::strtol(cap, &end, 10);
    require(end && *end == '\0' && v > 0, errc::validation_error,
            "COXCOH_MAX_ELEMENTS must be a positive integer");
    w.set_element_cap(static_cast<std::size_t>(v));
  }
  return w;
}

std::map<std::string, std::string> parse_assignments(const std::string& text) {
  std::map<std::string, std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    auto eq = token.find('=');
    require(eq != std::string::npos, errc::parse_error,
            "expected name=value pairs, got '" + token + "'");
    out[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return out;
}

Subset parse_subset(const CoxeterSystem& w, const std::string& text) {
  Subset t = 0;
  if (text.empty()) return t;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) t |= Subset(1) << w.gen_index(token);
  return t;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json report_head(const std::string& command) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["command"] = command;
  return j;
}

Json pieces_to_json(const CoxeterSystem& w, const std::vector<HomologyPiece>& pieces) {
  Json out = Json::array();
  for (const auto& piece : pieces) {
    Json p;
    p["T"] = subset_to_json(w, piece.t);
    p["relative"] = summary_to_json(piece.rel);
    p["slice_rank"] = piece.slice_rank;
    p["slice_rank_next"] = piece.slice_rank_next;
    out.push_back(std::move(p));
  }
  return out;
}

int run_spherical(const std::string& file) {
  CoxeterSystem w = load_system(file);
  Json j = report_head("spherical");
  Json list = Json::array();
  for (const auto& entry : w.spherical_poset().subsets) {
    Json item;
    item["subset"] = subset_to_json(w, entry.mask);
    item["order"] = entry.group_order.str();
    item["longest"] = word_names(w, entry.longest);
    list.push_back(std::move(item));
  }
  j["spherical"] = std::move(list);
  emit(j);
  return 0;
}

int run_ball(const std::string& file, int radius) {
  CoxeterSystem w = load_system(file);
  Ball b = w.ball(radius);
  Json j = report_head("ball");
  j["radius"] = radius;
  j["count"] = b.size();
  j["complete"] = b.complete;
  Json els = Json::array();
  for (ElemId v : b.elements) els.push_back(word_names(w, v));
  j["elements"] = std::move(els);
  emit(j);
  return 0;
}

int run_chamber(const std::string& file) {
  CoxeterSystem w = load_system(file);
  Json j = report_head("chamber");
  j["complex"] = complex_to_json(davis_chamber(w));
  emit(j);
  return 0;
}

int run_basis(const std::string& file, int radius, const std::string& side_name) {
  CoxeterSystem w = load_system(file);
  GroupRing a(w);
  Side side = side_name == "right" ? Side::right : Side::left;
  Ball b = w.ball(radius);
  Json j = report_head("basis");
  j["radius"] = radius;
  j["side"] = side_name;
  Json slices = Json::array();
  for (const auto& slice : a.descent_basis(side, b)) {
    Json s;
    s["T"] = subset_to_json(w, slice.t);
    Json els = Json::array();
    for (ElemId v : slice.elements) {
      Json item;
      item["w"] = word_names(w, v);
      Json vec = Json::array();
      for (const auto& [u, coeff] : a.descent_vector(v, side).c)
        vec.push_back({{"w", word_names(w, u)}, {"c", coeff.str()}});
      item["vector"] = std::move(vec);
      els.push_back(std::move(item));
    }
    s["elements"] = std::move(els);
    slices.push_back(std::move(s));
  }
  j["slices"] = std::move(slices);
  emit(j);
  return 0;
}

int run_graded_action(const std::string& file, const std::string& t_text,
                      const std::string& s_name, int radius, const std::string& side_name) {
  CoxeterSystem w = load_system(file);
  GroupRing a(w);
  Subset t = parse_subset(w, t_text);
  Gen s = w.gen_index(s_name);
  Side side = side_name == "right" ? Side::right : Side::left;
  Ball b = w.ball(radius);
  auto qa = a.quotient_action(t, s, side, b);
  Json j = report_head("graded-action");
  j["T"] = subset_to_json(w, t);
  j["s"] = s_name;
  j["side"] = side_name;
  j["radius"] = radius;
  Json basis = Json::array();
  for (ElemId v : qa.basis) basis.push_back(word_names(w, v));
  j["basis"] = std::move(basis);
  j["matrix"] = int_matrix_to_json(qa.m);
  j["valid_columns"] = qa.valid_col;
  j["guaranteed_radius"] = qa.guaranteed_radius;
  emit(j);
  return 0;
}

int run_homology(const std::string& file, const std::string& chamber_file, int radius,
                 const std::string& variant) {
  CoxeterSystem w = load_system(file);
  MirroredComplex x =
      chamber_file.empty() ? davis_chamber(w) : complex_from_json(load_json_file(chamber_file));
  Variance variance = variant == "h" ? Variance::coinvariants : Variance::invariants;
  auto rep = homology_formula(w, x, radius, variance);
  Json j = report_head("homology");
  j["variant"] = variant;
  j["radius"] = radius;
  j["finite"] = rep.finite;
  j["assembled"] = summary_to_json(rep.rhs);
  if (rep.finite) {
    j["direct"] = summary_to_json(rep.lhs);
    j["direct_equals_assembled"] = rep.lhs_equals_rhs;
  } else {
    j["contributing_slices_stable"] = rep.contributing_slices_stable;
  }
  j["pieces"] = pieces_to_json(w, rep.pieces);
  emit(j);
  return rep.finite && !rep.lhs_equals_rhs ? 4 : 0;
}

int run_graded(const std::string& file, int p, int radius, const std::string& variant) {
  CoxeterSystem w = load_system(file);
  GroupRing a(w);
  auto k = davis_chamber(w);
  Variance variance = variant == "h" ? Variance::coinvariants : Variance::invariants;
  auto rep = graded_term(w, a, k, radius, p, variance);
  Json j = report_head("graded");
  j["p"] = p;
  j["radius"] = radius;
  j["variant"] = variant;
  j["lhs"] = summary_to_json(rep.lhs);
  j["rhs"] = summary_to_json(rep.rhs);
  j["ranks_equal"] = rep.ranks_equal;
  j["pieces"] = pieces_to_json(w, rep.pieces);
  if (rep.traces_computed) {
    Json traces = Json::array();
    for (const auto& [key, val] : rep.lhs_trace) {
      std::ostringstream lhs, rhs;
      lhs << val;
      rhs << rep.rhs_trace.at(key);
      traces.push_back({{"degree", key.first},
                        {"generator", w.gen_name(key.second)},
                        {"lhs", lhs.str()},
                        {"rhs", rhs.str()}});
    }
    j["traces"] = std::move(traces);
    j["traces_equal"] = rep.traces_equal;
  }
  emit(j);
  return rep.ranks_equal ? 0 : 4;
}

int run_demo(const std::string& which, int radius) {
  require(which == "tripod", errc::validation_error, "unknown demo '" + which + "'");
  auto rep = tripod_cocycle_demo(radius);
  Json j = report_head("demo");
  j["demo"] = which;
  j["radius"] = rep.radius;
  j["pairing_x"] = rep.pairing_x.str();
  j["pairing_x_translated"] = rep.pairing_xs.str();
  j["coboundary_of_x_vanishes"] = rep.delta_x_zero;
  j["line_is_cycle"] = rep.line_is_cycle;
  j["sum_vanishes_in_bottom_graded_piece"] = rep.sum_vanishes_in_graded;
  emit(j);
  return 0;
}

int run_building(const std::string& file, const std::string& thickness_text, int radius,
                 const std::string& basis_text, bool basis_given,
                 const std::string& realize_file) {
  CoxeterSystem w = load_system(file);
  auto assignments = parse_assignments(thickness_text);
  std::vector<int> q(w.rank(), 0);
  for (const auto& [name, value] : assignments) q[w.gen_index(name)] = std::stoi(value);
  for (int qs : q)
    require(qs >= 1, errc::validation_error, "every generator needs a thickness >= 1");
  Building b(w, q);
  Json j = report_head("building");
  j["radius"] = radius;
  j["thick"] = b.thick();
  auto chambers = b.spherical() ? b.all_chambers() : b.ball(radius);
  j["chambers"] = static_cast<int>(chambers.size());
  j["spherical"] = b.spherical();
  if (basis_given) {
    Subset t = parse_subset(w, basis_text);
    auto rep = basis_bt(b, t, radius);
    Json bj;
    bj["T"] = subset_to_json(w, t);
    bj["functions"] = static_cast<int>(rep.functions.size());
    bj["a_t_is_zero"] = rep.a_t_is_zero;
    bj["independent"] = rep.independent;
    bj["spanning"] = rep.spanning;
    bj["residues_checked"] = rep.residues_checked;
    if (rep.det) bj["determinant"] = rep.det->str();
    j["basis"] = std::move(bj);
  }
  if (!realize_file.empty()) {
    MirroredComplex x = complex_from_json(load_json_file(realize_file));
    auto rep = realize_report(b, x, radius);
    Json rj;
    rj["full"] = rep.full;
    rj["assembled"] = summary_to_json(rep.rhs);
    if (rep.full) {
      rj["direct"] = summary_to_json(rep.lhs);
      rj["cohomology_equal"] = rep.cohomology_equal;
    }
    rj["partition_ok"] = rep.partition_ok;
    Json hc = Json::object();
    for (const auto& [t, count] : rep.hat_counts) {
      std::string key;
      for (Gen g : bits_of(t)) key += (key.empty() ? "" : ",") + w.gen_name(g);
      hc[key.empty() ? "-" : key] = count;
    }
    rj["hat_counts"] = std::move(hc);
    j["realize"] = std::move(rj);
  }
  emit(j);
  return 0;
}

int run_hecke(const std::string& file, const std::string& q_text, int radius, int graded_p,
              bool graded_given) {
  CoxeterSystem w = load_system(file);
  auto assignments = parse_assignments(q_text);
  std::vector<Rat> q(w.rank(), Rat(0));
  for (const auto& [name, value] : assignments) {
    auto slash = value.find('/');
    if (slash == std::string::npos)
      q[w.gen_index(name)] = Rat(std::stol(value));
    else
      q[w.gen_index(name)] =
          Rat(std::stol(value.substr(0, slash)), std::stol(value.substr(slash + 1)));
  }
  HeckeAlgebra h(w, q);
  GroupRing a(w);
  Json j = report_head("hecke");
  j["radius"] = radius;
  Json qj = Json::object();
  for (Gen s = 0; s < w.rank(); ++s) {
    std::ostringstream os;
    os << h.q(s);
    qj[w.gen_name(s)] = os.str();
  }
  j["q"] = std::move(qj);
  // idempotency table over the spherical poset
  Json idem = Json::array();
  for (const auto& entry : w.spherical_poset().subsets) {
    auto av = h.a(entry.mask);
    auto hv = h.h(entry.mask);
    idem.push_back({{"T", subset_to_json(w, entry.mask)},
                    {"a_idempotent", h.equal(h.mul(av, av), av)},
                    {"h_idempotent", h.equal(h.mul(hv, hv), hv)}});
  }
  j["idempotents"] = std::move(idem);
  if (graded_given) {
    auto k = davis_chamber(w);
    auto rep = hecke_graded_term(h, a, k, radius, graded_p);
    Json gj;
    gj["p"] = graded_p;
    Json lhs = Json::object(), rhs = Json::object();
    for (const auto& [deg, betti] : rep.lhs_betti) lhs[std::to_string(deg)] = betti;
    for (const auto& [deg, betti] : rep.rhs_betti) rhs[std::to_string(deg)] = betti;
    gj["lhs_ranks"] = std::move(lhs);
    gj["rhs_ranks"] = std::move(rhs);
    gj["ranks_equal"] = rep.ranks_equal;
    gj["deformed_basis_ok"] = rep.deformed_basis_ok;
    gj["ideal_ranks_ok"] = rep.ideal_ranks_ok;
    gj["bottom_slice_sign_action"] = rep.empty_slice_sign_action;
    j["graded"] = std::move(gj);
    emit(j);
    return rep.ranks_equal && rep.deformed_basis_ok && rep.ideal_ranks_ok ? 0 : 4;
  }
  emit(j);
  return 0;
}

int run_verify(const std::string& suite) {
  Json j = report_head("verify");
  j["suite"] = suite;
  j["corpus"] = "builtin";
  Json checks = Json::array();
  bool all = true;
  for (const auto& r : run_verification_suite(suite)) {
    Json c;
    c["criterion"] = r.id;
    c["description"] = r.description;
    c["pass"] = r.pass;
    if (!r.detail.empty()) c["witness"] = r.detail;
    checks.push_back(std::move(c));
    all = all && r.pass;
  }
  j["checks"] = std::move(checks);
  j["pass"] = all;
  emit(j);
  return all ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact (co)homology computations for Coxeter groups and buildings"};
  app.require_subcommand(1);

  std::string file, chamber_file, realize_file, side = "left", variant = "hc";
  std::string t_text, s_name, thickness, q_text, demo_name = "tripod", suite = "all";
  std::string corpus_name = "builtin";
  int radius = 4, level = 0;
  bool basis_given = false;
  std::string basis_text;

  auto* spherical = app.add_subcommand("spherical", "list the spherical subsets");
  spherical->add_option("file", file)->required();

  auto* ball = app.add_subcommand("ball", "enumerate a ball in the Cayley graph");
  ball->add_option("file", file)->required();
  ball->add_option("--radius", radius)->required();

  auto* chamber = app.add_subcommand("chamber", "emit the Davis chamber as a complex");
  chamber->add_option("file", file)->required();

  auto* basis = app.add_subcommand("basis", "descent basis slices over a ball");
  basis->add_option("file", file)->required();
  basis->add_option("--radius", radius)->required();
  basis->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* gaction = app.add_subcommand("graded-action", "generator action on a graded slice");
  gaction->add_option("file", file)->required();
  gaction->add_option("-T,--subset", t_text)->required();
  gaction->add_option("-s,--generator", s_name)->required();
  gaction->add_option("--radius", radius)->required();
  gaction->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

  auto* homologyc = app.add_subcommand("homology", "(co)homology of the basic construction");
  homologyc->add_option("file", file)->required();
  homologyc->add_option("--chamber", chamber_file);
  homologyc->add_option("--radius", radius)->required();
  homologyc->add_option("--variant", variant)->check(CLI::IsMember({"h", "hc"}));

  auto* graded = app.add_subcommand("graded", "graded term of the descent filtration");
  graded->add_option("file", file)->required();
  graded->add_option("-p,--level", level)->required();
  graded->add_option("--radius", radius)->required();
  graded->add_option("--variant", variant)->check(CLI::IsMember({"h", "hc"}));

  auto* demo = app.add_subcommand("demo", "worked demonstrations");
  demo->add_option("name", demo_name)->required();
  demo->add_option("--radius", radius);

  auto* building = app.add_subcommand("building", "right-angled building computations");
  building->add_option("file", file)->required();
  building->add_option("--thickness", thickness)->required();
  building->add_option("--radius", radius)->required();
  auto* basis_opt = building->add_option("--basis", basis_text);
  building->add_option("--realize", realize_file);

  auto* hecke = app.add_subcommand("hecke", "Hecke algebra computations");
  hecke->add_option("file", file)->required();
  hecke->add_option("--q", q_text)->required();
  hecke->add_option("--radius", radius)->required();
  auto* graded_opt = hecke->add_option("--graded", level);

  auto* verifyc = app.add_subcommand("verify", "run the verification suite");
  verifyc->add_option("--suite", suite);
  verifyc->add_option("--corpus", corpus_name)->check(CLI::IsMember({"builtin"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (spherical->parsed()) return run_spherical(file);
    if (ball->parsed()) return run_ball(file, radius);
    if (chamber->parsed()) return run_chamber(file);
    if (basis->parsed()) return run_basis(file, radius, side);
    if (gaction->parsed()) return run_graded_action(file, t_text, s_name, radius, side);
    if (homologyc->parsed()) return run_homology(file, chamber_file, radius, variant);
    if (graded->parsed()) return run_graded(file, level, radius, variant);
    if (demo->parsed()) return run_demo(demo_name, radius);
    if (building->parsed()) {
      basis_given = basis_opt->count() > 0;
      return run_building(file, thickness, radius, basis_text, basis_given, realize_file);
    }
    if (hecke->parsed()) return run_hecke(file, q_text, radius, level, graded_opt->count() > 0);
    if (verifyc->parsed()) return run_verify(suite);
  } catch (const coxcoh::error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
