// Command-line front end: loads quiver/group/lambda/representation/structure
// documents, dispatches subcommands, and prints deterministic JSON reports.
// Exit codes: 0 success, 1 mathematical falsity, 2 error.

#include <CLI11.hpp>
#include <iostream>

#include "ppa/io.hpp"

using namespace ppa;
using ppa::io::json;

namespace {

struct Options {
  std::string field = "Q";
  std::uint64_t seed = 0;
  unsigned trials = 32;
  std::string quiver_path, group_path, lambda_path;
  std::string rep_path, rep2_path, structure_path, structure2_path;
  std::string at_vertex, word, out_path;
  long long element = 0;
};

struct Workspace {
  FieldSpec field = FieldSpec::rationals();
  Quiver quiver;          // un-doubled
  Quiver doubled;
  std::map<std::string, std::string> lambda_raw;
  std::optional<GroupAction> group;          // on the un-doubled quiver
  std::optional<GroupAction> group_doubled;  // extended to the double
};

Workspace load_workspace(const Options& opt, bool need_group) {
  Workspace ws;
  ws.field = FieldSpec::parse(opt.field);
  if (opt.quiver_path.empty()) throw std::runtime_error("--quiver is required");
  io::QuiverDoc qd = io::parse_quiver(io::load_file(opt.quiver_path));
  ws.quiver = qd.quiver;
  ws.doubled = double_quiver(ws.quiver);
  ws.lambda_raw = qd.lambda_raw;
  if (!opt.lambda_path.empty()) ws.lambda_raw = io::parse_lambda_map(io::load_file(opt.lambda_path));
  if (!opt.group_path.empty()) {
    auto gens = io::parse_generators(io::load_file(opt.group_path), ws.quiver);
    ws.group = GroupAction::close(ws.quiver, gens);
    ws.group_doubled = ws.group->extended_to_double(ws.doubled);
    if (!ws.field.is_rational() && ws.group->size() % ws.field.p == 0)
      throw std::runtime_error("field characteristic " + std::to_string(ws.field.p) + " divides the group order " +
                               std::to_string(ws.group->size()));
    if (!ws.lambda_raw.empty()) {
      LambdaVector l = io::realize_lambda(ws.quiver, ws.lambda_raw, ws.field);
      if (!lambda_compatible(*ws.group, l)) {
        OrbitData od = orbits(*ws.group);
        for (const auto& orb : od.vertex_orbits)
          for (const auto& v : orb)
            if (!(l.at(v) == l.at(orb.front())))
              throw std::runtime_error("lambda is not constant on the orbit of vertex '" + orb.front() + "'");
      }
    }
  } else if (need_group) {
    throw std::runtime_error("--group is required for this command");
  }
  return ws;
}

LambdaVector lambda_on(const Workspace& ws, const Quiver& q) {
  LambdaVector l = LambdaVector::zero(q, ws.field);
  for (const auto& [k, v] : ws.lambda_raw) {
    if (!q.has_vertex(k)) throw std::runtime_error("lambda names unknown vertex '" + k + "'");
    l.entries.at(k) = Scalar::from_string(v, ws.field);
  }
  return l;
}

std::vector<std::string> orbit_of(const Workspace& ws, const std::string& vertex) {
  if (!ws.quiver.has_vertex(vertex)) throw std::runtime_error("unknown vertex '" + vertex + "'");
  if (!ws.group) return {vertex};
  OrbitData od = orbits(*ws.group);
  return od.vertex_orbit_of(vertex);
}

json lambda_doc(const LambdaVector& l) {
  json out;
  for (const auto& [v, s] : l.entries) out[v] = s.to_string();
  return out;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

int cmd_classify(const Options& opt) {
  Workspace ws = load_workspace(opt, false);
  json report;
  report["classification"] = classify_dynkin(ws.quiver);
  emit(report);
  return 0;
}

int cmd_orbits(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  OrbitData od = orbits(*ws.group);
  json report;
  report["group_order"] = ws.group->size();
  report["vertex_orbits"] = od.vertex_orbits;
  report["arrow_orbits"] = od.arrow_orbits;
  json stabs;
  for (const auto& [v, s] : od.stabilizers) stabs[v] = s.size();
  report["stabilizer_orders"] = stabs;
  report["representatives"] = od.representatives;
  json kappa;
  for (const auto& [v, e] : od.kappa) kappa[v] = e;
  report["kappa"] = kappa;
  report["admissible"] = is_admissible(*ws.group);
  if (!ws.lambda_raw.empty())
    report["lambda_compatible"] = lambda_compatible(*ws.group, lambda_on(ws, ws.quiver));
  emit(report);
  return 0;
}

int cmd_check_relations(const Options& opt) {
  Workspace ws = load_workspace(opt, false);
  Representation rep = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  LambdaVector l = lambda_on(ws, ws.doubled);
  auto residuals = check_relations(rep, l);
  bool all_zero = true;
  json per_vertex;
  for (const auto& [v, r] : residuals) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j)
        if (!r.at(i, j).is_zero()) ++nonzero;
    per_vertex[v] = {{"zero", nonzero == 0}, {"nonzero_entries", nonzero}};
    if (nonzero > 0) all_zero = false;
  }
  json report;
  report["relations_hold"] = all_zero;
  report["residuals"] = per_vertex;
  report["trace_obstruction"] = trace_obstruction(l, rep.dims).to_string();
  emit(report);
  return all_zero ? 0 : 1;
}

int cmd_twist(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  Representation rep = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  if (opt.element < 0 || static_cast<std::size_t>(opt.element) >= ws.group_doubled->size())
    throw std::runtime_error("--element out of range");
  Representation tw = twist(rep, *ws.group_doubled, static_cast<std::size_t>(opt.element));
  emit(io::serialize_rep(tw));
  return 0;
}

int cmd_hom(const Options& opt) {
  Workspace ws = load_workspace(opt, false);
  Representation x = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  Representation y = io::parse_rep(io::load_file(opt.rep2_path), ws.doubled, ws.field);
  HomBasis hb = hom_space(x, y);
  json report;
  report["dim"] = hb.dim();
  emit(report);
  return 0;
}

int cmd_indec(const Options& opt) {
  Workspace ws = load_workspace(opt, false);
  Representation x = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  EndoAnalysis ea = analyze_endomorphisms(x, opt.seed);
  json report;
  report["end_dim"] = ea.end_dim;
  report["rad_dim"] = ea.rad_dim;
  report["quotient_dim"] = ea.quotient_dim;
  const char* verdict = ea.verdict == EndoAnalysis::Verdict::SplitIndecomposable ? "indecomposable"
                        : ea.verdict == EndoAnalysis::Verdict::NonSplitIndecomposable
                            ? "indecomposable, non-split-endo"
                            : "decomposable";
  report["verdict"] = verdict;
  report["indecomposable"] = ea.quotient_dim == 1;
  emit(report);
  return ea.quotient_dim == 1 ? 0 : 1;
}

int cmd_decompose(const Options& opt) {
  Workspace ws = load_workspace(opt, false);
  Representation x = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  std::vector<Representation> parts = decompose(x, opt.seed);
  json report;
  report["summands"] = parts.size();
  json list = json::array();
  for (const Representation& p : parts) list.push_back(io::serialize_rep(p));
  report["parts"] = list;
  emit(report);
  return 0;
}

int cmd_hx(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  Representation x = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  HxResult hx = hx_subgroup(x, *ws.group_doubled, opt.trials, opt.seed);
  json report;
  report["hx_order"] = hx.subgroup.size();
  report["hx_elements"] = hx.subgroup;
  report["transversal"] = hx.transversal;
  emit(report);
  return 0;
}

int cmd_structures(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  Representation x = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  HxResult hx = hx_subgroup(x, *ws.group_doubled, opt.trials, opt.seed);
  std::vector<SkewStructure> ss = enumerate_structures(x, *ws.group_doubled, opt.trials, opt.seed);
  json report;
  report["count"] = ss.size();
  report["hx_order"] = hx.subgroup.size();
  report["hx_elements"] = hx.subgroup;
  {
    // the cyclic generators the base construction corrects, for reproducibility
    AbelianBasis ab = abelian_basis(ws.group_doubled->subgroup_action(hx.subgroup));
    json gens = json::array();
    for (std::size_t k = 0; k < ab.gens.size(); ++k)
      gens.push_back({{"element", hx.subgroup[ab.gens[k]]}, {"order", ab.orders[k]}});
    report["hx_generators"] = gens;
  }
  json list = json::array();
  for (const SkewStructure& s : ss) list.push_back(io::serialize_skew(s));
  report["structures"] = list;
  emit(report);
  return 0;
}

int cmd_equiv(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  SkewStructure s1 = io::parse_skew(io::load_file(opt.structure_path), *ws.group_doubled, ws.field);
  SkewStructure s2 = io::parse_skew(io::load_file(opt.structure2_path), *ws.group_doubled, ws.field);
  EquivResult eq = are_equivalent(s1, s2, opt.trials, opt.seed);
  json report;
  report["equivalent"] = eq.equivalent;
  report["certain"] = eq.certain;
  emit(report);
  return eq.equivalent ? 0 : 1;
}

json reflected_rep_doc(const Workspace& ws, const ReflectedRep& rr) {
  json report;
  report["quiver"] = io::serialize_quiver(undouble(rr.rep.quiver));
  report["lambda"] = lambda_doc(rr.lambda);
  report["representation"] = io::serialize_rep(rr.rep);
  (void)ws;
  return report;
}

int cmd_reflect(const Options& opt) {
  bool structure_mode = !opt.structure_path.empty();
  Workspace ws = load_workspace(opt, structure_mode);
  if (opt.at_vertex.empty()) throw std::runtime_error("--at is required");
  std::vector<std::string> orbit = orbit_of(ws, opt.at_vertex);
  LambdaVector l = lambda_on(ws, ws.doubled);
  if (structure_mode) {
    SkewStructure s = io::parse_skew(io::load_file(opt.structure_path), *ws.group_doubled, ws.field);
    ReflectedSkew rs = reflect_skew(s, orbit, l);
    json report;
    report["orbit"] = orbit;
    report["lambda"] = lambda_doc(rs.lambda);
    report["structure"] = io::serialize_skew(rs.structure);
    emit(report);
    return 0;
  }
  if (opt.rep_path.empty()) throw std::runtime_error("--rep or --structure is required");
  Representation rep = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  ReflectedRep rr = orbit_reflect_rep(rep, orbit, l);
  json report;
  report["orbit"] = orbit;
  report.update(reflected_rep_doc(ws, rr));
  emit(report);
  return 0;
}

int cmd_weyl(const Options& opt) {
  bool structure_mode = !opt.structure_path.empty();
  Workspace ws = load_workspace(opt, structure_mode);
  if (opt.word.empty()) throw std::runtime_error("--word is required (comma-separated vertices)");
  std::vector<std::vector<std::string>> word;
  std::string cur;
  for (char c : opt.word + ",") {
    if (c == ',') {
      if (!cur.empty()) word.push_back(orbit_of(ws, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  LambdaVector l = lambda_on(ws, ws.doubled);
  if (structure_mode) {
    SkewStructure s = io::parse_skew(io::load_file(opt.structure_path), *ws.group_doubled, ws.field);
    ReflectedSkew rs = weyl_reflect_skew(s, word, l);
    json report;
    report["lambda"] = lambda_doc(rs.lambda);
    report["structure"] = io::serialize_skew(rs.structure);
    emit(report);
    return 0;
  }
  if (opt.rep_path.empty()) throw std::runtime_error("--rep or --structure is required");
  Representation rep = io::parse_rep(io::load_file(opt.rep_path), ws.doubled, ws.field);
  ReflectedRep rr = weyl_reflect(rep, word, l);
  emit(reflected_rep_doc(ws, rr));
  return 0;
}

int cmd_qg(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  QGData qg = build_qg(ws.quiver, *ws.group, ws.field, opt.seed);
  if (!ws.lambda_raw.empty()) {
    EtaXi par = eta_xi(lambda_on(ws, ws.quiver), qg, *ws.group);
    emit(io::serialize_qg(qg, &par));
  } else {
    emit(io::serialize_qg(qg));
  }
  return 0;
}

int cmd_transport(const Options& opt) {
  Workspace ws = load_workspace(opt, true);
  SkewStructure s = io::parse_skew(io::load_file(opt.structure_path), *ws.group_doubled, ws.field);
  QGData qg = build_qg(ws.quiver, *ws.group, ws.field, opt.seed);
  LambdaVector l = lambda_on(ws, ws.quiver);
  EtaXi par = eta_xi(l, qg, *ws.group);
  Representation moved = transport_module(s, qg, *ws.group, l);
  json report;
  report["qg"] = io::serialize_qg(qg, &par);
  report["transported"] = io::serialize_rep(moved);
  emit(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for deformed preprojective algebras under finite group actions"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--field", opt.field, "ground field: Q or Fp:<p>")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--trials", opt.trials, "randomized isomorphism trials")->capture_default_str();

  auto add_common = [&](CLI::App* sub, bool rep = false, bool rep2 = false, bool grp = false, bool str = false,
                        bool str2 = false) {
    sub->fallthrough();  // global flags may appear after the subcommand
    sub->add_option("--quiver", opt.quiver_path, "quiver file")->required();
    if (grp)
      sub->add_option("--group", opt.group_path, "group file")->required();
    else
      sub->add_option("--group", opt.group_path, "group file");
    sub->add_option("--lambda", opt.lambda_path, "lambda file (overrides the quiver's)");
    if (rep) sub->add_option("--rep", opt.rep_path, "representation file");
    if (rep2) sub->add_option("--rep2", opt.rep2_path, "second representation file");
    if (str) sub->add_option("--structure", opt.structure_path, "skew structure file");
    if (str2) sub->add_option("--structure2", opt.structure2_path, "second skew structure file");
  };

  std::map<std::string, std::function<int()>> handlers;
  auto* c1 = app.add_subcommand("classify", "Dynkin type of the quiver");
  add_common(c1);
  handlers["classify"] = [&] { return cmd_classify(opt); };
  auto* c2 = app.add_subcommand("orbits", "orbit, stabilizer and admissibility report");
  add_common(c2, false, false, true);
  handlers["orbits"] = [&] { return cmd_orbits(opt); };
  auto* c3 = app.add_subcommand("check-relations", "deformed preprojective relation residuals");
  add_common(c3, true);
  handlers["check-relations"] = [&] { return cmd_check_relations(opt); };
  auto* c4 = app.add_subcommand("twist", "twisted representation by a group element");
  add_common(c4, true, false, true);
  c4->add_option("--element", opt.element, "group element index")->required();
  handlers["twist"] = [&] { return cmd_twist(opt); };
  auto* c5 = app.add_subcommand("hom", "dimension of the intertwiner space");
  add_common(c5, true, true);
  handlers["hom"] = [&] { return cmd_hom(opt); };
  auto* c6 = app.add_subcommand("indec", "indecomposability via the endomorphism ring");
  add_common(c6, true);
  handlers["indec"] = [&] { return cmd_indec(opt); };
  auto* c7 = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
  add_common(c7, true);
  handlers["decompose"] = [&] { return cmd_decompose(opt); };
  auto* c8 = app.add_subcommand("hx", "stabilizer-up-to-isomorphism subgroup");
  add_common(c8, true, false, true);
  handlers["hx"] = [&] { return cmd_hx(opt); };
  auto* c9 = app.add_subcommand("structures", "enumerate skew module structures on the hull");
  add_common(c9, true, false, true);
  handlers["structures"] = [&] { return cmd_structures(opt); };
  auto* c10 = app.add_subcommand("equiv", "equivalence of two skew structures");
  add_common(c10, false, false, true, true, true);
  handlers["equiv"] = [&] { return cmd_equiv(opt); };
  auto* c11 = app.add_subcommand("reflect", "reflection functor at a vertex orbit");
  add_common(c11, true, false, false, true);
  c11->add_option("--at", opt.at_vertex, "vertex whose orbit is reflected")->required();
  handlers["reflect"] = [&] { return cmd_reflect(opt); };
  auto* c12 = app.add_subcommand("weyl", "composite reflection along a word of orbits");
  add_common(c12, true, false, false, true);
  c12->add_option("--word", opt.word, "comma-separated vertices naming the orbits")->required();
  handlers["weyl"] = [&] { return cmd_weyl(opt); };
  auto* c13 = app.add_subcommand("qg", "folded quiver with multiplicities and parameters");
  add_common(c13, false, false, true);
  handlers["qg"] = [&] { return cmd_qg(opt); };
  auto* c14 = app.add_subcommand("transport", "move a structure across the Morita equivalence");
  add_common(c14, false, false, true, true);
  handlers["transport"] = [&] { return cmd_transport(opt); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits cleanly, usage errors as errors
  }
  try {
    for (auto* sub : app.get_subcommands()) return handlers.at(sub->get_name())();
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
