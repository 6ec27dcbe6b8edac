#include "ppa/io.hpp"

#include <fstream>
#include <stdexcept>

namespace ppa::io {

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::runtime_error("parse error in '" + path + "': " + e.what());
  }
  return doc;
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << doc.dump(2) << "\n";
}

QuiverDoc parse_quiver(const json& doc) {
  if (!doc.contains("vertices") || !doc.contains("arrows"))
    throw std::runtime_error("quiver document needs 'vertices' and 'arrows'");
  std::vector<std::string> vertices;
  for (const auto& v : doc.at("vertices")) vertices.push_back(v.get<std::string>());
  std::vector<Arrow> arrows;
  for (const auto& a : doc.at("arrows")) {
    std::string id = a.at("id").get<std::string>();
    // doubles are always tool-derived; a reversal tag is accepted only at the
    // end of the id, so reflected quivers can be fed back in
    if (id.find(Quiver::kDoubleMark) != std::string::npos)
      throw std::runtime_error("arrow id '" + id + "' uses the reserved double marker");
    auto star = id.find(Quiver::kReverseMark);
    if (star != std::string::npos && star + 1 != id.size())
      throw std::runtime_error("arrow id '" + id + "' may carry the reversal marker only as a suffix");
    arrows.push_back(Arrow{std::move(id), a.at("tail").get<std::string>(), a.at("head").get<std::string>()});
  }
  QuiverDoc qd;
  qd.quiver = Quiver(std::move(vertices), std::move(arrows));
  if (doc.contains("lambda")) {
    for (const auto& [k, v] : doc.at("lambda").items())
      qd.lambda_raw[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return qd;
}

json serialize_quiver(const Quiver& q, const std::map<std::string, std::string>& lambda_raw) {
  json doc;
  doc["vertices"] = q.vertices();
  json arrows = json::array();
  for (const Arrow& a : q.arrows()) arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  doc["arrows"] = arrows;
  if (!lambda_raw.empty()) {
    json l;
    for (const auto& [k, v] : lambda_raw) l[k] = v;
    doc["lambda"] = l;
  }
  return doc;
}

std::map<std::string, std::string> parse_lambda_map(const json& doc) {
  std::map<std::string, std::string> out;
  const json& src = doc.contains("lambda") ? doc.at("lambda") : doc;
  for (const auto& [k, v] : src.items()) out[k] = v.is_string() ? v.get<std::string>() : v.dump();
  return out;
}

LambdaVector realize_lambda(const Quiver& q, const std::map<std::string, std::string>& raw, const FieldSpec& f) {
  LambdaVector l = LambdaVector::zero(q, f);
  for (const auto& [k, v] : raw) {
    if (!q.has_vertex(k)) throw std::runtime_error("lambda names unknown vertex '" + k + "'");
    l.entries.at(k) = Scalar::from_string(v, f);
  }
  return l;
}

std::vector<PermPair> parse_generators(const json& doc, const Quiver& q) {
  std::vector<PermPair> gens;
  if (!doc.contains("generators")) throw std::runtime_error("group document needs 'generators'");
  for (const auto& g : doc.at("generators")) {
    PermPair p;
    for (const auto& [k, v] : g.at("vertex_perm").items()) p.vmap[k] = v.get<std::string>();
    if (g.contains("arrow_perm")) {
      for (const auto& [k, v] : g.at("arrow_perm").items()) p.amap[k] = v.get<std::string>();
    } else {
      // infer: unique arrow between each image pair
      for (const Arrow& a : q.arrows()) {
        auto ti = p.vmap.find(a.tail);
        auto hi = p.vmap.find(a.head);
        if (ti == p.vmap.end() || hi == p.vmap.end())
          throw std::runtime_error("vertex_perm misses an endpoint of arrow '" + a.id + "'");
        std::vector<std::string> candidates;
        for (const Arrow& b : q.arrows())
          if (b.tail == ti->second && b.head == hi->second) candidates.push_back(b.id);
        if (candidates.size() != 1)
          throw std::runtime_error("arrow_perm omitted but arrow '" + a.id + "' has " +
                                   std::to_string(candidates.size()) + " candidate images; specify arrow_perm");
        p.amap[a.id] = candidates.front();
      }
    }
    gens.push_back(std::move(p));
  }
  return gens;
}

Representation parse_rep(const json& doc, const Quiver& doubled, const FieldSpec& f) {
  if (doc.contains("field")) {
    FieldSpec declared = FieldSpec::parse(doc.at("field").get<std::string>());
    if (declared != f)
      throw std::runtime_error("representation declares field " + declared.to_string() + " but workspace uses " +
                               f.to_string());
  }
  DimVector dims = DimVector::zero(doubled);
  for (const auto& [k, v] : doc.at("dims").items()) {
    if (!doubled.has_vertex(k)) throw std::runtime_error("dims names unknown vertex '" + k + "'");
    dims.entries.at(k) = v.get<long long>();
  }
  Representation r = Representation::zero_rep(doubled, f, dims);
  if (doc.contains("matrices")) {
    for (const auto& [aid, entries] : doc.at("matrices").items()) {
      if (!doubled.has_arrow(aid)) throw std::runtime_error("matrices name unknown arrow '" + aid + "'");
      const Arrow& a = doubled.arrow(aid);
      std::size_t rows = static_cast<std::size_t>(dims.at(a.head));
      std::size_t cols = static_cast<std::size_t>(dims.at(a.tail));
      if (entries.size() != rows * cols)
        throw std::runtime_error("matrix for arrow '" + aid + "' has " + std::to_string(entries.size()) +
                                 " entries, expected " + std::to_string(rows * cols));
      Matrix m(rows, cols, f);
      std::size_t i = 0;
      for (const auto& e : entries) {
        std::string s = e.is_string() ? e.get<std::string>() : e.dump();
        m.at(i / cols, i % cols) = Scalar::from_string(s, f);
        ++i;
      }
      r.mats.at(aid) = std::move(m);
    }
  }
  r.validate();
  return r;
}

json serialize_rep(const Representation& r) {
  json doc;
  doc["field"] = r.field.to_string();
  json dims;
  for (const auto& v : r.quiver.vertices()) dims[v] = r.dims.at(v);
  doc["dims"] = dims;
  json mats;
  for (const Arrow& a : r.quiver.arrows()) {
    const Matrix& m = r.mat(a.id);
    if (m.is_zero()) continue;  // zero matrices are the default
    json entries = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(m.at(i, j).to_string());
    mats[a.id] = entries;
  }
  doc["matrices"] = mats;
  return doc;
}

SkewStructure parse_skew(const json& doc, const GroupAction& action, const FieldSpec& f) {
  SkewStructure s;
  s.rep = parse_rep(doc.at("representation"), action.quiver(), f);
  s.group = action;
  std::map<std::size_t, VertexMap> gen_images;
  for (const auto& [k, vm] : doc.at("phi").items()) {
    std::size_t e = std::stoull(k);
    if (e >= action.size()) throw std::runtime_error("phi names element " + k + " outside the group");
    std::size_t einv = action.inverse(e);
    VertexMap m;
    for (const auto& [vert, entries] : vm.items()) {
      if (!s.rep.quiver.has_vertex(vert)) throw std::runtime_error("phi names unknown vertex '" + vert + "'");
      std::size_t rows = static_cast<std::size_t>(s.rep.dims.at(vert));
      std::size_t cols = static_cast<std::size_t>(s.rep.dims.at(action.vertex_image(einv, vert)));
      if (entries.size() != rows * cols)
        throw std::runtime_error("phi matrix at vertex '" + vert + "' has wrong entry count");
      Matrix mat(rows, cols, f);
      std::size_t i = 0;
      for (const auto& x : entries) {
        std::string str = x.is_string() ? x.get<std::string>() : x.dump();
        mat.at(i / cols, i % cols) = Scalar::from_string(str, f);
        ++i;
      }
      m[vert] = std::move(mat);
    }
    for (const auto& vert : s.rep.quiver.vertices())
      if (!m.count(vert)) throw std::runtime_error("phi at element " + k + " misses vertex '" + vert + "'");
    gen_images[e] = std::move(m);
  }
  s.phi = extend_phi(s.rep, action, gen_images);
  ValidationReport vr = validate_structure(s);
  if (!vr.ok) throw std::runtime_error("structure file invalid: " + vr.violations.front());
  return s;
}

json serialize_skew(const SkewStructure& s) {
  json doc;
  doc["representation"] = serialize_rep(s.rep);
  json phi;
  // store generator images only; the loader re-extends
  std::vector<std::size_t> gens = s.group.generators();
  if (gens.empty() && s.group.size() > 1)
    throw std::runtime_error("serialize_skew: group carries no generators");
  for (std::size_t e : gens) {
    const VertexMap& vm = s.phi_of(e);
    json per_vertex;
    for (const auto& [vert, m] : vm) {
      json entries = json::array();
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) entries.push_back(m.at(i, j).to_string());
      per_vertex[vert] = entries;
    }
    phi[std::to_string(e)] = per_vertex;
  }
  doc["phi"] = phi;
  return doc;
}

json serialize_qg(const QGData& qg, const EtaXi* par) {
  json doc;
  json verts = json::array();
  for (const QGVertex& v : qg.vertices)
    verts.push_back({{"id", v.id}, {"orbit", v.orbit_rep}, {"irr", v.irr_name}, {"dim", v.irr_dim}});
  doc["vertices"] = verts;
  json arrows = json::array();
  for (const Arrow& a : qg.qg.arrows()) arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  doc["arrows"] = arrows;
  json mult;
  for (const auto& [key, m] : qg.raw_mult) {
    if (m == 0) continue;
    mult[key.first + " -> " + key.second] = m;
  }
  doc["multiplicities"] = mult;
  if (par != nullptr) {
    json eta;
    for (const QGVertex& v : qg.vertices) eta[v.id] = par->eta.at(v.id).to_string();
    doc["eta"] = eta;
    json xi;
    for (const auto& [rep, val] : par->xi) xi[rep] = val.to_string();
    doc["xi"] = xi;
  }
  doc["classification"] = qg.classification;
  return doc;
}

}  // namespace ppa::io
