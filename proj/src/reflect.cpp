#include "ppa/reflect.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppa {

namespace {

void require_relations(const Representation& v, const LambdaVector& lambda, const char* who) {
  if (!relations_hold(v, lambda))
    throw std::invalid_argument(std::string(who) + ": representation does not satisfy the relations");
}

bool orbit_is_all_sinks(const Quiver& doubled, const std::vector<std::string>& orbit) {
  std::map<std::string, bool> in;
  for (const auto& v : orbit) in[v] = true;
  for (const Arrow& a : doubled.original_arrows())
    if (in.count(a.tail)) return false;
  return true;
}

}  // namespace

std::vector<std::string> sinkify_reversal_set(const Quiver& doubled, const std::vector<std::string>& orbit) {
  std::map<std::string, bool> in;
  for (const auto& v : orbit) in[v] = true;
  std::vector<std::string> out;
  for (const Arrow& a : doubled.original_arrows()) {
    if (in.count(a.tail) && in.count(a.head))
      throw std::invalid_argument("sinkify: arrow '" + a.id + "' joins two orbit vertices (inadmissible)");
    if (in.count(a.tail)) out.push_back(a.id);
  }
  return out;
}

ReflectionData reflection_data(const Representation& v, const LambdaVector& lambda, const std::string& sink) {
  const Quiver& q = v.quiver;
  if (!q.is_doubled()) throw std::invalid_argument("reflection_data: representation not over a double quiver");
  if (q.has_loop_at(sink)) throw std::invalid_argument("reflection_data: loop at vertex '" + sink + "'");
  const Scalar& lj = lambda.at(sink);
  if (lj.is_zero()) throw std::invalid_argument("reflection_data: lambda vanishes at vertex '" + sink + "'");
  ReflectionData rd;
  rd.sink = sink;
  for (const Arrow& a : q.original_arrows()) {
    if (a.tail == sink)
      throw std::invalid_argument("reflection_data: arrow '" + a.id + "' has tail at the reflection vertex");
    if (a.head == sink) rd.arrows.push_back(a.id);
  }
  std::sort(rd.arrows.begin(), rd.arrows.end());
  std::size_t acc = 0;
  for (const auto& id : rd.arrows) {
    rd.offsets.push_back(acc);
    acc += static_cast<std::size_t>(v.dims.at(q.arrow(id).tail));
  }
  rd.vplus_dim = acc;
  const std::size_t dj = static_cast<std::size_t>(v.dims.at(sink));
  rd.mu = Matrix(rd.vplus_dim, dj, v.field);
  rd.pi = Matrix(dj, rd.vplus_dim, v.field);
  Scalar lj_inv = lj.inverse();
  for (std::size_t k = 0; k < rd.arrows.size(); ++k) {
    const Arrow& a = q.arrow(rd.arrows[k]);
    const Matrix& va = v.mat(a.id);
    const Matrix& vastar = v.mat(q.star(a.id));
    std::size_t dt = static_cast<std::size_t>(v.dims.at(a.tail));
    for (std::size_t r = 0; r < dt; ++r)
      for (std::size_t c = 0; c < dj; ++c) rd.mu.at(rd.offsets[k] + r, c) = vastar.at(r, c);
    for (std::size_t r = 0; r < dj; ++r)
      for (std::size_t c = 0; c < dt; ++c) rd.pi.at(r, rd.offsets[k] + c) = lj_inv * va.at(r, c);
  }
  if (!(rd.pi * rd.mu == Matrix::identity(dj, v.field)))
    throw std::logic_error("reflection_data: pi mu != id (relations violated at the sink)");
  rd.kernel_embed = rd.pi.kernel_basis();
  return rd;
}

Representation sinkify(const Representation& v, const LambdaVector& lambda, const std::vector<std::string>& orbit) {
  require_relations(v, lambda, "sinkify");
  std::vector<std::string> rev = sinkify_reversal_set(v.quiver, orbit);
  if (rev.empty()) return v;
  Quiver q0 = undouble(v.quiver);
  Quiver nq = double_quiver(reverse_arrows(q0, rev));
  Representation w;
  w.quiver = nq;
  w.field = v.field;
  w.dims = v.dims;
  std::map<std::string, bool> reversed;
  for (const auto& id : rev) reversed[id] = true;
  for (const Arrow& a : q0.arrows()) {
    if (!reversed.count(a.id)) {
      w.mats[a.id] = v.mat(a.id);
      w.mats[nq.star(a.id)] = v.mat(v.quiver.star(a.id));
      continue;
    }
    std::string rid = a.id;
    if (!rid.empty() && rid.back() == Quiver::kReverseMark)
      rid.pop_back();
    else
      rid += Quiver::kReverseMark;
    w.mats[rid] = -v.mat(v.quiver.star(a.id));
    w.mats[nq.star(rid)] = v.mat(a.id);
  }
  w.validate();
  if (!relations_hold(w, lambda)) throw std::logic_error("sinkify: reoriented representation violates the relations");
  return w;
}

SkewStructure sinkify_skew(const SkewStructure& s, const LambdaVector& lambda, const std::vector<std::string>& orbit) {
  std::vector<std::string> rev = sinkify_reversal_set(s.rep.quiver, orbit);
  if (rev.empty()) return s;
  SkewStructure out;
  out.rep = sinkify(s.rep, lambda, orbit);
  // transport the action: reorient the undoubled action, then extend
  Quiver q0 = undouble(s.rep.quiver);
  GroupAction g0 = GroupAction::trivial(q0);
  {
    // reconstruct the undoubled action from the doubled one
    std::vector<PermPair> gens;
    for (std::size_t gi : s.group.generators()) {
      PermPair p;
      p.vmap = s.group.element(gi).vmap;
      for (const Arrow& a : q0.arrows()) p.amap[a.id] = s.group.arrow_image(gi, a.id);
      gens.push_back(std::move(p));
    }
    g0 = GroupAction::close(q0, gens);
  }
  GroupAction gr = reoriented_action(g0, rev);
  out.group = gr.extended_to_double(out.rep.quiver);
  out.phi = s.phi;  // per-vertex data is untouched by reorientation
  ValidationReport vr = validate_structure(out, &lambda);
  if (!vr.ok) throw std::logic_error("sinkify_skew: transported structure failed validation: " + vr.violations.front());
  return out;
}

ReflectedRep reflect_rep(const Representation& v, const std::string& sink, const LambdaVector& lambda) {
  require_relations(v, lambda, "reflect_rep");
  ReflectionData rd = reflection_data(v, lambda, sink);
  const Quiver& q = v.quiver;
  const FieldSpec& f = v.field;
  const Scalar& lj = lambda.at(sink);
  const std::size_t w_dim = rd.kernel_embed.cols();
  Representation w;
  w.quiver = q;
  w.field = f;
  w.dims = v.dims;
  w.dims.entries.at(sink) = static_cast<long long>(w_dim);
  w.mats = v.mats;
  // C = -lambda_j (1 - mu pi), columns restricted per arrow block
  Matrix c = (-lj) * (Matrix::identity(rd.vplus_dim, f) - rd.mu * rd.pi);
  for (std::size_t k = 0; k < rd.arrows.size(); ++k) {
    const Arrow& a = q.arrow(rd.arrows[k]);
    std::size_t dt = static_cast<std::size_t>(v.dims.at(a.tail));
    Matrix block = c.sub(0, rd.offsets[k], rd.vplus_dim, dt);
    auto wa = rd.kernel_embed.solve(block);
    if (!wa) throw std::logic_error("reflect_rep: image does not land in the kernel");
    w.mats.at(a.id) = *wa;
    w.mats.at(q.star(a.id)) = rd.kernel_embed.sub(rd.offsets[k], 0, dt, w_dim);
  }
  w.validate();
  ReflectedRep out{std::move(w), reflect_lambda(undouble(q), sink, lambda)};
  if (!relations_hold(out.rep, out.lambda))
    throw std::logic_error("reflect_rep: output violates the reflected relations");
  DimVector expect = reflect_dim(undouble(q), sink, v.dims);
  if (!(out.rep.dims == expect)) throw std::logic_error("reflect_rep: dimension vector is not the reflection");
  return out;
}

VertexMap reflect_hom(const VertexMap& fmap, const Representation& v, const Representation& w,
                      const std::string& sink, const LambdaVector& lambda) {
  ReflectionData rv = reflection_data(v, lambda, sink);
  ReflectionData rw = reflection_data(w, lambda, sink);
  const FieldSpec& f = v.field;
  // block diagonal of f_{t(a)} on the sum spaces
  Matrix b(rw.vplus_dim, rv.vplus_dim, f);
  for (std::size_t k = 0; k < rv.arrows.size(); ++k) {
    const Arrow& a = v.quiver.arrow(rv.arrows[k]);
    const Matrix& blk = fmap.at(a.tail);
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c2 = 0; c2 < blk.cols(); ++c2) b.at(rw.offsets[k] + r, rv.offsets[k] + c2) = blk.at(r, c2);
  }
  auto z = rw.kernel_embed.solve(b * rv.kernel_embed);
  if (!z) throw std::logic_error("reflect_hom: induced map does not preserve kernels");
  VertexMap out = fmap;
  out.at(sink) = *z;
  return out;
}

ReflectedRep orbit_reflect_rep(const Representation& v, const std::vector<std::string>& orbit,
                               const LambdaVector& lambda) {
  if (orbit.empty()) throw std::invalid_argument("orbit_reflect_rep: empty orbit");
  for (const auto& vert : orbit)
    if (lambda.at(vert).is_zero())
      throw std::invalid_argument("orbit_reflect_rep: lambda vanishes at '" + vert + "'");
  Representation cur =
      orbit_is_all_sinks(v.quiver, orbit) ? v : sinkify(v, lambda, orbit);
  LambdaVector l = lambda;
  std::vector<std::string> sorted = orbit;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& vert : sorted) {
    ReflectedRep step = reflect_rep(cur, vert, l);
    cur = std::move(step.rep);
    l = std::move(step.lambda);
  }
  return ReflectedRep{std::move(cur), std::move(l)};
}

ReflectedSkew reflect_skew(const SkewStructure& s, const std::vector<std::string>& orbit, const LambdaVector& lambda) {
  if (!s.group.is_abelian()) throw std::invalid_argument("reflect_skew: group is not abelian");
  if (!lambda_compatible(s.group, lambda))
    throw std::invalid_argument("reflect_skew: lambda is not constant on orbits");
  for (const auto& vert : orbit)
    if (lambda.at(vert).is_zero()) throw std::invalid_argument("reflect_skew: lambda vanishes on the orbit");
  {
    // the orbit must be a vertex orbit of the action
    OrbitData od = orbits(s.group);
    std::vector<std::string> sorted = orbit;
    std::sort(sorted.begin(), sorted.end());
    if (od.vertex_orbit_of(sorted.front()) != sorted)
      throw std::invalid_argument("reflect_skew: given set is not a vertex orbit of the action");
  }
  SkewStructure cur = orbit_is_all_sinks(s.rep.quiver, orbit) ? s : sinkify_skew(s, lambda, orbit);
  const Representation& y = cur.rep;
  const GroupAction& g = cur.group;
  // reflection data per orbit vertex
  std::map<std::string, ReflectionData> data;
  for (const auto& vert : orbit) data[vert] = reflection_data(y, lambda, vert);
  ReflectedRep refl = orbit_reflect_rep(y, orbit, lambda);
  SkewStructure out;
  out.rep = refl.rep;
  out.group = g;
  for (std::size_t e = 0; e < g.size(); ++e) {
    std::size_t einv = g.inverse(e);
    const VertexMap& phi = cur.phi_of(e);
    VertexMap np = phi;
    for (const auto& vert : orbit) {
      const ReflectionData& rj = data.at(vert);
      const std::string vsrc = g.vertex_image(einv, vert);
      const ReflectionData& rsrc = data.at(vsrc);
      // block map between sum spaces: block a <- block e^-1(a) carries phi_{t(a)}
      Matrix c(rj.vplus_dim, rsrc.vplus_dim, y.field);
      for (std::size_t k = 0; k < rj.arrows.size(); ++k) {
        const Arrow& a = y.quiver.arrow(rj.arrows[k]);
        const std::string src_arrow = g.arrow_image(einv, a.id);
        std::size_t ksrc = static_cast<std::size_t>(
            std::find(rsrc.arrows.begin(), rsrc.arrows.end(), src_arrow) - rsrc.arrows.begin());
        if (ksrc >= rsrc.arrows.size()) throw std::logic_error("reflect_skew: arrow image missing at source sink");
        const Matrix& blk = phi.at(a.tail);
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c2 = 0; c2 < blk.cols(); ++c2)
            c.at(rj.offsets[k] + r, rsrc.offsets[ksrc] + c2) = blk.at(r, c2);
      }
      auto z = rj.kernel_embed.solve(c * rsrc.kernel_embed);
      if (!z) throw std::logic_error("reflect_skew: phi does not preserve the kernels");
      np.at(vert) = *z;
    }
    out.phi[e] = std::move(np);
  }
  ValidationReport vr = validate_structure(out, &refl.lambda);
  if (!vr.ok) throw std::runtime_error("reflect_skew: reflected structure failed validation: " + vr.violations.front());
  return ReflectedSkew{std::move(out), std::move(refl.lambda)};
}

ReflectedRep weyl_reflect(const Representation& v, const std::vector<std::vector<std::string>>& word,
                          const LambdaVector& lambda) {
  ReflectedRep cur{v, lambda};
  for (const auto& orbit : word) {
    for (const auto& vert : orbit)
      if (cur.lambda.at(vert).is_zero())
        throw std::invalid_argument("weyl_reflect: lambda vanished at '" + vert + "' mid-word (non-minimal word)");
    cur = orbit_reflect_rep(cur.rep, orbit, cur.lambda);
  }
  return cur;
}

ReflectedSkew weyl_reflect_skew(const SkewStructure& s, const std::vector<std::vector<std::string>>& word,
                                const LambdaVector& lambda) {
  ReflectedSkew cur{s, lambda};
  for (const auto& orbit : word) {
    for (const auto& vert : orbit)
      if (cur.lambda.at(vert).is_zero())
        throw std::invalid_argument("weyl_reflect_skew: lambda vanished at '" + vert + "' mid-word (non-minimal word)");
    cur = reflect_skew(cur.structure, orbit, cur.lambda);
  }
  return cur;
}

}  // namespace ppa
