#include "ppa/skew.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppa {

const VertexMap& SkewStructure::phi_of(std::size_t g) const {
  auto it = phi.find(g);
  if (it == phi.end()) throw std::out_of_range("SkewStructure: no phi for element " + std::to_string(g));
  return it->second;
}

VertexMap phi_compose(const GroupAction& g, std::size_t x, const VertexMap& phi_x, const VertexMap& phi_y) {
  VertexMap out;
  std::size_t xinv = g.inverse(x);
  for (const auto& [v, mx] : phi_x) out[v] = mx * phi_y.at(g.vertex_image(xinv, v));
  return out;
}

std::map<std::size_t, VertexMap> extend_phi(const Representation& rep, const GroupAction& g,
                                            const std::map<std::size_t, VertexMap>& generator_images) {
  std::map<std::size_t, VertexMap> phi;
  phi[0] = identity_morphism(rep);
  for (const auto& [e, vm] : generator_images) {
    if (e >= g.size()) throw std::invalid_argument("extend_phi: generator index out of range");
  }
  // BFS over right multiplication by generators, in group element order
  std::vector<std::size_t> queue{0};
  for (std::size_t cursor = 0; cursor < queue.size(); ++cursor) {
    std::size_t x = queue[cursor];
    for (const auto& [h, img] : generator_images) {
      std::size_t y = g.mult(x, h);
      VertexMap cand = phi_compose(g, x, phi.at(x), img);
      auto it = phi.find(y);
      if (it == phi.end()) {
        phi[y] = std::move(cand);
        queue.push_back(y);
      } else if (!(it->second == cand)) {
        throw std::invalid_argument("extend_phi: generator images violate multiplicativity at element " +
                                    std::to_string(y));
      }
    }
  }
  if (phi.size() != g.size())
    throw std::invalid_argument("extend_phi: generator images do not generate the group");
  return phi;
}

void ValidationReport::fail(std::string msg) {
  ok = false;
  violations.push_back(std::move(msg));
}

ValidationReport validate_structure(const SkewStructure& s, const LambdaVector* lambda) {
  ValidationReport rep;
  const GroupAction& g = s.group;
  const Representation& y = s.rep;
  if (!(g.quiver() == y.quiver)) {
    rep.fail("group acts on a different quiver");
    return rep;
  }
  if (s.phi.size() != g.size()) {
    rep.fail("phi family size differs from group order");
    return rep;
  }
  if (lambda != nullptr) {
    for (const auto& [v, res] : check_relations(y, *lambda))
      if (!res.is_zero()) rep.fail("relation residual nonzero at vertex '" + v + "'");
  }
  if (!(s.phi_of(0) == identity_morphism(y))) rep.fail("phi at the identity is not the identity");
  for (std::size_t e = 0; e < g.size(); ++e) {
    const VertexMap& phie = s.phi_of(e);
    std::size_t einv = g.inverse(e);
    // morphism property on every arrow of the double quiver
    for (const Arrow& b : y.quiver.arrows()) {
      const Matrix& twisted = y.mat(g.arrow_image(einv, b.id));
      if (!(phie.at(b.head) * twisted == y.mat(b.id) * phie.at(b.tail))) {
        rep.fail("phi_" + std::to_string(e) + " is not a module morphism at arrow '" + b.id + "'");
        break;
      }
    }
    for (const auto& [v, m] : phie) {
      if (!m.is_invertible()) {
        rep.fail("phi_" + std::to_string(e) + " is singular at vertex '" + v + "'");
        break;
      }
    }
    // cocycle phi_e^{|e|} = id
    std::size_t ord = g.order_of(e);
    VertexMap acc = phie;
    std::size_t cur = e;
    for (std::size_t k = 1; k < ord; ++k) {
      acc = phi_compose(g, cur, acc, phie);
      cur = g.mult(cur, e);
    }
    if (!(acc == identity_morphism(y)))
      rep.fail("cocycle fails: phi_" + std::to_string(e) + "^" + std::to_string(ord) + " != id");
  }
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) {
      VertexMap expect = phi_compose(g, a, s.phi_of(a), s.phi_of(b));
      if (!(expect == s.phi_of(g.mult(a, b)))) {
        rep.fail("multiplicativity fails at pair (" + std::to_string(a) + ", " + std::to_string(b) + ")");
        break;
      }
    }
  return rep;
}

namespace {

// phi_{h^n} for a single element: repeated phi_compose
VertexMap phi_power(const GroupAction& g, std::size_t h, const VertexMap& phi_h, std::size_t n) {
  VertexMap acc = phi_h;
  std::size_t cur = h;
  for (std::size_t k = 1; k < n; ++k) {
    acc = phi_compose(g, cur, acc, phi_h);
    cur = g.mult(cur, h);
  }
  return acc;
}

VertexMap scale_morphism(const Scalar& c, const VertexMap& f) {
  VertexMap r;
  for (const auto& [v, m] : f) r[v] = c * m;
  return r;
}

VertexMap add_morphism(const VertexMap& a, const VertexMap& b) {
  VertexMap r;
  for (const auto& [v, m] : a) r[v] = m + b.at(v);
  return r;
}

bool morphism_is_zero(const VertexMap& f) {
  for (const auto& [v, m] : f)
    if (!m.is_zero()) return false;
  return true;
}

// writes u = c id + nilpotent inside End(X); needs the split condition
Scalar scalar_part(const Representation& x, const VertexMap& u) {
  HomBasis endo = hom_space(x, x);
  std::vector<Matrix> span;
  std::vector<Matrix> blocks;
  for (const auto& v : x.quiver.vertices()) blocks.push_back(u.at(v));
  Matrix u_mat = Matrix::block_diag(blocks, x.field);
  for (const VertexMap& f : endo.basis) {
    std::vector<Matrix> bl;
    for (const auto& v : x.quiver.vertices()) bl.push_back(f.at(v));
    span.push_back(Matrix::block_diag(bl, x.field));
  }
  MatrixAlgebra alg(span);
  if (alg.quotient_dim() != 1)
    throw std::runtime_error("base_structure: endomorphism ring is not split local");
  // coordinates of u and of the identity modulo the radical
  auto q = alg.quotient();
  Matrix uq = q.project * alg.coordinates(u_mat);
  Matrix idq = q.project * alg.structure().unit;
  // 1-dimensional quotient: u = c * id there
  Scalar c = Scalar::zero(x.field);
  for (std::size_t i = 0; i < uq.rows(); ++i) {
    if (!idq.at(i, 0).is_zero()) {
      c = uq.at(i, 0) / idq.at(i, 0);
      break;
    }
  }
  return c;
}

}  // namespace

SkewStructure base_structure(const Representation& x, const GroupAction& g, const std::vector<std::size_t>& subgroup,
                             unsigned trials, std::uint64_t seed) {
  GroupAction h = g.subgroup_action(subgroup);
  if (!h.is_abelian()) throw std::invalid_argument("base_structure: subgroup is not abelian");
  AbelianBasis basis = abelian_basis(h);
  const FieldSpec& f = x.field;
  // correct each independent generator so its cocycle holds exactly
  std::map<std::size_t, VertexMap> gen_phi;
  for (std::size_t l = 0; l < basis.gens.size(); ++l) {
    std::size_t hel = basis.gens[l];
    std::size_t n = basis.orders[l];
    IsoResult iso = are_isomorphic(twist(x, h, hel), x, trials, seed + 7 * l);
    if (!iso.isomorphic)
      throw std::invalid_argument("base_structure: subgroup element " + std::to_string(subgroup[hel]) +
                                  " does not fix the isomorphism class");
    VertexMap theta = *iso.witness;
    VertexMap u = phi_power(h, hel, theta, n);  // theta^{(n)} in End(X)
    Scalar c = scalar_part(x, u);
    if (c.is_zero()) throw std::logic_error("base_structure: scalar part of theta^n vanished");
    auto gamma = nth_root(c, n);
    if (!gamma)
      throw std::runtime_error("base_structure: field " + f.to_string() + " lacks a " + std::to_string(n) +
                               "-th root of the obstruction " + c.to_string());
    // nil = u / c - id, then s = (id + nil)^(-1/n) as a truncated binomial series
    VertexMap nil = scale_morphism(c.inverse(), u);
    for (auto& [v, m] : nil) m = m - Matrix::identity(m.rows(), f);
    Scalar inv_n = Scalar::from_int(static_cast<long long>(n), f).inverse();
    VertexMap series = identity_morphism(x);
    VertexMap power = nil;
    Scalar coeff = Scalar::one(f);
    Scalar expo = -inv_n;  // falling product for binom(-1/n, k)
    for (std::size_t k = 1; !morphism_is_zero(power); ++k) {
      coeff = coeff * expo / Scalar::from_int(static_cast<long long>(k), f);
      series = add_morphism(series, scale_morphism(coeff, power));
      expo = expo - Scalar::one(f);
      power = compose(power, nil);
      if (k > static_cast<std::size_t>(x.total_dim()) + 2)
        throw std::logic_error("base_structure: nilpotent part did not terminate");
    }
    VertexMap corr = scale_morphism(gamma->inverse(), series);
    // phi = theta . corr (corr commutes with the twist conjugation, being a polynomial in u)
    VertexMap phi_gen;
    std::size_t hinv = h.inverse(hel);
    for (const auto& v : x.quiver.vertices()) phi_gen[v] = theta.at(v) * corr.at(h.vertex_image(hinv, v));
    VertexMap check = phi_power(h, hel, phi_gen, n);
    if (!(check == identity_morphism(x))) throw std::logic_error("base_structure: cocycle correction failed");
    gen_phi[hel] = std::move(phi_gen);
  }
  SkewStructure s;
  s.rep = x;
  s.group = h;
  if (h.size() == 1) {
    s.phi[0] = identity_morphism(x);
    return s;
  }
  s.phi = extend_phi(x, h, gen_phi);  // throws if the per-generator corrections are incompatible
  ValidationReport vr = validate_structure(s);
  if (!vr.ok)
    throw std::runtime_error("base_structure: generator corrections do not assemble into a valid structure: " +
                             vr.violations.front());
  return s;
}

SkewStructure induce_module(const Representation& x, const GroupAction& g, const HxResult& hx,
                            const LinearCharacter& chi, unsigned trials, std::uint64_t seed) {
  SkewStructure base = base_structure(x, g, hx.subgroup, trials, seed);
  const FieldSpec& f = x.field;
  // subgroup-index lookup from parent index
  std::map<std::size_t, std::size_t> sub_index;
  for (std::size_t k = 0; k < hx.subgroup.size(); ++k) sub_index[hx.subgroup[k]] = k;
  // coset representative map: parent element -> transversal position
  std::vector<std::size_t> coset_pos(g.size(), SIZE_MAX);
  for (std::size_t tpos = 0; tpos < hx.transversal.size(); ++tpos)
    for (std::size_t k : hx.subgroup) coset_pos[g.mult(hx.transversal[tpos], k)] = tpos;
  // hull with block bookkeeping
  std::vector<Representation> twists;
  for (std::size_t t : hx.transversal) twists.push_back(twist(x, g, t));
  Representation hull = direct_sum(twists);
  // per vertex, the row offset of each block
  std::map<std::string, std::vector<std::size_t>> off;
  for (const auto& v : x.quiver.vertices()) {
    std::vector<std::size_t> offs;
    std::size_t acc = 0;
    for (const Representation& tw : twists) {
      offs.push_back(acc);
      acc += static_cast<std::size_t>(tw.dims.at(v));
    }
    off[v] = std::move(offs);
  }
  SkewStructure s;
  s.rep = hull;
  s.group = g;
  for (std::size_t e = 0; e < g.size(); ++e) {
    std::size_t einv = g.inverse(e);
    VertexMap pm;
    for (const auto& v : x.quiver.vertices()) {
      const std::string& vsrc = g.vertex_image(einv, v);
      std::size_t rows = static_cast<std::size_t>(hull.dims.at(v));
      std::size_t cols = static_cast<std::size_t>(hull.dims.at(vsrc));
      Matrix m(rows, cols, f);
      for (std::size_t tpos = 0; tpos < hx.transversal.size(); ++tpos) {
        std::size_t t = hx.transversal[tpos];
        std::size_t gt = g.mult(e, t);
        std::size_t tprime_pos = coset_pos[gt];
        std::size_t tprime = hx.transversal[tprime_pos];
        std::size_t hprime = g.mult(g.inverse(tprime), gt);  // in H
        const VertexMap& phi_h = base.phi_of(sub_index.at(hprime));
        Scalar cval = chi.values.at(sub_index.at(hprime));
        // block: chi(h') (phi_h')_{t'^-1 v} : X_{(gt)^-1 v} -> X_{t'^-1 v}
        const std::string& vt = g.vertex_image(g.inverse(tprime), v);
        const Matrix& blk = phi_h.at(vt);
        std::size_t r0 = off.at(v)[tprime_pos];
        std::size_t c0 = off.at(vsrc)[tpos];
        for (std::size_t r = 0; r < blk.rows(); ++r)
          for (std::size_t c = 0; c < blk.cols(); ++c) m.at(r0 + r, c0 + c) = cval * blk.at(r, c);
      }
      pm[v] = std::move(m);
    }
    s.phi[e] = std::move(pm);
  }
  ValidationReport vr = validate_structure(s);
  if (!vr.ok) throw std::runtime_error("induce_module: induced family failed validation: " + vr.violations.front());
  return s;
}

std::vector<SkewStructure> enumerate_structures(const Representation& x, const GroupAction& g, unsigned trials,
                                                std::uint64_t seed) {
  HxResult hx = hx_subgroup(x, g, trials, seed);
  GroupAction h = g.subgroup_action(hx.subgroup);
  if (!h.is_abelian())
    throw std::invalid_argument("enumerate_structures: H_X is non-abelian (order " + std::to_string(h.size()) +
                                "); the structure count is not determined by |H_X| here");
  std::vector<LinearCharacter> chars = abelian_characters(h, x.field);
  // trivial character first, then the stored (exponent-tuple) order
  std::stable_sort(chars.begin(), chars.end(),
                   [](const LinearCharacter& a, const LinearCharacter& b) { return a.is_trivial() && !b.is_trivial(); });
  std::vector<SkewStructure> out;
  for (const LinearCharacter& chi : chars) out.push_back(induce_module(x, g, hx, chi, trials, seed));
  return out;
}

EquivResult are_equivalent(const SkewStructure& s1, const SkewStructure& s2, unsigned trials, std::uint64_t seed) {
  if (!(s1.rep.quiver == s2.rep.quiver) || s1.rep.field != s2.rep.field)
    throw std::invalid_argument("are_equivalent: structures live on different quivers or fields");
  if (!(s1.group == s2.group)) throw std::invalid_argument("are_equivalent: different group actions");
  EquivResult res;
  if (!(s1.rep.dims == s2.rep.dims)) return res;
  const Representation& y1 = s1.rep;
  const Representation& y2 = s2.rep;
  const Quiver& q = y1.quiver;
  const FieldSpec& f = y1.field;
  const GroupAction& g = s1.group;
  // unknowns f_v : Y1_v -> Y2_v
  std::map<std::string, std::size_t> offset;
  std::size_t total = 0;
  for (const auto& v : q.vertices()) {
    offset[v] = total;
    total += static_cast<std::size_t>(y2.dims.at(v)) * static_cast<std::size_t>(y1.dims.at(v));
  }
  if (total == 0) {
    res.equivalent = true;
    return res;
  }
  std::vector<std::vector<Scalar>> rows;
  auto add_equation = [&](std::size_t n) {
    rows.push_back(std::vector<Scalar>(n, Scalar::zero(f)));
    return rows.size() - 1;
  };
  // module morphism equations
  for (const Arrow& a : q.arrows()) {
    const Matrix& xa = y1.mat(a.id);
    const Matrix& ya = y2.mat(a.id);
    std::size_t dyh = static_cast<std::size_t>(y2.dims.at(a.head));
    std::size_t dxt = static_cast<std::size_t>(y1.dims.at(a.tail));
    std::size_t dxh = static_cast<std::size_t>(y1.dims.at(a.head));
    std::size_t dyt = static_cast<std::size_t>(y2.dims.at(a.tail));
    for (std::size_t r = 0; r < dyh; ++r)
      for (std::size_t c = 0; c < dxt; ++c) {
        std::size_t eq = add_equation(total);
        for (std::size_t k = 0; k < dxh; ++k) rows[eq][offset[a.head] + r * dxh + k] += xa.at(k, c);
        for (std::size_t k = 0; k < dyt; ++k) rows[eq][offset[a.tail] + k * dxt + c] -= ya.at(r, k);
      }
  }
  // intertwining with the phi families on the generators: f_v (phi_g)_v = (psi_g)_v f_{g^-1 v}
  std::vector<std::size_t> gens = g.generators();
  if (gens.empty() && g.size() > 1)
    throw std::logic_error("are_equivalent: group without stored generators");
  for (std::size_t gen : gens) {
    std::size_t ginv = g.inverse(gen);
    const VertexMap& phi = s1.phi_of(gen);
    const VertexMap& psi = s2.phi_of(gen);
    for (const auto& v : q.vertices()) {
      const std::string& vsrc = g.vertex_image(ginv, v);
      const Matrix& pg = phi.at(v);   // Y1_{vsrc} -> Y1_v
      const Matrix& qg = psi.at(v);   // Y2_{vsrc} -> Y2_v
      std::size_t d2v = static_cast<std::size_t>(y2.dims.at(v));
      std::size_t d1s = static_cast<std::size_t>(y1.dims.at(vsrc));
      std::size_t d1v = static_cast<std::size_t>(y1.dims.at(v));
      std::size_t d2s = static_cast<std::size_t>(y2.dims.at(vsrc));
      for (std::size_t r = 0; r < d2v; ++r)
        for (std::size_t c = 0; c < d1s; ++c) {
          std::size_t eq = add_equation(total);
          for (std::size_t k = 0; k < d1v; ++k) rows[eq][offset[v] + r * d1v + k] += pg.at(k, c);
          for (std::size_t k = 0; k < d2s; ++k) rows[eq][offset[vsrc] + k * d1s + c] -= qg.at(r, k);
        }
    }
  }
  Matrix sys(rows.size(), total, f);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < total; ++j) sys.at(i, j) = rows[i][j];
  Matrix kern = sys.kernel_basis();
  const std::size_t m = kern.cols();
  if (m == 0) return res;
  auto unpack = [&](const std::vector<Scalar>& coeffs) {
    VertexMap fm;
    for (const auto& v : q.vertices()) {
      std::size_t d2 = static_cast<std::size_t>(y2.dims.at(v));
      std::size_t d1 = static_cast<std::size_t>(y1.dims.at(v));
      Matrix mm(d2, d1, f);
      for (std::size_t col = 0; col < m; ++col) {
        if (coeffs[col].is_zero()) continue;
        for (std::size_t r = 0; r < d2; ++r)
          for (std::size_t c = 0; c < d1; ++c)
            mm.at(r, c) += coeffs[col] * kern.at(offset[v] + r * d1 + c, col);
      }
      fm[v] = std::move(mm);
    }
    return fm;
  };
  if (m == 1) {
    std::vector<Scalar> one{Scalar::one(f)};
    res.equivalent = morphism_invertible(unpack(one));
    return res;
  }
  std::mt19937_64 rng(seed ^ 0xe91fULL);
  for (unsigned t = 0; t < trials; ++t) {
    std::vector<Scalar> coeffs;
    for (std::size_t l = 0; l < m; ++l) {
      long long c = f.is_rational() ? static_cast<long long>(rng() % 1995) - 997
                                    : static_cast<long long>(rng() % f.p);
      coeffs.push_back(Scalar::from_int(c, f));
    }
    if (morphism_invertible(unpack(coeffs))) {
      res.equivalent = true;
      return res;
    }
  }
  const std::size_t degree_bound = static_cast<std::size_t>(y1.total_dim());
  double grid = 1.0;
  bool feasible = true;
  for (std::size_t l = 0; l < m; ++l) {
    grid *= static_cast<double>(degree_bound + 1);
    if (grid > 20000.0) {
      feasible = false;
      break;
    }
  }
  if (feasible) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      std::vector<Scalar> coeffs;
      for (std::size_t l = 0; l < m; ++l) coeffs.push_back(Scalar::from_int(static_cast<long long>(idx[l]), f));
      if (morphism_invertible(unpack(coeffs))) {
        res.equivalent = true;
        return res;
      }
      std::size_t l = 0;
      while (l < m && ++idx[l] == degree_bound + 1) {
        idx[l] = 0;
        ++l;
      }
      if (l == m) break;
    }
    return res;
  }
  res.certain = false;
  return res;
}

bool is_simple_skew(const SkewStructure& s, unsigned trials, std::uint64_t seed) {
  if (s.rep.total_dim() == 0) return false;
  std::vector<Representation> parts = decompose(s.rep, seed);
  for (const Representation& p : parts)
    if (!is_simple(p, seed)) return false;
  // all parts must be twists of the first, each appearing once
  const GroupAction& g = s.group;
  std::size_t stab = 0;
  for (std::size_t e = 0; e < g.size(); ++e)
    if (are_isomorphic(twist(parts[0], g, e), parts[0], trials, seed + e).isomorphic) ++stab;
  if (parts.size() * stab != g.size()) return false;
  for (const Representation& p : parts) {
    bool hit = false;
    for (std::size_t e = 0; e < g.size() && !hit; ++e)
      hit = are_isomorphic(twist(parts[0], g, e), p, trials, seed + 31 * e).isomorphic;
    if (!hit) return false;
  }
  return true;
}

}  // namespace ppa
