#include "ppa/species.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppa {

namespace {

SpeciesArrow move_arrow(const GroupAction& g, std::size_t e, const SpeciesArrow& x) {
  return SpeciesArrow{g.arrow_image(e, x.arrow_id), x.starred};
}

}  // namespace

std::size_t TildeBimodule::token_index(const SpeciesArrow& x, std::size_t pi) const {
  for (std::size_t k = 0; k < tokens.size(); ++k)
    if (tokens[k].x == x && tokens[k].pi == pi) return k;
  throw std::logic_error("TildeBimodule: token (" + x.arrow_id + (x.starred ? "*" : "") + ", " +
                         std::to_string(pi) + ") not in basis");
}

TildeBimodule tilde_bimodule(const Quiver& q, const GroupAction& g, const OrbitData& od, const PairClassData& pc,
                             const std::string& i, const std::string& j) {
  TildeBimodule tb;
  tb.i = i;
  tb.j = j;
  tb.right_elems = od.stabilizers.at(i);
  tb.left_elems = od.stabilizers.at(j);
  const auto& classes = pc.pair_reps.at({i, j});
  for (const auto& [ip, jp] : classes) {
    const auto& gh = pc.gh_classes.at({ip, jp});
    std::size_t ki = od.kappa.at(ip), kj = od.kappa.at(jp);
    // basis of the doubled arrow space at (i', j'): arrows i'->j', then duals of arrows j'->i'
    std::vector<SpeciesArrow> abar;
    for (const Arrow& a : q.arrows())
      if (a.tail == ip && a.head == jp) abar.push_back({a.id, false});
    for (const Arrow& a : q.arrows())
      if (a.tail == jp && a.head == ip) abar.push_back({a.id, true});
    for (const auto& [gg, hh] : gh.reps) {
      std::size_t mover = g.mult(hh, g.inverse(kj));                   // h k_j'^-1
      std::size_t pi = g.mult(mover, g.mult(ki, gg));                  // h k_j'^-1 k_i' g
      for (const SpeciesArrow& a : abar) {
        Token t;
        t.x = move_arrow(g, mover, a);
        t.pi = pi;
        t.pair_class = {ip, jp};
        t.gh = {gg, hh};
        tb.tokens.push_back(std::move(t));
      }
    }
  }
  // normal forms must be pairwise distinct
  for (std::size_t a = 0; a < tb.tokens.size(); ++a)
    for (std::size_t b = a + 1; b < tb.tokens.size(); ++b)
      if (tb.tokens[a].x == tb.tokens[b].x && tb.tokens[a].pi == tb.tokens[b].pi)
        throw std::logic_error("tilde_bimodule: duplicate token normal form");
  for (std::size_t k = 0; k < tb.tokens.size(); ++k)
    if (!tb.tokens[k].x.starred) tb.a_part.push_back(k);
  for (std::size_t e : tb.right_elems) {
    std::vector<std::size_t> perm;
    for (const Token& t : tb.tokens) perm.push_back(tb.token_index(t.x, g.mult(t.pi, e)));
    tb.right_act.push_back(std::move(perm));
  }
  for (std::size_t e : tb.left_elems) {
    std::vector<std::size_t> perm;
    for (const Token& t : tb.tokens) perm.push_back(tb.token_index(move_arrow(g, e, t.x), g.mult(e, t.pi)));
    tb.left_act.push_back(std::move(perm));
  }
  return tb;
}

Token dual_token(const GroupAction& g, const Token& t) {
  Token d;
  std::size_t piinv = g.inverse(t.pi);
  d.x = move_arrow(g, piinv, t.x);
  d.x.starred = !d.x.starred;
  d.pi = piinv;
  d.pair_class = {t.pair_class.second, t.pair_class.first};
  d.gh = {t.gh.second, t.gh.first};
  return d;
}

GroupSpecies build_species(const Quiver& q, const GroupAction& g) {
  if (q.is_doubled()) throw std::invalid_argument("build_species: expects an un-doubled quiver");
  GroupSpecies sp;
  sp.quiver = q;
  sp.orbit_data = orbits(g);
  sp.class_data = pair_classes(g, sp.orbit_data);
  for (const auto& i : sp.orbit_data.representatives)
    for (const auto& j : sp.orbit_data.representatives)
      sp.bimodules.emplace(std::make_pair(i, j), tilde_bimodule(q, g, sp.orbit_data, sp.class_data, i, j));
  return sp;
}

namespace {

Poly matrix_min_poly(const Matrix& m) {
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Matrix> powers;
  Matrix cur = Matrix::identity(n, f);
  for (std::size_t k = 0; k <= n + 1; ++k) {
    Matrix stacked(n * n, powers.size(), f);
    for (std::size_t p = 0; p < powers.size(); ++p) {
      Matrix v = powers[p].vectorize();
      for (std::size_t r = 0; r < v.rows(); ++r) stacked.at(r, p) = v.at(r, 0);
    }
    auto sol = stacked.solve(cur.vectorize());
    if (sol && k > 0) {
      std::vector<Scalar> coeffs;
      for (std::size_t p = 0; p < powers.size(); ++p) coeffs.push_back(-sol->at(p, 0));
      coeffs.push_back(Scalar::one(f));
      return Poly(f, std::move(coeffs));
    }
    powers.push_back(cur);
    cur = m * cur;
  }
  throw std::logic_error("matrix_min_poly: no dependence found");
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const GroupAction& g) {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (seen[a]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t s = 0; s < g.size(); ++s) {
      std::size_t c = g.mult(g.mult(s, a), g.inverse(s));
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

// splits a commutative split semisimple structure algebra into its
// primitive idempotents (coordinates)
std::vector<Matrix> primitive_idempotents(const StructureAlgebra& z, std::mt19937_64& rng) {
  const FieldSpec& f = z.field;
  std::vector<Matrix> spaces{Matrix::identity(z.n, f)};  // column bases
  bool progress = true;
  std::size_t rounds = 0;
  while (progress && ++rounds < 64) {
    progress = false;
    std::vector<Matrix> next;
    for (const Matrix& w : spaces) {
      if (w.cols() <= 1) {
        next.push_back(w);
        continue;
      }
      bool split_here = false;
      for (std::size_t b = 0; b < z.n + 8 && !split_here; ++b) {
        Matrix op(z.n, z.n, f);
        if (b < z.n) {
          op = z.left_mult[b];
        } else {
          Matrix coords(z.n, 1, f);
          for (std::size_t r = 0; r < z.n; ++r)
            coords.at(r, 0) = Scalar::from_int(static_cast<long long>(rng() % 23) - 11, f);
          op = z.lmul_operator(coords);
        }
        auto m = w.solve(op * w);
        if (!m) continue;  // subspace not invariant (cannot happen for central elements)
        Poly mp = matrix_min_poly(*m);
        std::vector<Scalar> roots = field_roots(mp, rng);
        if (roots.size() < 2) continue;
        std::size_t total = 0;
        std::vector<Matrix> pieces;
        for (const Scalar& lam : roots) {
          Matrix shifted = *m - lam * Matrix::identity(m->rows(), f);
          Matrix ker = shifted.kernel_basis();
          if (ker.cols() == 0) continue;
          pieces.push_back(w * ker);
          total += ker.cols();
        }
        if (total == w.cols() && pieces.size() >= 2) {
          for (Matrix& p : pieces) next.push_back(std::move(p));
          split_here = true;
          progress = true;
        }
      }
      if (!split_here) next.push_back(w);
    }
    spaces = std::move(next);
  }
  std::vector<Matrix> idems;
  for (const Matrix& w : spaces) {
    if (w.cols() != 1)
      throw std::runtime_error("irr_table: center of the group algebra does not split over this field");
    Matrix v = w.sub(0, 0, z.n, 1);
    Matrix v2 = z.multiply(v, v);
    // v^2 = c v for a common eigenvector of a split commutative algebra
    Scalar c = Scalar::zero(f);
    for (std::size_t r = 0; r < z.n; ++r)
      if (!v.at(r, 0).is_zero()) {
        c = v2.at(r, 0) / v.at(r, 0);
        break;
      }
    if (c.is_zero()) throw std::logic_error("irr_table: eigenvector squared to zero");
    if (!(z.multiply(v, v) == c * v)) throw std::logic_error("irr_table: eigenvector is not idempotent-scalable");
    idems.push_back(c.inverse() * v);
  }
  return idems;
}

}  // namespace

IrrTable irr_table(const GroupAction& parent, const std::vector<std::size_t>& subgroup, const FieldSpec& f,
                   std::uint64_t seed) {
  IrrTable t;
  t.subgroup = subgroup;
  t.sub = parent.subgroup_action(subgroup);
  for (std::size_t k = 0; k < subgroup.size(); ++k) t.sub_index[subgroup[k]] = k;
  const std::size_t n = t.sub.size();
  if (!f.is_rational() && n % f.p == 0)
    throw std::invalid_argument("irr_table: field characteristic divides the subgroup order");
  if (t.sub.is_abelian()) {
    std::vector<LinearCharacter> chars = abelian_characters(t.sub, f);
    std::stable_sort(chars.begin(), chars.end(), [](const LinearCharacter& a, const LinearCharacter& b) {
      return a.is_trivial() && !b.is_trivial();
    });
    std::size_t linidx = 0;
    for (const LinearCharacter& chi : chars) {
      Irreducible irr;
      irr.dim = 1;
      irr.character = chi.values;
      irr.linear = chi;
      if (chi.is_trivial())
        irr.name = "triv";
      else if (n == 2)
        irr.name = "sgn";
      else
        irr.name = "chi" + std::to_string(++linidx);
      t.irreducibles.push_back(std::move(irr));
    }
    return t;
  }
  if (n > 24) throw std::invalid_argument("irr_table: nonabelian subgroup too large (order > 24)");
  // split the center of the group algebra on the class-sum basis
  std::vector<std::vector<std::size_t>> classes = conjugacy_classes(t.sub);
  const std::size_t m = classes.size();
  std::vector<std::size_t> class_of(n, 0);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t e : classes[c]) class_of[e] = c;
  StructureAlgebra z;
  z.field = f;
  z.n = m;
  z.unit = Matrix(m, 1, f);
  z.unit.at(class_of[0], 0) = Scalar::one(f);
  for (std::size_t i = 0; i < m; ++i) {
    Matrix li(m, m, f);
    for (std::size_t j = 0; j < m; ++j) {
      // coefficient at class k: number of (x, y) in C_i x C_j with x y = fixed z in C_k
      for (std::size_t k = 0; k < m; ++k) {
        std::size_t target = classes[k].front();
        long long count = 0;
        for (std::size_t x : classes[i])
          for (std::size_t y : classes[j])
            if (t.sub.mult(x, y) == target) ++count;
        li.at(k, j) = Scalar::from_int(count, f);
      }
    }
    z.left_mult.push_back(std::move(li));
  }
  std::mt19937_64 rng(seed ^ 0xc1a55e5ULL);
  std::vector<Matrix> idems = primitive_idempotents(z, rng);
  if (idems.size() != m) throw std::logic_error("irr_table: wrong number of central idempotents");
  long long order = static_cast<long long>(n);
  std::vector<Irreducible> irrs;
  long long sumsq = 0;
  for (const Matrix& e : idems) {
    // coefficient at a group element g is e[class(g)] / |class(g)| ... the
    // class-sum coordinate already is the per-element coefficient
    Scalar ce = e.at(class_of[0], 0);
    // degree d: d^2 = |H| * ce
    std::size_t d = 0;
    for (std::size_t cand = 1; cand * cand <= static_cast<std::size_t>(order); ++cand) {
      Scalar lhs = Scalar::from_int(static_cast<long long>(cand * cand), f);
      if (lhs == Scalar::from_int(order, f) * ce) {
        d = cand;
        break;
      }
    }
    if (d == 0) throw std::runtime_error("irr_table: could not recover an integer degree");
    sumsq += static_cast<long long>(d) * static_cast<long long>(d);
    Irreducible irr;
    irr.dim = d;
    Scalar scale = Scalar::from_int(order, f) / Scalar::from_int(static_cast<long long>(d), f);
    for (std::size_t el = 0; el < n; ++el)
      irr.character[el] = scale * e.at(class_of[t.sub.inverse(el)], 0);
    if (d == 1) {
      LinearCharacter lc;
      lc.values = irr.character;
      irr.linear = lc;
    }
    irrs.push_back(std::move(irr));
  }
  if (sumsq != order) throw std::logic_error("irr_table: degrees do not sum to the group order");
  // order: trivial first, then by (dim, character values)
  auto is_triv = [&](const Irreducible& ir) {
    if (ir.dim != 1) return false;
    for (const auto& [e, v] : ir.character)
      if (!v.is_one()) return false;
    return true;
  };
  std::stable_sort(irrs.begin(), irrs.end(), [&](const Irreducible& a, const Irreducible& b) {
    bool ta = is_triv(a), tb = is_triv(b);
    if (ta != tb) return ta;
    if (a.dim != b.dim) return a.dim < b.dim;
    std::string ka, kb;
    for (const auto& [e, v] : a.character) ka += v.to_string() + ",";
    for (const auto& [e, v] : b.character) kb += v.to_string() + ",";
    return ka < kb;
  });
  std::size_t ones = 0, twos = 0;
  for (const Irreducible& ir : irrs) {
    if (ir.dim == 1) ++ones;
    if (ir.dim == 2) ++twos;
  }
  std::size_t lin = 0, rho = 0;
  for (Irreducible& ir : irrs) {
    if (is_triv(ir))
      ir.name = "triv";
    else if (ir.dim == 1 && ones == 2)
      ir.name = "sgn";
    else if (ir.dim == 1)
      ir.name = "chi" + std::to_string(++lin);
    else if (ir.dim == 2 && twos == 1)
      ir.name = "std";
    else
      ir.name = "rho" + std::to_string(++rho);
  }
  t.irreducibles = std::move(irrs);
  return t;
}

namespace {

// functionals F over a selected token subset with
//   F(t . g0) = rho(g0) F(t)  and  F(h0 . t) = sigma(h0) F(t)
Matrix hom_functionals(const TildeBimodule& tb, const std::vector<std::size_t>& token_set, const IrrTable& ti,
                       std::size_t rho_idx, const IrrTable& tj, std::size_t sigma_idx, const FieldSpec& f) {
  const Irreducible& rho = ti.irreducibles.at(rho_idx);
  const Irreducible& sigma = tj.irreducibles.at(sigma_idx);
  if (!rho.linear || !sigma.linear)
    throw std::invalid_argument("hom_functionals: scalar models unavailable (nonabelian stabilizer)");
  std::map<std::size_t, std::size_t> pos;  // token index -> position in token_set
  for (std::size_t k = 0; k < token_set.size(); ++k) pos[token_set[k]] = k;
  std::vector<std::vector<Scalar>> rows;
  auto add_rows = [&](const std::vector<std::size_t>& perm, const Scalar& value) {
    for (std::size_t k = 0; k < token_set.size(); ++k) {
      std::size_t img = perm[token_set[k]];
      auto it = pos.find(img);
      if (it == pos.end()) throw std::logic_error("hom_functionals: token subset is not action-stable");
      std::vector<Scalar> row(token_set.size(), Scalar::zero(f));
      row[it->second] += Scalar::one(f);
      row[k] -= value;
      rows.push_back(std::move(row));
    }
  };
  for (std::size_t k = 0; k < tb.right_elems.size(); ++k) {
    std::size_t parent_el = tb.right_elems[k];
    add_rows(tb.right_act[k], rho.linear->values.at(ti.sub_index.at(parent_el)));
  }
  for (std::size_t k = 0; k < tb.left_elems.size(); ++k) {
    std::size_t parent_el = tb.left_elems[k];
    add_rows(tb.left_act[k], sigma.linear->values.at(tj.sub_index.at(parent_el)));
  }
  Matrix sys(rows.size(), token_set.size(), f);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < token_set.size(); ++c) sys.at(r, c) = rows[r][c];
  return sys.kernel_basis();  // columns = functionals on the token subset
}

}  // namespace

std::size_t multiplicity_solver(const TildeBimodule& tb, const IrrTable& ti, std::size_t rho_idx, const IrrTable& tj,
                                std::size_t sigma_idx) {
  if (tb.a_part.empty()) return 0;
  const FieldSpec f = ti.irreducibles.at(rho_idx).linear
                          ? ti.irreducibles.at(rho_idx).linear->values.begin()->second.field()
                          : FieldSpec::rationals();
  Matrix k = hom_functionals(tb, tb.a_part, ti, rho_idx, tj, sigma_idx, f);
  return k.cols();
}

std::size_t multiplicity_character(const TildeBimodule& tb, const IrrTable& ti, std::size_t rho_idx,
                                   const IrrTable& tj, std::size_t sigma_idx) {
  const Irreducible& rho = ti.irreducibles.at(rho_idx);
  const Irreducible& sigma = tj.irreducibles.at(sigma_idx);
  if (tb.right_elems != ti.subgroup || tb.left_elems != tj.subgroup)
    throw std::invalid_argument("multiplicity_character: tables do not match the bimodule stabilizers");
  const FieldSpec f = rho.character.begin()->second.field();
  Scalar total = Scalar::zero(f);
  for (std::size_t gk = 0; gk < tb.right_elems.size(); ++gk) {
    // the bimodule's stabilizer lists coincide with the table's subgroup
    // lists, so sub-action indices equal list positions
    std::size_t ginv_pos = ti.sub.inverse(gk);
    for (std::size_t hk = 0; hk < tb.left_elems.size(); ++hk) {
      std::size_t hinv_pos = tj.sub.inverse(hk);
      long long fixed = 0;
      for (std::size_t tix : tb.a_part)
        if (tb.right_act[ginv_pos][tb.left_act[hk][tix]] == tix) ++fixed;
      total += rho.character.at(gk) * sigma.character.at(hinv_pos) * Scalar::from_int(fixed, f);
    }
  }
  Scalar denom = Scalar::from_int(static_cast<long long>(tb.right_elems.size() * tb.left_elems.size()), f);
  Scalar val = total / denom;
  // exact small nonnegative integer expected
  for (long long cand = 0; cand <= 4096; ++cand)
    if (val == Scalar::from_int(cand, f)) return static_cast<std::size_t>(cand);
  throw std::logic_error("multiplicity_character: value is not a small nonnegative integer");
}

QGData build_qg(const Quiver& q, const GroupAction& g, const FieldSpec& f, std::uint64_t seed) {
  QGData out;
  out.species = build_species(q, g);
  const OrbitData& od = out.species.orbit_data;
  for (const auto& rep : od.representatives) out.tables.emplace(rep, irr_table(g, od.stabilizers.at(rep), f, seed));
  for (const auto& rep : od.representatives) {
    const IrrTable& t = out.tables.at(rep);
    for (const Irreducible& irr : t.irreducibles)
      out.vertices.push_back(QGVertex{rep + ":" + irr.name, rep, irr.name, irr.dim});
  }
  // multiplicities on ordered pairs from the primal token parts
  for (const auto& i : od.representatives) {
    const IrrTable& ti = out.tables.at(i);
    for (const auto& j : od.representatives) {
      const IrrTable& tj = out.tables.at(j);
      const TildeBimodule& tb = out.species.bimodules.at({i, j});
      for (std::size_t r = 0; r < ti.irreducibles.size(); ++r) {
        for (std::size_t s = 0; s < tj.irreducibles.size(); ++s) {
          std::size_t by_char = multiplicity_character(tb, ti, r, tj, s);
          bool solver_ok = ti.irreducibles[r].linear && tj.irreducibles[s].linear;
          if (solver_ok) {
            std::size_t by_solver = multiplicity_solver(tb, ti, r, tj, s);
            if (by_solver != by_char)
              throw std::logic_error("build_qg: intertwiner solver and character formula disagree at (" + i + ":" +
                                     ti.irreducibles[r].name + ") -> (" + j + ":" + tj.irreducibles[s].name + ")");
          }
          out.raw_mult[{i + ":" + ti.irreducibles[r].name, j + ":" + tj.irreducibles[s].name}] = by_char;
        }
      }
    }
  }
  // emitted quiver: orient each unordered pair from the lexicographically smaller vertex
  std::vector<std::string> vids;
  for (const QGVertex& v : out.vertices) vids.push_back(v.id);
  std::vector<Arrow> arrows;
  for (std::size_t a = 0; a < vids.size(); ++a) {
    for (std::size_t b = a; b < vids.size(); ++b) {
      const std::string &p = vids[a], &r = vids[b];
      std::size_t count = a == b ? out.raw_mult.at({p, p})
                                 : out.raw_mult.at({p, r}) + out.raw_mult.at({r, p});
      const std::string& src = p <= r ? p : r;
      const std::string& dst = p <= r ? r : p;
      for (std::size_t k = 0; k < count; ++k)
        arrows.push_back(Arrow{src + ">" + dst + "#" + std::to_string(k), src, dst});
    }
  }
  out.qg = Quiver(vids, arrows);
  out.classification = classify_dynkin(out.qg);
  return out;
}

EtaXi eta_xi(const LambdaVector& lambda, const QGData& qg, const GroupAction& g) {
  if (!lambda_compatible(g, lambda)) throw std::invalid_argument("eta_xi: lambda is not constant on orbits");
  EtaXi out;
  const OrbitData& od = qg.species.orbit_data;
  const FieldSpec f = lambda.field();
  for (const auto& rep : od.representatives)
    out.xi[rep] = lambda.at(rep) / Scalar::from_int(static_cast<long long>(od.stabilizers.at(rep).size()), f);
  for (const QGVertex& v : qg.vertices) {
    Scalar via_xi = Scalar::from_int(static_cast<long long>(v.irr_dim), f) * out.xi.at(v.orbit_rep);
    Scalar direct = Scalar::from_int(static_cast<long long>(v.irr_dim), f) /
                        Scalar::from_int(static_cast<long long>(od.stabilizers.at(v.orbit_rep).size()), f) *
                        lambda.at(v.orbit_rep);
    if (!(via_xi == direct)) throw std::logic_error("eta_xi: the two parameter formulas disagree");
    out.eta.entries.emplace(v.id, via_xi);
  }
  return out;
}

std::string classify_dynkin(const Quiver& q) {
  const std::size_t n = q.vertices().size();
  if (n == 0) return "non-Dynkin";
  // simple underlying graph required
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& v : q.vertices()) adj[v] = {};
  std::map<std::pair<std::string, std::string>, std::size_t> edge_count;
  for (const Arrow& a : q.arrows()) {
    if (a.tail == a.head) return "non-Dynkin";
    auto key = a.tail < a.head ? std::make_pair(a.tail, a.head) : std::make_pair(a.head, a.tail);
    if (++edge_count[key] > 1) return "non-Dynkin";
  }
  for (const auto& [key, cnt] : edge_count) {
    adj[key.first].push_back(key.second);
    adj[key.second].push_back(key.first);
  }
  if (edge_count.size() != n - 1) return "non-Dynkin";  // tree vertex/edge count
  // connectivity
  std::vector<std::string> stack{q.vertices().front()};
  std::map<std::string, bool> seen{{q.vertices().front(), true}};
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    for (const auto& w : adj[v])
      if (!seen.count(w)) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (seen.size() != n) return "non-Dynkin";
  std::vector<std::string> deg3;
  for (const auto& [v, nb] : adj) {
    if (nb.size() > 3) return "non-Dynkin";
    if (nb.size() == 3) deg3.push_back(v);
  }
  if (deg3.empty()) return "A" + std::to_string(n);
  if (deg3.size() > 1) return "non-Dynkin";
  // arm lengths from the branch vertex
  std::vector<std::size_t> arms;
  for (const auto& start : adj[deg3.front()]) {
    std::size_t len = 1;
    std::string prev = deg3.front(), cur = start;
    while (adj.at(cur).size() == 2) {
      std::string next = adj.at(cur)[0] == prev ? adj.at(cur)[1] : adj.at(cur)[0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms.size() != 3) return "non-Dynkin";
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(arms[2] + 3);
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 2) return "E6";
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 3) return "E7";
  if (arms[0] == 1 && arms[1] == 2 && arms[2] == 4) return "E8";
  return "non-Dynkin";
}

Representation transport_module(const SkewStructure& s, const QGData& qg, const GroupAction& g_undoubled,
                                const LambdaVector& lambda) {
  const Representation& v = s.rep;
  const FieldSpec& f = v.field;
  const OrbitData& od = qg.species.orbit_data;
  // match element indices between the un-doubled action and the structure's action
  std::vector<std::size_t> lift(g_undoubled.size(), SIZE_MAX);
  for (std::size_t e = 0; e < g_undoubled.size(); ++e) {
    for (std::size_t d = 0; d < s.group.size(); ++d) {
      if (s.group.element(d).vmap == g_undoubled.element(e).vmap) {
        bool same = true;
        for (const Arrow& a : g_undoubled.quiver().arrows())
          if (s.group.arrow_image(d, a.id) != g_undoubled.arrow_image(e, a.id)) {
            same = false;
            break;
          }
        if (same) {
          lift[e] = d;
          break;
        }
      }
    }
    if (lift[e] == SIZE_MAX) throw std::invalid_argument("transport_module: actions do not match element-wise");
  }
  // isotypic projectors and bases per folded vertex
  std::map<std::string, Matrix> comp_basis;  // columns inside V_rep
  std::map<std::string, Matrix> comp_proj;
  for (const auto& rep : od.representatives) {
    const IrrTable& t = qg.tables.at(rep);
    std::size_t dv = static_cast<std::size_t>(v.dims.at(rep));
    long long bookkeeping = 0;
    for (const Irreducible& irr : t.irreducibles) {
      if (!irr.linear) throw std::invalid_argument("transport_module: nonabelian stabilizer at '" + rep + "'");
      Matrix proj(dv, dv, f);
      for (std::size_t k = 0; k < t.subgroup.size(); ++k) {
        std::size_t parent_el = t.subgroup[k];
        const Matrix& action = s.phi_of(lift[parent_el]).at(rep);
        Scalar coeff = irr.linear->values.at(t.sub.inverse(t.sub_index.at(parent_el)));
        proj = proj + coeff * action;
      }
      proj = Scalar::from_int(static_cast<long long>(t.subgroup.size()), f).inverse() * proj;
      if (!(proj * proj == proj)) throw std::logic_error("transport_module: isotypic projector not idempotent");
      Matrix basis = proj.column_space();
      bookkeeping += static_cast<long long>(irr.dim) * static_cast<long long>(basis.cols());
      comp_basis[rep + ":" + irr.name] = std::move(basis);
      comp_proj[rep + ":" + irr.name] = std::move(proj);
    }
    if (bookkeeping != v.dims.at(rep))
      throw std::logic_error("transport_module: dimension bookkeeping failed at '" + rep + "'");
  }
  // token action evaluation
  const Quiver& qbar = v.quiver;
  auto token_matrix = [&](const Token& t, const std::string& src_rep) -> Matrix {
    std::size_t lifted = lift[t.pi];
    const std::string dst_of_pi = s.group.vertex_image(lifted, src_rep);
    const Matrix& phi_part = s.phi_of(lifted).at(dst_of_pi);  // V_src -> V_{pi(src)}
    const Matrix& arr = t.x.starred ? v.mat(qbar.star(t.x.arrow_id)) : v.mat(t.x.arrow_id);
    return arr * phi_part;
  };
  auto vertex_of = [&](const std::string& id) -> const QGVertex& {
    for (const QGVertex& w : qg.vertices)
      if (w.id == id) return w;
    throw std::logic_error("transport_module: unknown folded vertex " + id);
  };
  EtaXi par = eta_xi(lambda, qg, g_undoubled);
  Quiver qg_double = double_quiver(qg.qg);
  Representation out;
  out.quiver = qg_double;
  out.field = f;
  out.dims = DimVector::zero(qg_double);
  for (const QGVertex& w : qg.vertices) out.dims.entries.at(w.id) = static_cast<long long>(comp_basis.at(w.id).cols());
  for (const Arrow& a : qg_double.arrows())
    out.mats[a.id] = Matrix(static_cast<std::size_t>(out.dims.at(a.head)),
                            static_cast<std::size_t>(out.dims.at(a.tail)), f);

  // functionals over the full token space, or over the primal / starred
  // halves (extended by zero) for the Darboux split at a loop vertex
  enum class Part { Full, Primal, Starred };
  auto hom_part = [&](const QGVertex& p, const QGVertex& r, Part part) -> Matrix {
    const IrrTable& ti = qg.tables.at(p.orbit_rep);
    const IrrTable& tj = qg.tables.at(r.orbit_rep);
    std::size_t rho_idx = SIZE_MAX, sigma_idx = SIZE_MAX;
    for (std::size_t k = 0; k < ti.irreducibles.size(); ++k)
      if (ti.irreducibles[k].name == p.irr_name) rho_idx = k;
    for (std::size_t k = 0; k < tj.irreducibles.size(); ++k)
      if (tj.irreducibles[k].name == r.irr_name) sigma_idx = k;
    const TildeBimodule& tb = qg.species.bimodules.at({p.orbit_rep, r.orbit_rep});
    if (tb.tokens.empty()) return Matrix(0, 0, f);
    std::vector<std::size_t> subset;
    for (std::size_t k = 0; k < tb.tokens.size(); ++k) {
      if (part == Part::Primal && tb.tokens[k].x.starred) continue;
      if (part == Part::Starred && !tb.tokens[k].x.starred) continue;
      subset.push_back(k);
    }
    Matrix sol = hom_functionals(tb, subset, ti, rho_idx, tj, sigma_idx, f);
    if (part == Part::Full) return sol;
    // extend by zero to the full token space (the actions preserve the halves)
    Matrix out(tb.tokens.size(), sol.cols(), f);
    for (std::size_t k = 0; k < subset.size(); ++k)
      for (std::size_t c = 0; c < sol.cols(); ++c) out.at(subset[k], c) = sol.at(k, c);
    return out;
  };

  // per unordered pair of folded vertices, resolve arrows and their doubles
  for (std::size_t a = 0; a < qg.vertices.size(); ++a) {
    for (std::size_t b = a; b < qg.vertices.size(); ++b) {
      const QGVertex& p = qg.vertices[a];
      const QGVertex& r = qg.vertices[b];
      // emitted arrows for this pair, in id order
      std::vector<std::string> emitted;
      for (const Arrow& ar : qg.qg.arrows())
        if ((ar.tail == p.id && ar.head == r.id) || (ar.tail == r.id && ar.head == p.id)) emitted.push_back(ar.id);
      if (emitted.empty()) continue;
      const QGVertex& src = vertex_of(qg.qg.arrow(emitted.front()).tail);
      const QGVertex& dst = vertex_of(qg.qg.arrow(emitted.front()).head);
      const bool loop = src.id == dst.id;
      const TildeBimodule& tb_pr = qg.species.bimodules.at({src.orbit_rep, dst.orbit_rep});
      const TildeBimodule& tb_rp = qg.species.bimodules.at({dst.orbit_rep, src.orbit_rep});
      // at a loop vertex the primal and starred halves pair with each other,
      // so the emitted arrows take the primal half and the doubles the rest
      Matrix f_basis = hom_part(src, dst, loop ? Part::Primal : Part::Full);  // tokens(i,j) x M
      Matrix g_basis = hom_part(dst, src, loop ? Part::Starred : Part::Full);
      const std::size_t m = f_basis.cols();
      if (m != emitted.size() || g_basis.cols() != m)
        throw std::logic_error("transport_module: hom dimension does not match emitted arrows between " + p.id +
                               " and " + r.id);
      // pairing matrix <F_l, G_k> = sum_t G_k(dual t) F_l(t)
      Matrix pairing(m, m, f);
      std::vector<std::size_t> dual_of(tb_pr.tokens.size());
      for (std::size_t t = 0; t < tb_pr.tokens.size(); ++t) {
        Token d = dual_token(g_undoubled, tb_pr.tokens[t]);
        dual_of[t] = tb_rp.token_index(d.x, d.pi);
      }
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t k = 0; k < m; ++k) {
          Scalar acc = Scalar::zero(f);
          for (std::size_t t = 0; t < tb_pr.tokens.size(); ++t)
            acc += g_basis.at(dual_of[t], k) * f_basis.at(t, l);
          pairing.at(l, k) = acc;
        }
      auto pinv = pairing.inverse();
      if (!pinv) throw std::logic_error("transport_module: degenerate pairing between " + p.id + " and " + r.id);
      Matrix e_basis = g_basis * (*pinv);
      {
        // dual bases: <F_l, E_k> must be identity
        for (std::size_t l = 0; l < m; ++l)
          for (std::size_t k = 0; k < m; ++k) {
            Scalar acc = Scalar::zero(f);
            for (std::size_t t = 0; t < tb_pr.tokens.size(); ++t)
              acc += e_basis.at(dual_of[t], k) * f_basis.at(t, l);
            if (!(acc == (l == k ? Scalar::one(f) : Scalar::zero(f))))
              throw std::logic_error("transport_module: dual basis construction failed");
          }
      }
      // extraction of the block maps for both directions
      auto extract = [&](const TildeBimodule& tb, const Matrix& basis, const QGVertex& from, const QGVertex& to)
          -> std::vector<Matrix> {
        const Matrix& cfrom = comp_basis.at(from.id);
        const Matrix& cto = comp_basis.at(to.id);
        // select tokens with an invertible evaluation matrix
        Matrix bt = basis.transpose();  // M x tokens
        Matrix probe = bt;
        auto piv = probe.rref();
        if (piv.size() != basis.cols()) throw std::logic_error("transport_module: functional basis is degenerate");
        std::vector<std::size_t> sel = piv;
        Matrix amat(basis.cols(), basis.cols(), f);
        for (std::size_t l = 0; l < basis.cols(); ++l)
          for (std::size_t mm = 0; mm < sel.size(); ++mm) amat.at(l, mm) = basis.at(sel[mm], l);
        auto ainv = amat.inverse();
        if (!ainv) throw std::logic_error("transport_module: token selection not invertible");
        const Matrix& pto = comp_proj.at(to.id);
        std::vector<Matrix> z;
        for (std::size_t mm = 0; mm < sel.size(); ++mm) {
          Matrix y = token_matrix(tb.tokens[sel[mm]], from.orbit_rep) * cfrom;
          auto sol = cto.solve(pto * y);
          if (!sol) throw std::logic_error("transport_module: token image escapes the isotypic component");
          z.push_back(*sol);
        }
        std::vector<Matrix> x;
        for (std::size_t l = 0; l < basis.cols(); ++l) {
          Matrix acc(cto.cols(), cfrom.cols(), f);
          for (std::size_t mm = 0; mm < sel.size(); ++mm) acc = acc + ainv->at(mm, l) * z[mm];
          x.push_back(std::move(acc));
        }
        return x;
      };
      std::vector<Matrix> x_pr = extract(tb_pr, f_basis, src, dst);
      std::vector<Matrix> x_rp = extract(tb_rp, e_basis, dst, src);
      // epsilon-twisted pairing T
      Scalar scale = (Scalar::from_int(static_cast<long long>(tb_pr.right_elems.size()), f) *
                      Scalar::from_int(static_cast<long long>(tb_pr.left_elems.size()), f))
                         .inverse();
      Matrix tmat(m, m, f);
      for (std::size_t l = 0; l < m; ++l)
        for (std::size_t k = 0; k < m; ++k) {
          Scalar acc = Scalar::zero(f);
          for (std::size_t t = 0; t < tb_pr.tokens.size(); ++t) {
            Scalar sign = tb_pr.tokens[t].x.starred ? -Scalar::one(f) : Scalar::one(f);
            acc += sign * f_basis.at(t, l) * e_basis.at(dual_of[t], k);
          }
          tmat.at(l, k) = -(scale * acc);
        }
      for (std::size_t l = 0; l < m; ++l) {
        const std::string& aid = emitted[l];
        out.mats.at(aid) = x_pr[l];
        Matrix dbl(static_cast<std::size_t>(out.dims.at(src.id)), static_cast<std::size_t>(out.dims.at(dst.id)), f);
        for (std::size_t k = 0; k < m; ++k) dbl = dbl + tmat.at(l, k) * x_rp[k];
        out.mats.at(qg_double.star(aid)) = -dbl;
      }
    }
  }
  out.validate();
  if (!relations_hold(out, par.eta))
    throw std::logic_error("transport_module: transported module violates the eta relations");
  return out;
}

}  // namespace ppa
