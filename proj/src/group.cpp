#include "ppa/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ppa {

namespace {

std::string perm_key(const PermPair& p) {
  std::string k;
  for (const auto& [a, b] : p.vmap) k += b + "|";
  k += "#";
  for (const auto& [a, b] : p.amap) k += b + "|";
  return k;
}

PermPair identity_perm(const Quiver& q) {
  PermPair e;
  for (const auto& v : q.vertices()) e.vmap[v] = v;
  for (const Arrow& a : q.arrows()) e.amap[a.id] = a.id;
  return e;
}

PermPair compose(const PermPair& a, const PermPair& b) {
  // apply b first
  PermPair c;
  for (const auto& [v, bv] : b.vmap) c.vmap[v] = a.vmap.at(bv);
  for (const auto& [x, bx] : b.amap) c.amap[x] = a.amap.at(bx);
  return c;
}

}  // namespace

std::string check_automorphism(const Quiver& q, const PermPair& p) {
  if (p.vmap.size() != q.vertices().size()) return "vertex permutation has wrong domain size";
  std::map<std::string, int> seen;
  for (const auto& v : q.vertices()) {
    auto it = p.vmap.find(v);
    if (it == p.vmap.end()) return "vertex '" + v + "' missing from permutation";
    if (!q.has_vertex(it->second)) return "vertex image '" + it->second + "' is not a vertex";
    seen[it->second]++;
  }
  for (const auto& [v, n] : seen)
    if (n != 1) return "vertex permutation is not a bijection at '" + v + "'";
  if (p.amap.size() != q.arrows().size()) return "arrow permutation has wrong domain size";
  seen.clear();
  for (const Arrow& a : q.arrows()) {
    auto it = p.amap.find(a.id);
    if (it == p.amap.end()) return "arrow '" + a.id + "' missing from permutation";
    if (!q.has_arrow(it->second)) return "arrow image '" + it->second + "' is not an arrow";
    seen[it->second]++;
    const Arrow& img = q.arrow(it->second);
    if (img.tail != p.vmap.at(a.tail) || img.head != p.vmap.at(a.head))
      return "arrow '" + a.id + "' does not commute with head/tail maps";
  }
  for (const auto& [a, n] : seen)
    if (n != 1) return "arrow permutation is not a bijection at '" + a + "'";
  return "";
}

GroupAction GroupAction::from_elements(Quiver q, std::vector<PermPair> elems, std::vector<std::size_t> gens) {
  GroupAction g;
  g.quiver_ = std::move(q);
  g.elems_ = std::move(elems);
  g.gens_ = std::move(gens);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < g.elems_.size(); ++i) index[perm_key(g.elems_[i])] = i;
  const std::size_t n = g.elems_.size();
  g.mult_.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto it = index.find(perm_key(compose(g.elems_[i], g.elems_[j])));
      if (it == index.end()) throw std::logic_error("GroupAction: element set not closed");
      g.mult_[i][j] = it->second;
    }
  g.inv_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n; ++j)
      if (g.mult_[i][j] == 0) {
        g.inv_[i] = j;
        found = true;
        break;
      }
    if (!found) throw std::logic_error("GroupAction: missing inverse");
  }
  return g;
}

GroupAction GroupAction::close(const Quiver& q, const std::vector<PermPair>& generators, std::size_t bound) {
  for (const PermPair& p : generators) {
    std::string err = check_automorphism(q, p);
    if (!err.empty()) throw std::invalid_argument("close_group: generator rejected: " + err);
  }
  std::vector<PermPair> elems{identity_perm(q)};
  std::map<std::string, std::size_t> index{{perm_key(elems[0]), 0}};
  for (std::size_t cursor = 0; cursor < elems.size(); ++cursor) {
    for (const PermPair& gen : generators) {
      PermPair next = compose(elems[cursor], gen);
      std::string key = perm_key(next);
      if (index.count(key)) continue;
      index[key] = elems.size();
      elems.push_back(std::move(next));
      if (elems.size() > bound)
        throw std::runtime_error("close_group: closure exceeds bound of " + std::to_string(bound));
    }
  }
  std::vector<std::size_t> gens;
  for (const PermPair& gen : generators) gens.push_back(index.at(perm_key(gen)));
  return from_elements(q, std::move(elems), std::move(gens));
}

GroupAction GroupAction::trivial(const Quiver& q) { return close(q, {}); }

std::size_t GroupAction::order_of(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = mult(x, a);
    ++k;
  }
  return k;
}

bool GroupAction::is_abelian() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (mult_[i][j] != mult_[j][i]) return false;
  return true;
}

const std::string& GroupAction::vertex_image(std::size_t g, const std::string& v) const {
  return elems_.at(g).vmap.at(v);
}

const std::string& GroupAction::arrow_image(std::size_t g, const std::string& a) const {
  return elems_.at(g).amap.at(a);
}

GroupAction GroupAction::extended_to_double(const Quiver& qbar) const {
  if (!qbar.is_doubled()) throw std::invalid_argument("extended_to_double: target is not a double quiver");
  std::vector<PermPair> elems;
  for (const PermPair& p : elems_) {
    PermPair e = p;
    for (const auto& [orig, dbl] : qbar.star_of()) e.amap[dbl] = qbar.star(p.amap.at(orig));
    elems.push_back(std::move(e));
  }
  std::vector<std::size_t> gens = gens_;
  GroupAction g = from_elements(qbar, std::move(elems), std::move(gens));
  for (const PermPair& p : g.elems_) {
    std::string err = check_automorphism(qbar, p);
    if (!err.empty()) throw std::logic_error("extended_to_double: " + err);
  }
  return g;
}

GroupAction GroupAction::subgroup_action(const std::vector<std::size_t>& subgroup) const {
  if (!is_subgroup(*this, subgroup)) throw std::invalid_argument("subgroup_action: not a subgroup");
  std::vector<PermPair> elems;
  for (std::size_t i : subgroup) elems.push_back(elems_[i]);
  // regenerate: every element is its own generator (identity dropped)
  std::vector<std::size_t> gens;
  for (std::size_t k = 1; k < elems.size(); ++k) gens.push_back(k);
  return from_elements(quiver_, std::move(elems), std::move(gens));
}

bool operator==(const GroupAction& a, const GroupAction& b) {
  if (!(a.quiver_ == b.quiver_) || a.elems_.size() != b.elems_.size()) return false;
  for (std::size_t i = 0; i < a.elems_.size(); ++i)
    if (a.elems_[i].vmap != b.elems_[i].vmap || a.elems_[i].amap != b.elems_[i].amap) return false;
  return true;
}

const std::vector<std::string>& OrbitData::vertex_orbit_of(const std::string& v) const {
  for (const auto& orb : vertex_orbits)
    if (std::find(orb.begin(), orb.end(), v) != orb.end()) return orb;
  throw std::out_of_range("OrbitData: unknown vertex '" + v + "'");
}

const std::string& OrbitData::representative_of(const std::string& v) const {
  return vertex_orbit_of(v).front();
}

OrbitData orbits(const GroupAction& g) {
  OrbitData od;
  const Quiver& q = g.quiver();
  std::map<std::string, bool> done;
  for (const auto& v : q.vertices()) {
    if (done.count(v)) continue;
    std::vector<std::string> orb;
    for (std::size_t e = 0; e < g.size(); ++e) {
      const std::string& img = g.vertex_image(e, v);
      if (!done.count(img)) {
        done[img] = true;
        orb.push_back(img);
      }
    }
    std::sort(orb.begin(), orb.end());
    od.vertex_orbits.push_back(std::move(orb));
  }
  std::sort(od.vertex_orbits.begin(), od.vertex_orbits.end());
  done.clear();
  for (const Arrow& a : q.arrows()) {
    if (done.count(a.id)) continue;
    std::vector<std::string> orb;
    for (std::size_t e = 0; e < g.size(); ++e) {
      const std::string& img = g.arrow_image(e, a.id);
      if (!done.count(img)) {
        done[img] = true;
        orb.push_back(img);
      }
    }
    std::sort(orb.begin(), orb.end());
    od.arrow_orbits.push_back(std::move(orb));
  }
  std::sort(od.arrow_orbits.begin(), od.arrow_orbits.end());
  for (const auto& v : q.vertices()) {
    std::vector<std::size_t> stab;
    for (std::size_t e = 0; e < g.size(); ++e)
      if (g.vertex_image(e, v) == v) stab.push_back(e);
    od.stabilizers[v] = std::move(stab);
  }
  for (const auto& orb : od.vertex_orbits) {
    od.representatives.push_back(orb.front());
    // orbit-stabilizer count must balance
    if (orb.size() * od.stabilizers.at(orb.front()).size() != g.size())
      throw std::logic_error("orbits: orbit-stabilizer count failure");
  }
  std::sort(od.representatives.begin(), od.representatives.end());
  for (const auto& v : q.vertices()) {
    const std::string& rep = od.representative_of(v);
    for (std::size_t e = 0; e < g.size(); ++e)
      if (g.vertex_image(e, rep) == v) {
        od.kappa[v] = e;
        break;
      }
  }
  return od;
}

bool is_admissible(const GroupAction& g) {
  OrbitData od = orbits(g);
  for (const Arrow& a : g.quiver().arrows())
    if (od.representative_of(a.tail) == od.representative_of(a.head)) return false;
  return true;
}

bool lambda_compatible(const GroupAction& g, const LambdaVector& lambda) {
  OrbitData od = orbits(g);
  for (const auto& orb : od.vertex_orbits)
    for (const auto& v : orb)
      if (!(lambda.at(v) == lambda.at(orb.front()))) return false;
  return true;
}

bool is_subgroup(const GroupAction& g, const std::vector<std::size_t>& h) {
  if (h.empty() || h[0] != 0) return false;
  std::vector<bool> in(g.size(), false);
  for (std::size_t i : h) {
    if (i >= g.size()) return false;
    in[i] = true;
  }
  for (std::size_t a : h)
    for (std::size_t b : h)
      if (!in[g.mult(a, b)]) return false;
  for (std::size_t a : h)
    if (!in[g.inverse(a)]) return false;
  return true;
}

std::vector<std::size_t> left_transversal(const GroupAction& g, const std::vector<std::size_t>& h) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("left_transversal: not a subgroup");
  std::vector<bool> covered(g.size(), false);
  std::vector<std::size_t> reps;
  for (std::size_t e = 0; e < g.size(); ++e) {
    if (covered[e]) continue;
    reps.push_back(e);
    for (std::size_t x : h) covered[g.mult(e, x)] = true;
  }
  if (reps.size() * h.size() != g.size()) throw std::logic_error("left_transversal: size mismatch");
  return reps;
}

PairClassData pair_classes(const GroupAction& g, const OrbitData& o) {
  PairClassData pc;
  for (const auto& i : o.representatives) {
    for (const auto& j : o.representatives) {
      const auto& oi = o.vertex_orbit_of(i);
      const auto& oj = o.vertex_orbit_of(j);
      std::map<std::pair<std::string, std::string>, bool> done;
      std::vector<std::pair<std::string, std::string>> reps;
      for (const auto& a : oi) {
        for (const auto& b : oj) {
          if (done.count({a, b})) continue;
          // collect the diagonal class of (a, b), represented by its lex-min member
          std::pair<std::string, std::string> best{a, b};
          std::vector<std::pair<std::string, std::string>> members;
          for (std::size_t e = 0; e < g.size(); ++e) {
            std::pair<std::string, std::string> im{g.vertex_image(e, a), g.vertex_image(e, b)};
            if (!done.count(im)) {
              done[im] = true;
              members.push_back(im);
            }
            if (im < best) best = im;
          }
          reps.push_back(best);
        }
      }
      std::sort(reps.begin(), reps.end());
      pc.pair_reps[{i, j}] = reps;
      for (const auto& [ip, jp] : pc.pair_reps[{i, j}]) {
        if (pc.gh_classes.count({ip, jp})) continue;
        const auto& gi = o.stabilizers.at(i);
        const auto& gj = o.stabilizers.at(j);
        std::size_t ki = o.kappa.at(ip), kj = o.kappa.at(jp);
        // class invariant: w = h * kj^-1 * ki * g
        std::map<std::size_t, std::size_t> class_of_w;  // w -> class index
        PairClassData::GHClass cls;
        for (std::size_t gg : gi) {
          for (std::size_t hh : gj) {
            std::size_t w = g.mult(g.mult(hh, g.inverse(kj)), g.mult(ki, gg));
            auto it = class_of_w.find(w);
            if (it == class_of_w.end()) {
              class_of_w[w] = cls.reps.size();
              cls.reps.push_back({gg, hh});
              cls.class_sizes.push_back(1);
            } else {
              cls.class_sizes[it->second]++;
              if (std::pair<std::size_t, std::size_t>{gg, hh} < cls.reps[it->second])
                cls.reps[it->second] = {gg, hh};
            }
          }
        }
        pc.gh_classes[{ip, jp}] = std::move(cls);
      }
    }
  }
  return pc;
}

namespace {

struct SmallGroup {
  std::vector<std::size_t> mult_flat;  // n x n
  std::size_t n;
  std::size_t mult(std::size_t a, std::size_t b) const { return mult_flat[a * n + b]; }
  std::size_t order_of(std::size_t a) const {
    std::size_t k = 1, x = a;
    while (x != 0) {
      x = mult(x, a);
      ++k;
    }
    return k;
  }
  std::size_t power(std::size_t a, std::size_t e) const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < e; ++i) r = mult(r, a);
    return r;
  }
};

// basis of a finite abelian group: generator of maximal order first, then
// recurse on the quotient and lift
void abelian_basis_rec(const SmallGroup& g, std::vector<std::size_t>& gens_out,
                       std::vector<std::size_t>& orders_out) {
  if (g.n == 1) return;
  std::size_t best = 1, best_ord = 0;
  for (std::size_t a = 1; a < g.n; ++a) {
    std::size_t o = g.order_of(a);
    if (o > best_ord) {
      best_ord = o;
      best = a;
    }
  }
  // cosets of <best>
  std::vector<std::size_t> cyc;
  {
    std::size_t x = 0;
    do {
      cyc.push_back(x);
      x = g.mult(x, best);
    } while (x != 0);
  }
  std::vector<std::size_t> coset_of(g.n, SIZE_MAX);
  std::vector<std::size_t> coset_rep;
  for (std::size_t a = 0; a < g.n; ++a) {
    if (coset_of[a] != SIZE_MAX) continue;
    std::size_t c = coset_rep.size();
    coset_rep.push_back(a);
    for (std::size_t k : cyc) coset_of[g.mult(a, k)] = c;
  }
  SmallGroup q;
  q.n = coset_rep.size();
  q.mult_flat.assign(q.n * q.n, 0);
  for (std::size_t a = 0; a < q.n; ++a)
    for (std::size_t b = 0; b < q.n; ++b) q.mult_flat[a * q.n + b] = coset_of[g.mult(coset_rep[a], coset_rep[b])];
  std::vector<std::size_t> sub_gens, sub_orders;
  abelian_basis_rec(q, sub_gens, sub_orders);
  gens_out.push_back(best);
  orders_out.push_back(best_ord);
  // lift each quotient generator to an element of the same order
  for (std::size_t t = 0; t < sub_gens.size(); ++t) {
    std::size_t x = coset_rep[sub_gens[t]];
    std::size_t m = sub_orders[t];
    std::size_t xm = g.power(x, m);  // lies in <best>
    std::size_t tpow = 0;
    for (std::size_t k = 0; k < best_ord; ++k)
      if (g.power(best, k) == xm) {
        tpow = k;
        break;
      }
    if (tpow % m != 0) throw std::logic_error("abelian_basis: lifting failed");
    std::size_t s = (tpow / m) % best_ord;
    std::size_t lifted = g.mult(x, g.power(best, (best_ord - s) % best_ord));
    gens_out.push_back(lifted);
    orders_out.push_back(m);
  }
}

}  // namespace

AbelianBasis abelian_basis(const GroupAction& g) {
  if (!g.is_abelian()) throw std::invalid_argument("abelian_basis: group is not abelian");
  SmallGroup sg;
  sg.n = g.size();
  sg.mult_flat.assign(sg.n * sg.n, 0);
  for (std::size_t a = 0; a < sg.n; ++a)
    for (std::size_t b = 0; b < sg.n; ++b) sg.mult_flat[a * sg.n + b] = g.mult(a, b);
  AbelianBasis ab;
  abelian_basis_rec(sg, ab.gens, ab.orders);
  // coordinates by full enumeration of exponent tuples
  std::vector<std::size_t> tuple(ab.gens.size(), 0);
  std::size_t count = 1;
  for (std::size_t o : ab.orders) count *= o;
  if (count != g.size()) throw std::logic_error("abelian_basis: order product mismatch");
  for (std::size_t it = 0; it < count; ++it) {
    std::size_t elem = 0;
    for (std::size_t l = 0; l < ab.gens.size(); ++l) elem = g.mult(elem, sg.power(ab.gens[l], tuple[l]));
    if (ab.coords.count(elem)) throw std::logic_error("abelian_basis: coordinates not unique");
    ab.coords[elem] = tuple;
    for (std::size_t l = tuple.size(); l-- > 0;) {
      if (++tuple[l] < ab.orders[l]) break;
      tuple[l] = 0;
    }
  }
  return ab;
}

bool LinearCharacter::is_trivial() const {
  for (const auto& [e, v] : values)
    if (!v.is_one()) return false;
  return true;
}

std::vector<LinearCharacter> abelian_characters(const GroupAction& g, const FieldSpec& f) {
  AbelianBasis ab = abelian_basis(g);
  std::size_t expn = 1;
  for (std::size_t o : ab.orders) expn = std::lcm(expn, o);
  auto omega = root_of_unity(f, expn);
  if (!omega)
    throw std::runtime_error("abelian_characters: field " + f.to_string() + " has no primitive " +
                             std::to_string(expn) + "-th root of unity");
  std::vector<LinearCharacter> chars;
  std::vector<std::size_t> t(ab.gens.size(), 0);
  std::size_t count = g.size();
  for (std::size_t it = 0; it < count; ++it) {
    LinearCharacter chi;
    for (const auto& [elem, coords] : ab.coords) {
      std::uint64_t e = 0;
      for (std::size_t l = 0; l < coords.size(); ++l)
        e += t[l] * coords[l] % expn * (expn / ab.orders[l]) % expn;
      chi.values[elem] = omega->pow(e % expn);
    }
    chars.push_back(std::move(chi));
    for (std::size_t l = t.size(); l-- > 0;) {
      if (++t[l] < ab.orders[l]) break;
      t[l] = 0;
    }
  }
  return chars;
}

GroupAction reoriented_action(const GroupAction& g, const std::vector<std::string>& reversed_ids) {
  std::map<std::string, bool> rev;
  for (const auto& id : reversed_ids) rev[id] = true;
  for (const auto& id : reversed_ids)
    for (std::size_t e = 0; e < g.size(); ++e)
      if (!rev.count(g.arrow_image(e, id)))
        throw std::invalid_argument("reoriented_action: reversed set is not stable under the group");
  Quiver nq = reverse_arrows(g.quiver(), reversed_ids);
  auto rename = [&](const std::string& id) -> std::string {
    if (!rev.count(id)) return id;
    std::string n = id;
    if (!n.empty() && n.back() == Quiver::kReverseMark)
      n.pop_back();
    else
      n += Quiver::kReverseMark;
    return n;
  };
  std::vector<PermPair> elems;
  for (std::size_t e = 0; e < g.size(); ++e) {
    PermPair p;
    p.vmap = g.element(e).vmap;
    for (const Arrow& a : g.quiver().arrows()) p.amap[rename(a.id)] = rename(g.arrow_image(e, a.id));
    elems.push_back(std::move(p));
  }
  std::vector<std::size_t> gens = g.generators();
  GroupAction out = GroupAction::from_elements(nq, std::move(elems), std::move(gens));
  for (const PermPair& p : out.elems_) {
    std::string err = check_automorphism(nq, p);
    if (!err.empty()) throw std::logic_error("reoriented_action: " + err);
  }
  return out;
}

}  // namespace ppa
