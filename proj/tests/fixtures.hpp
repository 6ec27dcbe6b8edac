#pragma once

// Shared builders for the test suites: small quivers, their automorphism
// groups, hand-made modules, and a generator of random relation-satisfying
// representations (the primed matrices are solved for linearly, so every
// emitted representation is exact).

#include <random>

#include "ppa/reflect.hpp"
#include "ppa/species.hpp"

namespace fx {

using namespace ppa;

inline Quiver a2() { return Quiver({"1", "2"}, {{"a", "1", "2"}}); }

// 1 -> 2 <- 3
inline Quiver a3_in() { return Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "3", "2"}}); }

// 1 <- 2 -> 3
inline Quiver a3_out() { return Quiver({"1", "2", "3"}, {{"c", "2", "1"}, {"d", "2", "3"}}); }

inline GroupAction swap13(const Quiver& q, const std::string& arr1, const std::string& arr2) {
  PermPair s;
  s.vmap = {{"1", "3"}, {"2", "2"}, {"3", "1"}};
  s.amap = {{arr1, arr2}, {arr2, arr1}};
  return GroupAction::close(q, {s});
}

inline GroupAction a3_in_group() { return swap13(a3_in(), "a", "b"); }
inline GroupAction a3_out_group() { return swap13(a3_out(), "c", "d"); }

// star with three outer vertices feeding the center
inline Quiver d4_star() {
  return Quiver({"1", "2", "3", "4"}, {{"a2", "2", "1"}, {"a3", "3", "1"}, {"a4", "4", "1"}});
}

inline GroupAction d4_s3_group() {
  PermPair t1;  // swap 2,3
  t1.vmap = {{"1", "1"}, {"2", "3"}, {"3", "2"}, {"4", "4"}};
  t1.amap = {{"a2", "a3"}, {"a3", "a2"}, {"a4", "a4"}};
  PermPair t2;  // swap 3,4
  t2.vmap = {{"1", "1"}, {"2", "2"}, {"3", "4"}, {"4", "3"}};
  t2.amap = {{"a2", "a2"}, {"a3", "a4"}, {"a4", "a3"}};
  return GroupAction::close(d4_star(), {t1, t2});
}

// two chains converging on the middle: 1 -> 2 -> ... -> n -> center <- n' <- ... <- 1'
inline Quiver a_odd(std::size_t n) {
  std::vector<std::string> verts;
  std::vector<Arrow> arrows;
  for (std::size_t k = 1; k <= n; ++k) verts.push_back(std::to_string(k));
  for (std::size_t k = 1; k <= n; ++k) verts.push_back(std::to_string(k) + "p");
  verts.push_back("z");
  for (std::size_t k = 1; k + 1 <= n; ++k) {
    arrows.push_back({"e" + std::to_string(k), std::to_string(k), std::to_string(k + 1)});
    arrows.push_back({"f" + std::to_string(k), std::to_string(k) + "p", std::to_string(k + 1) + "p"});
  }
  arrows.push_back({"e" + std::to_string(n), std::to_string(n), "z"});
  arrows.push_back({"f" + std::to_string(n), std::to_string(n) + "p", "z"});
  return Quiver(verts, arrows);
}

inline GroupAction a_odd_group(std::size_t n) {
  Quiver q = a_odd(n);
  PermPair s;
  for (std::size_t k = 1; k <= n; ++k) {
    s.vmap[std::to_string(k)] = std::to_string(k) + "p";
    s.vmap[std::to_string(k) + "p"] = std::to_string(k);
    s.amap["e" + std::to_string(k)] = "f" + std::to_string(k);
    s.amap["f" + std::to_string(k)] = "e" + std::to_string(k);
  }
  s.vmap["z"] = "z";
  return GroupAction::close(q, {s});
}

// path 1 - 2 - ... - (n-2) with a fork onto two tips
inline Quiver d_n(std::size_t n) {
  std::vector<std::string> verts;
  std::vector<Arrow> arrows;
  for (std::size_t k = 1; k + 2 <= n; ++k) verts.push_back(std::to_string(k));
  verts.push_back("t");
  verts.push_back("u");
  for (std::size_t k = 1; k + 3 <= n; ++k)
    arrows.push_back({"e" + std::to_string(k), std::to_string(k), std::to_string(k + 1)});
  arrows.push_back({"et", std::to_string(n - 2), "t"});
  arrows.push_back({"eu", std::to_string(n - 2), "u"});
  return Quiver(verts, arrows);
}

inline GroupAction d_n_group(std::size_t n) {
  Quiver q = d_n(n);
  PermPair s;
  for (const auto& v : q.vertices()) s.vmap[v] = v;
  s.vmap["t"] = "u";
  s.vmap["u"] = "t";
  for (const Arrow& a : q.arrows()) s.amap[a.id] = a.id;
  s.amap["et"] = "eu";
  s.amap["eu"] = "et";
  return GroupAction::close(q, {s});
}

// branch vertex "c" with one short arm and two symmetric long arms
inline Quiver e6() {
  return Quiver({"c", "t", "m1", "o1", "m2", "o2"},
                {{"at", "t", "c"},
                 {"b1", "m1", "c"},
                 {"c1", "o1", "m1"},
                 {"b2", "m2", "c"},
                 {"c2", "o2", "m2"}});
}

inline GroupAction e6_group() {
  Quiver q = e6();
  PermPair s;
  s.vmap = {{"c", "c"}, {"t", "t"}, {"m1", "m2"}, {"m2", "m1"}, {"o1", "o2"}, {"o2", "o1"}};
  s.amap = {{"at", "at"}, {"b1", "b2"}, {"b2", "b1"}, {"c1", "c2"}, {"c2", "c1"}};
  return GroupAction::close(q, {s});
}

inline Matrix scalar_matrix(long long v, const FieldSpec& f) {
  Matrix m(1, 1, f);
  m.at(0, 0) = Scalar::from_int(v, f);
  return m;
}

// (1,1,1) over double(1 -> 2 <- 3), unit originals, zero doubles; lambda = 0
inline Representation sym_module_a3(const FieldSpec& f) {
  Quiver d = double_quiver(a3_in());
  DimVector dims = DimVector::zero(d);
  for (auto& [v, n] : dims.entries) n = 1;
  Representation r = Representation::zero_rep(d, f, dims);
  r.mats.at("a") = scalar_matrix(1, f);
  r.mats.at("b") = scalar_matrix(1, f);
  return r;
}

// (1,1,1) over double(1 <- 2 -> 3), all four maps 1; lambda = (1,-2,1)
inline Representation scalar_module_out3(const FieldSpec& f) {
  Quiver d = double_quiver(a3_out());
  DimVector dims = DimVector::zero(d);
  for (auto& [v, n] : dims.entries) n = 1;
  Representation r = Representation::zero_rep(d, f, dims);
  for (const auto& id : {"c", "d", "c'", "d'"}) r.mats.at(id) = scalar_matrix(1, f);
  return r;
}

inline LambdaVector make_lambda(const Quiver& q, const FieldSpec& f,
                                const std::map<std::string, long long>& vals) {
  LambdaVector l = LambdaVector::zero(q, f);
  for (const auto& [k, v] : vals) l.entries.at(k) = Scalar::from_int(v, f);
  return l;
}

inline Representation simple_at(const Quiver& doubled, const FieldSpec& f, const std::string& v) {
  return Representation::zero_rep(doubled, f, DimVector::unit(doubled, v));
}

/// Random representation satisfying the deformed relations: the original
/// arrow matrices are random and the doubles are solved for; the relations
/// are linear in the doubled half. Returns nullopt when the sampled system
/// is inconsistent.
inline std::optional<Representation> random_relation_rep(const Quiver& undoubled, const DimVector& dims,
                                                         const LambdaVector& lambda, const FieldSpec& f,
                                                         std::mt19937_64& rng) {
  Quiver d = double_quiver(undoubled);
  Representation r = Representation::zero_rep(d, f, dims);
  for (const Arrow& a : undoubled.arrows()) {
    Matrix m(static_cast<std::size_t>(dims.at(a.head)), static_cast<std::size_t>(dims.at(a.tail)), f);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        long long c = f.is_rational() ? static_cast<long long>(rng() % 7) - 3
                                      : static_cast<long long>(rng() % f.p);
        m.at(i, j) = Scalar::from_int(c, f);
      }
    r.mats.at(a.id) = std::move(m);
  }
  // unknowns: entries of the doubled matrices
  std::map<std::string, std::size_t> offset;
  std::size_t total = 0;
  for (const Arrow& a : undoubled.arrows()) {
    offset[a.id] = total;
    total += static_cast<std::size_t>(dims.at(a.tail)) * static_cast<std::size_t>(dims.at(a.head));
  }
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (const auto& j : undoubled.vertices()) {
    std::size_t dj = static_cast<std::size_t>(dims.at(j));
    for (std::size_t rr = 0; rr < dj; ++rr)
      for (std::size_t cc = 0; cc < dj; ++cc) {
        std::vector<Scalar> row(total, Scalar::zero(f));
        // sum_{h(a)=j} V_a X_{a'} - sum_{t(a)=j} X_{a'} V_a  = lambda_j delta
        for (const Arrow& a : undoubled.arrows()) {
          std::size_t dt = static_cast<std::size_t>(dims.at(a.tail));
          std::size_t dh = static_cast<std::size_t>(dims.at(a.head));
          const Matrix& va = r.mat(a.id);
          if (a.head == j)
            for (std::size_t k = 0; k < dt; ++k) row[offset[a.id] + k * dh + cc] += va.at(rr, k);
          if (a.tail == j)
            for (std::size_t k = 0; k < dh; ++k) row[offset[a.id] + rr * dh + k] -= va.at(k, cc);
        }
        rows.push_back(std::move(row));
        rhs.push_back(rr == cc ? lambda.at(j) : Scalar::zero(f));
      }
  }
  Matrix sys(rows.size(), total, f), b(rows.size(), 1, f);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < total; ++c) sys.at(i, c) = rows[i][c];
    b.at(i, 0) = rhs[i];
  }
  auto sol = sys.solve(b);
  if (!sol) return std::nullopt;
  for (const Arrow& a : undoubled.arrows()) {
    std::size_t dt = static_cast<std::size_t>(dims.at(a.tail));
    std::size_t dh = static_cast<std::size_t>(dims.at(a.head));
    Matrix m(dt, dh, f);
    for (std::size_t i = 0; i < dt; ++i)
      for (std::size_t jj = 0; jj < dh; ++jj) m.at(i, jj) = sol->at(offset[a.id] + i * dh + jj, 0);
    r.mats.at(d.star(a.id)) = std::move(m);
  }
  r.validate();
  return r;
}

}  // namespace fx
