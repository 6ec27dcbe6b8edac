#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"

using namespace ppa;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

GroupAction sym_group() { return fx::a3_in_group().extended_to_double(double_quiver(fx::a3_in())); }

// scalar phi family on the symmetric (1,1,1) module
SkewStructure scalar_structure(long long c1, long long c2, long long c3, const FieldSpec& f) {
  SkewStructure s;
  s.rep = fx::sym_module_a3(f);
  s.group = sym_group();
  VertexMap swap_phi;
  swap_phi["1"] = fx::scalar_matrix(c1, f);
  swap_phi["2"] = fx::scalar_matrix(c2, f);
  swap_phi["3"] = fx::scalar_matrix(c3, f);
  s.phi[0] = identity_morphism(s.rep);
  s.phi[1] = swap_phi;
  return s;
}

LambdaVector zero_lambda(const FieldSpec& f) { return LambdaVector::zero(double_quiver(fx::a3_in()), f); }

}  // namespace

TEST_CASE("validation of phi families") {
  SkewStructure triv;
  triv.rep = fx::sym_module_a3(kQ);
  triv.group = GroupAction::trivial(triv.rep.quiver);
  triv.phi[0] = identity_morphism(triv.rep);
  LambdaVector l = zero_lambda(kQ);
  CHECK(validate_structure(triv, &l).ok);

  SkewStructure good = scalar_structure(1, 1, 1, kQ);
  CHECK(validate_structure(good, &l).ok);

  SkewStructure bad = scalar_structure(2, 2, 2, kQ);
  ValidationReport vr = validate_structure(bad);
  CHECK_FALSE(vr.ok);
  bool cocycle_mentioned = false;
  for (const auto& v : vr.violations)
    if (v.find("cocycle") != std::string::npos) cocycle_mentioned = true;
  CHECK(cocycle_mentioned);

  // (1, 1, -1) breaks the intertwiner equations: phi_2 a = b phi_1 forces c2 = c1 * 1
  SkewStructure mixed = scalar_structure(1, -1, 1, kQ);
  CHECK_FALSE(validate_structure(mixed).ok);
}

TEST_CASE("extension from generator images") {
  SkewStructure s = scalar_structure(-1, -1, -1, kQ);
  std::map<std::size_t, VertexMap> gens{{1, s.phi.at(1)}};
  auto full = extend_phi(s.rep, s.group, gens);
  CHECK(full.size() == 2);
  CHECK(full.at(0) == identity_morphism(s.rep));
  // inconsistent image: phi_s with square != id on an element of order 2
  std::map<std::size_t, VertexMap> bad{{1, scalar_structure(2, 2, 2, kQ).phi.at(1)}};
  CHECK_THROWS(extend_phi(s.rep, s.group, bad));
}

TEST_CASE("base structures correct the cocycle") {
  GroupAction g = sym_group();
  Representation sym = fx::sym_module_a3(kQ);
  SkewStructure base = base_structure(sym, g, {0, 1});
  CHECK(validate_structure(base).ok);
  CHECK(base.group.size() == 2);
  // trivial subgroup
  SkewStructure tb = base_structure(sym, g, {0});
  CHECK(tb.phi.size() == 1);
  CHECK(tb.phi.at(0) == identity_morphism(sym));
}

TEST_CASE("obstruction reporting when roots are missing") {
  // two-cycle quiver, swap action; the (1, 2, 2, 1) module has theta^2 = c id
  // with c twice a square, so no exact involution exists over Q
  Quiver cyc({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  PermPair sw;
  sw.vmap = {{"1", "2"}, {"2", "1"}};
  sw.amap = {{"a", "b"}, {"b", "a"}};
  auto build = [&](const FieldSpec& f) {
    GroupAction g = GroupAction::close(cyc, {sw}).extended_to_double(double_quiver(cyc));
    Quiver d = g.quiver();
    DimVector dims = DimVector::zero(d);
    dims.entries["1"] = 1;
    dims.entries["2"] = 1;
    Representation x = Representation::zero_rep(d, f, dims);
    x.mats.at("a") = fx::scalar_matrix(1, f);
    x.mats.at("b") = fx::scalar_matrix(2, f);
    x.mats.at("a'") = fx::scalar_matrix(2, f);
    x.mats.at("b'") = fx::scalar_matrix(1, f);
    CHECK(relations_hold(x, LambdaVector::zero(d, f)));
    return std::make_pair(g, x);
  };
  auto [gq, xq] = build(FieldSpec::rationals());
  CHECK_THROWS_WITH_AS(base_structure(xq, gq, {0, 1}), doctest::Contains("root"), std::runtime_error);
  // 2 is a square mod 10007, so the same module normalizes there
  auto [gp, xp] = build(FieldSpec::prime(10007));
  SkewStructure s = base_structure(xp, gp, {0, 1});
  CHECK(validate_structure(s).ok);
}

TEST_CASE("enumerating structures on the symmetric module") {
  GroupAction g = sym_group();
  Representation sym = fx::sym_module_a3(kQ);
  auto structures = enumerate_structures(sym, g);
  REQUIRE(structures.size() == 2);
  LambdaVector l = zero_lambda(kQ);
  for (const auto& s : structures) CHECK(validate_structure(s, &l).ok);
  CHECK(are_equivalent(structures[0], structures[0]).equivalent);
  CHECK(are_equivalent(structures[1], structures[1]).equivalent);
  CHECK_FALSE(are_equivalent(structures[0], structures[1]).equivalent);
  // the two families differ by the sign character: phi values +-1
  Matrix p0 = structures[0].phi_of(1).at("2");
  Matrix p1 = structures[1].phi_of(1).at("2");
  CHECK(p0 == -p1);
}

TEST_CASE("structure counts follow the stabilizer order") {
  GroupAction g = sym_group();
  Quiver d = g.quiver();
  // vertex-2 simple: fixed by the swap, so two structures on itself
  Representation s2 = fx::simple_at(d, kQ, "2");
  auto st2 = enumerate_structures(s2, g);
  CHECK(st2.size() == 2);
  CHECK(st2[0].rep == s2);
  Matrix v0 = st2[0].phi_of(1).at("2");
  Matrix v1 = st2[1].phi_of(1).at("2");
  CHECK(v0 == -v1);
  CHECK_FALSE(are_equivalent(st2[0], st2[1]).equivalent);

  // vertex-1 simple: trivial H_X, one structure on the hull S1 + S3
  Representation s1 = fx::simple_at(d, kQ, "1");
  auto st1 = enumerate_structures(s1, g);
  REQUIRE(st1.size() == 1);
  CHECK(st1[0].rep.dims.at("1") == 1);
  CHECK(st1[0].rep.dims.at("3") == 1);
  CHECK(validate_structure(st1[0]).ok);

  // trivial group: always exactly one structure
  GroupAction triv = GroupAction::trivial(d);
  CHECK(enumerate_structures(fx::sym_module_a3(kQ), triv).size() == 1);
}

TEST_CASE("induced modules realize the characters") {
  GroupAction g = sym_group();
  Representation sym = fx::sym_module_a3(kQ);
  HxResult hx = hx_subgroup(sym, g);
  GroupAction h = g.subgroup_action(hx.subgroup);
  auto chars = abelian_characters(h, kQ);
  std::stable_sort(chars.begin(), chars.end(),
                   [](const LinearCharacter& a, const LinearCharacter& b) { return a.is_trivial() && !b.is_trivial(); });
  SkewStructure with_trivial = induce_module(sym, g, hx, chars[0]);
  SkewStructure with_sign = induce_module(sym, g, hx, chars[1]);
  CHECK(validate_structure(with_trivial).ok);
  CHECK(validate_structure(with_sign).ok);
  CHECK(with_sign.phi_of(1).at("2") == -with_trivial.phi_of(1).at("2"));
  CHECK_FALSE(are_equivalent(with_trivial, with_sign).equivalent);
}

TEST_CASE("equivalence accepts conjugated families") {
  GroupAction g = sym_group();
  auto structures = enumerate_structures(fx::sym_module_a3(kQ), g);
  SkewStructure s = structures[0];
  // conjugate by an automorphism of the module (a global scalar is one)
  SkewStructure t = s;
  VertexMap f;
  for (const auto& v : s.rep.quiver.vertices()) f[v] = fx::scalar_matrix(3, kQ);
  for (auto& [e, vm] : t.phi) {
    // psi_g = f phi_g (^g f)^-1
    std::size_t einv = t.group.inverse(e);
    VertexMap nv;
    for (const auto& [vert, m] : vm) {
      Matrix fg = f.at(t.group.vertex_image(einv, vert));
      nv[vert] = f.at(vert) * m * *fg.inverse();
    }
    vm = nv;
  }
  CHECK(validate_structure(t).ok);
  CHECK(are_equivalent(s, t).equivalent);
}

TEST_CASE("brute force over F5 finds exactly the predicted classes") {
  FieldSpec f5 = FieldSpec::prime(5);
  GroupAction g = sym_group();
  Representation sym = fx::sym_module_a3(f5);
  // all scalar families (c1, c2, c3) with phi_swap components c_i
  std::vector<SkewStructure> valid;
  for (long long c1 = 0; c1 < 5; ++c1)
    for (long long c2 = 0; c2 < 5; ++c2)
      for (long long c3 = 0; c3 < 5; ++c3) {
        SkewStructure s;
        s.rep = sym;
        s.group = g;
        s.phi[0] = identity_morphism(sym);
        VertexMap vm;
        vm["1"] = fx::scalar_matrix(c1, f5);
        vm["2"] = fx::scalar_matrix(c2, f5);
        vm["3"] = fx::scalar_matrix(c3, f5);
        s.phi[1] = vm;
        if (validate_structure(s).ok) valid.push_back(std::move(s));
      }
  REQUIRE_FALSE(valid.empty());
  std::vector<std::size_t> class_reps;
  for (std::size_t i = 0; i < valid.size(); ++i) {
    bool matched = false;
    for (std::size_t r : class_reps)
      if (are_equivalent(valid[r], valid[i]).equivalent) {
        matched = true;
        break;
      }
    if (!matched) class_reps.push_back(i);
  }
  CHECK(class_reps.size() == 2);
  auto enumerated = enumerate_structures(sym, g);
  CHECK(enumerated.size() == class_reps.size());
}

TEST_CASE("cocycle correction handles nilpotent witness parts") {
  // two loops swapped by the involution; End(X) = k[N], so isomorphism
  // witnesses generically carry a nilpotent component that the truncated
  // binomial series has to strip
  Quiver two_loops({"1"}, {{"a", "1", "1"}, {"b", "1", "1"}});
  PermPair sw;
  sw.vmap = {{"1", "1"}};
  sw.amap = {{"a", "b"}, {"b", "a"}};
  GroupAction g = GroupAction::close(two_loops, {sw}).extended_to_double(double_quiver(two_loops));
  DimVector dims = DimVector::zero(g.quiver());
  dims.entries["1"] = 2;
  Representation x = Representation::zero_rep(g.quiver(), kQ, dims);
  Matrix n(2, 2, kQ);
  n.at(0, 1) = Scalar::one(kQ);
  x.mats.at("a") = n;
  x.mats.at("b") = n;
  REQUIRE(relations_hold(x, LambdaVector::zero(g.quiver(), kQ)));
  REQUIRE(analyze_endomorphisms(x).end_dim == 2);
  REQUIRE(is_indecomposable(x));
  for (std::uint64_t seed : {0ull, 1ull, 2ull, 3ull, 11ull, 12345ull}) {
    SkewStructure base = base_structure(x, g, {0, 1}, 32, seed);
    CHECK(validate_structure(base).ok);
    auto structures = enumerate_structures(x, g, 32, seed);
    REQUIRE(structures.size() == 2);
    for (const auto& s : structures) CHECK(validate_structure(s).ok);
    CHECK_FALSE(are_equivalent(structures[0], structures[1], 32, seed).equivalent);
  }
}

TEST_CASE("order-three stabilizers need cube roots of unity") {
  Quiver star({"c", "o1", "o2", "o3"}, {{"a1", "o1", "c"}, {"a2", "o2", "c"}, {"a3", "o3", "c"}});
  PermPair rot;  // o1 -> o2 -> o3 -> o1
  rot.vmap = {{"c", "c"}, {"o1", "o2"}, {"o2", "o3"}, {"o3", "o1"}};
  rot.amap = {{"a1", "a2"}, {"a2", "a3"}, {"a3", "a1"}};
  GroupAction z3 = GroupAction::close(star, {rot});
  REQUIRE(z3.size() == 3);
  auto build = [&](const FieldSpec& f) {
    GroupAction gd = z3.extended_to_double(double_quiver(star));
    DimVector dims = DimVector::zero(gd.quiver());
    for (auto& [v, n] : dims.entries) n = 1;
    Representation x = Representation::zero_rep(gd.quiver(), f, dims);
    for (const auto& id : {"a1", "a2", "a3"}) x.mats.at(id) = fx::scalar_matrix(1, f);
    return std::make_pair(gd, x);
  };
  auto [gq, xq] = build(kQ);
  CHECK_THROWS(enumerate_structures(xq, gq));  // no cube roots of unity in Q
  FieldSpec fp = FieldSpec::prime(3001);       // 3 | 3000
  auto [gp, xp] = build(fp);
  auto structures = enumerate_structures(xp, gp);
  REQUIRE(structures.size() == 3);
  for (const auto& s : structures) CHECK(validate_structure(s).ok);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) CHECK_FALSE(are_equivalent(structures[i], structures[j]).equivalent);
}

TEST_CASE("simplicity of skew structures") {
  GroupAction g = sym_group();
  Quiver d = g.quiver();
  auto hull_structures = enumerate_structures(fx::simple_at(d, kQ, "1"), g);
  REQUIRE(hull_structures.size() == 1);
  CHECK(is_simple_skew(hull_structures[0]));
  auto sym_structures = enumerate_structures(fx::sym_module_a3(kQ), g);
  CHECK_FALSE(is_simple_skew(sym_structures[0]));
  auto s2_structures = enumerate_structures(fx::simple_at(d, kQ, "2"), g);
  CHECK(is_simple_skew(s2_structures[0]));
  CHECK(is_simple_skew(s2_structures[1]));
}

TEST_CASE("non-cyclic abelian stabilizers enumerate by independent generators") {
  // four-armed star with the Klein group of double transpositions
  Quiver star({"c", "o1", "o2", "o3", "o4"},
              {{"a1", "o1", "c"}, {"a2", "o2", "c"}, {"a3", "o3", "c"}, {"a4", "o4", "c"}});
  PermPair g1;  // (o1 o2)(o3 o4)
  g1.vmap = {{"c", "c"}, {"o1", "o2"}, {"o2", "o1"}, {"o3", "o4"}, {"o4", "o3"}};
  g1.amap = {{"a1", "a2"}, {"a2", "a1"}, {"a3", "a4"}, {"a4", "a3"}};
  PermPair g2;  // (o1 o3)(o2 o4)
  g2.vmap = {{"c", "c"}, {"o1", "o3"}, {"o3", "o1"}, {"o2", "o4"}, {"o4", "o2"}};
  g2.amap = {{"a1", "a3"}, {"a3", "a1"}, {"a2", "a4"}, {"a4", "a2"}};
  GroupAction v4 = GroupAction::close(star, {g1, g2});
  REQUIRE(v4.size() == 4);
  REQUIRE(v4.is_abelian());
  GroupAction gd = v4.extended_to_double(double_quiver(star));
  Quiver d = gd.quiver();
  DimVector dims = DimVector::zero(d);
  for (auto& [v, n] : dims.entries) n = 1;
  Representation x = Representation::zero_rep(d, kQ, dims);
  for (const auto& id : {"a1", "a2", "a3", "a4"}) x.mats.at(id) = fx::scalar_matrix(1, kQ);
  REQUIRE(relations_hold(x, LambdaVector::zero(d, kQ)));
  auto structures = enumerate_structures(x, gd);
  REQUIRE(structures.size() == 4);  // |H_X| = |V4|
  for (const auto& s : structures) CHECK(validate_structure(s).ok);
  for (std::size_t i = 0; i < structures.size(); ++i)
    for (std::size_t j = i + 1; j < structures.size(); ++j)
      CHECK_FALSE(are_equivalent(structures[i], structures[j]).equivalent);
}

TEST_CASE("nonabelian stabilizers are refused with the count message") {
  GroupAction g = fx::d4_s3_group().extended_to_double(double_quiver(fx::d4_star()));
  // the center simple is fixed by all of S3
  Representation s1 = fx::simple_at(g.quiver(), kQ, "1");
  CHECK_THROWS_WITH_AS(enumerate_structures(s1, g), doctest::Contains("non-abelian"), std::invalid_argument);
}
