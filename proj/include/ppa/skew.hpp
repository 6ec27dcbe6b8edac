#pragma once

#include "ppa/rep.hpp"

namespace ppa {

/// A representation together with a family phi_g : ^gY -> Y turning it into
/// a module over the skew group algebra. Component (phi_g)_i maps
/// Y_{g^-1 i} -> Y_i. The family is stored for every group element; a
/// well-defined action satisfies phi_{gh} = phi_g . ^g(phi_h) and the
/// per-element cocycle phi_g^{|g|} = id.
struct SkewStructure {
  Representation rep;
  GroupAction group;  // acts on rep.quiver
  std::map<std::size_t, VertexMap> phi;

  const VertexMap& phi_of(std::size_t g) const;
};

/// phi_{x y} from phi_x and phi_y: components (phi_x)_i (phi_y)_{x^-1 i}.
VertexMap phi_compose(const GroupAction& g, std::size_t x, const VertexMap& phi_x, const VertexMap& phi_y);

/// Extends generator images multiplicatively over the whole group; throws if
/// the images are inconsistent.
std::map<std::size_t, VertexMap> extend_phi(const Representation& rep, const GroupAction& g,
                                            const std::map<std::size_t, VertexMap>& generator_images);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(std::string msg);
};

/// Checks the phi-family axioms (morphism, invertibility, cocycle,
/// multiplicativity) and, when lambda is provided, the underlying relations.
ValidationReport validate_structure(const SkewStructure& s, const LambdaVector* lambda = nullptr);

/// Corrects an isomorphism witness on each independent generator of the
/// abelian group so the cocycle holds exactly (scaling by an |h|-th root and
/// the truncated binomial series of the nilpotent part), then extends
/// multiplicatively. The group of the result is the subgroup itself.
SkewStructure base_structure(const Representation& x, const GroupAction& g, const std::vector<std::size_t>& subgroup,
                             unsigned trials = 32, std::uint64_t seed = 0);

/// The induced structure on the invariant hull of x twisted by a character
/// of H_X. chi is indexed by the subgroup-action element order of H_X.
SkewStructure induce_module(const Representation& x, const GroupAction& g, const HxResult& hx,
                            const LinearCharacter& chi, unsigned trials = 32, std::uint64_t seed = 0);

/// All pairwise-inequivalent skew structures on the invariant hull of x:
/// one induced module per character of the cyclic (or abelian, when the
/// per-generator correction validates) group H_X.
std::vector<SkewStructure> enumerate_structures(const Representation& x, const GroupAction& g, unsigned trials = 32,
                                                std::uint64_t seed = 0);

struct EquivResult {
  bool equivalent = false;
  bool certain = true;
};

/// Looks for an invertible f with f phi_g = psi_g f on the generators and f
/// a module endomorphism.
EquivResult are_equivalent(const SkewStructure& s1, const SkewStructure& s2, unsigned trials = 32,
                           std::uint64_t seed = 0);

/// Simplicity via the underlying module: summands simple and forming one
/// twist orbit.
bool is_simple_skew(const SkewStructure& s, unsigned trials = 32, std::uint64_t seed = 0);

}  // namespace ppa
