#pragma once

#include "ppa/skew.hpp"

namespace ppa {

/// Book-keeping for one reflection at a sink j: the sum space over the
/// incoming original arrows with mu = sum mu_a V_a', pi = (1/lambda_j) sum
/// V_a pi_a, and the kernel of pi in echelon form.
struct ReflectionData {
  std::string sink;
  std::vector<std::string> arrows;        // original arrows into the sink, id order
  std::vector<std::size_t> offsets;       // block offsets in the sum space
  std::size_t vplus_dim = 0;
  Matrix mu;            // V_j -> V_plus
  Matrix pi;            // V_plus -> V_j
  Matrix kernel_embed;  // W_j -> V_plus
};

ReflectionData reflection_data(const Representation& v, const LambdaVector& lambda, const std::string& sink);

/// Reorients every arrow incident to the orbit to point into it, carrying
/// the representation across (b -> (b*)', b' -> -b*). The result lives over
/// the doubled reoriented quiver and satisfies the same relations.
Representation sinkify(const Representation& v, const LambdaVector& lambda, const std::vector<std::string>& orbit);
SkewStructure sinkify_skew(const SkewStructure& s, const LambdaVector& lambda, const std::vector<std::string>& orbit);
/// The original arrows the sinkify step would reverse (tails in the orbit).
std::vector<std::string> sinkify_reversal_set(const Quiver& doubled, const std::vector<std::string>& orbit);

struct ReflectedRep {
  Representation rep;
  LambdaVector lambda;
};

/// One reflection at a sink with lambda_j != 0; output satisfies the
/// reflected relations and has dim W = r_j(dim V) (verified).
ReflectedRep reflect_rep(const Representation& v, const std::string& sink, const LambdaVector& lambda);

/// Image of a morphism under the reflection at a sink common to both sides.
VertexMap reflect_hom(const VertexMap& f, const Representation& v, const Representation& w, const std::string& sink,
                      const LambdaVector& lambda);

/// Composite of reflections over a whole orbit (sinkifies first if needed).
ReflectedRep orbit_reflect_rep(const Representation& v, const std::vector<std::string>& orbit,
                               const LambdaVector& lambda);

struct ReflectedSkew {
  SkewStructure structure;
  LambdaVector lambda;
};

/// Skew reflection functor at a vertex orbit: reflects the underlying
/// representation and every phi_g; requires an abelian admissible action and
/// a compatible lambda nonzero on the orbit. Output is validated.
ReflectedSkew reflect_skew(const SkewStructure& s, const std::vector<std::string>& orbit, const LambdaVector& lambda);

ReflectedRep weyl_reflect(const Representation& v, const std::vector<std::vector<std::string>>& word,
                          const LambdaVector& lambda);
ReflectedSkew weyl_reflect_skew(const SkewStructure& s, const std::vector<std::vector<std::string>>& word,
                                const LambdaVector& lambda);

}  // namespace ppa
