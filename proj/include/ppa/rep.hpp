#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppa/exactla.hpp"
#include "ppa/group.hpp"
#include "ppa/quiver.hpp"

namespace ppa {

/// Finite-dimensional quiver representation: one matrix per arrow, shaped
/// dim(head) x dim(tail).
struct Representation {
  Quiver quiver;
  FieldSpec field;
  DimVector dims;
  std::map<std::string, Matrix> mats;

  static Representation zero_rep(const Quiver& q, const FieldSpec& f, const DimVector& dims);
  /// Embeds a representation of an un-doubled quiver into the double with
  /// zero maps on the added arrows.
  static Representation zero_extension(const Representation& undoubled);

  const Matrix& mat(const std::string& arrow) const;
  long long dim_at(const std::string& v) const { return dims.at(v); }
  long long total_dim() const { return dims.total(); }
  /// Shape/field consistency; throws with a diagnostic on violation.
  void validate() const;

  friend bool operator==(const Representation& a, const Representation& b);
};

/// Per-vertex matrix family (a morphism of representations, or one phi_g).
using VertexMap = std::map<std::string, Matrix>;

struct HomBasis {
  std::vector<VertexMap> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Per-vertex residuals of the deformed preprojective relations
///   sum_{h(a)=j} V_a V_a' - sum_{t(a)=j} V_a' V_a - lambda_j id.
/// All-zero residuals mean V is a module over the deformed algebra.
std::map<std::string, Matrix> check_relations(const Representation& v, const LambdaVector& lambda);
bool relations_hold(const Representation& v, const LambdaVector& lambda);
/// sum_i lambda_i dim V_i; zero whenever the relations hold.
Scalar trace_obstruction(const LambdaVector& lambda, const DimVector& dims);

/// Twisted representation ^gV with (^gV)_i = V_{g^-1 i}, (^gV)_a = V_{g^-1 a}.
/// The action must live on the representation's quiver.
Representation twist(const Representation& v, const GroupAction& g, std::size_t elem);

/// Solves the intertwiner system f_{h(a)} X_a = Y_a f_{t(a)} over all arrows.
HomBasis hom_space(const Representation& x, const Representation& y);

VertexMap identity_morphism(const Representation& x);
VertexMap compose(const VertexMap& f, const VertexMap& g);  // f after g
bool morphism_invertible(const VertexMap& f);
VertexMap invert_morphism(const VertexMap& f);

struct IsoResult {
  bool isomorphic = false;
  bool certain = true;  // false only when a randomized search exhausted its budget
  std::optional<VertexMap> witness;
};

/// Randomized invertible-combination search over the Hom space; the
/// one-dimensional case is decided exactly, and small search spaces are
/// swept exhaustively before giving up.
IsoResult are_isomorphic(const Representation& x, const Representation& y, unsigned trials = 32,
                         std::uint64_t seed = 0);

struct EndoAnalysis {
  std::size_t end_dim = 0;
  std::size_t rad_dim = 0;
  std::size_t quotient_dim = 0;
  enum class Verdict { SplitIndecomposable, NonSplitIndecomposable, Decomposable } verdict;
};

EndoAnalysis analyze_endomorphisms(const Representation& x, std::uint64_t seed = 0);

/// dim End - dim rad End == 1. Errors on the zero representation.
bool is_indecomposable(const Representation& x);

/// Krull-Schmidt decomposition by repeated idempotent splitting; summands
/// sorted by dimension vector, then content hash.
std::vector<Representation> decompose(const Representation& x, std::uint64_t seed = 0);

/// No proper nonzero subrepresentation.
bool is_simple(const Representation& x, std::uint64_t seed = 0);

Representation direct_sum(const std::vector<Representation>& parts);

struct HxResult {
  std::vector<std::size_t> subgroup;     // H_X element indices, sorted
  std::vector<std::size_t> transversal;  // left coset reps G_X, identity first
  std::map<std::size_t, VertexMap> witnesses;  // g in H_X -> iso ^gX -> X
};

/// H_X = { g : ^gX ~ X } for indecomposable X with split endomorphisms.
HxResult hx_subgroup(const Representation& x, const GroupAction& g, unsigned trials = 32, std::uint64_t seed = 0);

/// Direct sum of the twists ^tX over the transversal of H_X; verified
/// G-invariant.
Representation invariant_hull(const Representation& x, const GroupAction& g, unsigned trials = 32,
                              std::uint64_t seed = 0);

std::size_t content_hash(const Representation& x);

}  // namespace ppa
