#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppa/quiver.hpp"

namespace ppa {

/// A quiver automorphism: compatible vertex and arrow permutations.
struct PermPair {
  std::map<std::string, std::string> vmap, amap;
};

/// A finite group realized as quiver automorphisms, stored by full element
/// enumeration. Element 0 is the identity; ordering is the BFS closure order
/// from the identity over the generators (in input order), so identical
/// inputs give identical element numbering.
class GroupAction {
 public:
  static GroupAction close(const Quiver& q, const std::vector<PermPair>& generators, std::size_t bound = 10080);
  static GroupAction trivial(const Quiver& q);

  const Quiver& quiver() const { return quiver_; }
  std::size_t size() const { return elems_.size(); }
  const PermPair& element(std::size_t i) const { return elems_[i]; }
  const std::vector<std::size_t>& generators() const { return gens_; }

  /// Composition a*b applies b first.
  std::size_t mult(std::size_t a, std::size_t b) const { return mult_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  std::size_t order_of(std::size_t a) const;
  bool is_abelian() const;

  const std::string& vertex_image(std::size_t g, const std::string& v) const;
  const std::string& arrow_image(std::size_t g, const std::string& a) const;

  /// Same abstract group acting on double(Q), with g(a') = g(a)'.
  GroupAction extended_to_double(const Quiver& qbar) const;

  /// Restriction of the element list to a closed subgroup, renumbered.
  GroupAction subgroup_action(const std::vector<std::size_t>& subgroup) const;

  friend bool operator==(const GroupAction& a, const GroupAction& b);

 private:
  Quiver quiver_;
  std::vector<PermPair> elems_;
  std::vector<std::vector<std::size_t>> mult_;
  std::vector<std::size_t> inv_;
  std::vector<std::size_t> gens_;

  static GroupAction from_elements(Quiver q, std::vector<PermPair> elems, std::vector<std::size_t> gens);
  friend GroupAction reoriented_action(const GroupAction&, const std::vector<std::string>&);
};

/// Verifies a single permutation pair is an automorphism of q; returns a
/// diagnostic string on failure, empty on success.
std::string check_automorphism(const Quiver& q, const PermPair& p);

/// Orbits, stabilizers, representatives and the transversal witnesses kappa.
struct OrbitData {
  std::vector<std::vector<std::string>> vertex_orbits;  // each sorted, list sorted by first member
  std::vector<std::vector<std::string>> arrow_orbits;
  std::map<std::string, std::vector<std::size_t>> stabilizers;  // per vertex, sorted element indices
  std::vector<std::string> representatives;                     // lex-min per vertex orbit, sorted
  std::map<std::string, std::size_t> kappa;  // vertex -> first element mapping its representative to it

  const std::vector<std::string>& vertex_orbit_of(const std::string& v) const;
  const std::string& representative_of(const std::string& v) const;
};

OrbitData orbits(const GroupAction& g);

bool is_admissible(const GroupAction& g);
bool lambda_compatible(const GroupAction& g, const LambdaVector& lambda);

bool is_subgroup(const GroupAction& g, const std::vector<std::size_t>& h);

/// Left coset representatives of h in g, identity first, in element order.
std::vector<std::size_t> left_transversal(const GroupAction& g, const std::vector<std::size_t>& h);

/// Class data for the folded-quiver construction: representatives of the
/// diagonal G-classes of O_i x O_j, and for each such pair class the
/// representatives of (g, h) in G_i x G_j under equality of h k_j'^-1 k_i' g.
struct PairClassData {
  struct GHClass {
    std::vector<std::pair<std::size_t, std::size_t>> reps;  // (g, h) element indices, lex-min per class
    std::vector<std::size_t> class_sizes;
  };
  // key: (i, j) with i, j representatives
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<std::string, std::string>>> pair_reps;
  // key: (i', j') appearing in some pair_reps value
  std::map<std::pair<std::string, std::string>, GHClass> gh_classes;
};

PairClassData pair_classes(const GroupAction& g, const OrbitData& o);

/// Decomposition of an abelian group into independent cyclic generators.
struct AbelianBasis {
  std::vector<std::size_t> gens;    // element indices
  std::vector<std::size_t> orders;  // matching orders, largest first
  /// coordinates of every element in the generator basis
  std::map<std::size_t, std::vector<std::size_t>> coords;
};

AbelianBasis abelian_basis(const GroupAction& g);

/// A linear character of an abelian group: one scalar per element index.
struct LinearCharacter {
  std::map<std::size_t, Scalar> values;
  bool is_trivial() const;
};

/// All |G| linear characters; trivial character first, then by exponent
/// tuple. Requires an exp(G)-th root of unity in the field.
std::vector<LinearCharacter> abelian_characters(const GroupAction& g, const FieldSpec& f);

/// Transports the action across reverse_arrows(quiver, ids); the reversed
/// set must be G-stable.
GroupAction reoriented_action(const GroupAction& g, const std::vector<std::string>& reversed_ids);

}  // namespace ppa
