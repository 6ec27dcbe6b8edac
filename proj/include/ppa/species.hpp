#pragma once

#include "ppa/skew.hpp"

namespace ppa {

/// Basis element of the doubled arrow space between two vertices: a primal
/// arrow or the dual of an opposite arrow.
struct SpeciesArrow {
  std::string arrow_id;
  bool starred = false;
  friend bool operator==(const SpeciesArrow& a, const SpeciesArrow& b) {
    return a.arrow_id == b.arrow_id && a.starred == b.starred;
  }
  friend bool operator<(const SpeciesArrow& a, const SpeciesArrow& b) {
    return a.arrow_id != b.arrow_id ? a.arrow_id < b.arrow_id : a.starred < b.starred;
  }
};

/// Token of the folded bimodule in normal form: a moved arrow-space basis
/// element together with the group part. The label records which pair class
/// and (g, h) representative produced it.
struct Token {
  SpeciesArrow x;
  std::size_t pi = 0;
  std::pair<std::string, std::string> pair_class;
  std::pair<std::size_t, std::size_t> gh;
};

/// The bimodule between two orbit representatives with its token basis and
/// both stabilizer actions as token permutations.
struct TildeBimodule {
  std::string i, j;
  std::vector<Token> tokens;
  std::vector<std::size_t> a_part;           // indices of primal tokens
  std::vector<std::size_t> right_elems;      // G_i as parent element indices
  std::vector<std::size_t> left_elems;       // G_j
  std::vector<std::vector<std::size_t>> right_act;  // per G_i element, token permutation
  std::vector<std::vector<std::size_t>> left_act;   // per G_j element

  std::size_t token_index(const SpeciesArrow& x, std::size_t pi) const;
  std::size_t dim() const { return tokens.size(); }
};

/// Group species skeleton: representatives, stabilizers, class data, and the
/// token bimodules between all representative pairs.
struct GroupSpecies {
  Quiver quiver;  // un-doubled
  OrbitData orbit_data;
  PairClassData class_data;
  std::map<std::pair<std::string, std::string>, TildeBimodule> bimodules;
};

GroupSpecies build_species(const Quiver& q, const GroupAction& g);

TildeBimodule tilde_bimodule(const Quiver& q, const GroupAction& g, const OrbitData& od, const PairClassData& pc,
                             const std::string& i, const std::string& j);

/// Dual token: (x, pi) -> (pi^-1(x) with the star flipped, pi^-1), landing in
/// the opposite bimodule.
Token dual_token(const GroupAction& g, const Token& t);

/// One irreducible representation of a stabilizer subgroup.
struct Irreducible {
  std::string name;
  std::size_t dim = 1;
  std::map<std::size_t, Scalar> character;       // sub-action element index -> value
  std::optional<LinearCharacter> linear;         // scalar model when dim == 1
};

struct IrrTable {
  std::vector<std::size_t> subgroup;  // parent element indices
  GroupAction sub;
  std::vector<Irreducible> irreducibles;
  std::map<std::size_t, std::size_t> sub_index;  // parent index -> sub index
};

/// Character data of a stabilizer: linear characters for abelian groups,
/// otherwise splitting the center of the group algebra (degrees and
/// character values; no matrix models beyond dimension one).
IrrTable irr_table(const GroupAction& parent, const std::vector<std::size_t>& subgroup, const FieldSpec& f,
                   std::uint64_t seed = 0);

/// dim Hom_{G_j}(part 'A' of the bimodule tensored with rho, sigma), by the
/// explicit linear solve. Requires scalar models (dimension-one rho, sigma).
std::size_t multiplicity_solver(const TildeBimodule& tb, const IrrTable& ti, std::size_t rho_idx, const IrrTable& tj,
                                std::size_t sigma_idx);

/// The same multiplicity by the character fixed-point formula.
std::size_t multiplicity_character(const TildeBimodule& tb, const IrrTable& ti, std::size_t rho_idx,
                                   const IrrTable& tj, std::size_t sigma_idx);

struct QGVertex {
  std::string id;  // "<rep>:<irr>"
  std::string orbit_rep;
  std::string irr_name;
  std::size_t irr_dim = 1;
};

struct QGData {
  GroupSpecies species;
  std::map<std::string, IrrTable> tables;  // per orbit representative
  std::vector<QGVertex> vertices;
  std::map<std::pair<std::string, std::string>, std::size_t> raw_mult;  // ordered pairs, A-part
  Quiver qg;  // emitted quiver, each unordered pair oriented from the lex-smaller vertex
  std::string classification;
};

/// Folded quiver with vertices (representative, irreducible) and arrow
/// multiplicities dim Hom_{G_j}(A-part x rho, sigma); solver and character
/// formulas are cross-checked wherever both apply.
QGData build_qg(const Quiver& q, const GroupAction& g, const FieldSpec& f, std::uint64_t seed = 0);

struct EtaXi {
  LambdaVector eta;                     // over the folded quiver's vertices
  std::map<std::string, Scalar> xi;     // per orbit representative
};

EtaXi eta_xi(const LambdaVector& lambda, const QGData& qg, const GroupAction& g);

/// Moves a validated skew module across the Morita equivalence: isotypic
/// components per stabilizer become the vertex spaces over the folded double
/// quiver, and the token action is resolved against dual intertwiner bases.
/// The result satisfies the eta-relations (verified). Requires abelian
/// stabilizers.
Representation transport_module(const SkewStructure& s, const QGData& qg, const GroupAction& g_undoubled,
                                const LambdaVector& lambda);

/// Simply-laced Dynkin type of the underlying graph, or "non-Dynkin".
std::string classify_dynkin(const Quiver& q);

}  // namespace ppa
