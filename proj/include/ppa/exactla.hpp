#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ppa/matrix.hpp"

namespace ppa {

inline Matrix kernel_basis(const Matrix& m) { return m.kernel_basis(); }
inline std::optional<Matrix> solve_affine(const Matrix& a, const Matrix& b) { return a.solve(b); }

/// Dense univariate polynomial over Q or F_p.
class Poly {
 public:
  explicit Poly(const FieldSpec& f) : field_(f) {}
  Poly(const FieldSpec& f, std::vector<Scalar> coeffs);

  static Poly zero(const FieldSpec& f) { return Poly(f); }
  static Poly constant(const Scalar& c);
  static Poly x(const FieldSpec& f);

  const FieldSpec& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  long long degree() const { return static_cast<long long>(coeffs_.size()) - 1; }
  const Scalar& coeff(std::size_t i) const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  Poly monic() const;
  Poly derivative() const;
  Scalar eval(const Scalar& x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  static void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
  static Poly gcd(const Poly& a, const Poly& b);  // monic
  /// g = gcd(a,b) together with u,v solving u*a + v*b = g.
  static Poly xgcd(const Poly& a, const Poly& b, Poly& u, Poly& v);
  static Poly mod(const Poly& a, const Poly& m);
  static Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
  static Poly powmod(const Poly& a, const BigInt& e, const Poly& m);

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::vector<Scalar> coeffs_;  // low to high, trimmed
  void trim();
};

/// Distinct roots of p lying in the coefficient field. Over Q uses the
/// rational root theorem with trial-division factoring of the end
/// coefficients (bounded); over F_p uses gcd with x^p - x and equal-degree
/// splitting.
std::vector<Scalar> field_roots(const Poly& p, std::mt19937_64& rng);

/// Splits p into two coprime nonconstant factors if it can find them
/// (squarefree decomposition, field roots, and over F_p distinct/equal degree
/// splitting). Nullopt when p appears to be a power of one irreducible.
std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& p, std::mt19937_64& rng);

/// An associative unital algebra presented abstractly on k^n, bridged to a
/// concrete span of matrices. Basis vectors are coordinates; left_mult[i] is
/// left multiplication by basis element i.
struct StructureAlgebra {
  FieldSpec field;
  std::size_t n = 0;
  std::vector<Matrix> left_mult;
  Matrix unit;  // n x 1 coordinates

  Matrix multiply(const Matrix& a, const Matrix& b) const;
  Matrix lmul_operator(const Matrix& a) const;
  Poly min_poly(const Matrix& a) const;
};

/// Reduced view of a spanned matrix algebra: basis, membership, structure.
class MatrixAlgebra {
 public:
  /// Reduces a spanning set (identity is appended if absent) and verifies
  /// multiplicative closure; throws on a non-closed span.
  explicit MatrixAlgebra(const std::vector<Matrix>& span);

  /// Closure of generators under multiplication, identity included.
  static MatrixAlgebra generated_by(const std::vector<Matrix>& gens, std::size_t rows, const FieldSpec& f);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const FieldSpec& field() const { return field_; }

  /// Coordinates in the reduced basis; throws if outside the span.
  Matrix coordinates(const Matrix& m) const;
  Matrix from_coordinates(const Matrix& coords) const;

  const StructureAlgebra& structure() const { return structure_; }

  /// Jacobson radical via the trace form of the regular representation;
  /// requires char 0 or p > dim.
  const std::vector<Matrix>& radical() const { return radical_; }
  std::size_t quotient_dim() const { return basis_.size() - radical_.size(); }

  /// Semisimple quotient as a structure algebra, with the projection and
  /// embedding between algebra coordinates and quotient coordinates.
  struct Quotient {
    StructureAlgebra alg;
    Matrix project;  // s x n
    Matrix embed;    // n x s
  };
  Quotient quotient() const;

  /// Element idempotent modulo the radical, nontrivial in the quotient;
  /// nullopt if the quotient is one-dimensional or the search fails.
  std::optional<Matrix> idempotent_mod_radical(std::mt19937_64& rng) const;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::vector<Matrix> basis_;
  Matrix stacked_;  // columns = vectorized basis
  StructureAlgebra structure_;
  std::vector<Matrix> radical_;

  void build_structure();
  void compute_radical();
};

/// Radical basis of the algebra spanned by `span` (identity adjoined).
std::vector<Matrix> algebra_radical(const std::vector<Matrix>& span);

/// Newton lifting e <- 3e^2 - 2e^3 of an idempotent-mod-radical to an exact
/// idempotent; throws if the iteration fails to stabilize.
Matrix lift_idempotent(const std::vector<Matrix>& span, const Matrix& ebar);

}  // namespace ppa
