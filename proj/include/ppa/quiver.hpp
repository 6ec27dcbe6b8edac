#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppa/field.hpp"

namespace ppa {

struct Arrow {
  std::string id, tail, head;
};

/// Finite quiver with string ids. A doubled quiver additionally carries the
/// star pairing original <-> double; double ids end in the reserved marker '.
/// Reversed arrows are tagged with the reserved marker *.
class Quiver {
 public:
  static constexpr char kDoubleMark = '\'';
  static constexpr char kReverseMark = '*';

  Quiver() = default;
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
         std::map<std::string, std::string> star_of = {});

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  bool has_vertex(const std::string& v) const { return vertex_pos_.count(v) > 0; }
  bool has_arrow(const std::string& a) const { return arrow_pos_.count(a) > 0; }
  const Arrow& arrow(const std::string& id) const;
  std::size_t vertex_index(const std::string& v) const;

  bool is_doubled() const { return !star_of_.empty() || doubled_flag_; }
  /// Pairing a -> a' on a doubled quiver.
  const std::map<std::string, std::string>& star_of() const { return star_of_; }
  bool is_original_arrow(const std::string& id) const { return star_of_.count(id) > 0; }
  const std::string& star(const std::string& original_id) const;
  /// Original arrows, in declaration order (all arrows when un-doubled).
  std::vector<Arrow> original_arrows() const;

  bool has_loop_at(const std::string& v) const;
  std::size_t count_arrows(const std::string& from, const std::string& to) const;

  friend bool operator==(const Quiver& a, const Quiver& b);

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, std::string> star_of_;
  std::map<std::string, std::size_t> vertex_pos_, arrow_pos_;
  bool doubled_flag_ = false;

  void validate() const;
  friend Quiver double_quiver(const Quiver&);
};

/// Integer dimension vector over a quiver's vertex set.
struct DimVector {
  std::map<std::string, long long> entries;

  long long at(const std::string& v) const;
  static DimVector zero(const Quiver& q);
  static DimVector unit(const Quiver& q, const std::string& v);
  long long total() const;

  friend bool operator==(const DimVector& a, const DimVector& b) { return a.entries == b.entries; }
  friend DimVector operator+(const DimVector& a, const DimVector& b);
};

/// Field-valued vertex parameter (lambda, eta, xi).
struct LambdaVector {
  std::map<std::string, Scalar> entries;

  const Scalar& at(const std::string& v) const;
  static LambdaVector zero(const Quiver& q, const FieldSpec& f);
  FieldSpec field() const;

  friend bool operator==(const LambdaVector& a, const LambdaVector& b) { return a.entries == b.entries; }
};

/// lambda . alpha = sum_i lambda_i alpha_i.
Scalar dot(const LambdaVector& lambda, const DimVector& alpha);

Quiver double_quiver(const Quiver& q);

/// Recovers the original quiver from its double.
Quiver undouble(const Quiver& qbar);

/// Ringel form <alpha, beta> = sum_i a_i b_i - sum_a a_{t(a)} b_{h(a)}.
long long ringel_form(const Quiver& q, const DimVector& alpha, const DimVector& beta);
/// Symmetrization (alpha, beta) = <alpha,beta> + <beta,alpha>.
long long sym_form(const Quiver& q, const DimVector& alpha, const DimVector& beta);

DimVector reflect_dim(const Quiver& q, const std::string& vertex, const DimVector& alpha);
LambdaVector reflect_lambda(const Quiver& q, const std::string& vertex, const LambdaVector& lambda);

/// Reverses the arrows in `ids`; reversed arrows get the * tag (an existing
/// tag is stripped, so reversing twice restores the original id).
Quiver reverse_arrows(const Quiver& q, const std::vector<std::string>& ids);

/// Checks no arrow joins two vertices of the orbit and all are loop-free.
void require_admissible_orbit(const Quiver& q, const std::vector<std::string>& orbit);

DimVector orbit_reflect(const Quiver& q, const std::vector<std::string>& orbit, const DimVector& alpha);
LambdaVector orbit_reflect(const Quiver& q, const std::vector<std::string>& orbit, const LambdaVector& lambda);

/// Word entries are vertex orbits. Dimension vectors reflect left-to-right;
/// parameters apply the reversed word of d-reflections, so that
/// dot(apply(word, lambda), alpha) == dot(lambda, apply(word, alpha)).
DimVector apply_weyl_word(const Quiver& q, const std::vector<std::vector<std::string>>& word, const DimVector& a);
LambdaVector apply_weyl_word(const Quiver& q, const std::vector<std::vector<std::string>>& word,
                             const LambdaVector& l);

}  // namespace ppa
