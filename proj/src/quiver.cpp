#include "ppa/quiver.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppa {

namespace {

bool has_reserved_mark(const std::string& id) {
  return id.find(Quiver::kDoubleMark) != std::string::npos || id.find(Quiver::kReverseMark) != std::string::npos;
}

}  // namespace

Quiver::Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows, std::map<std::string, std::string> star_of)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)), star_of_(std::move(star_of)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) vertex_pos_[vertices_[i]] = i;
  for (std::size_t i = 0; i < arrows_.size(); ++i) arrow_pos_[arrows_[i].id] = i;
  validate();
}

void Quiver::validate() const {
  if (vertex_pos_.size() != vertices_.size()) throw std::invalid_argument("Quiver: duplicate vertex id");
  if (arrow_pos_.size() != arrows_.size()) throw std::invalid_argument("Quiver: duplicate arrow id");
  for (const auto& v : vertices_)
    if (has_reserved_mark(v)) throw std::invalid_argument("Quiver: reserved marker in vertex id '" + v + "'");
  for (const Arrow& a : arrows_) {
    if (!has_vertex(a.tail) || !has_vertex(a.head))
      throw std::invalid_argument("Quiver: arrow '" + a.id + "' references unknown vertex");
  }
  for (const auto& [orig, dbl] : star_of_) {
    if (!has_arrow(orig) || !has_arrow(dbl)) throw std::invalid_argument("Quiver: star pairing references unknown arrow");
    if (orig == dbl) throw std::invalid_argument("Quiver: arrow paired with itself");
    const Arrow& a = arrow(orig);
    const Arrow& d = arrow(dbl);
    if (d.tail != a.head || d.head != a.tail)
      throw std::invalid_argument("Quiver: star pair '" + orig + "'/'" + dbl + "' endpoints do not reverse");
  }
  if (!star_of_.empty()) {
    if (star_of_.size() * 2 != arrows_.size()) throw std::invalid_argument("Quiver: star pairing is not a perfect matching");
    std::map<std::string, int> seen;
    for (const auto& [orig, dbl] : star_of_) {
      seen[orig]++;
      seen[dbl]++;
    }
    for (const auto& [id, n] : seen)
      if (n != 1) throw std::invalid_argument("Quiver: arrow '" + id + "' appears twice in star pairing");
  }
}

const Arrow& Quiver::arrow(const std::string& id) const {
  auto it = arrow_pos_.find(id);
  if (it == arrow_pos_.end()) throw std::out_of_range("Quiver: unknown arrow '" + id + "'");
  return arrows_[it->second];
}

std::size_t Quiver::vertex_index(const std::string& v) const {
  auto it = vertex_pos_.find(v);
  if (it == vertex_pos_.end()) throw std::out_of_range("Quiver: unknown vertex '" + v + "'");
  return it->second;
}

const std::string& Quiver::star(const std::string& original_id) const {
  auto it = star_of_.find(original_id);
  if (it == star_of_.end()) throw std::out_of_range("Quiver: '" + original_id + "' is not an original arrow");
  return it->second;
}

std::vector<Arrow> Quiver::original_arrows() const {
  std::vector<Arrow> out;
  for (const Arrow& a : arrows_)
    if (star_of_.empty() || star_of_.count(a.id)) out.push_back(a);
  return out;
}

bool Quiver::has_loop_at(const std::string& v) const {
  for (const Arrow& a : arrows_)
    if (a.tail == v && a.head == v) return true;
  return false;
}

std::size_t Quiver::count_arrows(const std::string& from, const std::string& to) const {
  std::size_t n = 0;
  for (const Arrow& a : arrows_)
    if (a.tail == from && a.head == to) ++n;
  return n;
}

bool operator==(const Quiver& a, const Quiver& b) {
  if (a.vertices_ != b.vertices_ || a.star_of_ != b.star_of_) return false;
  if (a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const Arrow &x = a.arrows_[i], &y = b.arrows_[i];
    if (x.id != y.id || x.tail != y.tail || x.head != y.head) return false;
  }
  return true;
}

long long DimVector::at(const std::string& v) const {
  auto it = entries.find(v);
  if (it == entries.end()) throw std::out_of_range("DimVector: unknown vertex '" + v + "'");
  return it->second;
}

DimVector DimVector::zero(const Quiver& q) {
  DimVector d;
  for (const auto& v : q.vertices()) d.entries[v] = 0;
  return d;
}

DimVector DimVector::unit(const Quiver& q, const std::string& v) {
  DimVector d = zero(q);
  d.entries.at(v) = 1;
  return d;
}

long long DimVector::total() const {
  long long t = 0;
  for (const auto& [v, n] : entries) t += n;
  return t;
}

DimVector operator+(const DimVector& a, const DimVector& b) {
  if (a.entries.size() != b.entries.size()) throw std::invalid_argument("DimVector: vertex-set mismatch");
  DimVector r = a;
  for (const auto& [v, n] : b.entries) r.entries.at(v) += n;
  return r;
}

const Scalar& LambdaVector::at(const std::string& v) const {
  auto it = entries.find(v);
  if (it == entries.end()) throw std::out_of_range("LambdaVector: unknown vertex '" + v + "'");
  return it->second;
}

LambdaVector LambdaVector::zero(const Quiver& q, const FieldSpec& f) {
  LambdaVector l;
  for (const auto& v : q.vertices()) l.entries.emplace(v, Scalar::zero(f));
  return l;
}

FieldSpec LambdaVector::field() const {
  if (entries.empty()) return FieldSpec::rationals();
  return entries.begin()->second.field();
}

Scalar dot(const LambdaVector& lambda, const DimVector& alpha) {
  if (lambda.entries.size() != alpha.entries.size()) throw std::invalid_argument("dot: vertex-set mismatch");
  Scalar s = Scalar::zero(lambda.field());
  for (const auto& [v, lv] : lambda.entries) s += Scalar::from_int(alpha.at(v), lv.field()) * lv;
  return s;
}

Quiver double_quiver(const Quiver& q) {
  if (q.is_doubled()) throw std::invalid_argument("double_quiver: quiver already doubled");
  std::vector<Arrow> arrows = q.arrows();
  std::map<std::string, std::string> star;
  for (const Arrow& a : q.arrows()) {
    std::string dbl = a.id + std::string(1, Quiver::kDoubleMark);
    arrows.push_back(Arrow{dbl, a.head, a.tail});
    star[a.id] = dbl;
  }
  Quiver d;
  d.vertices_ = q.vertices();
  d.arrows_ = std::move(arrows);
  d.star_of_ = std::move(star);
  for (std::size_t i = 0; i < d.vertices_.size(); ++i) d.vertex_pos_[d.vertices_[i]] = i;
  for (std::size_t i = 0; i < d.arrows_.size(); ++i) d.arrow_pos_[d.arrows_[i].id] = i;
  d.doubled_flag_ = true;
  d.validate();
  return d;
}

Quiver undouble(const Quiver& qbar) {
  if (!qbar.is_doubled()) throw std::invalid_argument("undouble: quiver is not doubled");
  return Quiver(qbar.vertices(), qbar.original_arrows());
}

namespace {

void check_vertex_sets(const Quiver& q, const DimVector& a) {
  if (a.entries.size() != q.vertices().size()) throw std::invalid_argument("vertex-set mismatch");
  for (const auto& v : q.vertices())
    if (!a.entries.count(v)) throw std::invalid_argument("vertex-set mismatch at '" + v + "'");
}

void check_vertex_sets(const Quiver& q, const LambdaVector& a) {
  if (a.entries.size() != q.vertices().size()) throw std::invalid_argument("vertex-set mismatch");
  for (const auto& v : q.vertices())
    if (!a.entries.count(v)) throw std::invalid_argument("vertex-set mismatch at '" + v + "'");
}

void require_loop_free(const Quiver& q, const std::string& v) {
  q.vertex_index(v);
  if (q.has_loop_at(v)) throw std::invalid_argument("reflection undefined at vertex '" + v + "' (loop present)");
}

}  // namespace

long long ringel_form(const Quiver& q, const DimVector& alpha, const DimVector& beta) {
  if (q.is_doubled()) throw std::invalid_argument("ringel_form: expects an un-doubled quiver");
  check_vertex_sets(q, alpha);
  check_vertex_sets(q, beta);
  long long s = 0;
  for (const auto& v : q.vertices()) s += alpha.at(v) * beta.at(v);
  for (const Arrow& a : q.arrows()) s -= alpha.at(a.tail) * beta.at(a.head);
  return s;
}

long long sym_form(const Quiver& q, const DimVector& alpha, const DimVector& beta) {
  return ringel_form(q, alpha, beta) + ringel_form(q, beta, alpha);
}

DimVector reflect_dim(const Quiver& q, const std::string& vertex, const DimVector& alpha) {
  require_loop_free(q, vertex);
  check_vertex_sets(q, alpha);
  DimVector eps = DimVector::unit(q, vertex);
  long long c = sym_form(q, alpha, eps);
  DimVector r = alpha;
  r.entries.at(vertex) -= c;
  return r;
}

LambdaVector reflect_lambda(const Quiver& q, const std::string& vertex, const LambdaVector& lambda) {
  require_loop_free(q, vertex);
  check_vertex_sets(q, lambda);
  const FieldSpec f = lambda.field();
  LambdaVector r = lambda;
  const Scalar& li = lambda.at(vertex);
  DimVector ei = DimVector::unit(q, vertex);
  for (const auto& v : q.vertices()) {
    long long c = sym_form(q, ei, DimVector::unit(q, v));
    r.entries.at(v) = lambda.at(v) - Scalar::from_int(c, f) * li;
  }
  return r;
}

Quiver reverse_arrows(const Quiver& q, const std::vector<std::string>& ids) {
  if (q.is_doubled()) throw std::invalid_argument("reverse_arrows: expects an un-doubled quiver");
  std::map<std::string, bool> flip;
  for (const auto& id : ids) {
    q.arrow(id);
    flip[id] = true;
  }
  std::vector<Arrow> arrows;
  for (const Arrow& a : q.arrows()) {
    if (!flip.count(a.id)) {
      arrows.push_back(a);
      continue;
    }
    std::string nid = a.id;
    if (!nid.empty() && nid.back() == Quiver::kReverseMark)
      nid.pop_back();
    else
      nid += Quiver::kReverseMark;
    arrows.push_back(Arrow{nid, a.head, a.tail});
  }
  return Quiver(q.vertices(), std::move(arrows));
}

void require_admissible_orbit(const Quiver& q, const std::vector<std::string>& orbit) {
  for (const auto& v : orbit) require_loop_free(q, v);
  std::map<std::string, bool> in_orbit;
  for (const auto& v : orbit) in_orbit[v] = true;
  for (const Arrow& a : q.arrows())
    if (in_orbit.count(a.tail) && in_orbit.count(a.head))
      throw std::invalid_argument("orbit is not admissible: arrow '" + a.id + "' joins two orbit vertices");
}

DimVector orbit_reflect(const Quiver& q, const std::vector<std::string>& orbit, const DimVector& alpha) {
  require_admissible_orbit(q, orbit);
  DimVector r = alpha;
  for (const auto& v : orbit) r = reflect_dim(q, v, r);
  return r;
}

LambdaVector orbit_reflect(const Quiver& q, const std::vector<std::string>& orbit, const LambdaVector& lambda) {
  require_admissible_orbit(q, orbit);
  LambdaVector r = lambda;
  for (const auto& v : orbit) r = reflect_lambda(q, v, r);
  return r;
}

DimVector apply_weyl_word(const Quiver& q, const std::vector<std::vector<std::string>>& word, const DimVector& a) {
  DimVector r = a;
  for (const auto& orbit : word) r = orbit_reflect(q, orbit, r);
  return r;
}

LambdaVector apply_weyl_word(const Quiver& q, const std::vector<std::vector<std::string>>& word,
                             const LambdaVector& l) {
  LambdaVector r = l;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = orbit_reflect(q, *it, r);
  return r;
}

}  // namespace ppa
