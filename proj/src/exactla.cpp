#include "ppa/exactla.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ppa {

Poly::Poly(const FieldSpec& f, std::vector<Scalar> coeffs) : field_(f), coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Scalar& c) {
  Poly p(c.field());
  p.coeffs_ = {c};
  p.trim();
  return p;
}

Poly Poly::x(const FieldSpec& f) {
  Poly p(f);
  p.coeffs_ = {Scalar::zero(f), Scalar::one(f)};
  return p;
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const Scalar& Poly::coeff(std::size_t i) const {
  static const Scalar kZeroQ = Scalar::zero(FieldSpec::rationals());
  if (i < coeffs_.size()) return coeffs_[i];
  if (field_.is_rational()) return kZeroQ;
  thread_local std::map<std::uint64_t, Scalar> zeros;
  auto [it, ins] = zeros.try_emplace(field_.p, Scalar::zero(field_));
  return it->second;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = coeffs_.back().inverse();
  Poly r = *this;
  for (Scalar& c : r.coeffs_) c = inv * c;
  return r;
}

Poly Poly::derivative() const {
  Poly r(field_);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    r.coeffs_.push_back(Scalar::from_int(static_cast<long long>(i), field_) * coeffs_[i]);
  r.trim();
  return r;
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r(a.field_);
  r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), Scalar::zero(a.field_));
  for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
    if (i < a.coeffs_.size()) r.coeffs_[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) r.coeffs_[i] += b.coeffs_[i];
  }
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly nb = b;
  for (Scalar& c : nb.coeffs_) c = -c;
  return a + nb;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  Poly r(a.field_);
  r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar::zero(a.field_));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  r.trim();
  return r;
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("Poly: division by zero");
  q = Poly(a.field_);
  r = a;
  Scalar lead_inv = b.coeffs_.back().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
    Scalar c = r.coeffs_.back() * lead_inv;
    Poly t(a.field_);
    t.coeffs_.assign(shift + 1, Scalar::zero(a.field_));
    t.coeffs_[shift] = c;
    q = q + t;
    r = r - t * b;
  }
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly q(x.field_), r(x.field_);
    divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

Poly Poly::xgcd(const Poly& a, const Poly& b, Poly& u, Poly& v) {
  Poly old_r = a, r = b;
  Poly old_u = constant(Scalar::one(a.field_)), uu = zero(a.field_);
  Poly old_v = zero(a.field_), vv = constant(Scalar::one(a.field_));
  while (!r.is_zero()) {
    Poly q(a.field_), rem(a.field_);
    divmod(old_r, r, q, rem);
    old_r = r;
    r = rem;
    Poly tu = old_u - q * uu;
    old_u = uu;
    uu = tu;
    Poly tv = old_v - q * vv;
    old_v = vv;
    vv = tv;
  }
  if (old_r.is_zero()) {
    u = zero(a.field_);
    v = zero(a.field_);
    return old_r;
  }
  Scalar s = old_r.coeffs_.back().inverse();
  u = constant(s) * old_u;
  v = constant(s) * old_v;
  return constant(s) * old_r;
}

Poly Poly::mod(const Poly& a, const Poly& m) {
  Poly q(a.field_), r(a.field_);
  divmod(a, m, q, r);
  return r;
}

Poly Poly::mulmod(const Poly& a, const Poly& b, const Poly& m) { return mod(a * b, m); }

Poly Poly::powmod(const Poly& a, const BigInt& e, const Poly& m) {
  if (e.is_negative()) throw std::domain_error("Poly: negative exponent");
  Poly base = mod(a, m);
  Poly result = mod(constant(Scalar::one(a.field_)), m);
  // square-and-multiply over the bits of e
  BigInt exp = e;
  const BigInt two(2);
  while (!exp.is_zero()) {
    BigInt q, r;
    BigInt::divmod(exp, two, q, r);
    if (!r.is_zero()) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp = q;
  }
  return result;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += coeffs_[i].to_string();
    if (i > 0) s += "*x^" + std::to_string(i);
  }
  return s;
}

namespace {

// squarefree split: p = prod w_i^i with the w_i pairwise coprime squarefree
std::vector<std::pair<Poly, std::size_t>> squarefree_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, std::size_t>> parts;
  Poly f = p.monic();
  Poly d = f.derivative();
  if (d.is_zero()) {
    // only happens over F_p for p-th power patterns; treat as opaque
    parts.push_back({f, 1});
    return parts;
  }
  Poly g = Poly::gcd(f, d);
  Poly w = f;
  {
    Poly q(p.field()), r(p.field());
    Poly::divmod(f, g, q, r);
    w = q;
  }
  std::size_t i = 1;
  while (w.degree() > 0) {
    Poly y = Poly::gcd(w, g);
    Poly fac(p.field()), r(p.field());
    Poly::divmod(w, y, fac, r);
    if (fac.degree() > 0) parts.push_back({fac.monic(), i});
    Poly g2(p.field());
    Poly::divmod(g, y, g2, r);
    g = g2;
    w = y;
    ++i;
    if (i > 512) throw std::logic_error("squarefree_decomposition: runaway");
  }
  return parts;
}

std::vector<BigInt> bounded_divisors(const BigInt& n_in) {
  // all positive divisors, via trial division; gives up past the bound
  BigInt n = n_in.abs();
  std::vector<std::pair<BigInt, int>> fac;
  BigInt d(2);
  const BigInt bound(1000000);
  while (d * d <= n && d <= bound) {
    if ((n % d).is_zero()) {
      int e = 0;
      while ((n % d).is_zero()) {
        n = n / d;
        ++e;
      }
      fac.push_back({d, e});
    }
    d = d + BigInt(1);
  }
  if (n > BigInt(1)) fac.push_back({n, 1});  // may be composite past the bound; still a usable divisor
  std::vector<BigInt> divs{BigInt(1)};
  for (const auto& [pr, e] : fac) {
    std::size_t sz = divs.size();
    BigInt pk(1);
    for (int k = 1; k <= e; ++k) {
      pk = pk * pr;
      for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
  return divs;
}

std::vector<Scalar> rational_roots(const Poly& p) {
  // rational root theorem on the integer-cleared polynomial
  const FieldSpec f = p.field();
  std::vector<Scalar> roots;
  Poly q = p.monic();
  // factor out x^k
  std::size_t low = 0;
  while (low < q.coeffs().size() && q.coeffs()[low].is_zero()) ++low;
  if (low > 0) {
    roots.push_back(Scalar::zero(f));
    std::vector<Scalar> c(q.coeffs().begin() + low, q.coeffs().end());
    q = Poly(f, std::move(c));
  }
  if (q.degree() < 1) return roots;
  BigInt lcm(1);
  for (const Scalar& c : q.coeffs()) lcm = lcm / BigInt::gcd(lcm, c.rat().den()) * c.rat().den();
  std::vector<BigInt> ic;
  for (const Scalar& c : q.coeffs()) ic.push_back(c.rat().num() * (lcm / c.rat().den()));
  BigInt a0 = ic.front(), an = ic.back();
  for (const BigInt& pnum : bounded_divisors(a0)) {
    for (const BigInt& pden : bounded_divisors(an)) {
      for (int s = 0; s < 2; ++s) {
        Rational cand(s == 0 ? pnum : -pnum, pden);
        Scalar x = Scalar::from_rational(cand, f);
        if (q.eval(x).is_zero() && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
    }
  }
  return roots;
}

std::vector<Scalar> prime_field_roots(const Poly& p, std::mt19937_64& rng) {
  const FieldSpec f = p.field();
  const std::uint64_t pr = f.p;
  std::vector<Scalar> roots;
  Poly q = p.monic();
  std::size_t low = 0;
  while (low < q.coeffs().size() && q.coeffs()[low].is_zero()) ++low;
  if (low > 0) {
    roots.push_back(Scalar::zero(f));
    std::vector<Scalar> c(q.coeffs().begin() + low, q.coeffs().end());
    q = Poly(f, std::move(c));
  }
  if (q.degree() < 1) return roots;
  // product of distinct linear factors: gcd(q, x^p - x)
  Poly xp = Poly::powmod(Poly::x(f), BigInt(static_cast<long long>(pr)), q);
  Poly lin = Poly::gcd(xp - Poly::x(f), q);
  // extract roots of lin by random splitting
  std::vector<Poly> stack{lin};
  while (!stack.empty()) {
    Poly w = stack.back();
    stack.pop_back();
    if (w.degree() <= 0) continue;
    if (w.degree() == 1) {
      // monic x + c -> root -c
      roots.push_back(-w.coeff(0));
      continue;
    }
    bool split = false;
    for (int attempt = 0; attempt < 64 && !split; ++attempt) {
      std::uint64_t c = rng() % pr;
      Poly shifted = Poly::x(f) + Poly::constant(Scalar::from_int(static_cast<long long>(c), f));
      Poly t = Poly::powmod(shifted, BigInt(static_cast<long long>((pr - 1) / 2)), w) -
               Poly::constant(Scalar::one(f));
      Poly g = Poly::gcd(t, w);
      if (g.degree() > 0 && g.degree() < w.degree()) {
        Poly q2(f), r2(f);
        Poly::divmod(w, g, q2, r2);
        stack.push_back(g);
        stack.push_back(q2.monic());
        split = true;
      }
    }
    if (!split) throw std::runtime_error("prime_field_roots: splitting failed");
  }
  std::sort(roots.begin(), roots.end(), [](const Scalar& a, const Scalar& b) { return a.residue() < b.residue(); });
  return roots;
}

}  // namespace

std::vector<Scalar> field_roots(const Poly& p, std::mt19937_64& rng) {
  if (p.is_zero()) throw std::domain_error("field_roots: zero polynomial");
  return p.field().is_rational() ? rational_roots(p) : prime_field_roots(p, rng);
}

std::optional<std::pair<Poly, Poly>> coprime_split(const Poly& p_in, std::mt19937_64& rng) {
  const FieldSpec f = p_in.field();
  Poly p = p_in.monic();
  if (p.degree() < 2) return std::nullopt;
  auto parts = squarefree_decomposition(p);
  if (parts.size() >= 2) {
    // split off the first piece with its multiplicity
    Poly a = parts[0].first;
    for (std::size_t k = 1; k < parts[0].second; ++k) a = a * parts[0].first;
    Poly q(f), r(f);
    Poly::divmod(p, a, q, r);
    if (a.degree() > 0 && q.degree() > 0) return std::make_pair(a, q);
  }
  // p = w^e with w squarefree
  Poly w = parts[0].first;
  std::size_t e = parts.size() == 1 ? parts[0].second : 1;
  if (w.degree() >= 2) {
    std::vector<Scalar> roots = field_roots(w, rng);
    if (!roots.empty()) {
      Poly lin = Poly::x(f) - Poly::constant(roots[0]);
      Poly a = Poly::constant(Scalar::one(f));
      for (std::size_t k = 0; k < e; ++k) a = a * lin;
      Poly q(f), r(f);
      Poly::divmod(p, a, q, r);
      if (!r.is_zero()) throw std::logic_error("coprime_split: root division failed");
      if (q.degree() > 0) return std::make_pair(a, q);
    } else if (!f.is_rational()) {
      // distinct-degree split of w
      Poly x = Poly::x(f);
      Poly h = x;
      Poly rest = w;
      for (long long d = 1; d <= rest.degree() && rest.degree() > 0; ++d) {
        h = Poly::powmod(h, BigInt(static_cast<long long>(f.p)), rest);
        Poly g = Poly::gcd(h - x, rest);
        if (g.degree() > 0 && g.degree() < rest.degree()) {
          // pack the multiplicity back in
          Poly a = Poly::constant(Scalar::one(f));
          for (std::size_t k = 0; k < e; ++k) a = a * g;
          Poly q(f), r(f);
          Poly::divmod(p, a, q, r);
          if (r.is_zero() && q.degree() > 0) return std::make_pair(a, q);
        }
        if (g.degree() == rest.degree() && g.degree() > d) {
          // equal-degree product of (deg/d) irreducibles of degree d
          BigInt pd = BigInt::pow(BigInt(static_cast<long long>(f.p)), static_cast<std::uint64_t>(d));
          BigInt half = (pd - BigInt(1)) / BigInt(2);
          for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Scalar> cs;
            for (long long k = 0; k < g.degree(); ++k)
              cs.push_back(Scalar::from_int(static_cast<long long>(rng() % f.p), f));
            Poly a(f, cs);
            if (a.degree() < 1) continue;
            Poly t = Poly::powmod(a, half, g) - Poly::constant(Scalar::one(f));
            Poly gg = Poly::gcd(t, g);
            if (gg.degree() > 0 && gg.degree() < g.degree()) {
              Poly fac = Poly::constant(Scalar::one(f));
              for (std::size_t k = 0; k < e; ++k) fac = fac * gg;
              Poly q(f), r(f);
              Poly::divmod(p, fac, q, r);
              if (r.is_zero() && q.degree() > 0) return std::make_pair(fac, q);
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

Matrix StructureAlgebra::multiply(const Matrix& a, const Matrix& b) const { return lmul_operator(a) * b; }

Matrix StructureAlgebra::lmul_operator(const Matrix& a) const {
  Matrix op(n, n, field);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.at(i, 0).is_zero()) continue;
    op = op + a.at(i, 0) * left_mult[i];
  }
  return op;
}

Poly StructureAlgebra::min_poly(const Matrix& a) const {
  // stack powers of a until linearly dependent
  std::vector<Matrix> powers{unit};
  Matrix op = lmul_operator(a);
  Matrix cur = unit;
  for (std::size_t k = 1; k <= n + 1; ++k) {
    cur = op * cur;
    // dependence test: solve [p0 ... p_{k-1}] c = cur
    Matrix stacked(n, powers.size(), field);
    for (std::size_t j = 0; j < powers.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) stacked.at(i, j) = powers[j].at(i, 0);
    auto sol = stacked.solve(cur);
    if (sol) {
      std::vector<Scalar> coeffs;
      for (std::size_t j = 0; j < powers.size(); ++j) coeffs.push_back(-sol->at(j, 0));
      coeffs.push_back(Scalar::one(field));
      return Poly(field, std::move(coeffs));
    }
    powers.push_back(cur);
  }
  throw std::logic_error("StructureAlgebra: min_poly did not terminate");
}

MatrixAlgebra::MatrixAlgebra(const std::vector<Matrix>& span) {
  if (span.empty()) throw std::invalid_argument("MatrixAlgebra: empty span");
  field_ = span[0].field();
  rows_ = span[0].rows();
  for (const Matrix& m : span)
    if (m.rows() != rows_ || m.cols() != rows_ || m.field() != field_)
      throw std::invalid_argument("MatrixAlgebra: span shape/field mismatch");
  // reduce to a basis (row echelon over vectorized elements), identity adjoined
  std::vector<Matrix> candidates = span;
  candidates.push_back(Matrix::identity(rows_, field_));
  Matrix rows(0, rows_ * rows_, field_);
  for (const Matrix& m : candidates) {
    Matrix v = m.vectorize().transpose();
    Matrix test = rows.vstack(v);
    if (test.rank() > rows.rows()) {
      rows = std::move(test);
      basis_.push_back(m);
    }
  }
  stacked_ = Matrix(rows_ * rows_, basis_.size(), field_);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    Matrix v = basis_[j].vectorize();
    for (std::size_t i = 0; i < v.rows(); ++i) stacked_.at(i, j) = v.at(i, 0);
  }
  build_structure();
  compute_radical();
}

MatrixAlgebra MatrixAlgebra::generated_by(const std::vector<Matrix>& gens, std::size_t rows, const FieldSpec& f) {
  std::vector<Matrix> span;
  Matrix stacked(0, rows * rows, f);
  auto try_add = [&](const Matrix& m) -> bool {
    Matrix test = stacked.vstack(m.vectorize().transpose());
    if (test.rank() > stacked.rows()) {
      stacked = std::move(test);
      span.push_back(m);
      return true;
    }
    return false;
  };
  try_add(Matrix::identity(rows, f));
  for (const Matrix& g : gens) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t sz = span.size();
    for (std::size_t i = 0; i < sz; ++i)
      for (std::size_t j = 0; j < sz; ++j)
        if (try_add(span[i] * span[j])) grew = true;
    if (span.size() > rows * rows) throw std::logic_error("generated_by: dimension overflow");
  }
  return MatrixAlgebra(span);
}

Matrix MatrixAlgebra::coordinates(const Matrix& m) const {
  auto sol = stacked_.solve(m.vectorize());
  if (!sol) throw std::invalid_argument("MatrixAlgebra: element outside span (span not closed?)");
  return *sol;
}

Matrix MatrixAlgebra::from_coordinates(const Matrix& coords) const {
  Matrix m(rows_, rows_, field_);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    if (coords.at(j, 0).is_zero()) continue;
    m = m + coords.at(j, 0) * basis_[j];
  }
  return m;
}

void MatrixAlgebra::build_structure() {
  structure_.field = field_;
  structure_.n = basis_.size();
  structure_.unit = coordinates(Matrix::identity(rows_, field_));
  structure_.left_mult.clear();
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Matrix li(basis_.size(), basis_.size(), field_);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      Matrix prod = basis_[i] * basis_[j];
      auto sol = stacked_.solve(prod.vectorize());
      if (!sol) throw std::invalid_argument("MatrixAlgebra: span is not closed under multiplication");
      for (std::size_t k = 0; k < basis_.size(); ++k) li.at(k, j) = sol->at(k, 0);
    }
    structure_.left_mult.push_back(std::move(li));
  }
}

void MatrixAlgebra::compute_radical() {
  const std::size_t nd = basis_.size();
  if (!field_.is_rational() && field_.p <= nd)
    throw std::runtime_error("algebra_radical: field characteristic too small for trace-form radical");
  Matrix gram(nd, nd, field_);
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = 0; j < nd; ++j) gram.at(i, j) = (structure_.left_mult[i] * structure_.left_mult[j]).trace();
  Matrix k = gram.kernel_basis();
  radical_.clear();
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Matrix coords(nd, 1, field_);
    for (std::size_t i = 0; i < nd; ++i) coords.at(i, 0) = k.at(i, c);
    radical_.push_back(from_coordinates(coords));
  }
}

MatrixAlgebra::Quotient MatrixAlgebra::quotient() const {
  const std::size_t nd = basis_.size();
  const std::size_t t = radical_.size();
  const std::size_t s = nd - t;
  // radical coordinates, row-reduced
  Matrix rad_rows(t, nd, field_);
  for (std::size_t i = 0; i < t; ++i) {
    Matrix c = coordinates(radical_[i]);
    for (std::size_t j = 0; j < nd; ++j) rad_rows.at(i, j) = c.at(j, 0);
  }
  auto pivots = rad_rows.rref();
  std::vector<bool> is_piv(nd, false);
  for (std::size_t p : pivots) is_piv[p] = true;
  std::vector<std::size_t> comp;
  for (std::size_t j = 0; j < nd; ++j)
    if (!is_piv[j]) comp.push_back(j);
  // projection along the radical onto the complement coordinates
  Matrix project(s, nd, field_);
  for (std::size_t j = 0; j < nd; ++j) {
    // reduce e_j modulo radical rows
    Matrix v(1, nd, field_);
    v.at(0, j) = Scalar::one(field_);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Scalar f = v.at(0, pivots[r]);
      if (f.is_zero()) continue;
      for (std::size_t c2 = 0; c2 < nd; ++c2) v.at(0, c2) -= f * rad_rows.at(r, c2);
    }
    for (std::size_t k2 = 0; k2 < s; ++k2) project.at(k2, j) = v.at(0, comp[k2]);
  }
  Matrix embed(nd, s, field_);
  for (std::size_t k2 = 0; k2 < s; ++k2) embed.at(comp[k2], k2) = Scalar::one(field_);
  Quotient q;
  q.project = project;
  q.embed = embed;
  q.alg.field = field_;
  q.alg.n = s;
  q.alg.unit = project * structure_.unit;
  for (std::size_t k2 = 0; k2 < s; ++k2) {
    // left multiplication by quotient basis element k2
    Matrix lk = project * structure_.lmul_operator(embed.sub(0, k2, nd, 1)) * embed;
    q.alg.left_mult.push_back(std::move(lk));
  }
  return q;
}

std::optional<Matrix> MatrixAlgebra::idempotent_mod_radical(std::mt19937_64& rng) const {
  Quotient q = quotient();
  const std::size_t s = q.alg.n;
  if (s <= 1) return std::nullopt;
  auto try_element = [&](const Matrix& u_coords) -> std::optional<Matrix> {
    Poly m = q.alg.min_poly(u_coords);
    auto split = coprime_split(m, rng);
    if (!split) return std::nullopt;
    const auto& [f, g] = *split;
    Poly uu(field_), vv(field_);
    Poly one = Poly::xgcd(f, g, uu, vv);
    if (one.degree() != 0) return std::nullopt;  // not coprime after all
    // P = v*g = 1 - u*f: P(u) is idempotent, 1 on the f-part, 0 on the g-part
    Poly P = vv * g;
    // evaluate P at the element inside the quotient algebra
    Matrix acc(s, 1, field_);
    Matrix power = q.alg.unit;
    for (long long d = 0; d <= P.degree(); ++d) {
      if (!P.coeff(static_cast<std::size_t>(d)).is_zero()) acc = acc + P.coeff(static_cast<std::size_t>(d)) * power;
      power = q.alg.multiply(u_coords, power);
    }
    // reject candidates that are trivial in the quotient
    Matrix sq = q.alg.multiply(acc, acc);
    if (!(sq == acc)) return std::nullopt;
    if (acc.is_zero() || acc == q.alg.unit) return std::nullopt;
    return from_coordinates(q.embed * acc);
  };
  // deterministic candidates first, then seeded random combinations
  for (std::size_t i = 0; i < s; ++i) {
    Matrix u(s, 1, field_);
    u.at(i, 0) = Scalar::one(field_);
    if (auto e = try_element(u)) return e;
  }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      Matrix u(s, 1, field_);
      u.at(i, 0) = Scalar::one(field_);
      u.at(j, 0) = Scalar::one(field_);
      if (auto e = try_element(u)) return e;
    }
  for (int attempt = 0; attempt < 48; ++attempt) {
    Matrix u(s, 1, field_);
    for (std::size_t i = 0; i < s; ++i) {
      long long c = field_.is_rational() ? static_cast<long long>(rng() % 19) - 9
                                         : static_cast<long long>(rng() % field_.p);
      u.at(i, 0) = Scalar::from_int(c, field_);
    }
    if (auto e = try_element(u)) return e;
  }
  return std::nullopt;
}

std::vector<Matrix> algebra_radical(const std::vector<Matrix>& span) {
  MatrixAlgebra a(span);
  return a.radical();
}

Matrix lift_idempotent(const std::vector<Matrix>& span, const Matrix& ebar) {
  MatrixAlgebra a(span);
  a.coordinates(ebar);  // membership check
  Matrix e = ebar;
  for (std::size_t it = 0; it <= a.dim() + 2; ++it) {
    Matrix e2 = e * e;
    if (e2 == e) return e;
    Matrix three_e2 = Scalar::from_int(3, e.field()) * e2;
    Matrix two_e3 = Scalar::from_int(2, e.field()) * (e2 * e);
    e = three_e2 - two_e3;
  }
  throw std::runtime_error("lift_idempotent: iteration did not stabilize (input not idempotent mod radical?)");
}

}  // namespace ppa
