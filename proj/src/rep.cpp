#include "ppa/rep.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppa {

Representation Representation::zero_rep(const Quiver& q, const FieldSpec& f, const DimVector& dims) {
  Representation r;
  r.quiver = q;
  r.field = f;
  r.dims = dims;
  for (const Arrow& a : q.arrows())
    r.mats[a.id] = Matrix(static_cast<std::size_t>(dims.at(a.head)), static_cast<std::size_t>(dims.at(a.tail)), f);
  r.validate();
  return r;
}

Representation Representation::zero_extension(const Representation& v) {
  if (v.quiver.is_doubled()) throw std::invalid_argument("zero_extension: input already doubled");
  Quiver d = double_quiver(v.quiver);
  Representation r = zero_rep(d, v.field, v.dims);
  for (const auto& [id, m] : v.mats) r.mats[id] = m;
  r.validate();
  return r;
}

const Matrix& Representation::mat(const std::string& arrow) const {
  auto it = mats.find(arrow);
  if (it == mats.end()) throw std::out_of_range("Representation: no matrix for arrow '" + arrow + "'");
  return it->second;
}

void Representation::validate() const {
  for (const auto& v : quiver.vertices())
    if (dims.at(v) < 0) throw std::invalid_argument("Representation: negative dimension at '" + v + "'");
  if (mats.size() != quiver.arrows().size()) throw std::invalid_argument("Representation: arrow/matrix count mismatch");
  for (const Arrow& a : quiver.arrows()) {
    const Matrix& m = mat(a.id);
    if (m.field() != field) throw std::invalid_argument("Representation: field mismatch at arrow '" + a.id + "'");
    if (m.rows() != static_cast<std::size_t>(dims.at(a.head)) || m.cols() != static_cast<std::size_t>(dims.at(a.tail)))
      throw std::invalid_argument("Representation: matrix shape mismatch at arrow '" + a.id + "'");
  }
}

bool operator==(const Representation& a, const Representation& b) {
  return a.quiver == b.quiver && a.field == b.field && a.dims == b.dims && a.mats == b.mats;
}

std::map<std::string, Matrix> check_relations(const Representation& v, const LambdaVector& lambda) {
  if (!v.quiver.is_doubled()) throw std::invalid_argument("check_relations: representation is not over a double quiver");
  if (lambda.entries.size() != v.quiver.vertices().size())
    throw std::invalid_argument("check_relations: lambda over wrong vertex set");
  std::map<std::string, Matrix> residuals;
  for (const auto& j : v.quiver.vertices()) {
    std::size_t dj = static_cast<std::size_t>(v.dims.at(j));
    Matrix res(dj, dj, v.field);
    for (const Arrow& a : v.quiver.original_arrows()) {
      const std::string& astar = v.quiver.star(a.id);
      if (a.head == j) res = res + v.mat(a.id) * v.mat(astar);
      if (a.tail == j) res = res - v.mat(astar) * v.mat(a.id);
    }
    res = res - lambda.at(j) * Matrix::identity(dj, v.field);
    residuals[j] = std::move(res);
  }
  return residuals;
}

bool relations_hold(const Representation& v, const LambdaVector& lambda) {
  for (const auto& [vert, res] : check_relations(v, lambda))
    if (!res.is_zero()) return false;
  return true;
}

Scalar trace_obstruction(const LambdaVector& lambda, const DimVector& dims) { return dot(lambda, dims); }

Representation twist(const Representation& v, const GroupAction& g, std::size_t elem) {
  if (!(g.quiver() == v.quiver)) throw std::invalid_argument("twist: action lives on a different quiver");
  std::size_t ginv = g.inverse(elem);
  Representation r;
  r.quiver = v.quiver;
  r.field = v.field;
  r.dims = DimVector::zero(v.quiver);
  for (const auto& vert : v.quiver.vertices()) r.dims.entries.at(vert) = v.dims.at(g.vertex_image(ginv, vert));
  for (const Arrow& a : v.quiver.arrows()) r.mats[a.id] = v.mat(g.arrow_image(ginv, a.id));
  r.validate();
  return r;
}

HomBasis hom_space(const Representation& x, const Representation& y) {
  if (!(x.quiver == y.quiver)) throw std::invalid_argument("hom_space: different quivers");
  if (x.field != y.field) throw std::invalid_argument("hom_space: different fields");
  const Quiver& q = x.quiver;
  const FieldSpec& f = x.field;
  // unknowns: f_i (dimY_i x dimX_i), row-major, vertex blocks in quiver order
  std::map<std::string, std::size_t> offset;
  std::size_t total = 0;
  for (const auto& v : q.vertices()) {
    offset[v] = total;
    total += static_cast<std::size_t>(y.dims.at(v)) * static_cast<std::size_t>(x.dims.at(v));
  }
  std::size_t rows = 0;
  for (const Arrow& a : q.arrows())
    rows += static_cast<std::size_t>(y.dims.at(a.head)) * static_cast<std::size_t>(x.dims.at(a.tail));
  Matrix sys(rows, total, f);
  std::size_t row0 = 0;
  for (const Arrow& a : q.arrows()) {
    const Matrix& xa = x.mat(a.id);
    const Matrix& ya = y.mat(a.id);
    std::size_t dyh = static_cast<std::size_t>(y.dims.at(a.head));
    std::size_t dxt = static_cast<std::size_t>(x.dims.at(a.tail));
    std::size_t dxh = static_cast<std::size_t>(x.dims.at(a.head));
    std::size_t dyt = static_cast<std::size_t>(y.dims.at(a.tail));
    // (f_h X_a - Y_a f_t)[r,c] = sum_k f_h[r,k] X_a[k,c] - sum_k Y_a[r,k] f_t[k,c]
    for (std::size_t r = 0; r < dyh; ++r) {
      for (std::size_t c = 0; c < dxt; ++c) {
        std::size_t eq = row0 + r * dxt + c;
        for (std::size_t k = 0; k < dxh; ++k) sys.at(eq, offset[a.head] + r * dxh + k) += xa.at(k, c);
        for (std::size_t k = 0; k < dyt; ++k) sys.at(eq, offset[a.tail] + k * dxt + c) -= ya.at(r, k);
      }
    }
    row0 += dyh * dxt;
  }
  Matrix k = sys.kernel_basis();
  HomBasis hb;
  for (std::size_t col = 0; col < k.cols(); ++col) {
    VertexMap fmap;
    for (const auto& v : q.vertices()) {
      std::size_t dy = static_cast<std::size_t>(y.dims.at(v));
      std::size_t dx = static_cast<std::size_t>(x.dims.at(v));
      Matrix m(dy, dx, f);
      for (std::size_t r = 0; r < dy; ++r)
        for (std::size_t c = 0; c < dx; ++c) m.at(r, c) = k.at(offset[v] + r * dx + c, col);
      fmap[v] = std::move(m);
    }
    hb.basis.push_back(std::move(fmap));
  }
  return hb;
}

VertexMap identity_morphism(const Representation& x) {
  VertexMap f;
  for (const auto& v : x.quiver.vertices())
    f[v] = Matrix::identity(static_cast<std::size_t>(x.dims.at(v)), x.field);
  return f;
}

VertexMap compose(const VertexMap& f, const VertexMap& g) {
  VertexMap r;
  for (const auto& [v, fm] : f) r[v] = fm * g.at(v);
  return r;
}

bool morphism_invertible(const VertexMap& f) {
  for (const auto& [v, m] : f)
    if (!m.is_invertible()) return false;
  return true;
}

VertexMap invert_morphism(const VertexMap& f) {
  VertexMap r;
  for (const auto& [v, m] : f) {
    auto inv = m.inverse();
    if (!inv) throw std::invalid_argument("invert_morphism: component at '" + v + "' is singular");
    r[v] = *inv;
  }
  return r;
}

namespace {

VertexMap combine(const HomBasis& hb, const std::vector<Scalar>& coeffs, const Representation& y,
                  const Representation& x) {
  VertexMap f;
  for (const auto& v : x.quiver.vertices()) {
    Matrix m(static_cast<std::size_t>(y.dims.at(v)), static_cast<std::size_t>(x.dims.at(v)), x.field);
    for (std::size_t l = 0; l < hb.basis.size(); ++l) {
      if (coeffs[l].is_zero()) continue;
      m = m + coeffs[l] * hb.basis[l].at(v);
    }
    f[v] = std::move(m);
  }
  return f;
}

}  // namespace

IsoResult are_isomorphic(const Representation& x, const Representation& y, unsigned trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("are_isomorphic: trials < 1");
  IsoResult res;
  if (!(x.dims == y.dims)) return res;
  if (x.total_dim() == 0) {
    res.isomorphic = true;
    res.witness = identity_morphism(x);
    return res;
  }
  HomBasis hb = hom_space(x, y);
  const std::size_t m = hb.dim();
  if (m == 0) return res;
  auto accept = [&](const VertexMap& f) {
    res.isomorphic = true;
    res.witness = f;
  };
  if (m == 1) {
    if (morphism_invertible(hb.basis[0])) accept(hb.basis[0]);
    return res;
  }
  const FieldSpec& fld = x.field;
  std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
  for (unsigned t = 0; t < trials; ++t) {
    std::vector<Scalar> coeffs;
    for (std::size_t l = 0; l < m; ++l) {
      long long c = fld.is_rational() ? static_cast<long long>(rng() % 1995) - 997
                                      : static_cast<long long>(rng() % fld.p);
      coeffs.push_back(Scalar::from_int(c, fld));
    }
    VertexMap f = combine(hb, coeffs, y, x);
    if (morphism_invertible(f)) {
      accept(f);
      return res;
    }
  }
  // exhaustive sweep over a grid large enough for the determinant degree bound
  const std::size_t degree_bound = static_cast<std::size_t>(x.total_dim());
  double grid_size = 1.0;
  bool grid_feasible = true;
  for (std::size_t l = 0; l < m; ++l) {
    grid_size *= static_cast<double>(degree_bound + 1);
    if (grid_size > 20000.0) {
      grid_feasible = false;
      break;
    }
  }
  if (grid_feasible) {
    std::vector<std::size_t> idx(m, 0);
    const std::size_t vals = degree_bound + 1;
    while (true) {
      std::vector<Scalar> coeffs;
      for (std::size_t l = 0; l < m; ++l) coeffs.push_back(Scalar::from_int(static_cast<long long>(idx[l]), fld));
      VertexMap f = combine(hb, coeffs, y, x);
      if (morphism_invertible(f)) {
        accept(f);
        return res;
      }
      std::size_t l = 0;
      while (l < m && ++idx[l] == vals) {
        idx[l] = 0;
        ++l;
      }
      if (l == m) break;
    }
    return res;  // certain: a nonzero determinant polynomial cannot vanish on the whole grid
  }
  res.certain = false;
  return res;
}

namespace {

Matrix embed_block_diag(const VertexMap& f, const Representation& x) {
  std::vector<Matrix> blocks;
  for (const auto& v : x.quiver.vertices()) blocks.push_back(f.at(v));
  return Matrix::block_diag(blocks, x.field);
}

VertexMap extract_blocks(const Matrix& m, const Representation& x) {
  VertexMap f;
  std::size_t off = 0;
  for (const auto& v : x.quiver.vertices()) {
    std::size_t d = static_cast<std::size_t>(x.dims.at(v));
    f[v] = m.sub(off, off, d, d);
    off += d;
  }
  return f;
}

}  // namespace

EndoAnalysis analyze_endomorphisms(const Representation& x, std::uint64_t seed) {
  if (x.total_dim() == 0) throw std::invalid_argument("analyze_endomorphisms: zero representation");
  HomBasis endo = hom_space(x, x);
  std::vector<Matrix> span;
  for (const VertexMap& f : endo.basis) span.push_back(embed_block_diag(f, x));
  MatrixAlgebra alg(span);
  EndoAnalysis ea;
  ea.end_dim = alg.dim();
  ea.rad_dim = alg.radical().size();
  ea.quotient_dim = alg.quotient_dim();
  if (ea.quotient_dim == 1) {
    ea.verdict = EndoAnalysis::Verdict::SplitIndecomposable;
  } else {
    std::mt19937_64 rng(seed ^ 0x1de3b07e47ULL);
    ea.verdict = alg.idempotent_mod_radical(rng) ? EndoAnalysis::Verdict::Decomposable
                                                 : EndoAnalysis::Verdict::NonSplitIndecomposable;
  }
  return ea;
}

bool is_indecomposable(const Representation& x) {
  return analyze_endomorphisms(x).quotient_dim == 1;
}

namespace {

Representation restrict_to_image(const Representation& x, const VertexMap& idem) {
  Representation r;
  r.quiver = x.quiver;
  r.field = x.field;
  r.dims = DimVector::zero(x.quiver);
  std::map<std::string, Matrix> basis;
  for (const auto& v : x.quiver.vertices()) {
    Matrix b = idem.at(v).column_space();
    r.dims.entries.at(v) = static_cast<long long>(b.cols());
    basis[v] = std::move(b);
  }
  for (const Arrow& a : x.quiver.arrows()) {
    // X_a maps im(e_t) into im(e_h); rewrite in the chosen bases
    Matrix rhs = x.mat(a.id) * basis.at(a.tail);
    auto sol = basis.at(a.head).solve(rhs);
    if (!sol) throw std::logic_error("restrict_to_image: idempotent image not arrow-stable");
    r.mats[a.id] = *sol;
  }
  r.validate();
  return r;
}

std::vector<long long> dims_key(const Representation& r) {
  std::vector<long long> k;
  for (const auto& v : r.quiver.vertices()) k.push_back(r.dims.at(v));
  return k;
}

void decompose_rec(const Representation& x, std::uint64_t seed, std::vector<Representation>& out) {
  if (x.total_dim() == 0) return;
  HomBasis endo = hom_space(x, x);
  std::vector<Matrix> span;
  for (const VertexMap& f : endo.basis) span.push_back(embed_block_diag(f, x));
  MatrixAlgebra alg(span);
  std::mt19937_64 rng(seed ^ 0x5b117ULL);
  auto ebar = alg.idempotent_mod_radical(rng);
  if (!ebar) {
    out.push_back(x);
    return;
  }
  Matrix e = lift_idempotent(span, *ebar);
  VertexMap em = extract_blocks(e, x);
  VertexMap cm;
  for (const auto& [v, m] : em) cm[v] = Matrix::identity(m.rows(), x.field) - m;
  decompose_rec(restrict_to_image(x, em), seed, out);
  decompose_rec(restrict_to_image(x, cm), seed, out);
}

}  // namespace

std::size_t content_hash(const Representation& x) {
  std::size_t h = 14695981039346656037ull;
  for (const auto& [id, m] : x.mats) {
    for (char c : id) h = h * 1099511628211ull ^ static_cast<unsigned char>(c);
    h = h * 1099511628211ull ^ m.hash();
  }
  return h;
}

std::vector<Representation> decompose(const Representation& x, std::uint64_t seed) {
  std::vector<Representation> out;
  decompose_rec(x, seed, out);
  std::stable_sort(out.begin(), out.end(), [](const Representation& a, const Representation& b) {
    auto ka = dims_key(a), kb = dims_key(b);
    if (ka != kb) return ka < kb;
    return content_hash(a) < content_hash(b);
  });
  return out;
}

bool is_simple(const Representation& x, std::uint64_t seed) {
  if (x.total_dim() == 0) return false;
  if (x.total_dim() == 1) return true;
  // algebra generated by vertex projections and arrow actions on the total space
  const std::size_t n = static_cast<std::size_t>(x.total_dim());
  std::map<std::string, std::size_t> off;
  std::size_t acc = 0;
  for (const auto& v : x.quiver.vertices()) {
    off[v] = acc;
    acc += static_cast<std::size_t>(x.dims.at(v));
  }
  std::vector<Matrix> gens;
  for (const auto& v : x.quiver.vertices()) {
    Matrix p(n, n, x.field);
    for (std::size_t i = 0; i < static_cast<std::size_t>(x.dims.at(v)); ++i)
      p.at(off[v] + i, off[v] + i) = Scalar::one(x.field);
    gens.push_back(std::move(p));
  }
  for (const Arrow& a : x.quiver.arrows()) {
    const Matrix& m = x.mat(a.id);
    Matrix g(n, n, x.field);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) g.at(off[a.head] + r, off[a.tail] + c) = m.at(r, c);
    gens.push_back(std::move(g));
  }
  MatrixAlgebra alg = MatrixAlgebra::generated_by(gens, n, x.field);
  // the action is faithful, so the module is semisimple iff the radical vanishes
  if (!alg.radical().empty()) return false;
  return decompose(x, seed).size() == 1;
}

Representation direct_sum(const std::vector<Representation>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: empty list");
  Representation r;
  r.quiver = parts[0].quiver;
  r.field = parts[0].field;
  r.dims = DimVector::zero(r.quiver);
  for (const Representation& p : parts) {
    if (!(p.quiver == r.quiver) || p.field != r.field) throw std::invalid_argument("direct_sum: mismatched parts");
    for (const auto& v : r.quiver.vertices()) r.dims.entries.at(v) += p.dims.at(v);
  }
  for (const Arrow& a : r.quiver.arrows()) {
    std::vector<Matrix> blocks;
    for (const Representation& p : parts) blocks.push_back(p.mat(a.id));
    r.mats[a.id] = Matrix::block_diag(blocks, r.field);
  }
  r.validate();
  return r;
}

HxResult hx_subgroup(const Representation& x, const GroupAction& g, unsigned trials, std::uint64_t seed) {
  EndoAnalysis ea = analyze_endomorphisms(x, seed);
  if (ea.verdict == EndoAnalysis::Verdict::Decomposable)
    throw std::invalid_argument("hx_subgroup: representation is decomposable");
  if (ea.verdict == EndoAnalysis::Verdict::NonSplitIndecomposable)
    throw std::invalid_argument(
        "hx_subgroup: indecomposable with non-split endomorphism ring; enlarge the field");
  HxResult r;
  for (std::size_t e = 0; e < g.size(); ++e) {
    IsoResult iso = are_isomorphic(twist(x, g, e), x, trials, seed + e);
    if (iso.isomorphic) {
      r.subgroup.push_back(e);
      r.witnesses[e] = *iso.witness;
    }
  }
  if (!is_subgroup(g, r.subgroup)) throw std::logic_error("hx_subgroup: iso test did not produce a subgroup");
  r.transversal = left_transversal(g, r.subgroup);
  return r;
}

Representation invariant_hull(const Representation& x, const GroupAction& g, unsigned trials, std::uint64_t seed) {
  HxResult hx = hx_subgroup(x, g, trials, seed);
  std::vector<Representation> twists;
  for (std::size_t t : hx.transversal) twists.push_back(twist(x, g, t));
  Representation hull = twists.size() == 1 ? twists[0] : direct_sum(twists);
  for (std::size_t gen : g.generators()) {
    IsoResult iso = are_isomorphic(twist(hull, g, gen), hull, trials, seed + 101 + gen);
    if (!iso.isomorphic)
      throw std::runtime_error("invariant_hull: verification failed (isomorphism test false negative?)");
  }
  return hull;
}

}  // namespace ppa
