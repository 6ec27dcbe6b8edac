#include "ppa/matrix.hpp"

#include <stdexcept>

namespace ppa {

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldSpec& f)
    : rows_(rows), cols_(cols), field_(f), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(std::size_t n, const FieldSpec& f) {
  Matrix m(n, n, f);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

void Matrix::check_same_field(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_) throw std::invalid_argument("Matrix: mixed fields");
}

bool Matrix::is_zero() const {
  for (const Scalar& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i == j && !at(i, j).is_one()) return false;
      if (i != j && !at(i, j).is_zero()) return false;
    }
  return true;
}

Matrix Matrix::operator-() const {
  Matrix r = *this;
  for (Scalar& s : r.data_) s = -s;
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix::check_same_field(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch in +");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix::check_same_field(a, b);
  if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in *");
  Matrix r(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix r = m;
  for (Scalar& x : r.data_) x = s * x;
  return r;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Scalar Matrix::trace() const {
  if (!is_square()) throw std::invalid_argument("Matrix: trace of non-square");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Matrix Matrix::hstack(const Matrix& right) const {
  check_same_field(*this, right);
  if (rows_ != right.rows_) throw std::invalid_argument("Matrix: hstack row mismatch");
  Matrix r(rows_, cols_ + right.cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) r.at(i, cols_ + j) = right.at(i, j);
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& below) const {
  check_same_field(*this, below);
  if (cols_ != below.cols_) throw std::invalid_argument("Matrix: vstack col mismatch");
  Matrix r(rows_ + below.rows_, cols_, field_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < below.rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(rows_ + i, j) = below.at(i, j);
  return r;
}

Matrix Matrix::sub(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_) throw std::out_of_range("Matrix: sub out of range");
  Matrix r(nrows, ncols, field_);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks, const FieldSpec& f) {
  std::size_t rows = 0, cols = 0;
  for (const Matrix& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix r(rows, cols, f);
  std::size_t r0 = 0, c0 = 0;
  for (const Matrix& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(r0 + i, c0 + j) = b.at(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return r;
}

std::vector<std::size_t> Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && at(sel, col).is_zero()) ++sel;
    if (sel == rows_) continue;
    if (sel != row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
    Scalar inv = at(row, col).inverse();
    for (std::size_t j = col; j < cols_; ++j) at(row, j) = inv * at(row, j);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || at(i, col).is_zero()) continue;
      Scalar f = at(i, col);
      for (std::size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return m.rref().size();
}

std::optional<Matrix> Matrix::inverse() const {
  if (!is_square()) return std::nullopt;
  Matrix aug = hstack(identity(rows_, field_));
  auto piv = aug.rref();
  if (piv.size() != rows_) return std::nullopt;
  return aug.sub(0, cols_, rows_, cols_);
}

Matrix Matrix::kernel_basis() const {
  Matrix m = *this;
  auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(cols_, free_cols.size(), field_);
  for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
    std::size_t fc = free_cols[fi];
    k.at(fc, fi) = Scalar::one(field_);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) k.at(pivots[pi], fi) = -m.at(pi, fc);
    // scale so the first nonzero entry is 1
    for (std::size_t r = 0; r < cols_; ++r) {
      if (!k.at(r, fi).is_zero()) {
        Scalar inv = k.at(r, fi).inverse();
        for (std::size_t rr = r; rr < cols_; ++rr) k.at(rr, fi) = inv * k.at(rr, fi);
        break;
      }
    }
  }
  return k;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  check_same_field(*this, b);
  if (b.rows_ != rows_) throw std::invalid_argument("Matrix: solve shape mismatch");
  Matrix aug = hstack(b);
  auto pivots = aug.rref();
  // inconsistent if a pivot falls in the b-part
  for (std::size_t p : pivots)
    if (p >= cols_) return std::nullopt;
  Matrix x(cols_, b.cols_, field_);
  for (std::size_t pi = 0; pi < pivots.size(); ++pi)
    for (std::size_t j = 0; j < b.cols_; ++j) x.at(pivots[pi], j) = aug.at(pi, cols_ + j);
  return x;
}

Matrix Matrix::column_space() const {
  Matrix t = transpose();
  auto piv = t.rref();
  // rows of rref(t) = column space basis (echelonized)
  Matrix r(rows_, piv.size(), field_);
  for (std::size_t k = 0; k < piv.size(); ++k)
    for (std::size_t i = 0; i < rows_; ++i) r.at(i, k) = t.at(k, i);
  return r;
}

Matrix Matrix::vectorize() const {
  Matrix v(rows_ * cols_, 1, field_);
  for (std::size_t i = 0; i < rows_ * cols_; ++i) v.at(i, 0) = data_[i];
  return v;
}

Matrix Matrix::unvectorize(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.rows() != rows * cols || v.cols() != 1) throw std::invalid_argument("Matrix: unvectorize shape");
  Matrix m(rows, cols, v.field());
  for (std::size_t i = 0; i < rows * cols; ++i) m.at(i / cols, i % cols) = v.at(i, 0);
  return m;
}

std::size_t Matrix::hash() const {
  std::size_t h = 1469598103934665603ull;
  h = h * 1099511628211ull ^ rows_;
  h = h * 1099511628211ull ^ cols_;
  for (const Scalar& s : data_) h = h * 1099511628211ull ^ s.hash();
  return h;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i == 0 ? "[" : " [";
    for (std::size_t j = 0; j < cols_; ++j) {
      out += at(i, j).to_string();
      if (j + 1 < cols_) out += ", ";
    }
    out += "]";
    if (i + 1 < rows_) out += "\n";
  }
  return out + "]";
}

}  // namespace ppa
