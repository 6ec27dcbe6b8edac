#pragma once

#include <optional>
#include <vector>

#include "ppa/field.hpp"

namespace ppa {

/// Dense matrix over Q or F_p. Row-major, immutable field tag.
class Matrix {
 public:
  Matrix() : field_(FieldSpec::rationals()) {}
  Matrix(std::size_t rows, std::size_t cols, const FieldSpec& f);

  static Matrix identity(std::size_t n, const FieldSpec& f);
  static Matrix zero(std::size_t rows, std::size_t cols, const FieldSpec& f) { return Matrix(rows, cols, f); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const;
  Scalar trace() const;

  Matrix hstack(const Matrix& right) const;
  Matrix vstack(const Matrix& below) const;
  Matrix sub(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
  static Matrix block_diag(const std::vector<Matrix>& blocks, const FieldSpec& f);

  /// In-place reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  bool is_invertible() const { return is_square() && rank() == rows_; }
  std::optional<Matrix> inverse() const;

  /// Nullspace basis as matrix columns; each vector scaled so its first
  /// nonzero entry is 1. Deterministic for fixed input.
  Matrix kernel_basis() const;

  /// Particular solution of A x = b with free variables set to 0, or nullopt.
  std::optional<Matrix> solve(const Matrix& b) const;

  /// Column-echelon basis of the column space.
  Matrix column_space() const;

  /// Row-major entries flattened into a single column (for vectorized solves).
  Matrix vectorize() const;
  static Matrix unvectorize(const Matrix& v, std::size_t rows, std::size_t cols);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  FieldSpec field_;
  std::vector<Scalar> data_;

  static void check_same_field(const Matrix& a, const Matrix& b);
};

}  // namespace ppa
