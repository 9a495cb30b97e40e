#pragma once

// Dense matrices over a small prime field. Everything in this project is
// desk-scale (a few dozen rows at most), so plain row-major storage and
// Gaussian elimination are all we need.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctl {

class Field {
 public:
  explicit Field(int p = 2);

  int p() const noexcept { return p_; }
  int add(int a, int b) const noexcept { return (a + b) % p_; }
  int sub(int a, int b) const noexcept { return (a - b + p_) % p_; }
  int neg(int a) const noexcept { return (p_ - a) % p_; }
  int mul(int a, int b) const noexcept { return (a * b) % p_; }
  int inv(int a) const;
  int reduce(long long a) const noexcept { return static_cast<int>(((a % p_) + p_) % p_); }

  static bool is_prime(int p) noexcept;
  static constexpr int max_char = 97;

  bool operator==(const Field&) const = default;

 private:
  int p_;
  std::vector<int> inverse_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {}
  Matrix(int rows, int cols, std::vector<int> entries);

  static Matrix identity(int n);
  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  int operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  int& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }

  bool is_zero() const noexcept;
  Matrix column(int c) const;
  Matrix columns(int first, int count) const;
  Matrix transpose() const;
  std::vector<std::vector<int>> to_rows() const;
  std::string str() const;

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> data_;
};

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b);
Matrix add(const Field& F, const Matrix& a, const Matrix& b);
Matrix subtract(const Field& F, const Matrix& a, const Matrix& b);
Matrix scale(const Field& F, int s, const Matrix& a);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diag(const Matrix& a, const Matrix& b);

struct RowEchelon {
  Matrix reduced;           // reduced row echelon form, zero rows dropped
  std::vector<int> pivots;  // pivot column of each row, strictly increasing
};

RowEchelon rref(const Field& F, const Matrix& a);
int rank(const Field& F, const Matrix& a);

// Basis of {x : a x = 0} as columns. One column per free variable, in
// increasing free-column order; the free variable is set to 1.
Matrix nullspace(const Field& F, const Matrix& a);

// Basis of the column space, taken from pivot columns of `a` itself.
Matrix column_space(const Field& F, const Matrix& a);

// Some X with a X = b, if one exists.
std::optional<Matrix> solve(const Field& F, const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Field& F, const Matrix& a);

// Standard basis vectors e_j (as columns of an ambient x k matrix) that
// extend the column span of `basis` to the whole space; the first ones in
// index order are chosen.
Matrix complement_columns(const Field& F, const Matrix& basis, int ambient);

// Enumerate every subspace of F^m exactly once, as column bases in reduced
// column echelon form; order: by dimension, then pivot set, then entries.
// The callback returns false to stop early. Returns false iff stopped.
template <class Fn>
bool for_each_subspace(const Field& F, int m, Fn&& fn);

}  // namespace ctl

#include "cotorsion/detail/subspace_enum.hpp"
