#include "cotorsion/matrix.hpp"

#include <sstream>

#include "cotorsion/errors.hpp"

namespace ctl {

Field::Field(int p) : p_(p) {
  if (!is_prime(p) || p > max_char)
    throw ArgumentError("field characteristic must be a prime <= 97, got " + std::to_string(p));
  inverse_.assign(p, 0);
  for (int a = 1; a < p; ++a)
    for (int b = 1; b < p; ++b)
      if (a * b % p == 1) inverse_[a] = b;
}

int Field::inv(int a) const {
  if (a % p_ == 0) throw ArgumentError("division by zero in F_" + std::to_string(p_));
  return inverse_[a % p_];
}

bool Field::is_prime(int p) noexcept {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Matrix::Matrix(int rows, int cols, std::vector<int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != static_cast<size_t>(rows) * cols)
    throw ArgumentError("matrix entry count does not match shape");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const noexcept {
  for (int x : data_)
    if (x != 0) return false;
  return true;
}

Matrix Matrix::column(int c) const { return columns(c, 1); }

Matrix Matrix::columns(int first, int count) const {
  Matrix out(rows_, count);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

std::vector<std::vector<int>> Matrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int r = 0; r < rows_; ++r) {
    if (r) os << "; ";
    for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c);
  }
  os << ']';
  return os.str();
}

Matrix multiply(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const int x = a(i, k);
      if (!x) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) = (out(i, j) + x * b(k, j)) % F.p();
    }
  return out;
}

Matrix add(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("matrix sum shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = F.add(a(i, j), b(i, j));
  return out;
}

Matrix subtract(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("matrix difference shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = F.sub(a(i, j), b(i, j));
  return out;
}

Matrix scale(const Field& F, int s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  s = F.reduce(s);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = F.mul(s, a(i, j));
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ArgumentError("hstack row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw ArgumentError("vstack column mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
  return out;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

RowEchelon rref(const Field& F, const Matrix& a) {
  Matrix m = a;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int sel = -1;
    for (int r = row; r < m.rows(); ++r)
      if (m(r, col)) {
        sel = r;
        break;
      }
    if (sel < 0) continue;
    if (sel != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const int iv = F.inv(m(row, col));
    for (int c = 0; c < m.cols(); ++c) m(row, c) = F.mul(m(row, c), iv);
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || !m(r, col)) continue;
      const int factor = m(r, col);
      for (int c = 0; c < m.cols(); ++c) m(r, c) = F.sub(m(r, c), F.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  Matrix reduced(row, m.cols());
  for (int r = 0; r < row; ++r)
    for (int c = 0; c < m.cols(); ++c) reduced(r, c) = m(r, c);
  return {std::move(reduced), std::move(pivots)};
}

int rank(const Field& F, const Matrix& a) { return static_cast<int>(rref(F, a).pivots.size()); }

Matrix nullspace(const Field& F, const Matrix& a) {
  const RowEchelon e = rref(F, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix basis(a.cols(), static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    const int fc = free_cols[k];
    basis(fc, static_cast<int>(k)) = 1;
    for (size_t r = 0; r < e.pivots.size(); ++r)
      basis(e.pivots[r], static_cast<int>(k)) = F.neg(e.reduced(static_cast<int>(r), fc));
  }
  return basis;
}

Matrix column_space(const Field& F, const Matrix& a) {
  const RowEchelon e = rref(F, a);
  Matrix out(a.rows(), static_cast<int>(e.pivots.size()));
  for (size_t k = 0; k < e.pivots.size(); ++k)
    for (int r = 0; r < a.rows(); ++r) out(r, static_cast<int>(k)) = a(r, e.pivots[k]);
  return out;
}

std::optional<Matrix> solve(const Field& F, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ArgumentError("solve: row mismatch");
  const RowEchelon e = rref(F, hstack(a, b));
  for (int c : e.pivots)
    if (c >= a.cols()) return std::nullopt;
  Matrix x(a.cols(), b.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r)
    for (int j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(static_cast<int>(r), a.cols() + j);
  return x;
}

std::optional<Matrix> inverse(const Field& F, const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(F, a) != a.rows()) return std::nullopt;
  return solve(F, a, Matrix::identity(a.rows()));
}

Matrix complement_columns(const Field& F, const Matrix& basis, int ambient) {
  Matrix current = basis.cols() ? basis : Matrix(ambient, 0);
  int r = rank(F, current);
  std::vector<int> chosen;
  for (int j = 0; j < ambient && r < ambient; ++j) {
    Matrix e(ambient, 1);
    e(j, 0) = 1;
    Matrix trial = hstack(current, e);
    const int tr = rank(F, trial);
    if (tr > r) {
      current = std::move(trial);
      r = tr;
      chosen.push_back(j);
    }
  }
  Matrix out(ambient, static_cast<int>(chosen.size()));
  for (size_t k = 0; k < chosen.size(); ++k) out(chosen[k], static_cast<int>(k)) = 1;
  return out;
}

}  // namespace ctl
