#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace pmotif {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

// Overflow-checked primitives. Each throws Error{Overflow} instead of wrapping.
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

Int floor_div(Int a, Int b);
Int floor_mod(Int a, Int b);

struct ExtGcd {
  Int g;  // non-negative
  Int x;
  Int y;  // a*x + b*y == g
};
ExtGcd ext_gcd(Int a, Int b);

Int gcd_of(const IntVec& v);

/// Flips the sign of `v` so its first nonzero entry is positive.
IntVec sign_normalized(IntVec v);

/// Small dense integer matrix, row-major. Dimensions here never exceed a
/// handful of rows, so everything is by value.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(std::initializer_list<std::initializer_list<Int>> rows);

  static Matrix identity(int n);
  static Matrix diagonal(const IntVec& diag);
  static Matrix from_columns(const std::vector<IntVec>& cols);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Int& operator()(int r, int c) { return data_[static_cast<size_t>(r * cols_ + c)]; }
  Int operator()(int r, int c) const { return data_[static_cast<size_t>(r * cols_ + c)]; }

  IntVec column(int c) const;
  void set_column(int c, const IntVec& v);
  void swap_columns(int a, int b);
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
IntVec operator*(const Matrix& a, const IntVec& v);

/// Exact determinant for square matrices up to 3x3 (cofactor expansion with
/// checked arithmetic).
Int determinant(const Matrix& m);

/// Adjugate: adj(M) * M == det(M) * I. Square, up to 3x3.
Matrix adjugate(const Matrix& m);

/// Row-major bracket syntax, e.g. `[[2,0],[1,3]]`.
std::string format_matrix(const Matrix& m);
std::string format_vector(const IntVec& v);

/// Parses bracket syntax. A bare integer `n` parses as the 1x1 matrix [[n]].
Matrix parse_matrix(std::string_view text);

}  // namespace pmotif
