#include "pmotif/matrix.hpp"

#include <numeric>
#include <sstream>

#include "pmotif/error.hpp"
#include "scanner.hpp"

namespace pmotif {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NoCommonQuotient: return "NoCommonQuotient";
    case ErrorKind::InvalidDiagram: return "InvalidDiagram";
    case ErrorKind::InvalidMove: return "InvalidMove";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {
[[noreturn]] void overflow() { throw Error(ErrorKind::Overflow, "integer overflow in lattice arithmetic"); }
}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) overflow();
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floor_mod(Int a, Int b) { return a - floor_div(a, b) * b; }

ExtGcd ext_gcd(Int a, Int b) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x);
  return g;
}

IntVec sign_normalized(IntVec v) {
  for (Int x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = checked_neg(y);
    break;
  }
  return v;
}

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), 0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_)
      throw Error(ErrorKind::InvalidParams, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const IntVec& diag) {
  int n = static_cast<int>(diag.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = diag[static_cast<size_t>(i)];
  return m;
}

Matrix Matrix::from_columns(const std::vector<IntVec>& cols) {
  if (cols.empty()) return {};
  Matrix m(static_cast<int>(cols.front().size()), static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols(); ++c) m.set_column(c, cols[static_cast<size_t>(c)]);
  return m;
}

IntVec Matrix::column(int c) const {
  IntVec v(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r) v[static_cast<size_t>(r)] = (*this)(r, c);
  return v;
}

void Matrix::set_column(int c, const IntVec& v) {
  if (static_cast<int>(v.size()) != rows_) throw Error(ErrorKind::InvalidParams, "column length mismatch");
  for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[static_cast<size_t>(r)];
}

void Matrix::swap_columns(int a, int b) {
  if (a == b) return;
  for (int r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidParams, "matrix shape mismatch");
  Matrix m(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Int s = 0;
      for (int k = 0; k < a.cols(); ++k) s = checked_add(s, checked_mul(a(i, k), b(k, j)));
      m(i, j) = s;
    }
  return m;
}

IntVec operator*(const Matrix& a, const IntVec& v) {
  if (a.cols() != static_cast<int>(v.size())) throw Error(ErrorKind::InvalidParams, "matrix/vector shape mismatch");
  IntVec out(static_cast<size_t>(a.rows()), 0);
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      out[static_cast<size_t>(i)] = checked_add(out[static_cast<size_t>(i)], checked_mul(a(i, k), v[static_cast<size_t>(k)]));
  return out;
}

namespace {

Int det2(Int a, Int b, Int c, Int d) { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }

Matrix minor_of(const Matrix& m, int row, int col) {
  Matrix out(m.rows() - 1, m.cols() - 1);
  for (int r = 0, rr = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    for (int c = 0, cc = 0; c < m.cols(); ++c) {
      if (c == col) continue;
      out(rr, cc++) = m(r, c);
    }
    ++rr;
  }
  return out;
}

}  // namespace

Int determinant(const Matrix& m) {
  if (!m.square() || m.rows() > 3) throw Error(ErrorKind::InvalidParams, "determinant needs a square matrix of size <= 3");
  switch (m.rows()) {
    case 0: return 1;
    case 1: return m(0, 0);
    case 2: return det2(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    default: {
      Int s = 0;
      for (int c = 0; c < 3; ++c) {
        Int term = checked_mul(m(0, c), determinant(minor_of(m, 0, c)));
        s = (c % 2 == 0) ? checked_add(s, term) : checked_sub(s, term);
      }
      return s;
    }
  }
}

Matrix adjugate(const Matrix& m) {
  if (!m.square() || m.rows() > 3) throw Error(ErrorKind::InvalidParams, "adjugate needs a square matrix of size <= 3");
  int n = m.rows();
  Matrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Int cof = determinant(minor_of(m, r, c));
      adj(c, r) = ((r + c) % 2 == 0) ? cof : checked_neg(cof);
    }
  return adj;
}

std::string format_vector(const IntVec& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::string format_matrix(const Matrix& m) {
  std::string s = "[";
  for (int r = 0; r < m.rows(); ++r) {
    if (r) s += ',';
    IntVec row(static_cast<size_t>(m.cols()));
    for (int c = 0; c < m.cols(); ++c) row[static_cast<size_t>(c)] = m(r, c);
    s += format_vector(row);
  }
  return s + "]";
}

Matrix parse_matrix(std::string_view text) {
  detail::Scanner in(text);
  if (in.peek() != '[') {
    Int n = in.integer();
    in.expect_end();
    return Matrix{{n}};
  }
  std::vector<IntVec> rows;
  in.expect('[');
  do {
    in.expect('[');
    IntVec row;
    if (in.peek() != ']') {
      do row.push_back(in.integer());
      while (in.accept(','));
    }
    in.expect(']');
    rows.push_back(std::move(row));
  } while (in.accept(','));
  in.expect(']');
  in.expect_end();
  int nr = static_cast<int>(rows.size());
  int nc = static_cast<int>(rows.front().size());
  Matrix m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != nc) in.fail("ragged matrix");
    for (int c = 0; c < nc; ++c) m(r, c) = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
  }
  return m;
}

}  // namespace pmotif
