#include "pmotif/lattice.hpp"

#include <cstdlib>
#include <numeric>

#include "pmotif/error.hpp"

namespace pmotif {

namespace {

void axpy_column(Matrix& m, int target, Int factor, int source) {
  if (factor == 0) return;
  for (int r = 0; r < m.rows(); ++r) m(r, target) = checked_sub(m(r, target), checked_mul(factor, m(r, source)));
}

void negate_column(Matrix& m, int c) {
  for (int r = 0; r < m.rows(); ++r) m(r, c) = checked_neg(m(r, c));
}

void require_dim(int d) {
  if (d < 1 || d > 3) throw Error(ErrorKind::InvalidParams, "lattice dimension must be 1, 2 or 3");
}

void require_same_dim(const Lattice& a, const Lattice& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::AmbientMismatch, "lattices have different dimensions");
}

}  // namespace

EchelonResult column_echelon(const Matrix& generators) {
  Matrix m = generators;
  const int rows = m.rows();
  const int cols = m.cols();
  Matrix u = Matrix::identity(cols);
  std::vector<int> pivot_rows;
  int c = 0;
  for (int r = 0; r < rows && c < cols; ++r) {
    while (true) {
      int best = -1;
      for (int j = c; j < cols; ++j)
        if (m(r, j) != 0 && (best < 0 || std::llabs(m(r, j)) < std::llabs(m(r, best)))) best = j;
      if (best < 0) break;
      m.swap_columns(c, best);
      u.swap_columns(c, best);
      bool done = true;
      for (int j = c + 1; j < cols; ++j) {
        if (m(r, j) == 0) continue;
        Int q = m(r, j) / m(r, c);
        axpy_column(m, j, q, c);
        axpy_column(u, j, q, c);
        if (m(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) {
      negate_column(m, c);
      negate_column(u, c);
    }
    pivot_rows.push_back(r);
    ++c;
  }
  for (int k = 0; k < static_cast<int>(pivot_rows.size()); ++k) {
    int r = pivot_rows[static_cast<size_t>(k)];
    for (int j = 0; j < k; ++j) {
      Int q = floor_div(m(r, j), m(r, k));
      axpy_column(m, j, q, k);
      axpy_column(u, j, q, k);
    }
  }
  return {m, u, c};
}

Lattice::Lattice(int dim) : basis_(Matrix::identity(dim)) { require_dim(dim); }

Lattice Lattice::from_generators(const Matrix& generators) {
  require_dim(generators.rows());
  EchelonResult e = column_echelon(generators);
  if (e.rank < generators.rows()) throw Error(ErrorKind::SingularBasis, "generators do not span a full-rank lattice");
  Lattice out(generators.rows());
  for (int r = 0; r < out.dim(); ++r)
    for (int c = 0; c < out.dim(); ++c) out.basis_(r, c) = e.echelon(r, c);
  return out;
}

Lattice Lattice::from_basis(const Matrix& columns) {
  if (!columns.square()) throw Error(ErrorKind::InvalidParams, "basis must be square");
  return from_generators(columns);
}

Lattice Lattice::scalar(Int n) {
  if (n < 1) throw Error(ErrorKind::InvalidParams, "cover degree must be positive");
  return from_basis(Matrix{{n}});
}

Lattice hnf(const Matrix& columns) { return Lattice::from_basis(columns); }

Int index(const Lattice& lattice) {
  Int n = 1;
  for (int i = 0; i < lattice.dim(); ++i) n = checked_mul(n, lattice(i, i));
  return n;
}

Lattice join(const Lattice& a, const Lattice& b) {
  require_same_dim(a, b);
  const int d = a.dim();
  Matrix g(d, 2 * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      g(r, c) = a(r, c);
      g(r, c + d) = b(r, c);
    }
  return Lattice::from_generators(g);
}

Lattice meet(const Lattice& a, const Lattice& b) {
  require_same_dim(a, b);
  const int d = a.dim();
  Matrix g(d, 2 * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      g(r, c) = a(r, c);
      g(r, c + d) = b(r, c);
    }
  EchelonResult e = column_echelon(g);
  // The last d columns of the transform span the kernel of [A B]; their top
  // halves map into A ∩ B through A.
  Matrix kernel_top(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) kernel_top(r, c) = e.transform(r, c + d);
  return Lattice::from_basis(a.basis() * kernel_top);
}

IntVec coordinates(const Lattice& lattice, const IntVec& v) {
  const int d = lattice.dim();
  if (static_cast<int>(v.size()) != d) throw Error(ErrorKind::InvalidParams, "vector length does not match lattice");
  IntVec rest = v;
  IntVec x(static_cast<size_t>(d), 0);
  for (int i = 0; i < d; ++i) {
    Int diag = lattice(i, i);
    Int value = rest[static_cast<size_t>(i)];
    if (value % diag != 0) throw Error(ErrorKind::InvalidParams, "vector " + format_vector(v) + " is not in the lattice");
    Int k = value / diag;
    x[static_cast<size_t>(i)] = k;
    for (int r = i; r < d; ++r)
      rest[static_cast<size_t>(r)] = checked_sub(rest[static_cast<size_t>(r)], checked_mul(k, lattice(r, i)));
  }
  return x;
}

bool contains_vector(const Lattice& lattice, const IntVec& v) {
  IntVec rest = v;
  for (int i = 0; i < lattice.dim(); ++i) {
    Int diag = lattice(i, i);
    Int value = rest[static_cast<size_t>(i)];
    if (value % diag != 0) return false;
    Int k = value / diag;
    for (int r = i; r < lattice.dim(); ++r)
      rest[static_cast<size_t>(r)] = checked_sub(rest[static_cast<size_t>(r)], checked_mul(k, lattice(r, i)));
  }
  return true;
}

bool contains(const Lattice& super, const Lattice& sub) {
  require_same_dim(super, sub);
  for (int c = 0; c < sub.dim(); ++c)
    if (!contains_vector(super, sub.basis().column(c))) return false;
  return true;
}

std::vector<Lattice> enumerate_sublattices(int dim, Int n) {
  require_dim(dim);
  if (n < 1) throw Error(ErrorKind::InvalidParams, "index must be positive");
  std::vector<Lattice> out;
  std::vector<Int> diag(static_cast<size_t>(dim));
  Matrix h(dim, dim);

  // Off-diagonal entries filled row by row; row i ranges over [0, diag_i).
  auto fill = [&](auto&& self, int pos) -> void {
    if (pos == dim * (dim - 1) / 2) {
      out.push_back(Lattice::from_basis(h));
      return;
    }
    int row = 1, col = 0;
    for (int k = 0; k < pos; ++k) {
      if (++col == row) {
        ++row;
        col = 0;
      }
    }
    for (Int e = 0; e < h(row, row); ++e) {
      h(row, col) = e;
      self(self, pos + 1);
    }
    h(row, col) = 0;
  };

  auto split = [&](auto&& self, int i, Int rest) -> void {
    if (i == dim - 1) {
      h(i, i) = rest;
      fill(fill, 0);
      return;
    }
    for (Int a = 1; a <= rest; ++a) {
      if (rest % a != 0) continue;
      h(i, i) = a;
      self(self, i + 1, rest / a);
    }
  };
  split(split, 0, n);
  return out;
}

IntVec reduce(const Lattice& lattice, const IntVec& v) {
  const int d = lattice.dim();
  if (static_cast<int>(v.size()) != d) throw Error(ErrorKind::InvalidParams, "vector length does not match lattice");
  IntVec r = v;
  for (int i = 0; i < d; ++i) {
    Int k = floor_div(r[static_cast<size_t>(i)], lattice(i, i));
    if (k == 0) continue;
    for (int row = i; row < d; ++row)
      r[static_cast<size_t>(row)] = checked_sub(r[static_cast<size_t>(row)], checked_mul(k, lattice(row, i)));
  }
  return r;
}

std::vector<IntVec> cosets(const Lattice& lattice) {
  const int d = lattice.dim();
  std::vector<IntVec> out;
  IntVec x(static_cast<size_t>(d), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == d) {
      out.push_back(x);
      return;
    }
    for (Int k = 0; k < lattice(i, i); ++k) {
      x[static_cast<size_t>(i)] = k;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Matrix relative_basis(const Lattice& super, const Lattice& sub) {
  require_same_dim(super, sub);
  Matrix out(sub.dim(), sub.dim());
  for (int c = 0; c < sub.dim(); ++c) out.set_column(c, coordinates(super, sub.basis().column(c)));
  return out;
}

Lattice relative(const Lattice& super, const Lattice& sub) { return Lattice::from_basis(relative_basis(super, sub)); }

Int transverse_index(const Lattice& lattice) { return lattice(0, 0); }

Lattice layer_lattice(const Lattice& lattice) {
  if (lattice.dim() != 3) throw Error(ErrorKind::AmbientMismatch, "layer lattice needs a 3-dimensional cover");
  Matrix block(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) block(r, c) = lattice(r + 1, c + 1);
  return Lattice::from_basis(block);
}

std::string format_lattice(const Lattice& lattice) { return format_matrix(lattice.basis()); }

Lattice parse_lattice(std::string_view text) { return Lattice::from_basis(parse_matrix(text)); }

}  // namespace pmotif
