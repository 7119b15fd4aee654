#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pmotif/matrix.hpp"

namespace pmotif {

// A full-rank sublattice of Z^d, d in {1,2,3}, kept in lower-triangular
// column Hermite form. Two lattices are equal iff their bases are.
class Lattice {
 public:
  // Identity lattice Z^d.
  explicit Lattice(int dim = 2);

  // Canonicalizes an arbitrary square basis. Throws SingularBasis.
  static Lattice from_basis(const Matrix& columns);
  // Canonicalizes a generating set (d rows, any number of columns).
  static Lattice from_generators(const Matrix& generators);
  // Degree-n cyclic cover of the solid torus.
  static Lattice scalar(Int n);

  int dim() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  Int operator()(int r, int c) const { return basis_(r, c); }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  Matrix basis_;
};

Lattice hnf(const Matrix& columns);
Int index(const Lattice& lattice);
Lattice meet(const Lattice& a, const Lattice& b);
Lattice join(const Lattice& a, const Lattice& b);
// True iff `sub` is a sublattice of `super`.
bool contains(const Lattice& super, const Lattice& sub);
bool contains_vector(const Lattice& lattice, const IntVec& v);

std::vector<Lattice> enumerate_sublattices(int dim, Int n);

// Representatives of Z^d / L inside the box 0 <= x_i < H[i][i].
std::vector<IntVec> cosets(const Lattice& lattice);
// Reduces v into that box.
IntVec reduce(const Lattice& lattice, const IntVec& v);
// Coordinates of a lattice vector in the Hermite basis. Throws InvalidParams
// if v is not in the lattice.
IntVec coordinates(const Lattice& lattice, const IntVec& v);

// `sub` expressed in the basis of `super` (requires contains(super, sub)).
// The result is canonicalized, so it describes the intermediate cover.
Lattice relative(const Lattice& super, const Lattice& sub);
// The literal relative basis super^{-1} * sub, without canonicalization.
Matrix relative_basis(const Lattice& super, const Lattice& sub);

// Layering helpers for the 3-torus with the first coordinate as the layering
// direction: the number of preimage components of a transverse torus, and
// the 2D lattice by which each of those components covers it.
Int transverse_index(const Lattice& lattice);
Lattice layer_lattice(const Lattice& lattice);

std::string format_lattice(const Lattice& lattice);
Lattice parse_lattice(std::string_view text);

// Column operations bringing `generators` to [H | 0]. `transform` is the
// unimodular matrix with generators * transform == [H | 0].
struct EchelonResult {
  Matrix echelon;
  Matrix transform;
  int rank = 0;
};
EchelonResult column_echelon(const Matrix& generators);

}  // namespace pmotif
