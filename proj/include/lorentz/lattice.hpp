#pragma once

// Lattices in a rational quadratic space: roots, reflective hulls,
// overlattices and discriminant data.

#include "lorentz/exact.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace lorentz {

/// Rational quadratic space Q^dim with a symmetric Gram matrix.
struct QSpace {
  RatMatrix gram;

  QSpace() = default;
  explicit QSpace(RatMatrix g);
  Eigen::Index dim() const { return gram.rows(); }
  Rat dot(const RatVector& x, const RatVector& y) const { return x.dot(gram * y); }
};

/// Full-rank lattice: rows of `basis` are basis vectors in space coordinates.
struct LatticeInSpace {
  QSpace space;
  RatMatrix basis;

  LatticeInSpace() = default;
  LatticeInSpace(QSpace s, RatMatrix b);

  Eigen::Index rank() const { return basis.rows(); }
  RatMatrix gram() const { return basis * space.gram * basis.transpose(); }
  /// Space coordinates of the vector with lattice coordinates `coords`.
  RatVector embed(const RatVector& coords) const { return basis.transpose() * coords; }
  /// Lattice coordinates (possibly non-integral) of a space vector.
  RatVector coordinates(const RatVector& x) const;
  bool contains(const RatVector& x) const;
};

bool is_integral(const LatticeInSpace& lattice);

struct Unscaled {
  LatticeInSpace lattice;
  Rat factor;  // new form = factor * old form
};

/// Rescale the form so the lattice becomes integral with inner-product gcd 1.
Unscaled unscale(const LatticeInSpace& lattice);

/// Same operation on a bare Gram matrix.
std::pair<RatMatrix, Rat> unscale_gram(const RatMatrix& gram);

/// v (lattice coordinates, must be integral) has positive norm and pairs with
/// every basis vector into (v^2 / 2) Z. Throws std::invalid_argument when the
/// coordinates are not integral, i.e. v is not in the lattice.
bool is_root(const LatticeInSpace& lattice, const RatVector& coords);

/// Root test directly on an integral Gram matrix and integer coordinates.
template <class DerivedG, class DerivedV>
bool is_root(const Eigen::MatrixBase<DerivedG>& gram, const Eigen::MatrixBase<DerivedV>& v) {
  const auto gv = (gram * v).eval();
  const Int norm = v.dot(gv);
  if (norm <= 0) return false;
  for (Eigen::Index i = 0; i < gv.size(); ++i)
    if ((2 * gv(i)) % norm != 0) return false;
  return true;
}

/// Largest lattice in which every given vector (space coordinates) is a root:
/// {x : x . a in (a^2/2) Z for all a}. Throws std::invalid_argument unless the
/// vectors span the space and have positive norm.
LatticeInSpace reflective_hull(const QSpace& space, const std::vector<RatVector>& roots);

/// All lattices E with inner <= E <= outer, one per subgroup of outer/inner,
/// in a deterministic order (by index, then canonical Hermite basis).
std::vector<LatticeInSpace> intermediate_lattices(const LatticeInSpace& inner,
                                                  const LatticeInSpace& outer);

struct DiscriminantData {
  std::vector<Int> elementary_divisors;  // Smith invariants of the Gram matrix
  Int e_max;
};

/// Throws std::domain_error for a non-integral or degenerate Gram matrix.
DiscriminantData discriminant_data(const IntMatrix& gram);
DiscriminantData discriminant_data(const LatticeInSpace& lattice);

/// Possible root norms of an unscaled integral lattice: the divisors of 4 e_max.
std::vector<Int> root_norm_candidates(const Int& e_max);
std::vector<Int> root_norm_candidates(const IntMatrix& gram);

/// The quotient Z^k / ker(gram) of a rank-r Gram matrix, presented by a basis.
struct GramRealization {
  RatMatrix gram;    // r x r Gram matrix of the quotient basis
  IntMatrix coords;  // k x r: row i holds the coordinates of the image of e_i
};

GramRealization realize_gram(const RatMatrix& gram);

}  // namespace lorentz
