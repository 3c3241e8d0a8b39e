#pragma once

// Root systems up to scale and dihedral relabelling.

#include "lorentz/chains.hpp"
#include "lorentz/exact.hpp"
#include "lorentz/lattice.hpp"

#include <string>
#include <vector>

namespace lorentz {

/// Index maps of the dihedral group of order 2n: i -> r + i or r - i (mod n).
inline std::vector<int> dihedral_map(int n, int r, bool reflect) {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = ((reflect ? r - i : r + i) % n + n) % n;
  return out;
}

/// g(order[i], order[j]).
template <class Scalar>
Mat<Scalar> permute(const Mat<Scalar>& g, const std::vector<int>& order) {
  const Eigen::Index n = g.rows();
  Mat<Scalar> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = g(order[i], order[j]);
  return out;
}

/// The dihedral relabelling giving the row-major lexicographic minimum.
/// Ties keep the first map in the order r = 0..n-1, rotations before
/// reflections.
template <class Scalar>
std::vector<int> dihedral_canonical_order(const Mat<Scalar>& g) {
  const int n = static_cast<int>(g.rows());
  std::vector<int> best = dihedral_map(n, 0, false);
  for (int reflect = 0; reflect < 2; ++reflect)
    for (int r = 0; r < n; ++r) {
      const std::vector<int> cand = dihedral_map(n, r, reflect != 0);
      int cmp = 0;
      for (int i = 0; i < n && cmp == 0; ++i)
        for (int j = 0; j < n; ++j) {
          const Scalar& a = g(cand[i], cand[j]);
          const Scalar& b = g(best[i], best[j]);
          if (a < b) { cmp = -1; break; }
          if (b < a) { cmp = 1; break; }
        }
      if (cmp < 0) best = cand;
    }
  return best;
}

template <class Scalar>
Mat<Scalar> dihedral_canonical(const Mat<Scalar>& g) {
  return permute(g, dihedral_canonical_order(g));
}

struct RootSystemRecord {
  int n = 0;
  IntMatrix gram;              // canonical cyclic Gram matrix, unscaled
  Rat scale_applied;           // record form = scale_applied * chain form
  GramRealization realization; // basis of the root lattice; coords row i is root i
  RatVector rho;               // realization coordinates
  Rat rho_norm;
};

/// Gram matrix of the roots alone, rescaled so that its entries have gcd 1.
struct UnscaledRoots {
  IntMatrix gram;
  Rat scale;
};

UnscaledRoots forget_and_unscale(const Chain& chain);

/// Builds the record for an unscaled Gram matrix: canonicalizes it, realizes
/// the root lattice and recomputes rho. Throws std::logic_error if the
/// result is not a valid elliptic root system.
RootSystemRecord make_record(const IntMatrix& gram, const Rat& scale);

/// Unique canonical Gram matrices sorted by (n, lexicographic gram). Among
/// duplicates the smallest scale_applied is kept, so the result does not
/// depend on input order.
std::vector<RootSystemRecord> dedup(std::vector<RootSystemRecord> records);

/// forget_and_unscale + dedup over closed chains, realizing only the unique
/// systems.
std::vector<RootSystemRecord> records_from_chains(const std::vector<Chain>& closed, int jobs);

/// Dihedral-canonical matrix of c_ij = (a_i.a_j)^2 / (a_i^2 a_j^2).
RatMatrix twist_matrix(const RootSystemRecord& record);
std::string twist_class(const RootSystemRecord& record);

/// Empty when every record invariant holds, else the first violation.
std::string validate_record(const RootSystemRecord& record);

}  // namespace lorentz
