#pragma once

// The five narrow-part matrix families for rank-3 hyperbolic root systems and
// the enumeration of their admissible parameter tuples.

#include "lorentz/exact.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lorentz {

struct SeedParams {
  int family = 1;
  std::int64_t A = 1, B = 1, Ap = 0, Bp = 0, C = 1, Cp = 1;
  std::optional<std::int64_t> k, kp;

  friend bool operator==(const SeedParams&, const SeedParams&) = default;

  std::int64_t beta() const { return A * Bp * Cp; }
  /// 4 + 4(CC' + beta + A'B')/(AB - 4); only meaningful for families 3-5.
  Rat N() const;
  /// N with primed and unprimed letters exchanged (family 5).
  Rat Np() const;
  /// Off-diagonal entry of family 5.
  Rat gamma() const;
};

/// Matrix size for a family: 3, 3, 4, 4, 5.
int family_dimension(int family);

/// The Gram matrix exactly as printed for the family, before normalization.
RatMatrix seed_gram(const SeedParams& p);

/// Every side condition on the parameters (including the radical bound).
bool seed_params_admissible(const SeedParams& p);

/// Positive rational multiple with integer entries and entry gcd 1.
/// Throws std::overflow_error if an entry does not fit in 64 bits.
Mat<std::int64_t> normalize_seed_gram(const RatMatrix& gram);

struct SeedMatrix {
  SeedParams params;
  Mat<std::int64_t> gram;  // normalized
};

struct FamilyBounds {
  int family = 1;
  int dimension = 3;
  std::vector<std::pair<std::int64_t, std::int64_t>> ab;    // admitted (A, B)
  std::vector<std::pair<std::int64_t, std::int64_t>> apbp;  // admitted (A', B'); {(0,0)} when absent
  bool cc_above_four = false;
  std::vector<std::string> notes;  // one line per bound, for output metadata
};

FamilyBounds family_bounds(int family);

/// Admissible parameter tuples of one family in lexicographic order
/// (A, B, A', B', C, C', k, k'), each with its normalized matrix.
std::vector<SeedMatrix> enumerate_family(int family);

/// All five families, in family order, keeping the first occurrence of each
/// normalized matrix.
std::vector<SeedMatrix> enumerate_seeds();

}  // namespace lorentz
