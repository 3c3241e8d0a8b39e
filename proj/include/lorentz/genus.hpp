#pragma once

// Genus invariants of integral lattices: determinant, elementary divisors and
// canonical p-adic Jordan symbols at every prime dividing 2 det.

#include "lorentz/exact.hpp"

#include <string>
#include <vector>

namespace lorentz {

/// One Jordan constituent p^scale * f with f unimodular.
///
/// For odd p, `sign` is the Legendre symbol of det(f). For p = 2 it is the
/// Jacobi symbol (2 | det f), `odd` is the Conway-Sloane type I flag and
/// `oddity` the compartment oddity, all in canonical (fused and
/// sign-walked) form.
struct JordanConstituent {
  int scale = 0;
  int rank = 0;
  int sign = 1;
  bool odd = false;
  int oddity = 0;
  friend bool operator==(const JordanConstituent&, const JordanConstituent&) = default;
};

struct LocalSymbol {
  Int prime;
  std::vector<JordanConstituent> constituents;
  friend bool operator==(const LocalSymbol&, const LocalSymbol&) = default;
};

struct GenusKey {
  Signature signature;
  Int determinant;
  std::vector<Int> elementary_divisors;
  std::vector<LocalSymbol> local_symbols;  // ascending primes
  friend bool operator==(const GenusKey&, const GenusKey&) = default;
};

/// Raw Jordan constituents of a nondegenerate integral form at p, before any
/// 2-adic canonicalization (`oddity` is the plain trace for p = 2).
std::vector<JordanConstituent> jordan_constituents(const IntMatrix& gram, const Int& p);

/// Conway-Sloane canonical 2-adic symbol (oddity fusion and sign walking).
std::vector<JordanConstituent> canonical_2adic(std::vector<JordanConstituent> symbol);

/// Throws std::domain_error for a degenerate form.
GenusKey genus_key(const IntMatrix& gram);

/// Canonical JSON text with sorted keys; equal keys give equal strings.
std::string to_json_string(const GenusKey& key);

}  // namespace lorentz
