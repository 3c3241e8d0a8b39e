#pragma once

// Chains of simple roots in rank-3 Lorentzian lattices: construction from
// seeds, extension by one root at a time and saturation.

#include "lorentz/exact.hpp"
#include "lorentz/seeds.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lorentz {

using IntMat3 = Mat3<Int>;
using IntVec3 = Vec3<Int>;
using RatVec3 = Vec3<Rat>;

/// An unscaled integral lattice E (given by its Gram matrix; vectors are
/// coordinates in E's basis), a sequence of roots and the Weyl vector.
struct Chain {
  IntMat3 gram;
  std::vector<IntVec3> roots;
  RatVec3 rho;
  bool closed = false;

  friend bool operator==(const Chain&, const Chain&) = default;
};

struct CandidatePair {
  Int N;
  Rat I;
};

/// Unique rho with rho . a = -a^2/2 for every root (rows of `roots`, in
/// space coordinates), if the system is consistent.
std::optional<RatVector> weyl_vector(const RatMatrix& space_gram, const RatMatrix& roots);

enum class SeedOutcome { PositiveDefinite, RankTwo, NoWeylVector, NotTimelike, Chain };

const char* to_string(SeedOutcome outcome);

struct SeedChain {
  SeedOutcome outcome = SeedOutcome::Chain;
  /// The tuple (D, roots, rho) on D = Z^k / ker(M), present whenever a Weyl
  /// vector exists (outcomes Chain and NotTimelike). It is a chain only for
  /// outcome Chain.
  std::optional<Chain> tuple;
  std::optional<Chain> chain() const {
    return outcome == SeedOutcome::Chain ? tuple : std::nullopt;
  }
};

/// Classifies a seed. Throws std::logic_error on an unexpected signature.
SeedChain seed_to_chain(const Mat<std::int64_t>& seed_gram);

/// rho^2 < 0.
bool has_timelike_rho(const Chain& tuple);

/// One unscaled tuple per lattice between D and the reflective hull of the
/// roots, with the closed flag computed. Accepts any tuple with a Weyl
/// vector; the results are chains when rho is timelike.
std::vector<Chain> initial_chains(const Chain& seed_tuple);

/// Admissible inner products of a new root of norm N with a last root of
/// norm M, ordered by increasing |I| (so 0 first).
std::vector<Rat> candidate_inner_products(const Int& M, const Int& N);

/// The unique next root with norm N and inner product I with the last root,
/// or nothing. Throws std::logic_error if two candidates survive.
std::optional<IntVec3> find_extension(const Chain& chain, const CandidatePair& pair);

/// All one-root extensions, ordered by (N ascending, candidate order of I),
/// each with its closed flag computed. Closed chains have none.
std::vector<Chain> extensions(const Chain& chain);

/// The last and first roots span a positive (semi)definite plane.
bool is_closed(const Chain& chain);

/// Checks every chain invariant; returns an empty string or a description of
/// the first violation.
std::string validate_chain(const Chain& chain);

struct IterationStats {
  int iteration = 0;
  std::size_t closed = 0;
  std::size_t extensions = 0;
  friend bool operator==(const IterationStats&, const IterationStats&) = default;
};

struct SaturationResult {
  std::vector<Chain> closed;
  std::vector<IterationStats> stats;
};

struct SaturationOptions {
  int max_iterations = 64;
  int jobs = 1;
  /// First iteration number of `initial` (for resumed runs).
  int first_iteration = 1;
  /// Called with the iteration number and its input chains (closed flags
  /// set) before they are extended.
  std::function<void(int, const std::vector<Chain>&)> on_iteration;
};

/// Thrown when saturation would start an iteration beyond max_iterations;
/// carries the statistics and closed chains gathered so far.
class IterationLimitExceeded : public std::runtime_error {
 public:
  IterationLimitExceeded(int iteration, SaturationResult partial);
  const SaturationResult& partial() const { return partial_; }

 private:
  SaturationResult partial_;
};

/// Repeatedly sets closed chains aside and extends the open ones until no
/// extensions remain. Throws IterationLimitExceeded past max_iterations.
SaturationResult saturate(std::vector<Chain> initial, const SaturationOptions& options);

/// Order-preserving parallel map over [0, n) with `jobs` workers.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body);

}  // namespace lorentz
