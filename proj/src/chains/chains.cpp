#include "lorentz/chains.hpp"

#include "lorentz/lattice.hpp"

#include <Eigen/Geometry>

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lorentz {

namespace {

using RatMat3 = Mat3<Rat>;

Rat dot3(const RatVec3& a, const RatVec3& b) { return a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }

RatVec3 to_rat3(const IntVec3& v) { return {Rat(v(0)), Rat(v(1)), Rat(v(2))}; }

RatMat3 to_rat3(const IntMat3& m) {
  RatMat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = Rat(m(i, j));
  return out;
}

// Smallest positive integer multiple of a nonzero rational vector.
RatVec3 primitive(const RatVec3& v) {
  Int scale = 1;
  for (int i = 0; i < 3; ++i) scale = lcm(scale, den(v(i)));
  Int g = 0;
  for (int i = 0; i < 3; ++i) g = gcd(g, num(v(i) * Rat(scale)));
  return v * Rat(scale, g);
}

// Per-chain data shared by every (N, I) query.
struct ExtensionFrame {
  RatMat3 g;
  RatVec3 rho;
  Rat rho_sq;
  std::vector<RatVec3> g_roots;  // G * alpha_j
  RatVec3 last;
  Rat last_sq;
  RatVec3 d;  // primitive direction orthogonal to rho and the last root
  Rat d_sq;

  explicit ExtensionFrame(const Chain& chain) : g(to_rat3(chain.gram)), rho(chain.rho) {
    const RatVec3 g_rho = g * rho;
    rho_sq = dot3(rho, g_rho);
    if (rho_sq >= 0) throw std::invalid_argument("extension needs a timelike Weyl vector");
    for (const IntVec3& r : chain.roots) g_roots.push_back(g * to_rat3(r));
    last = to_rat3(chain.roots.back());
    last_sq = dot3(last, g_roots.back());
    d = primitive(g_rho.cross(g_roots.back()));
    d_sq = dot3(d, g * d);
  }
};

std::optional<IntVec3> solve_extension(const Chain& chain, const ExtensionFrame& f,
                                       const Rat& N, const Rat& I) {
  // x0 in span(rho, last) with x0.rho = -N/2 and x0.last = I.
  const Rat lambda = (I - N) / (2 * f.rho_sq - f.last_sq / 2);
  const Rat mu = I / f.last_sq + lambda / 2;
  const RatVec3 x0 = f.rho * lambda + f.last * mu;
  const Rat x0_sq = -lambda * N / 2 + mu * I;
  const Rat t_sq = (N - x0_sq) / f.d_sq;
  if (t_sq < 0) return std::nullopt;
  Rat t;
  if (!rational_sqrt(t_sq, t)) return std::nullopt;

  std::vector<RatVec3> candidates{x0 + f.d * t};
  if (t != 0) candidates.push_back(x0 - f.d * t);

  std::optional<RatVec3> survivor;
  for (const RatVec3& x : candidates) {
    bool ok = true;
    for (const RatVec3& ga : f.g_roots)
      if (dot3(ga, x) > 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (survivor) throw std::logic_error("find_extension: two candidate roots survive");
    survivor = x;
  }
  if (!survivor) return std::nullopt;

  IntVec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!is_integer((*survivor)(i))) return std::nullopt;
    v(i) = num((*survivor)(i));
  }
  if (!is_root(chain.gram, v)) return std::nullopt;
  return v;
}

Rat pair_det(const IntMat3& g, const IntVec3& a, const IntVec3& b) {
  const Int aa = a.dot(g * a), bb = b.dot(g * b), ab = a.dot(g * b);
  return Rat(aa * bb - ab * ab);
}

}  // namespace

std::optional<RatVector> weyl_vector(const RatMatrix& space_gram, const RatMatrix& roots) {
  const RatMatrix system = roots * space_gram;
  RatVector rhs(roots.rows());
  for (Eigen::Index i = 0; i < roots.rows(); ++i)
    rhs(i) = -system.row(i).dot(roots.row(i)) / 2;
  if (rank(system) != space_gram.rows())
    throw std::invalid_argument("weyl_vector: roots do not span");
  RatVector rho;
  if (!solve(system, rhs, rho)) return std::nullopt;
  return rho;
}

const char* to_string(SeedOutcome outcome) {
  switch (outcome) {
    case SeedOutcome::PositiveDefinite: return "positive_definite";
    case SeedOutcome::RankTwo: return "rank_two";
    case SeedOutcome::NoWeylVector: return "no_weyl_vector";
    case SeedOutcome::NotTimelike: return "not_timelike";
    case SeedOutcome::Chain: return "chain";
  }
  return "?";
}

SeedChain seed_to_chain(const Mat<std::int64_t>& seed_gram) {
  const RatMatrix m = to_rational(seed_gram);
  const Signature sig = signature(m);
  const int r = sig.positive + sig.negative;
  if (sig.negative == 0 && sig.positive == 3) return {SeedOutcome::PositiveDefinite, std::nullopt};
  if (r == 2) return {SeedOutcome::RankTwo, std::nullopt};
  if (sig.positive != 2 || sig.negative != 1) {
    std::ostringstream msg;
    msg << "seed_to_chain: unexpected signature (" << sig.positive << "," << sig.negative << ","
        << sig.zero << ")";
    throw std::logic_error(msg.str());
  }

  const GramRealization d = realize_gram(m);
  const RatMatrix coords = to_rational(d.coords);
  const auto rho = weyl_vector(d.gram, coords);
  if (!rho) return {SeedOutcome::NoWeylVector, std::nullopt};

  Chain c;
  c.gram = to_integer(d.gram);
  for (Eigen::Index i = 0; i < d.coords.rows(); ++i) c.roots.push_back(d.coords.row(i).transpose());
  c.rho = *rho;
  c.closed = is_closed(c);
  const SeedOutcome outcome = has_timelike_rho(c) ? SeedOutcome::Chain : SeedOutcome::NotTimelike;
  return {outcome, std::move(c)};
}

bool has_timelike_rho(const Chain& tuple) {
  const RatVec3 g_rho = to_rat3(tuple.gram) * tuple.rho;
  return dot3(tuple.rho, g_rho) < 0;
}

std::vector<Chain> initial_chains(const Chain& seed_chain) {
  if (seed_chain.roots.size() < 3) throw std::invalid_argument("initial_chains: fewer than 3 roots");
  const QSpace space(to_rational(seed_chain.gram));
  std::vector<RatVector> roots;
  for (const IntVec3& r : seed_chain.roots) roots.push_back(to_rational(r));
  const LatticeInSpace hull = reflective_hull(space, roots);
  const LatticeInSpace d(space, RatMatrix::Identity(3, 3));

  std::vector<Chain> out;
  for (const LatticeInSpace& e : intermediate_lattices(d, hull)) {
    const auto [scaled, factor] = unscale_gram(e.gram());
    (void)factor;  // coordinates are unaffected by rescaling the form
    const RatMatrix to_e = inverse(e.basis).transpose();
    Chain c;
    c.gram = to_integer(scaled);
    for (const RatVector& a : roots) {
      const RatVector coords = to_e * a;
      c.roots.push_back(to_integer(RatMatrix(coords)).col(0));
    }
    c.rho = to_e * RatVector(seed_chain.rho);
    c.closed = is_closed(c);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Rat> candidate_inner_products(const Int& M, const Int& N) {
  std::vector<Rat> out{Rat(0)};
  // cos^2 of the angles 2pi/3, 3pi/4, 5pi/6, pi.
  for (const Rat& c : {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1)}) {
    Rat root;
    if (!rational_sqrt(c * Rat(M * N), root)) continue;
    const Rat I = -root;
    if (is_integer(2 * I / Rat(M)) && is_integer(2 * I / Rat(N))) out.push_back(I);
  }
  return out;
}

std::optional<IntVec3> find_extension(const Chain& chain, const CandidatePair& pair) {
  const ExtensionFrame frame(chain);
  return solve_extension(chain, frame, Rat(pair.N), pair.I);
}

std::vector<Chain> extensions(const Chain& chain) {
  if (is_closed(chain)) return {};
  const ExtensionFrame frame(chain);
  const Int last_sq = num(frame.last_sq);
  std::vector<Chain> out;
  for (const Int& N : root_norm_candidates(IntMatrix(chain.gram))) {
    for (const Rat& I : candidate_inner_products(last_sq, N)) {
      auto root = solve_extension(chain, frame, Rat(N), I);
      if (!root) continue;
      Chain next = chain;
      next.roots.push_back(*root);
      next.closed = is_closed(next);
      out.push_back(std::move(next));
    }
  }
  return out;
}

bool is_closed(const Chain& chain) {
  if (chain.roots.size() < 3) throw std::invalid_argument("is_closed: chain has fewer than 3 roots");
  return pair_det(chain.gram, chain.roots.back(), chain.roots.front()) >= 0;
}

std::string validate_chain(const Chain& chain) {
  const std::size_t m = chain.roots.size();
  if (m < 3) return "fewer than 3 roots";
  Int g = 0;
  for (const Int& x : chain.gram.reshaped()) g = gcd(g, x);
  if (g != 1) return "lattice is not unscaled";
  if (chain.gram != chain.gram.transpose()) return "gram not symmetric";
  const RatMat3 gr = to_rat3(chain.gram);
  const Rat rho_sq = dot3(chain.rho, gr * chain.rho);
  if (rho_sq >= 0) return "rho is not timelike";
  for (std::size_t i = 0; i < m; ++i) {
    const IntVec3& a = chain.roots[i];
    if (!is_root(chain.gram, a)) return "vector " + std::to_string(i) + " is not a root";
    const Rat a_sq = Rat(a.dot(chain.gram * a));
    if (dot3(to_rat3(a), gr * chain.rho) != -a_sq / 2) return "rho equation fails";
    for (std::size_t j = i + 1; j < m; ++j)
      if (a.dot(chain.gram * chain.roots[j]) > 0) return "positive inner product";
    if (i + 1 < m && pair_det(chain.gram, a, chain.roots[i + 1]) < 0)
      return "consecutive pair is indefinite";
  }
  if (chain.closed != is_closed(chain)) return "closed flag is stale";
  return {};
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

SaturationResult saturate(std::vector<Chain> current, const SaturationOptions& options) {
  SaturationResult result;
  for (int iteration = options.first_iteration; !current.empty(); ++iteration) {
    for (Chain& c : current) c.closed = is_closed(c);
    if (options.on_iteration) options.on_iteration(iteration, current);
    if (iteration > options.max_iterations)
      throw IterationLimitExceeded(iteration, std::move(result));

    std::vector<std::vector<Chain>> grown(current.size());
    parallel_for(current.size(), options.jobs, [&](std::size_t i) {
      if (!current[i].closed) grown[i] = extensions(current[i]);
    });

    IterationStats stats;
    stats.iteration = iteration;
    std::vector<Chain> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (current[i].closed) {
        ++stats.closed;
        result.closed.push_back(std::move(current[i]));
      }
      for (Chain& c : grown[i]) next.push_back(std::move(c));
    }
    stats.extensions = next.size();
    result.stats.push_back(stats);
    current = std::move(next);
  }
  return result;
}

IterationLimitExceeded::IterationLimitExceeded(int iteration, SaturationResult partial)
    : std::runtime_error("saturate: iteration " + std::to_string(iteration) +
                         " exceeds max_iterations; its input chains were checkpointed"),
      partial_(std::move(partial)) {}

}  // namespace lorentz
