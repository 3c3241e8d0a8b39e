#include "helpers.hpp"
#include "lorentz/analyze.hpp"
#include "lorentz/canonical.hpp"
#include "lorentz/lattice.hpp"

#include <doctest.h>

using namespace lorentz;
using test::ints;

namespace {

// Smallest row-major flattening over all 2n rotations and reflections.
IntMatrix brute_canonical(const IntMatrix& g) {
  const long n = g.rows();
  std::vector<Int> best;
  IntMatrix best_m;
  for (int reflect = 0; reflect < 2; ++reflect)
    for (long r = 0; r < n; ++r) {
      IntMatrix m(n, n);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
          const long pi = reflect ? ((r - i) % n + n) % n : (r + i) % n;
          const long pj = reflect ? ((r - j) % n + n) % n : (r + j) % n;
          m(i, j) = g(pi, pj);
        }
      std::vector<Int> flat;
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) flat.push_back(m(i, j));
      if (best.empty() || flat < best) {
        best = flat;
        best_m = m;
      }
    }
  return best_m;
}

IntMatrix rotate(const IntMatrix& g, int by) {
  return permute(g, dihedral_map(static_cast<int>(g.rows()), by, false));
}

const IntMatrix kIdealTriangle = ints({{1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});

}  // namespace

TEST_CASE("dihedral canonical form") {
  CHECK(dihedral_canonical(kIdealTriangle) == kIdealTriangle);
  const IntMatrix g = ints({{4, -2, -4}, {-2, 1, -2}, {-4, -2, 4}});
  const IntMatrix c = dihedral_canonical(g);
  for (int r = 0; r < 3; ++r) CHECK(dihedral_canonical(rotate(c, r)) == c);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> size(3, 9), entry(-4, 4);
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = size(rng);
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m(i, j) = m(j, i) = entry(rng);
    const IntMatrix once = dihedral_canonical(m);
    CHECK(dihedral_canonical(once) == once);
    CHECK(once == brute_canonical(m));
  }
}

TEST_CASE("forget_and_unscale") {
  // norm-4 ideal triangle; unscaling divides by the gcd 4
  Chain c;
  c.gram = 4 * kIdealTriangle;
  c.roots = {IntVec3(1, 0, 0), IntVec3(0, 1, 0), IntVec3(0, 0, 1)};
  c.rho = RatVec3(Rat(1, 2), Rat(1, 2), Rat(1, 2));  // for the norm-4 form
  c.closed = true;
  const UnscaledRoots u = forget_and_unscale(c);
  CHECK(u.gram == kIdealTriangle);
  CHECK(u.scale == Rat(1, 4));

  Chain plain = c;
  plain.gram = kIdealTriangle;
  const UnscaledRoots same = forget_and_unscale(plain);
  CHECK(same.gram == kIdealTriangle);
  CHECK(same.scale == 1);

  // the same roots inside their reflective hull
  const QSpace space(to_rational(kIdealTriangle));
  std::vector<RatVector> roots;
  for (int i = 0; i < 3; ++i) roots.push_back(RatVector::Unit(3, i));
  const LatticeInSpace hull = reflective_hull(space, roots);
  const auto [scaled, factor] = unscale_gram(hull.gram());
  Chain big;
  big.gram = to_integer(scaled);
  for (const RatVector& r : roots) big.roots.push_back(to_integer(RatMatrix(hull.coordinates(r))).col(0));
  big.rho = hull.coordinates(RatVector::Constant(3, Rat(1, 2)));  // rho of the form, up to scale
  big.closed = true;
  CHECK(forget_and_unscale(big).gram == kIdealTriangle);
}

TEST_CASE("records and dedup") {
  const RootSystemRecord r = make_record(kIdealTriangle, Rat(1));
  CHECK(validate_record(r) == "");
  CHECK(r.n == 3);
  CHECK(r.rho_norm == Rat(-3, 4));

  const IntMatrix sq = ints({{2, -2, -6, -2}, {-2, 2, -2, -6}, {-6, -2, 2, -2}, {-2, -6, -2, 2}});
  const RootSystemRecord s = make_record(rotate(sq, 1), Rat(1, 3));
  const std::vector<RootSystemRecord> out =
      dedup({s, r, make_record(sq, Rat(1, 5)), make_record(kIdealTriangle, Rat(2))});
  REQUIRE(out.size() == 2);
  CHECK(out[0].n == 3);
  CHECK(out[0].scale_applied == 1);
  CHECK(out[1].n == 4);
  CHECK(out[1].scale_applied == Rat(1, 5));
  CHECK(out[1].gram == dihedral_canonical(sq));
}

TEST_CASE("twist classes") {
  RootSystemRecord a;
  a.n = 3;
  a.gram = ints({{1, -1, -2}, {-1, 2, -2}, {-2, -2, 4}});
  RootSystemRecord doubled = a;
  doubled.gram = 2 * a.gram;
  CHECK(twist_class(a) == twist_class(doubled));

  // same chamber with one root replaced by twice itself: norms change, angles do not
  RootSystemRecord twisted = a;
  twisted.gram.row(0) *= 2;
  twisted.gram.col(0) *= 2;
  CHECK(twist_class(a) == twist_class(twisted));

  RootSystemRecord other;
  other.n = 3;
  other.gram = kIdealTriangle;
  CHECK(vertex_angles(other.gram) != vertex_angles(a.gram));
  CHECK(twist_class(a) != twist_class(other));
}
