#include "helpers.hpp"
#include "lorentz/genus.hpp"
#include "lorentz/lattice.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace lorentz;
using test::ints;
using test::rat;

TEST_CASE("unscale") {
  const auto [g1, f1] = unscale_gram(rat({{2, 0, 0}, {0, 2, 0}, {0, 0, -2}}));
  CHECK(f1 == Rat(1, 2));
  CHECK(g1 == rat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));

  RatMatrix g(2, 2);
  g << Rat(3, 2), Rat(-3), Rat(-3), Rat(9, 2);
  const auto [g2, f2] = unscale_gram(g);
  CHECK(f2 == Rat(2, 3));
  CHECK(g2 == rat({{1, -2}, {-2, 3}}));

  const LatticeInSpace l(QSpace(rat({{1, -1}, {-1, 2}})), RatMatrix::Identity(2, 2));
  const Unscaled u = unscale(l);
  CHECK(u.factor == 1);
  CHECK(u.lattice.gram() == l.gram());
  CHECK(is_integral(l));
  CHECK_FALSE(is_integral(LatticeInSpace(QSpace(rat({{1, 0}, {0, 1}})), RatMatrix::Identity(2, 2) / 2)));
}

TEST_CASE("is_root") {
  const IntMatrix g = ints({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}});
  CHECK(is_root(g, IntVector(ints({{1}, {1}, {0}}))));
  CHECK(is_root(g, IntVector(ints({{2}, {0}, {0}}))));
  CHECK_FALSE(is_root(g, IntVector(ints({{0}, {0}, {1}}))));
  CHECK_FALSE(is_root(g, IntVector(ints({{1}, {0}, {1}}))));  // isotropic
  CHECK_FALSE(is_root(g, IntVector(ints({{1}, {2}, {0}}))));  // norm 5, 2*1/5 not integral
  const LatticeInSpace l(QSpace(to_rational(g)), RatMatrix::Identity(3, 3));
  RatVector v(3);
  v << Rat(2), Rat(0), Rat(0);
  CHECK(is_root(l, v));
}

namespace {

// Index of Z^3 in {c : 2 (G c)_i / G_ii in Z}, counted point by point in
// (1/L) Z^3 modulo Z^3.
std::size_t brute_hull_index(const RatMatrix& g, long L, std::vector<RatVector>& points) {
  std::size_t count = 0;
  for (long a = 0; a < L; ++a)
    for (long b = 0; b < L; ++b)
      for (long c = 0; c < L; ++c) {
        RatVector x(3);
        x << Rat(a, L), Rat(b, L), Rat(c, L);
        const RatVector gx = g * x;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) ok = is_integer(2 * gx(i) / g(i, i));
        if (!ok) continue;
        ++count;
        points.push_back(x);
      }
  return count;
}

}  // namespace

TEST_CASE("reflective hull matches the brute-force oracle") {
  std::vector<RatMatrix> cases{rat({{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}})};
  std::mt19937_64 rng(3);
  const long norms[] = {1, 2, 3, 4, 6};
  std::uniform_int_distribution<int> pn(0, 4), off(-6, 0);
  for (int trial = 0; cases.size() < 40 && trial < 100000; ++trial) {
    RatMatrix g(3, 3);
    for (int i = 0; i < 3; ++i) g(i, i) = norms[pn(rng)];
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) g(i, j) = g(j, i) = off(rng);
    if (determinant(g) == 0) continue;
    // the basis vectors must be roots of their own span
    bool cartan = true;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cartan = cartan && is_integer(2 * g(i, j) / g(i, i));
    if (cartan) cases.push_back(g);
  }
  int tested = 0;
  for (const RatMatrix& g : cases) {
    // exponent of hull / Z^3 divides the denominators of M^{-1}
    RatMatrix m(3, 3);
    for (int i = 0; i < 3; ++i) m.row(i) = g.row(i) * (Rat(2) / g(i, i));
    const RatMatrix mi = inverse(m);
    Int L = 1;
    for (const Rat& x : mi.reshaped()) L = lcm(L, den(x));
    if (L > 40) continue;
    ++tested;

    const QSpace space(g);
    std::vector<RatVector> roots;
    for (int i = 0; i < 3; ++i) roots.push_back(RatVector::Unit(3, i));
    const LatticeInSpace hull = reflective_hull(space, roots);
    std::vector<RatVector> points;
    const std::size_t index = brute_hull_index(g, L.convert_to<long>(), points);
    CHECK(abs(determinant(hull.basis)) == Rat(1, static_cast<long>(index)));
    for (const RatVector& p : points) CHECK(hull.contains(p));
    for (const RatVector& r : roots) CHECK(is_root(hull, hull.coordinates(r)));
  }
  CHECK(tested >= 20);

  // the example: hull = G^{-1} Z^3, index 32
  const QSpace s(cases[0]);
  std::vector<RatVector> roots;
  for (int i = 0; i < 3; ++i) roots.push_back(RatVector::Unit(3, i));
  CHECK(abs(determinant(reflective_hull(s, roots).basis)) == Rat(1, 32));
}

TEST_CASE("hull of a unimodular norm-2 root lattice is itself") {
  const RatMatrix e8 = rat({{2, -1, 0, 0, 0, 0, 0, 0},
                            {-1, 2, -1, 0, 0, 0, 0, 0},
                            {0, -1, 2, -1, 0, 0, 0, -1},
                            {0, 0, -1, 2, -1, 0, 0, 0},
                            {0, 0, 0, -1, 2, -1, 0, 0},
                            {0, 0, 0, 0, -1, 2, -1, 0},
                            {0, 0, 0, 0, 0, -1, 2, 0},
                            {0, 0, -1, 0, 0, 0, 0, 2}});
  REQUIRE(determinant(e8) == 1);
  std::vector<RatVector> roots;
  for (int i = 0; i < 8; ++i) roots.push_back(RatVector::Unit(8, i));
  CHECK(abs(determinant(reflective_hull(QSpace(e8), roots).basis)) == 1);
}

namespace {

using Elem = std::vector<int>;

// Number of subgroups of Z/d1 + ... + Z/dk, by closing every generating set
// of at most k elements.
std::size_t brute_subgroup_count(const std::vector<int>& d) {
  std::vector<Elem> elems{Elem(d.size(), 0)};
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<Elem> next;
    for (const Elem& e : elems)
      for (int x = 0; x < d[i]; ++x) {
        Elem f = e;
        f[i] = x;
        next.push_back(f);
      }
    elems = next;
  }
  auto closure = [&](const std::vector<Elem>& gens) {
    std::set<Elem> s{Elem(d.size(), 0)};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Elem& a : std::vector<Elem>(s.begin(), s.end()))
        for (const Elem& g : gens) {
          Elem b = a;
          for (std::size_t i = 0; i < d.size(); ++i) b[i] = (b[i] + g[i]) % d[i];
          grew |= s.insert(b).second;
        }
    }
    return s;
  };
  std::set<std::set<Elem>> subgroups;
  std::function<void(std::size_t, std::vector<Elem>&)> rec = [&](std::size_t start, std::vector<Elem>& gens) {
    subgroups.insert(closure(gens));
    if (gens.size() == d.size()) return;
    for (std::size_t i = start; i < elems.size(); ++i) {
      gens.push_back(elems[i]);
      rec(i, gens);
      gens.pop_back();
    }
  };
  std::vector<Elem> gens;
  rec(0, gens);
  return subgroups.size();
}

}  // namespace

TEST_CASE("subgroup oracle sanity") {
  CHECK(brute_subgroup_count({2}) == 2);
  CHECK(brute_subgroup_count({2, 2}) == 5);
  CHECK(brute_subgroup_count({4}) == 3);
  CHECK(brute_subgroup_count({2, 4}) == 8);
}

TEST_CASE("intermediate lattices count subgroups of the quotient") {
  const QSpace plane(RatMatrix::Identity(2, 2));
  const LatticeInSpace z2(plane, RatMatrix::Identity(2, 2));
  CHECK(intermediate_lattices(LatticeInSpace(plane, rat({{2, 0}, {0, 1}})), z2).size() == 2);
  CHECK(intermediate_lattices(LatticeInSpace(plane, rat({{2, 0}, {0, 2}})), z2).size() == 5);
  CHECK(intermediate_lattices(z2, z2).size() == 1);

  std::mt19937_64 rng(5);
  const std::vector<std::vector<int>> shapes{{1, 1, 2}, {1, 2, 2}, {2, 2, 2}, {1, 1, 4}, {1, 2, 4},
                                             {1, 3, 3}, {1, 1, 6}, {1, 2, 6}, {1, 1, 8}, {2, 2, 4}};
  const QSpace space(RatMatrix::Identity(3, 3));
  const LatticeInSpace z3(space, RatMatrix::Identity(3, 3));
  for (const auto& shape : shapes) {
    IntMatrix basis = IntMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) basis(i, i) = shape[i];
    basis = test::random_unimodular(3, rng) * basis * test::random_unimodular(3, rng);
    const LatticeInSpace inner(space, to_rational(basis));
    const auto lattices = intermediate_lattices(inner, z3);
    CHECK(lattices.size() == brute_subgroup_count(shape));
    for (std::size_t i = 0; i < lattices.size(); ++i) {
      for (Eigen::Index r = 0; r < 3; ++r) {
        CHECK(lattices[i].contains(RatVector(inner.basis.row(r).transpose())));
        CHECK(is_integral(to_rational(lattices[i].basis)));
      }
      for (std::size_t j = 0; j < i; ++j) {
        bool same = true;
        for (Eigen::Index r = 0; r < 3; ++r)
          same = same && lattices[j].contains(RatVector(lattices[i].basis.row(r).transpose())) &&
                 lattices[i].contains(RatVector(lattices[j].basis.row(r).transpose()));
        CHECK_FALSE(same);
      }
    }
  }
}

namespace {

// Elementary divisors from gcds of k x k minors.
std::vector<Int> divisors_by_minors(const IntMatrix& g) {
  const Eigen::Index n = g.rows();
  std::vector<Int> dk{Int(1)};
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (Eigen::Index k = 1; k <= n; ++k) {
    Int acc = 0;
    std::vector<bool> rsel(n, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        RatMatrix sub(k, k);
        Eigen::Index si = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (!rsel[i]) continue;
          Eigen::Index sj = 0;
          for (Eigen::Index j = 0; j < n; ++j)
            if (csel[j]) sub(si, sj++) = Rat(g(i, j));
          ++si;
        }
        acc = gcd(acc, num(determinant(sub)));
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    dk.push_back(abs(acc));
  }
  std::vector<Int> out;
  for (Eigen::Index k = 1; k <= n; ++k) out.push_back(dk[k] / dk[k - 1]);
  return out;
}

}  // namespace

TEST_CASE("discriminant data") {
  const auto d1 = discriminant_data(ints({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  CHECK(d1.elementary_divisors == std::vector<Int>{1, 1, 1});
  CHECK(d1.e_max == 1);
  CHECK(discriminant_data(ints({{1, 0, 0}, {0, 2, 0}, {0, 0, -2}})).e_max == 2);

  const IntMatrix g = ints({{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}});
  const auto d = discriminant_data(g);
  CHECK(d.elementary_divisors == divisors_by_minors(g));
  Int prod = 1;
  for (const Int& x : d.elementary_divisors) prod *= x;
  CHECK(prod == 32);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const IntMatrix r = test::random_symmetric(3, rng, 6);
    if (determinant(to_rational(r)) == 0) continue;
    const auto dd = discriminant_data(r);
    CHECK(dd.elementary_divisors == divisors_by_minors(r));
    CHECK(dd.e_max == dd.elementary_divisors.back());
  }
  CHECK_THROWS_AS(discriminant_data(ints({{1, 1}, {1, 1}})), std::domain_error);
}

TEST_CASE("root norm candidates are the divisors of 4e") {
  CHECK(root_norm_candidates(Int(1)) == std::vector<Int>{1, 2, 4});
  const auto six = root_norm_candidates(Int(6));
  std::vector<Int> want;
  for (std::int64_t x : divisors(std::int64_t{24})) want.push_back(x);
  CHECK(six == want);
  CHECK(root_norm_candidates(ints({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})) == std::vector<Int>{1, 2, 4});
}

TEST_CASE("realize_gram reproduces the Gram matrix") {
  // four vectors in a rank-3 space
  const RatMatrix g = rat({{2, -1, 0, -1}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {-1, 0, -1, 2}});
  const GramRealization r = realize_gram(g);
  CHECK(r.gram.rows() == 3);
  const RatMatrix back = to_rational(r.coords) * r.gram * to_rational(r.coords).transpose();
  CHECK(back == g);
}

TEST_CASE("genus key examples") {
  const GenusKey k1 = genus_key(ints({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
  CHECK(k1.determinant == -1);
  CHECK(k1.elementary_divisors == std::vector<Int>{1, 1, 1});
  REQUIRE(k1.local_symbols.size() == 1);
  CHECK(k1.local_symbols[0].prime == 2);
  CHECK(k1.local_symbols[0].constituents.size() == 1);

  const IntMatrix a2_15 = ints({{-1, 0, 0}, {0, 30, -15}, {0, -15, 30}});
  const GenusKey k2 = genus_key(a2_15);
  CHECK(k2.determinant == -675);
  CHECK(k2.elementary_divisors == divisors_by_minors(a2_15));
  CHECK(k2.elementary_divisors == std::vector<Int>{1, 15, 45});

  // odd versus even unimodular part: same determinant, different genus
  CHECK(genus_key(ints({{1, 0, 0}, {0, -1, 0}, {0, 0, 2}})) !=
        genus_key(ints({{0, 1, 0}, {1, 0, 0}, {0, 0, 2}})));
  // same lattice in another basis
  const IntMatrix u = ints({{1, 1, 0}, {0, 1, 0}, {2, 3, 1}});
  CHECK(genus_key(IntMatrix(u.transpose() * a2_15 * u)) == k2);
}

TEST_CASE("genus key is invariant under unimodular change of basis") {
  std::mt19937_64 rng(13);
  int tested = 0;
  for (int trial = 0; tested < 400 && trial < 2000; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const IntMatrix g = test::random_symmetric(n, rng, 12);
    if (determinant(to_rational(g)) == 0) continue;
    ++tested;
    const GenusKey key = genus_key(g);
    for (int k = 0; k < 3; ++k) {
      const IntMatrix u = test::random_unimodular(n, rng, 20);
      CHECK(genus_key(IntMatrix(u.transpose() * g * u)) == key);
    }
  }
  CHECK(tested == 400);
}

TEST_CASE("genus key separates signatures and scales") {
  CHECK(genus_key(ints({{1, 0}, {0, 1}})) != genus_key(ints({{-1, 0}, {0, -1}})));
  CHECK(genus_key(ints({{2, 0}, {0, 2}})) != genus_key(ints({{1, 0}, {0, 4}})));
  // odd and even forms of determinant 3
  CHECK(genus_key(ints({{1, 0}, {0, 3}})) != genus_key(ints({{2, 1}, {1, 2}})));
}
