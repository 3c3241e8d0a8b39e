#include "helpers.hpp"
#include "lorentz/seeds.hpp"

#include <doctest.h>

#include <set>

using namespace lorentz;

TEST_CASE("family (1) seed with A=B=C=C'=1") {
  SeedParams p;
  p.family = 1;
  REQUIRE(seed_params_admissible(p));
  const RatMatrix g = seed_gram(p);
  CHECK(g == test::rat({{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}}));
  const Mat<std::int64_t> n = normalize_seed_gram(g);
  CHECK(n(0, 0) == 2);
  CHECK(n(0, 1) == -1);
}

TEST_CASE("family (3) divisor side condition") {
  SeedParams p;
  p.family = 3;
  p.A = 1;
  p.B = 5;
  p.C = 5;
  p.Cp = 1;
  CHECK(p.beta() == 0);
  CHECK(p.N() == 24);
  for (std::int64_t k : divisors(std::int64_t{24})) {
    p.k = k;
    CHECK(seed_params_admissible(p));
  }
  p.k = 5;
  CHECK_FALSE(seed_params_admissible(p));
}

TEST_CASE("family bounds") {
  const FamilyBounds f1 = family_bounds(1);
  const std::set<std::pair<std::int64_t, std::int64_t>> want{{1, 1}, {1, 2}, {2, 1}, {1, 3},
                                                             {3, 1}, {1, 4}, {4, 1}, {2, 2}};
  CHECK(std::set(f1.ab.begin(), f1.ab.end()) == want);
  CHECK(f1.ab.size() == want.size());
  CHECK(cc_product_limit(1, 1, 0, 0) == 62);

  const FamilyBounds f5 = family_bounds(5);
  CHECK_FALSE(f5.apbp.empty());
  for (const auto& [a, b] : f5.apbp) {
    CHECK(a * b > 4);
    CHECK(a * b < 36);
  }
  for (int f = 1; f <= 5; ++f) {
    CHECK(family_bounds(f).dimension == family_dimension(f));
    CHECK_FALSE(family_bounds(f).notes.empty());
  }
}

TEST_CASE("seed enumeration") {
  const std::vector<std::size_t> per_family{3030, 416, 168075, 9150, 137235};
  std::size_t total = 0;
  for (int f = 1; f <= 5; ++f) {
    const auto seeds = enumerate_family(f);
    CHECK(seeds.size() == per_family[f - 1]);
    total += seeds.size();
    for (std::size_t i = 0; i < seeds.size(); i += 97) {
      const SeedMatrix& s = seeds[i];
      CHECK(s.params.family == f);
      CHECK(seed_params_admissible(s.params));
      CHECK(s.gram == normalize_seed_gram(seed_gram(s.params)));
      CHECK(s.gram.rows() == family_dimension(f));
      std::int64_t g = 0;
      for (std::int64_t x : s.gram.reshaped()) g = std::gcd(g, x);
      CHECK(g == 1);
      CHECK(s.gram == s.gram.transpose());
    }
  }
  CHECK(total == 317906);
  CHECK(enumerate_seeds().size() == 317906);
}
