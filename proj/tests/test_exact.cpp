#include "helpers.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <doctest.h>

#include <Eigen/Eigenvalues>

using namespace lorentz;
using test::rat;

TEST_CASE("rationals print and parse in p/q form") {
  CHECK(to_string(Rat(-3, 6)) == "-1/2");
  CHECK(to_string(Rat(4)) == "4");
  CHECK(parse_rational("-10/4") == Rat(-5, 2));
  CHECK(parse_rational("7") == Rat(7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("rational_gcd and square roots") {
  CHECK(rational_gcd({Rat(3, 2), Rat(-3), Rat(9, 2)}) == Rat(3, 2));
  Rat r;
  CHECK(rational_sqrt(Rat(9, 4), r));
  CHECK(r == Rat(3, 2));
  CHECK_FALSE(rational_sqrt(Rat(8), r));
  CHECK_FALSE(rational_sqrt(Rat(-1), r));
  CHECK(divisors(std::int64_t{24}) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 8, 12, 24});
}

TEST_CASE("rank_kernel") {
  const auto id = rank_kernel(RatMatrix::Identity(3, 3));
  CHECK(id.rank == 3);
  CHECK(id.kernel_basis.empty());

  const auto k = rank_kernel(rat({{2, -2}, {-2, 2}}));
  CHECK(k.rank == 1);
  REQUIRE(k.kernel_basis.size() == 1);
  const IntVector v = k.kernel_basis[0];
  CHECK(abs(v(0)) == 1);
  CHECK(v(0) == v(1));

  // family (1) seed with A=B=C=C'=1
  CHECK(rank_kernel(rat({{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}})).rank == 3);
}

TEST_CASE("signature examples") {
  CHECK(signature(rat({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}})) == Signature{2, 1, 0});
  CHECK(signature(rat({{2, -2}, {-2, 2}})) == Signature{1, 0, 1});
  CHECK(signature(rat({{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}})) == Signature{2, 1, 0});
  CHECK(determinant(rat({{2, -2, -2}, {-2, 2, -2}, {-2, -2, 2}})) == Rat(-32));
}

TEST_CASE("signature agrees with floating eigenvalues and is congruence invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    const IntMatrix g = test::random_symmetric(n, rng, 5);
    const RatMatrix gr = to_rational(g);
    const Signature s = signature(gr);

    Eigen::MatrixXd gd(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) gd(i, j) = g(i, j).convert_to<double>();
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gd).eigenvalues();
    const Eigen::Index zeros = n - rank(gr);
    int pos = 0, neg = 0;
    // the exact rank fixes how many eigenvalues are zero; the rest have clear signs
    std::vector<double> sorted(ev.data(), ev.data() + n);
    std::sort(sorted.begin(), sorted.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    for (Eigen::Index i = 0; i < n - zeros; ++i) (sorted[i] > 0 ? pos : neg) += 1;
    CHECK(s == Signature{pos, neg, static_cast<int>(zeros)});

    const IntMatrix u = test::random_unimodular(n, rng);
    CHECK(signature(to_rational(IntMatrix(u.transpose() * g * u))) == s);
  }
}

TEST_CASE("smith normal form") {
  CHECK(smith_normal_form(test::ints({{2, 0}, {0, 4}})).diagonal == std::vector<Int>{2, 4});
  CHECK(smith_normal_form(test::ints({{2, 0}, {0, 3}})).diagonal == std::vector<Int>{1, 6});
  CHECK(smith_normal_form(IntMatrix::Zero(3, 3)).diagonal == std::vector<Int>{0, 0, 0});

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IntMatrix m(r, c);
    std::uniform_int_distribution<int> d(-9, 9);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = d(rng);
    const SmithForm s = smith_normal_form(m);
    IntMatrix diag = IntMatrix::Zero(r, c);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) diag(i, i) = s.diagonal[i];
    CHECK(IntMatrix(s.left * m * s.right) == diag);
    CHECK(abs(determinant(to_rational(s.left))) == 1);
    CHECK(abs(determinant(to_rational(s.right))) == 1);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      CHECK(s.diagonal[i] >= 0);
      if (s.diagonal[i] == 0)
        CHECK(s.diagonal[i + 1] == 0);
      else
        CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
    // invariance under unimodular changes on both sides
    const IntMatrix u = test::random_unimodular(r, rng), v = test::random_unimodular(c, rng);
    CHECK(smith_normal_form(IntMatrix(u * m * v)).diagonal == s.diagonal);
  }
}

TEST_CASE("inverse and solve") {
  const RatMatrix m = rat({{2, -1, -1}, {-1, 2, 0}, {-1, 0, 2}});
  CHECK(RatMatrix(m * inverse(m)) == RatMatrix::Identity(3, 3));
  RatVector x;
  RatVector rhs(3);
  rhs << Rat(1), Rat(0), Rat(0);
  REQUIRE(solve(m, rhs, x));
  CHECK(RatVector(m * x) == rhs);
  CHECK_FALSE(solve(rat({{1, 1}, {1, 1}}), RatVector(RatVector::Unit(2, 0)), x));
}

namespace {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

// Sign of 4K^2 - CC' at 200 digits; 0 when it is below 1e-150 in size.
int cc_oracle(long A, long B, long Ap, long Bp, long C, long Cp) {
  using boost::multiprecision::sqrt;
  const Big sab = sqrt(Big(A * B)), sapbp = sqrt(Big(Ap * Bp));
  const Big K = 1 + sab / 2 + sapbp / 2 + sqrt((2 + sab) * (2 + sapbp));
  const Big diff = 4 * K * K - Big(C * Cp);
  if (abs(diff) < Big("1e-150")) return 0;
  return diff > 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("cc bound at the published boundary cases") {
  CHECK(cc_bound_holds(1, 1, 0, 0, 62, 1));
  CHECK_FALSE(cc_bound_holds(1, 1, 0, 0, 63, 1));
  CHECK(cc_product_limit(1, 1, 0, 0) == 62);

  // K = 1 + 1 + 1 + 4 = 7
  CHECK(cc_bound_holds(2, 2, 2, 2, 195, 1));
  CHECK_FALSE(cc_bound_holds(2, 2, 2, 2, 196, 1));
  CHECK_FALSE(cc_bound_holds(2, 2, 2, 2, 14, 14));
  CHECK(cc_product_limit(2, 2, 2, 2) == 195);
}

TEST_CASE("cc bound is false on every exact equality CC' = 4K^2") {
  // Rational K needs AB and A'B' square and (2+a)(2+a') square.
  int equalities = 0;
  for (long a = 1; a < 6; ++a)
    for (long ap = 0; ap < 6; ++ap) {
      const long prod = (2 + a) * (2 + ap);
      const long s = static_cast<long>(std::llround(std::sqrt(double(prod))));
      if (s * s != prod) continue;
      // 2K = 2 + a + ap + 2s
      const long two_k = 2 + a + ap + 2 * s;
      const long four_k2 = two_k * two_k;
      ++equalities;
      CHECK_FALSE(cc_bound_holds(a, a, ap, ap, four_k2, 1));
      CHECK(cc_bound_holds(a, a, ap, ap, four_k2 - 1, 1));
      CHECK(cc_product_limit(a, a, ap, ap) == four_k2 - 1);
    }
  CHECK(equalities >= 2);
}

TEST_CASE("cc bound agrees with 200-digit evaluation") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> ab(0, 35);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const long A = ab(rng), B = ab(rng), Ap = ab(rng), Bp = ab(rng);
    const long limit = cc_product_limit(A, B, Ap, Bp);
    std::uniform_int_distribution<long> cc(1, limit + 3);
    const long C = cc(rng);
    const int sign = cc_oracle(A, B, Ap, Bp, C, 1);
    CHECK(cc_bound_holds(A, B, Ap, Bp, C, 1) == (sign > 0));
    // the limit is the last product below the bound
    CHECK(cc_oracle(A, B, Ap, Bp, limit, 1) > 0);
    CHECK(cc_oracle(A, B, Ap, Bp, limit + 1, 1) <= 0);
    ++checked;
  }
  CHECK(checked == 10000);
}
