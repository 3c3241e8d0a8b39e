#pragma once

// Exact rational and integer linear algebra on top of Eigen.
//
// Scalars are GMP-backed Boost.Multiprecision numbers with expression
// templates disabled so that they behave as plain value types inside Eigen
// expressions.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lorentz {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <class Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using RatMatrix = Mat<Rat>;
using RatVector = Vec<Rat>;
using IntMatrix = Mat<Int>;
using IntVector = Vec<Int>;

// ---------------------------------------------------------------------------
// Scalar helpers

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }
inline bool is_integer(const Rat& q) { return den(q) == 1; }

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Positive gcd of a set of rationals (the generator of the Z-module they span).
/// Zero when every entry is zero.
Rat rational_gcd(const std::vector<Rat>& values);

/// Largest r with r*r <= n, for n >= 0.
Int isqrt(const Int& n);
bool is_square(const Int& n);
/// Exact square root of a nonnegative rational, if it is a rational square.
bool rational_sqrt(const Rat& q, Rat& root);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rat& q);
std::string to_string(const Int& z);
/// Inverse of to_string; throws std::invalid_argument on malformed input.
Rat parse_rational(std::string_view text);

/// Positive divisors of a positive integer, ascending.
std::vector<Int> divisors(const Int& n);
std::vector<std::int64_t> divisors(std::int64_t n);

// ---------------------------------------------------------------------------
// Matrix helpers

template <class Derived>
RatMatrix to_rational(const Eigen::MatrixBase<Derived>& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

/// Integer matrix from a rational one; throws if any entry is not integral.
IntMatrix to_integer(const RatMatrix& m);

bool is_integral(const RatMatrix& m);
bool is_symmetric(const RatMatrix& m);

/// Row-major lexicographic comparison of equally sized matrices.
template <class Scalar>
std::strong_ordering lex_compare(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (auto c = a.rows() <=> b.rows(); c != 0) return c;
  if (auto c = a.cols() <=> b.cols(); c != 0) return c;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) < b(i, j)) return std::strong_ordering::less;
      if (b(i, j) < a(i, j)) return std::strong_ordering::greater;
    }
  return std::strong_ordering::equal;
}

/// Exact rank over Q.
Eigen::Index rank(const RatMatrix& m);

/// Exact determinant by Gaussian elimination.
Rat determinant(const RatMatrix& m);

/// Exact inverse of a square nonsingular matrix; throws std::domain_error
/// when singular.
RatMatrix inverse(const RatMatrix& m);

/// Solve m * x = rhs exactly. Returns false if the system is inconsistent.
/// Over- and under-determined systems are accepted; for an underdetermined
/// consistent system the free variables are set to zero.
bool solve(const RatMatrix& m, const RatVector& rhs, RatVector& x);

// ---------------------------------------------------------------------------
// Integer normal forms

struct SmithForm {
  std::vector<Int> diagonal;  // length min(rows, cols); d_i | d_{i+1}, zeros last
  IntMatrix left;             // unimodular, rows x rows
  IntMatrix right;            // unimodular, cols x cols
};

/// left * m * right = diag(diagonal).
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form of the lattice spanned by the rows of m:
/// upper echelon, positive pivots, entries above each pivot reduced into
/// [0, pivot). Zero rows are dropped, so the result has rank(m) rows.
IntMatrix hermite_normal_form(const IntMatrix& m);

struct RankKernel {
  Eigen::Index rank = 0;
  std::vector<IntVector> kernel_basis;  // saturated basis of the integer null space
};

RankKernel rank_kernel(const RatMatrix& m);

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Inertia of a symmetric rational matrix by exact congruence diagonalization.
Signature signature(const RatMatrix& m);

/// Diagonal of a congruence diagonalization P m P^T = diag(d) of a
/// symmetric matrix (P invertible over Q).
std::vector<Rat> congruence_diagonal(const RatMatrix& m);

// ---------------------------------------------------------------------------
// Certified radical bound

/// Decides C*Cp < 4K^2 where
///   K = 1 + sqrt(A B)/2 + sqrt(Ap Bp)/2 + sqrt((2 + sqrt(A B))(2 + sqrt(Ap Bp))).
/// Uses outward-rounded fixed-point interval arithmetic with increasing
/// precision, and an exact multiquadratic zero test when the interval
/// cannot separate the two sides.
bool cc_bound_holds(std::int64_t A, std::int64_t B, std::int64_t Ap,
                    std::int64_t Bp, std::int64_t C, std::int64_t Cp);

/// Largest integer P with P < 4K^2 (so C*Cp < 4K^2 iff C*Cp <= P).
std::int64_t cc_product_limit(std::int64_t A, std::int64_t B, std::int64_t Ap,
                              std::int64_t Bp);

}  // namespace lorentz
