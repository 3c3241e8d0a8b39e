#include "lorentz/exact.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <utility>

namespace lorentz {

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return Int(0);
  return abs(a / gcd(a, b) * b);
}

Rat rational_gcd(const std::vector<Rat>& values) {
  Int g = 0;
  Int l = 1;
  for (const Rat& q : values) {
    if (q == 0) continue;
    g = gcd(g, num(q));
    l = lcm(l, den(q));
  }
  if (g == 0) return Rat(0);
  return Rat(abs(g), l);
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  return boost::multiprecision::sqrt(n);
}

bool is_square(const Int& n) {
  if (n < 0) return false;
  Int r = isqrt(n);
  return r * r == n;
}

bool rational_sqrt(const Rat& q, Rat& root) {
  if (q < 0) return false;
  const Int p = num(q);
  const Int d = den(q);
  const Int rp = isqrt(p);
  if (rp * rp != p) return false;
  const Int rd = isqrt(d);
  if (rd * rd != d) return false;
  root = Rat(rp, rd);
  return true;
}

std::string to_string(const Int& z) { return z.str(); }

std::string to_string(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

namespace {

Int parse_integer(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
    digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("malformed integer: " + std::string(text));
  return Int(std::string(text));
}

}  // namespace

Rat parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_integer(text));
  const Int p = parse_integer(text.substr(0, slash));
  const Int q = parse_integer(text.substr(slash + 1));
  if (q <= 0) throw std::invalid_argument("nonpositive denominator: " + std::string(text));
  return Rat(p, q);
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n <= 0) throw std::domain_error("divisors of nonpositive integer");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<Int> divisors(const Int& n) {
  if (n <= 0) throw std::domain_error("divisors of nonpositive integer");
  // Factor by trial division; the values met here are small.
  std::vector<std::pair<Int, int>> factors;
  Int m = n;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<Int> out{Int(1)};
  for (const auto& [p, e] : factors) {
    const std::size_t count = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw std::domain_error("matrix entry is not integral");
      out(i, j) = num(m(i, j));
    }
  return out;
}

bool is_integral(const RatMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integer(m(i, j))) return false;
  return true;
}

bool is_symmetric(const RatMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> row_reduce(RatMatrix& a, Eigen::Index cols_to_reduce) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols_to_reduce && row < a.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const Rat inv = 1 / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rat f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Eigen::Index rank(const RatMatrix& m) {
  RatMatrix a = m;
  return static_cast<Eigen::Index>(row_reduce(a, a.cols()).size());
}

Rat determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("determinant of non-square matrix");
  RatMatrix a = m;
  const Eigen::Index n = a.rows();
  Rat det = 1;
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      det = -det;
    }
    det *= a(col, col);
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      const Rat f = a(i, col) / a(col, col);
      for (Eigen::Index j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix a(n, 2 * n);
  a.leftCols(n) = m;
  a.rightCols(n) = RatMatrix::Identity(n, n);
  if (static_cast<Eigen::Index>(row_reduce(a, n).size()) != n)
    throw std::domain_error("inverse of singular matrix");
  return a.rightCols(n);
}

bool solve(const RatMatrix& m, const RatVector& rhs, RatVector& x) {
  const Eigen::Index n = m.cols();
  RatMatrix a(m.rows(), n + 1);
  a.leftCols(n) = m;
  a.col(n) = rhs;
  const auto pivots = row_reduce(a, n);
  for (Eigen::Index i = static_cast<Eigen::Index>(pivots.size()); i < a.rows(); ++i)
    if (a(i, n) != 0) return false;
  x = RatVector::Zero(n);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    x(pivots[r]) = a(static_cast<Eigen::Index>(r), n);
  return true;
}

std::vector<Rat> congruence_diagonal(const RatMatrix& m) {
  if (!is_symmetric(m)) throw std::invalid_argument("congruence_diagonal: matrix not symmetric");
  RatMatrix a = m;
  const Eigen::Index n = a.rows();
  std::vector<Rat> diag;
  for (Eigen::Index k = 0; k < n; ++k) {
    // Bring a nonzero diagonal entry to (k, k) if one exists.
    Eigen::Index p = k;
    while (p < n && a(p, p) == 0) ++p;
    if (p == n) {
      // All remaining diagonal entries vanish; use e_i + e_j on a nonzero
      // off-diagonal pair to create one.
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = k; i < n && pi < 0; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (a(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) {
        for (Eigen::Index i = k; i < n; ++i) diag.emplace_back(0);
        break;
      }
      a.row(pi) += a.row(pj);
      a.col(pi) += a.col(pj);
      p = pi;
    }
    if (p != k) {
      a.row(p).swap(a.row(k));
      a.col(p).swap(a.col(k));
    }
    const Rat pivot = a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rat f = a(i, k) / pivot;
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (Eigen::Index j = k; j < n; ++j) a(j, i) = a(i, j);
    }
    diag.push_back(pivot);
  }
  return diag;
}

Signature signature(const RatMatrix& m) {
  Signature s;
  for (const Rat& d : congruence_diagonal(m)) {
    if (d > 0)
      ++s.positive;
    else if (d < 0)
      ++s.negative;
    else
      ++s.zero;
  }
  return s;
}

}  // namespace lorentz
