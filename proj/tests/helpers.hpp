#pragma once

#include "lorentz/exact.hpp"

#include <initializer_list>
#include <random>

namespace test {

using namespace lorentz;

inline RatMatrix rat(std::initializer_list<std::initializer_list<long>> rows) {
  RatMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) m(i, j++) = Rat(x);
    ++i;
  }
  return m;
}

inline IntMatrix ints(std::initializer_list<std::initializer_list<long>> rows) {
  return to_integer(rat(rows));
}

/// Product of random elementary column operations; determinant +-1.
inline IntMatrix random_unimodular(Eigen::Index n, std::mt19937_64& rng, int steps = 12) {
  IntMatrix u = IntMatrix::Identity(n, n);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const Eigen::Index i = pick(rng), j = pick(rng);
    if (i == j) {
      u.col(i) = (-u.col(i)).eval();
      continue;
    }
    u.col(i) = (u.col(i) + Int(coef(rng)) * u.col(j)).eval();
  }
  return u;
}

inline IntMatrix random_symmetric(Eigen::Index n, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) g(i, j) = g(j, i) = Int(d(rng));
  return g;
}

}  // namespace test
