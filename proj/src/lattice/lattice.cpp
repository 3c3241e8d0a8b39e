#include "lorentz/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace lorentz {

QSpace::QSpace(RatMatrix g) : gram(std::move(g)) {
  if (!is_symmetric(gram)) throw std::invalid_argument("QSpace: Gram matrix not symmetric");
}

LatticeInSpace::LatticeInSpace(QSpace s, RatMatrix b) : space(std::move(s)), basis(std::move(b)) {
  if (basis.rows() != space.dim() || basis.cols() != space.dim() ||
      lorentz::rank(basis) != space.dim())
    throw std::invalid_argument("LatticeInSpace: basis is not a full-rank square matrix");
}

RatVector LatticeInSpace::coordinates(const RatVector& x) const {
  RatVector y;
  if (!solve(basis.transpose(), x, y)) throw std::logic_error("coordinates: inconsistent system");
  return y;
}

bool LatticeInSpace::contains(const RatVector& x) const {
  const RatVector y = coordinates(x);
  return std::all_of(y.begin(), y.end(), [](const Rat& q) { return is_integer(q); });
}

bool is_integral(const LatticeInSpace& lattice) { return is_integral(lattice.gram()); }

std::pair<RatMatrix, Rat> unscale_gram(const RatMatrix& gram) {
  std::vector<Rat> entries(gram.data(), gram.data() + gram.size());
  const Rat g = rational_gcd(entries);
  if (g == 0) throw std::domain_error("unscale: zero form");
  const Rat factor = 1 / g;
  return {gram * factor, factor};
}

Unscaled unscale(const LatticeInSpace& lattice) {
  const auto [scaled, factor] = unscale_gram(lattice.gram());
  (void)scaled;
  return {LatticeInSpace(QSpace(lattice.space.gram * factor), lattice.basis), factor};
}

bool is_root(const LatticeInSpace& lattice, const RatVector& coords) {
  for (const Rat& c : coords)
    if (!is_integer(c)) throw std::invalid_argument("is_root: vector is not in the lattice");
  const RatMatrix g = lattice.gram();
  const RatVector gv = g * coords;
  const Rat norm = coords.dot(gv);
  if (norm <= 0) return false;
  for (const Rat& p : gv)
    if (!is_integer(2 * p / norm)) return false;
  return true;
}

namespace {

RatMatrix canonical_basis(const RatMatrix& basis) {
  Int scale = 1;
  for (const Rat& q : basis.reshaped()) scale = lcm(scale, den(q));
  const IntMatrix h = hermite_normal_form(to_integer(basis * Rat(scale)));
  return to_rational(h) / Rat(scale);
}

IntMatrix integer_inverse(const IntMatrix& unimodular) {
  return to_integer(inverse(to_rational(unimodular)));
}

}  // namespace

LatticeInSpace reflective_hull(const QSpace& space, const std::vector<RatVector>& roots) {
  const Eigen::Index d = space.dim();
  RatMatrix conditions(static_cast<Eigen::Index>(roots.size()), d);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Rat norm = space.dot(roots[i], roots[i]);
    if (norm <= 0) throw std::invalid_argument("reflective_hull: root of nonpositive norm");
    conditions.row(static_cast<Eigen::Index>(i)) = (space.gram * roots[i]).transpose() * (2 / norm);
  }
  if (rank(conditions) != d) throw std::invalid_argument("reflective_hull: roots do not span");

  Int common = 1;
  for (const Rat& q : conditions.reshaped()) common = lcm(common, den(q));
  const SmithForm snf = smith_normal_form(to_integer(conditions * Rat(common)));
  RatMatrix basis(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    basis.row(j) = to_rational(snf.right.col(j)).transpose() * Rat(common, snf.diagonal[j]);
  return LatticeInSpace(space, canonical_basis(basis));
}

std::vector<LatticeInSpace> intermediate_lattices(const LatticeInSpace& inner,
                                                  const LatticeInSpace& outer) {
  const Eigen::Index d = outer.rank();
  const IntMatrix sub = to_integer(inner.basis * inverse(outer.basis));
  const SmithForm snf = smith_normal_form(sub);
  const IntMatrix w_inv = integer_inverse(snf.right);

  // Coset representatives sum z_j * (row j of W^-1) with 0 <= z_j < s_j.
  std::vector<IntVector> cosets;
  {
    std::vector<Int> z(static_cast<std::size_t>(d), Int(0));
    for (;;) {
      IntVector v = IntVector::Zero(d);
      bool zero = true;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (z[j] != 0) zero = false;
        v += z[j] * w_inv.row(j).transpose();
      }
      if (!zero) cosets.push_back(v);
      Eigen::Index j = 0;
      for (; j < d; ++j) {
        z[j] += 1;
        if (z[j] < snf.diagonal[j]) break;
        z[j] = 0;
      }
      if (j == d) break;
    }
  }

  auto key_of = [](const IntMatrix& h) {
    std::string key;
    for (const Int& x : h.reshaped<Eigen::RowMajor>()) key += x.str() + ",";
    return key;
  };

  std::map<std::string, IntMatrix> seen;
  std::deque<IntMatrix> queue;
  const IntMatrix start = hermite_normal_form(sub);
  seen.emplace(key_of(start), start);
  queue.push_back(start);
  while (!queue.empty()) {
    const IntMatrix current = queue.front();
    queue.pop_front();
    IntMatrix stacked(d + 1, d);
    stacked.topRows(d) = current;
    for (const IntVector& g : cosets) {
      stacked.row(d) = g.transpose();
      IntMatrix h = hermite_normal_form(stacked);
      auto key = key_of(h);
      if (seen.count(key)) continue;
      seen.emplace(std::move(key), h);
      queue.push_back(std::move(h));
    }
  }

  std::vector<IntMatrix> found;
  found.reserve(seen.size());
  for (auto& [key, h] : seen) found.push_back(h);
  std::sort(found.begin(), found.end(), [](const IntMatrix& a, const IntMatrix& b) {
    Int det_a = 1, det_b = 1;
    for (Eigen::Index i = 0; i < a.rows(); ++i) det_a *= a(i, i);
    for (Eigen::Index i = 0; i < b.rows(); ++i) det_b *= b(i, i);
    if (det_a != det_b) return det_a > det_b;  // smaller index over inner first
    return lex_compare<Int>(a, b) < 0;
  });

  std::vector<LatticeInSpace> out;
  out.reserve(found.size());
  for (const IntMatrix& h : found)
    out.emplace_back(outer.space, to_rational(h) * outer.basis);
  return out;
}

DiscriminantData discriminant_data(const IntMatrix& gram) {
  const SmithForm snf = smith_normal_form(gram);
  DiscriminantData out;
  for (const Int& x : snf.diagonal) {
    if (x == 0) throw std::domain_error("discriminant_data: degenerate form");
    out.elementary_divisors.push_back(abs(x));
  }
  out.e_max = out.elementary_divisors.empty() ? Int(1) : out.elementary_divisors.back();
  return out;
}

DiscriminantData discriminant_data(const LatticeInSpace& lattice) {
  const RatMatrix g = lattice.gram();
  if (!is_integral(g)) throw std::domain_error("discriminant_data: lattice is not integral");
  return discriminant_data(to_integer(g));
}

std::vector<Int> root_norm_candidates(const Int& e_max) { return divisors(Int(4) * e_max); }

std::vector<Int> root_norm_candidates(const IntMatrix& gram) {
  return root_norm_candidates(discriminant_data(gram).e_max);
}

GramRealization realize_gram(const RatMatrix& gram) {
  Int scale = 1;
  for (const Rat& q : gram.reshaped()) scale = lcm(scale, den(q));
  const SmithForm snf = smith_normal_form(to_integer(gram * Rat(scale)));
  Eigen::Index r = 0;
  for (const Int& x : snf.diagonal)
    if (x != 0) ++r;
  const RatMatrix w = to_rational(snf.right.leftCols(r));
  GramRealization out;
  out.gram = w.transpose() * gram * w;
  out.coords = integer_inverse(snf.right).topRows(r).transpose();
  return out;
}

}  // namespace lorentz
