#include "lorentz/canonical.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lorentz {

namespace {

bool gram_less(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  return lex_compare<Int>(a, b) < 0;
}

}  // namespace

UnscaledRoots forget_and_unscale(const Chain& chain) {
  const Eigen::Index m = static_cast<Eigen::Index>(chain.roots.size());
  IntMatrix roots(m, 3);
  for (Eigen::Index i = 0; i < m; ++i) roots.row(i) = chain.roots[i].transpose();
  IntMatrix gram = roots * IntMatrix(chain.gram) * roots.transpose();
  Int g = 0;
  for (const Int& x : gram.reshaped()) g = gcd(g, x);
  if (g == 0) throw std::domain_error("forget_and_unscale: zero Gram matrix");
  for (Int& x : gram.reshaped()) x /= g;
  return {std::move(gram), Rat(1, g)};
}

RootSystemRecord make_record(const IntMatrix& gram, const Rat& scale) {
  RootSystemRecord rec;
  rec.n = static_cast<int>(gram.rows());
  rec.gram = dihedral_canonical(gram);
  rec.scale_applied = scale;
  rec.realization = realize_gram(to_rational(rec.gram));
  if (rec.realization.gram.rows() != 3)
    throw std::logic_error("make_record: root lattice does not have rank 3");
  const auto rho = weyl_vector(rec.realization.gram, to_rational(rec.realization.coords));
  if (!rho) throw std::logic_error("make_record: no Weyl vector");
  rec.rho = *rho;
  rec.rho_norm = rec.rho.dot(rec.realization.gram * rec.rho);
  return rec;
}

std::vector<RootSystemRecord> dedup(std::vector<RootSystemRecord> records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const RootSystemRecord& a, const RootSystemRecord& b) {
                     if (a.gram == b.gram) return a.scale_applied < b.scale_applied;
                     return gram_less(a.gram, b.gram);
                   });
  std::vector<RootSystemRecord> out;
  for (RootSystemRecord& r : records)
    if (out.empty() || out.back().gram != r.gram) out.push_back(std::move(r));
  return out;
}

std::vector<RootSystemRecord> records_from_chains(const std::vector<Chain>& closed, int jobs) {
  std::vector<UnscaledRoots> canon(closed.size());
  parallel_for(closed.size(), jobs, [&](std::size_t i) {
    UnscaledRoots u = forget_and_unscale(closed[i]);
    u.gram = dihedral_canonical(u.gram);
    canon[i] = std::move(u);
  });

  std::vector<std::size_t> idx(canon.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (canon[a].gram == canon[b].gram) return canon[a].scale < canon[b].scale;
    return gram_less(canon[a].gram, canon[b].gram);
  });
  std::vector<std::size_t> unique;
  for (std::size_t i : idx)
    if (unique.empty() || canon[unique.back()].gram != canon[i].gram) unique.push_back(i);

  std::vector<RootSystemRecord> out(unique.size());
  parallel_for(unique.size(), jobs, [&](std::size_t k) {
    out[k] = make_record(canon[unique[k]].gram, canon[unique[k]].scale);
  });
  return out;
}

RatMatrix twist_matrix(const RootSystemRecord& record) {
  const Eigen::Index n = record.gram.rows();
  RatMatrix c(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      c(i, j) = Rat(record.gram(i, j) * record.gram(i, j), record.gram(i, i) * record.gram(j, j));
  return dihedral_canonical(c);
}

std::string twist_class(const RootSystemRecord& record) {
  const RatMatrix c = twist_matrix(record);
  std::string key = std::to_string(c.rows()) + ":";
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = i + 1; j < c.cols(); ++j) key += to_string(c(i, j)) + ",";
  return key;
}

std::string validate_record(const RootSystemRecord& rec) {
  const IntMatrix& g = rec.gram;
  if (g.rows() != rec.n || g.cols() != rec.n || rec.n < 3) return "bad dimensions";
  if (g != g.transpose()) return "gram not symmetric";
  Int d = 0;
  for (const Int& x : g.reshaped()) d = gcd(d, x);
  if (d != 1) return "root lattice not unscaled";
  for (Eigen::Index i = 0; i < rec.n; ++i) {
    if (g(i, i) <= 0) return "nonpositive norm";
    for (Eigen::Index j = 0; j < rec.n; ++j)
      if (i != j && g(i, j) > 0) return "positive off-diagonal entry";
  }
  if (dihedral_canonical(g) != g) return "gram not dihedral-canonical";
  const RatMatrix coords = to_rational(rec.realization.coords);
  if (coords * rec.realization.gram * coords.transpose() != to_rational(g))
    return "realization does not reproduce the gram";
  if (signature(rec.realization.gram) != Signature{2, 1, 0}) return "signature is not (2,1)";
  const RatVector rho_products = coords * (rec.realization.gram * rec.rho);
  for (Eigen::Index i = 0; i < rec.n; ++i)
    if (rho_products(i) != Rat(-g(i, i)) / 2) return "rho equation fails";
  if (rec.rho_norm != rec.rho.dot(rec.realization.gram * rec.rho)) return "stale rho norm";
  if (rec.rho_norm >= 0) return "rho is not timelike";
  return {};
}

}  // namespace lorentz
