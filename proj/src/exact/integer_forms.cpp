#include "lorentz/exact.hpp"

#include <stdexcept>

namespace lorentz {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Position of the nonzero entry of smallest absolute value in the pivot row
// and column of a at (t, t); returns false if both are entirely zero.
bool smallest_in_cross(const IntMatrix& a, Eigen::Index t, Eigen::Index& pr, Eigen::Index& pc) {
  bool found = false;
  Int best;
  auto consider = [&](Eigen::Index i, Eigen::Index j) {
    if (a(i, j) == 0) return;
    Int v = abs(a(i, j));
    if (!found || v < best) {
      found = true;
      best = v;
      pr = i;
      pc = j;
    }
  };
  for (Eigen::Index i = t; i < a.rows(); ++i) consider(i, t);
  for (Eigen::Index j = t + 1; j < a.cols(); ++j) consider(t, j);
  return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  IntMatrix a = m;
  IntMatrix left = IntMatrix::Identity(rows, rows);
  IntMatrix right = IntMatrix::Identity(cols, cols);
  const Eigen::Index steps = std::min(rows, cols);

  for (Eigen::Index t = 0; t < steps; ++t) {
    // Pick any nonzero entry of the trailing block as the starting pivot.
    Eigen::Index pr = -1, pc = -1;
    {
      Int best;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (a(i, j) != 0 && (pr < 0 || abs(a(i, j)) < best)) {
            best = abs(a(i, j));
            pr = i;
            pc = j;
          }
    }
    if (pr < 0) break;

    for (;;) {
      if (pr != t) {
        a.row(pr).swap(a.row(t));
        left.row(pr).swap(left.row(t));
      }
      if (pc != t) {
        a.col(pc).swap(a.col(t));
        right.col(pc).swap(right.col(t));
      }
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Int q = a(i, t) / a(t, t);
        a.row(i) -= q * a.row(t);
        left.row(i) -= q * left.row(t);
        if (a(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Int q = a(t, j) / a(t, t);
        a.col(j) -= q * a.col(t);
        right.col(j) -= q * right.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        smallest_in_cross(a, t, pr, pc);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      a.row(t) += a.row(bad);
      left.row(t) += left.row(bad);
      smallest_in_cross(a, t, pr, pc);
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      left.row(t) = -left.row(t);
    }
  }

  SmithForm out;
  out.diagonal.reserve(static_cast<std::size_t>(steps));
  for (Eigen::Index t = 0; t < steps; ++t) out.diagonal.push_back(a(t, t));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const Eigen::Index rows = a.rows();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < rows; ++col) {
    for (;;) {
      Eigen::Index best = -1;
      for (Eigen::Index i = row; i < rows; ++i)
        if (a(i, col) != 0 && (best < 0 || abs(a(i, col)) < abs(a(best, col)))) best = i;
      if (best < 0) break;
      if (best != row) a.row(best).swap(a.row(row));
      bool clean = true;
      for (Eigen::Index i = row + 1; i < rows; ++i) {
        if (a(i, col) == 0) continue;
        const Int q = a(i, col) / a(row, col);
        a.row(i) -= q * a.row(row);
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) a.row(row) = -a.row(row);
    for (Eigen::Index i = 0; i < row; ++i) {
      const Int q = floor_div(a(i, col), a(row, col));
      if (q != 0) a.row(i) -= q * a.row(row);
    }
    ++row;
  }
  return a.topRows(row);
}

RankKernel rank_kernel(const RatMatrix& m) {
  Int scale = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) scale = lcm(scale, den(m(i, j)));
  const IntMatrix a = to_integer(m * Rat(scale));
  const SmithForm snf = smith_normal_form(a);
  RankKernel out;
  for (const Int& d : snf.diagonal)
    if (d != 0) ++out.rank;
  for (Eigen::Index j = out.rank; j < m.cols(); ++j) out.kernel_basis.push_back(snf.right.col(j));
  return out;
}

}  // namespace lorentz
