#include "lorentz/exact.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace lorentz {

namespace {

// Closed interval [lo, hi] * 2^-bits with outward rounding. Only
// nonnegative quantities are ever multiplied.
struct FixedInterval {
  Int lo;
  Int hi;
};

Int ceil_isqrt(const Int& n) {
  Int r = isqrt(n);
  return r * r == n ? r : r + 1;
}

class IntervalArith {
 public:
  explicit IntervalArith(unsigned bits) : bits_(bits), one_(Int(1) << bits) {}

  FixedInterval constant(std::int64_t n) const { return {Int(n) * one_, Int(n) * one_}; }

  FixedInterval sqrt(const FixedInterval& x) const {
    return {isqrt(x.lo << bits_), ceil_isqrt(x.hi << bits_)};
  }

  FixedInterval mul(const FixedInterval& x, const FixedInterval& y) const {
    const Int lo = (x.lo * y.lo) >> bits_;
    const Int prod_hi = x.hi * y.hi;
    Int hi = prod_hi >> bits_;
    if ((hi << bits_) != prod_hi) hi += 1;
    return {lo, hi};
  }

  static FixedInterval add(const FixedInterval& x, const FixedInterval& y) {
    return {x.lo + y.lo, x.hi + y.hi};
  }
  static FixedInterval sub(const FixedInterval& x, const FixedInterval& y) {
    return {x.lo - y.hi, x.hi - y.lo};
  }

  const Int& one() const { return one_; }

 private:
  unsigned bits_;
  Int one_;
};

// Element of a multiquadratic field: sum of q_d * sqrt(d) over squarefree d.
class Surd {
 public:
  Surd() = default;
  static Surd rational(const Rat& q) {
    Surd s;
    if (q != 0) s.terms_[Int(1)] = q;
    return s;
  }
  static Surd root(std::int64_t n) {
    if (n < 0) throw std::domain_error("Surd::root of negative integer");
    Surd s;
    if (n == 0) return s;
    std::int64_t square = 1, free = 1, m = n;
    for (std::int64_t p = 2; p * p <= m; ++p) {
      while (m % (p * p) == 0) {
        m /= p * p;
        square *= p;
      }
      if (m % p == 0) {
        m /= p;
        free *= p;
      }
    }
    free *= m;
    s.terms_[Int(free)] = Rat(square);
    return s;
  }

  Surd operator+(const Surd& o) const {
    Surd r = *this;
    for (const auto& [d, q] : o.terms_) r.accumulate(d, q);
    return r;
  }
  Surd operator-(const Surd& o) const {
    Surd r = *this;
    for (const auto& [d, q] : o.terms_) r.accumulate(d, -q);
    return r;
  }
  Surd operator*(const Surd& o) const {
    Surd r;
    for (const auto& [d1, q1] : terms_)
      for (const auto& [d2, q2] : o.terms_) {
        // sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2) with g = gcd(d1, d2)
        const Int g = gcd(d1, d2);
        r.accumulate(d1 / g * (d2 / g), q1 * q2 * Rat(g));
      }
    return r;
  }
  bool is_zero() const { return terms_.empty(); }

 private:
  void accumulate(const Int& d, const Rat& q) {
    Rat& slot = terms_[d];
    slot += q;
    if (slot == 0) terms_.erase(d);
  }
  std::map<Int, Rat> terms_;
};

// Sign of n - 4K^2 (with 2K = 2 + s + t + 2u as in the header).
int compare_with_bound(std::int64_t ab, std::int64_t apbp, std::int64_t n) {
  if (ab < 0 || apbp < 0 || n < 0) throw std::domain_error("cc bound: negative argument");
  bool exact_checked = false;
  for (unsigned bits = 64;; bits *= 2) {
    const IntervalArith ia(bits);
    const FixedInterval two = ia.constant(2);
    const FixedInterval s = ia.sqrt(ia.constant(ab));
    const FixedInterval t = ia.sqrt(ia.constant(apbp));
    const FixedInterval u = ia.sqrt(ia.mul(IntervalArith::add(two, s), IntervalArith::add(two, t)));
    const FixedInterval twice_k =
        IntervalArith::add(IntervalArith::add(two, s), IntervalArith::add(t, IntervalArith::add(u, u)));
    const FixedInterval bound = ia.mul(twice_k, twice_k);
    const Int target = Int(n) * ia.one();
    if (target < bound.lo) return -1;
    if (target > bound.hi) return 1;

    if (!exact_checked) {
      exact_checked = true;
      // 4K^2 == n  <=>  2u == r - 2 - s - t  (r = sqrt n), and squaring is
      // faithful once the right side is known to be positive.
      const Surd ss = Surd::root(ab), ts = Surd::root(apbp), rs = Surd::root(n);
      const Surd two_s = Surd::rational(2);
      const Surd lhs = Surd::rational(4) * (two_s + ss) * (two_s + ts);
      const Surd rhs_base = rs - two_s - ss - ts;
      if ((lhs - rhs_base * rhs_base).is_zero()) {
        const FixedInterval r = ia.sqrt(ia.constant(n));
        const FixedInterval diff = IntervalArith::sub(IntervalArith::sub(r, two),
                                                      IntervalArith::add(s, t));
        // |diff| == 2u >= 4, so 64 fractional bits always decide its sign.
        if (diff.lo > 0) return 0;
      }
    }
    if (bits > (1u << 20)) throw std::runtime_error("cc bound: precision limit exceeded");
  }
}

}  // namespace

bool cc_bound_holds(std::int64_t A, std::int64_t B, std::int64_t Ap, std::int64_t Bp,
                    std::int64_t C, std::int64_t Cp) {
  return compare_with_bound(A * B, Ap * Bp, C * Cp) < 0;
}

std::int64_t cc_product_limit(std::int64_t A, std::int64_t B, std::int64_t Ap, std::int64_t Bp) {
  const std::int64_t ab = A * B, apbp = Ap * Bp;
  // Floating estimate, settled by the certified comparison.
  const double s = std::sqrt(static_cast<double>(ab));
  const double t = std::sqrt(static_cast<double>(apbp));
  const double k2 = 2 + s + t + 2 * std::sqrt((2 + s) * (2 + t));
  std::int64_t p = static_cast<std::int64_t>(k2 * k2) + 2;
  while (compare_with_bound(ab, apbp, p) >= 0) --p;
  while (compare_with_bound(ab, apbp, p + 1) < 0) ++p;
  return p;
}

}  // namespace lorentz
