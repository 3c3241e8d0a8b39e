#include "lorentz/seeds.hpp"

#include <limits>
#include <set>
#include <stdexcept>

namespace lorentz {

namespace {

using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;

Pairs pairs_at_most_four() {
  Pairs out;
  for (std::int64_t a = 1; a <= 4; ++a)
    for (std::int64_t b = 1; a * b <= 4; ++b) out.emplace_back(a, b);
  return out;
}

Pairs pairs_between_four_and_36() {
  Pairs out;
  for (std::int64_t a = 1; a < 36; ++a)
    for (std::int64_t b = 1; a * b < 36; ++b)
      if (a * b > 4) out.emplace_back(a, b);
  return out;
}

void check_family(int family) {
  if (family < 1 || family > 5) throw std::invalid_argument("seed family must be 1..5");
}

}  // namespace

Rat SeedParams::N() const {
  return Rat(4) + Rat(4 * (C * Cp + beta() + Ap * Bp), A * B - 4);
}

Rat SeedParams::Np() const {
  return Rat(4) + Rat(4 * (C * Cp + beta() + A * B), Ap * Bp - 4);
}

Rat SeedParams::gamma() const {
  const Int b = beta(), cc = C * Cp;
  const Rat kk = Rat(Int(*k) * Int(*kp));
  const Int cube = (2 * cc + b) * (2 * cc + b) * (2 * cc + b);
  const Rat inner = Rat(2) + Rat(b, cc) - Rat(cube, Int(A * B - 4) * Int(Ap * Bp - 4) * cc * cc);
  return Rat(2) * Rat(b) / kk * inner;
}

int family_dimension(int family) {
  check_family(family);
  return family <= 2 ? 3 : family <= 4 ? 4 : 5;
}

RatMatrix seed_gram(const SeedParams& p) {
  const Rat A = p.A, B = p.B, Ap = p.Ap, Bp = p.Bp, C = p.C, Cp = p.Cp;
  const Rat beta = p.beta();
  RatMatrix m;
  switch (p.family) {
    case 1:
      m.resize(3, 3);
      m << 2 * A * C, -A * B * C, -A * C * Cp,
           -A * B * C, 2 * B * C, 0,
           -A * C * Cp, 0, 2 * A * Cp;
      break;
    case 2:
      m.resize(3, 3);
      m << 2 * A * Bp, -A * B * Bp, -beta,
           -A * B * Bp, 2 * B * Bp, -Ap * Bp * B,
           -beta, -Ap * Bp * B, 2 * Ap * B;
      break;
    case 3: {
      const Rat N = p.N(), k = Rat(*p.k);
      m.resize(4, 4);
      m << 2 * A * C, 0, -A * B * C, -A * C * Cp,
           0, 2 * A * Cp * N / (k * k), 0, -A * Cp * N / k,
           -A * B * C, 0, 2 * B * C, 0,
           -A * C * Cp, -A * Cp * N / k, 0, 2 * A * Cp;
      break;
    }
    case 4: {
      const Rat N = p.N(), k = Rat(*p.k);
      m.resize(4, 4);
      m << 2 * A * Bp, 0, -A * B * Bp, -beta,
           0, 2 * Ap * B * N / (k * k), 0, -Ap * B * N / k,
           -A * B * Bp, 0, 2 * B * Bp, -Ap * Bp * B,
           -beta, -Ap * B * N / k, -Ap * Bp * B, 2 * Ap * B;
      break;
    }
    case 5: {
      const Rat N = p.N(), Np = p.Np(), k = Rat(*p.k), kp = Rat(*p.kp), g = p.gamma();
      m.resize(5, 5);
      m << 2 * A * Bp, 0, -A * B * Bp, -A * Bp * Np / kp, -beta,
           0, 2 * Ap * B * N / (k * k), 0, g, -Ap * B * N / k,
           -A * B * Bp, 0, 2 * B * Bp, 0, -Ap * Bp * B,
           -A * Bp * Np / kp, g, 0, 2 * A * Bp * Np / (kp * kp), 0,
           -beta, -Ap * B * N / k, -Ap * Bp * B, 0, 2 * Ap * B;
      break;
    }
    default:
      check_family(p.family);
  }
  return m;
}

bool seed_params_admissible(const SeedParams& p) {
  check_family(p.family);
  const std::int64_t ab = p.A * p.B, apbp = p.Ap * p.Bp, cc = p.C * p.Cp;
  if (p.A < 1 || p.B < 1 || p.C < 1 || p.Cp < 1) return false;
  const bool primed_absent = p.family == 1 || p.family == 3;
  if (primed_absent ? (p.Ap != 0 || p.Bp != 0) : (p.Ap < 1 || p.Bp < 1)) return false;
  if (p.A * p.Bp * p.Cp != p.Ap * p.B * p.C) return false;
  if (!cc_bound_holds(p.A, p.B, p.Ap, p.Bp, p.C, p.Cp)) return false;

  switch (p.family) {
    case 1:
      if (ab > 4) return false;
      break;
    case 2:
      if (ab > 4 || apbp > 4) return false;
      break;
    case 3:
    case 4:
      if (ab <= 4 || ab >= 36 || cc <= 4) return false;
      if (p.family == 4 && apbp > 4) return false;
      break;
    case 5:
      if (ab <= 4 || ab >= 36 || apbp <= 4 || apbp >= 36 || cc <= 4) return false;
      break;
  }
  const bool needs_k = p.family >= 3, needs_kp = p.family == 5;
  if (p.k.has_value() != needs_k || p.kp.has_value() != needs_kp) return false;
  if (needs_k) {
    const Rat N = p.N();
    if (!is_integer(N) || *p.k < 1 || num(N) % *p.k != 0) return false;
  }
  if (needs_kp) {
    const Rat Np = p.Np();
    if (!is_integer(Np) || *p.kp < 1 || num(Np) % *p.kp != 0) return false;
    const Rat g = p.gamma();
    const Rat k2 = Rat(*p.k) * *p.k, kp2 = Rat(*p.kp) * *p.kp;
    if (!is_integer(g * k2 / (Rat(p.Ap * p.B) * p.N()))) return false;
    if (!is_integer(g * kp2 / (Rat(p.A * p.Bp) * p.Np()))) return false;
  }
  return true;
}

Mat<std::int64_t> normalize_seed_gram(const RatMatrix& gram) {
  Int scale = 1;
  for (const Rat& q : gram.reshaped()) scale = lcm(scale, den(q));
  Int g = 0;
  for (const Rat& q : gram.reshaped()) g = gcd(g, num(q * Rat(scale)));
  if (g == 0) throw std::domain_error("normalize_seed_gram: zero matrix");
  Mat<std::int64_t> out(gram.rows(), gram.cols());
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      const Int v = num(gram(i, j) * Rat(scale)) / g;
      if (abs(v) > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("normalize_seed_gram: entry exceeds 64 bits");
      out(i, j) = v.convert_to<std::int64_t>();
    }
  return out;
}

FamilyBounds family_bounds(int family) {
  check_family(family);
  FamilyBounds b;
  b.family = family;
  b.dimension = family_dimension(family);
  b.ab = family <= 2 ? pairs_at_most_four() : pairs_between_four_and_36();
  if (family == 1 || family == 3)
    b.apbp = {{0, 0}};
  else if (family == 5)
    b.apbp = pairs_between_four_and_36();
  else
    b.apbp = pairs_at_most_four();
  b.cc_above_four = family >= 3;

  b.notes.push_back(family <= 2 ? "(A,B): AB <= 4" : "(A,B): 4 < AB < 36, so A,B <= 35");
  if (family == 2 || family == 4) b.notes.push_back("(A',B'): A'B' <= 4");
  if (family == 5) b.notes.push_back("(A',B'): 4 < A'B' < 36");
  b.notes.push_back("C,C': 1 <= CC' <= P(A,B,A',B'), the largest integer below 4K^2 (certified)");
  if (b.cc_above_four) b.notes.push_back("C,C': CC' > 4");
  if (family != 1 && family != 3) b.notes.push_back("C' determined by AB'C' = A'BC");
  if (family >= 3) b.notes.push_back("k: positive divisors of N");
  if (family == 5) b.notes.push_back("k': positive divisors of N'");
  return b;
}

std::vector<SeedMatrix> enumerate_family(int family) {
  const FamilyBounds bounds = family_bounds(family);
  std::vector<SeedMatrix> out;
  SeedParams p;
  p.family = family;

  auto emit = [&]() { out.push_back({p, normalize_seed_gram(seed_gram(p))}); };

  for (const auto& [A, B] : bounds.ab)
    for (const auto& [Ap, Bp] : bounds.apbp) {
      p.A = A;
      p.B = B;
      p.Ap = Ap;
      p.Bp = Bp;
      const std::int64_t limit = cc_product_limit(A, B, Ap, Bp);
      for (std::int64_t C = 1; C <= limit; ++C) {
        std::vector<std::int64_t> cps;
        if (Ap == 0) {
          for (std::int64_t cp = 1; C * cp <= limit; ++cp) cps.push_back(cp);
        } else {
          if ((Ap * B * C) % (A * Bp) != 0) continue;
          cps.push_back(Ap * B * C / (A * Bp));
        }
        for (std::int64_t Cp : cps) {
          if (C * Cp > limit) continue;
          if (bounds.cc_above_four && C * Cp <= 4) continue;
          p.C = C;
          p.Cp = Cp;
          p.k.reset();
          p.kp.reset();
          if (family <= 2) {
            emit();
            continue;
          }
          const Rat N = p.N();
          if (!is_integer(N)) continue;
          std::vector<std::int64_t> kps;
          Rat Np;
          if (family == 5) {
            Np = p.Np();
            if (!is_integer(Np)) continue;
            kps = divisors(num(Np).convert_to<std::int64_t>());
          }
          for (std::int64_t k : divisors(num(N).convert_to<std::int64_t>())) {
            p.k = k;
            if (family != 5) {
              emit();
              continue;
            }
            for (std::int64_t kp : kps) {
              p.kp = kp;
              const Rat g = p.gamma();
              if (!is_integer(g * Rat(k * k) / (Rat(Ap * B) * N))) continue;
              if (!is_integer(g * Rat(kp * kp) / (Rat(A * Bp) * Np))) continue;
              emit();
            }
          }
        }
      }
    }
  return out;
}

std::vector<SeedMatrix> enumerate_seeds() {
  std::vector<SeedMatrix> out;
  std::set<std::vector<std::int64_t>> seen;
  for (int family = 1; family <= 5; ++family) {
    for (SeedMatrix& s : enumerate_family(family)) {
      std::vector<std::int64_t> key{s.gram.rows()};
      key.insert(key.end(), s.gram.data(), s.gram.data() + s.gram.size());
      if (seen.insert(std::move(key)).second) out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace lorentz
