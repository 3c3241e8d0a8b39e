#include "lorentz/genus.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace lorentz {

namespace {

int valuation(Int n, const Int& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

int valuation(const Rat& q, const Int& p) { return valuation(num(q), p) - valuation(den(q), p); }

Int pow_int(const Int& p, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

// Unit part u of q = p^v u, reduced to an integer residue modulo m.
// Requires gcd(m, p) = p and m | p^k for the residue to be meaningful.
Int unit_residue(const Rat& q, const Int& p, const Int& m) {
  const int v = valuation(q, p);
  Rat u = q / (v >= 0 ? Rat(pow_int(p, v)) : Rat(1, pow_int(p, -v)));
  Int a = num(u) % m;
  Int b = den(u) % m;
  if (a < 0) a += m;
  // b is a unit mod m; find its inverse by brute force (m is 8 or p).
  for (Int x = 1; x < m; ++x)
    if ((b * x) % m == 1) return (a * x) % m;
  throw std::logic_error("unit_residue: denominator not invertible");
}

int legendre(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  const Int e = (p - 1) / 2;
  const Int t = boost::multiprecision::powm(r, e, p);
  return t == 1 ? 1 : -1;
}

struct Block {
  int scale;
  Rat unit_det;  // determinant of the block with its scale removed
  bool one_by_one;
  Rat value;  // the 1x1 entry when one_by_one
};

std::vector<Block> jordan_blocks(const IntMatrix& gram, const Int& p) {
  RatMatrix a = to_rational(gram);
  std::vector<Block> blocks;
  while (a.rows() > 0) {
    const Eigen::Index n = a.rows();
    int best = 0;
    Eigen::Index bi = -1, bj = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) {
        if (a(i, j) == 0) continue;
        const int v = valuation(a(i, j), p);
        // Prefer diagonal entries at equal valuation.
        if (bi < 0 || v < best || (v == best && i == j && bi != bj)) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) throw std::domain_error("genus: degenerate form");

    if (bi != bj && p != 2) {
      // e_i + e_j has norm of valuation `best` for odd p.
      a.row(bi) += a.row(bj);
      a.col(bi) += a.col(bj);
      bj = bi;
    }
    auto swap_to = [&](Eigen::Index from, Eigen::Index to) {
      if (from == to) return;
      a.row(from).swap(a.row(to));
      a.col(from).swap(a.col(to));
    };
    if (bi == bj) {
      swap_to(bi, 0);
      const Rat pivot = a(0, 0);
      RatMatrix rest = a.bottomRightCorner(n - 1, n - 1) -
                       a.bottomLeftCorner(n - 1, 1) * a.topRightCorner(1, n - 1) / pivot;
      const Rat pv = best >= 0 ? Rat(pow_int(p, best)) : Rat(1, pow_int(p, -best));
      blocks.push_back({best, pivot / pv, true, pivot / pv});
      a = rest;
    } else {
      swap_to(bi, 0);
      swap_to(bj == 0 ? bi : bj, 1);
      const RatMatrix b = a.topLeftCorner(2, 2);
      const RatMatrix b_inv = inverse(b);
      RatMatrix rest = a.bottomRightCorner(n - 2, n - 2) -
                       a.bottomLeftCorner(n - 2, 2) * b_inv * a.topRightCorner(2, n - 2);
      const Rat pv = best >= 0 ? Rat(pow_int(p, 2 * best)) : Rat(1, pow_int(p, -2 * best));
      blocks.push_back({best, determinant(b) / pv, false, Rat(0)});
      a = rest;
    }
  }
  return blocks;
}

}  // namespace

std::vector<JordanConstituent> jordan_constituents(const IntMatrix& gram, const Int& p) {
  const std::vector<Block> blocks = jordan_blocks(gram, p);
  std::map<int, std::vector<const Block*>> by_scale;
  for (const Block& b : blocks) by_scale[b.scale].push_back(&b);

  std::vector<JordanConstituent> out;
  for (const auto& [scale, members] : by_scale) {
    JordanConstituent c;
    c.scale = scale;
    Rat det = 1;
    int trace = 0;
    for (const Block* b : members) {
      c.rank += b->one_by_one ? 1 : 2;
      det *= b->unit_det;
      if (b->one_by_one) {
        c.odd = true;
        if (p == 2) trace += static_cast<int>(unit_residue(b->value, p, Int(8)));
      }
    }
    if (p == 2) {
      const int d = static_cast<int>(unit_residue(det, p, Int(8)));
      c.sign = (d == 1 || d == 7) ? 1 : -1;
      c.oddity = c.odd ? trace % 8 : 0;
    } else {
      c.sign = legendre(unit_residue(det, p, p), p);
      c.odd = false;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<JordanConstituent> canonical_2adic(std::vector<JordanConstituent> symbol) {
  const std::size_t n = symbol.size();

  // Compartments: maximal runs of type I constituents at consecutive scales.
  std::vector<std::vector<std::size_t>> compartments;
  for (std::size_t i = 0; i < n;) {
    if (!symbol[i].odd) {
      ++i;
      continue;
    }
    std::vector<std::size_t> run{i};
    std::size_t j = i + 1;
    while (j < n && symbol[j].odd && symbol[j].scale == symbol[j - 1].scale + 1) run.push_back(j++);
    compartments.push_back(std::move(run));
    i = j;
  }
  for (const auto& comp : compartments) {
    int total = 0;
    for (std::size_t i : comp) {
      total += symbol[i].oddity;
      symbol[i].oddity = 0;
    }
    symbol[comp.front()].oddity = total % 8;
  }

  // Trains: broken wherever two adjacent scales are both even (absent
  // constituents count as even).
  std::vector<std::vector<std::size_t>> trains;
  for (std::size_t i = 0; i < n; ++i) {
    bool join = false;
    if (i > 0) {
      const auto& prev = symbol[i - 1];
      const auto& cur = symbol[i];
      const int gap = cur.scale - prev.scale;
      if (gap == 1)
        join = prev.odd || cur.odd;
      else if (gap == 2)
        join = prev.odd && cur.odd;
    }
    if (join)
      trains.back().push_back(i);
    else
      trains.push_back({i});
  }

  // Sign walking: push every minus sign toward the front of its train; each
  // step flips two signs and shifts the touched compartments' oddity by 4.
  for (const auto& train : trains) {
    for (std::size_t k = train.size(); k-- > 1;) {
      const std::size_t cur = train[k];
      const std::size_t prev = train[k - 1];
      if (symbol[cur].sign != -1) continue;
      symbol[cur].sign = 1;
      symbol[prev].sign = -symbol[prev].sign;
      for (const auto& comp : compartments) {
        if (std::find(comp.begin(), comp.end(), cur) != comp.end() ||
            std::find(comp.begin(), comp.end(), prev) != comp.end())
          symbol[comp.front()].oddity = (symbol[comp.front()].oddity + 4) % 8;
      }
    }
  }
  return symbol;
}

GenusKey genus_key(const IntMatrix& gram) {
  GenusKey key;
  const RatMatrix q = to_rational(gram);
  key.signature = signature(q);
  if (key.signature.zero != 0) throw std::domain_error("genus_key: degenerate form");
  key.determinant = num(determinant(q));
  const SmithForm snf = smith_normal_form(gram);
  for (const Int& d : snf.diagonal) key.elementary_divisors.push_back(abs(d));

  std::vector<Int> primes{Int(2)};
  Int m = abs(key.determinant);
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    if (p != 2) primes.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1 && m != 2) primes.push_back(m);
  std::sort(primes.begin(), primes.end());

  for (const Int& p : primes) {
    LocalSymbol local;
    local.prime = p;
    local.constituents = jordan_constituents(gram, p);
    if (p == 2) local.constituents = canonical_2adic(std::move(local.constituents));
    key.local_symbols.push_back(std::move(local));
  }
  return key;
}

std::string to_json_string(const GenusKey& key) {
  nlohmann::json j;
  j["signature"] = {key.signature.positive, key.signature.negative, key.signature.zero};
  j["determinant"] = to_string(key.determinant);
  nlohmann::json divisors = nlohmann::json::array();
  for (const Int& d : key.elementary_divisors) divisors.push_back(to_string(d));
  j["elementary_divisors"] = divisors;
  nlohmann::json locals = nlohmann::json::array();
  for (const LocalSymbol& local : key.local_symbols) {
    nlohmann::json constituents = nlohmann::json::array();
    for (const JordanConstituent& c : local.constituents) {
      nlohmann::json jc{{"scale", c.scale}, {"rank", c.rank}, {"sign", c.sign}};
      if (local.prime == 2) {
        jc["type"] = c.odd ? "I" : "II";
        jc["oddity"] = c.oddity;
      }
      constituents.push_back(jc);
    }
    locals.push_back({{"prime", to_string(local.prime)}, {"constituents", constituents}});
  }
  j["local"] = locals;
  return j.dump();
}

}  // namespace lorentz
