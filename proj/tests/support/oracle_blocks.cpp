#include "oracle_blocks.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <gmpxx.h>

namespace blockheight::oracle {

namespace {

// ---- integer polynomial helpers (dense, low-to-high) ----

using ZPoly = std::vector<mpz_class>;

ZPoly zp_trim(ZPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// exact division, used for the cyclotomic polynomial recursion
ZPoly zp_divexact(ZPoly num, const ZPoly& den) {
  ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  while (num.size() >= den.size() && !num.empty()) {
    mpz_class c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    quot[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    num = zp_trim(std::move(num));
    if (num.empty()) break;
    if (num.size() < den.size()) throw std::runtime_error("oracle: non-exact division");
  }
  return quot;
}

ZPoly cyclotomic_polynomial(uint64_t e) {
  // Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d
  ZPoly num(e + 1, 0);
  num[0] = -1;
  num[e] = 1;
  for (uint64_t d = 1; d < e; ++d) {
    if (e % d != 0) continue;
    num = zp_divexact(std::move(num), cyclotomic_polynomial(d));
  }
  return num;
}

// ---- rational residues mod Phi_e ----

using QPoly = std::vector<mpq_class>;

// reduce x^k mod Phi (monic) as a rational poly
void add_power_mod(QPoly& acc, uint64_t k, const mpq_class& coeff, const ZPoly& phi) {
  size_t deg = phi.size() - 1;
  // x^k mod phi by repeated reduction of the leading term
  QPoly cur(k + 1, 0);
  cur[k] = 1;
  for (size_t d = cur.size(); d-- > deg;) {
    mpq_class c = cur[d];
    if (c == 0) continue;
    cur[d] = 0;
    for (size_t i = 0; i < deg; ++i) cur[d - deg + i] -= c * mpq_class(phi[i]);
  }
  if (acc.size() < deg) acc.resize(deg, 0);
  for (size_t i = 0; i < deg && i < cur.size(); ++i) acc[i] += coeff * cur[i];
}

// ---- F_p[y] helpers ----

struct PPoly {
  std::vector<uint64_t> c; // low-to-high, reduced mod p
};

PPoly pp_trim(PPoly a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  return a;
}

PPoly pp_mul(const PPoly& a, const PPoly& b, uint64_t p) {
  if (a.c.empty() || b.c.empty()) return {};
  PPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p;
  return pp_trim(r);
}

uint64_t pp_invmod(uint64_t a, uint64_t p) {
  uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

PPoly pp_mod(PPoly a, const PPoly& m, uint64_t p) {
  a = pp_trim(a);
  uint64_t lead_inv = pp_invmod(m.c.back(), p);
  while (a.c.size() >= m.c.size()) {
    uint64_t f = a.c.back() * lead_inv % p;
    size_t shift = a.c.size() - m.c.size();
    for (size_t i = 0; i < m.c.size(); ++i)
      a.c[shift + i] = (a.c[shift + i] + p - f * m.c[i] % p) % p;
    a = pp_trim(a);
    if (a.c.empty()) break;
  }
  return a;
}

PPoly pp_gcd(PPoly a, PPoly b, uint64_t p) {
  a = pp_trim(a);
  b = pp_trim(b);
  while (!b.c.empty()) {
    PPoly r = pp_mod(a, b, p);
    a = b;
    b = r;
  }
  if (!a.c.empty()) {
    uint64_t inv = pp_invmod(a.c.back(), p);
    for (uint64_t& x : a.c) x = x * inv % p;
  }
  return a;
}

PPoly pp_powmod(PPoly base, uint64_t e, const PPoly& m, uint64_t p) {
  PPoly r{{1}};
  base = pp_mod(base, m, p);
  while (e) {
    if (e & 1) r = pp_mod(pp_mul(r, base, p), m, p);
    base = pp_mod(pp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return r;
}

uint64_t ord_mod(uint64_t a, uint64_t n) {
  if (n == 1) return 1;
  uint64_t x = a % n, k = 1;
  while (x != 1) {
    x = x * a % n;
    ++k;
  }
  return k;
}

// deterministic equal-degree splitting: all irreducible factors of the
// square-free input have degree f
std::vector<PPoly> split_equal_degree(PPoly h, uint64_t p, uint64_t f) {
  if (h.c.size() - 1 == f) return {h};
  uint64_t q = 1;
  for (uint64_t i = 0; i < f; ++i) q *= p;
  for (uint64_t delta = 0; delta < 64 * p * f; ++delta) {
    PPoly probe;
    if (p == 2) {
      // trace map of y^(delta+1): T(z) = z + z^2 + ... + z^(2^(f-1))
      PPoly z{{0, 1}};
      PPoly zd = pp_powmod(z, delta + 1, h, p);
      PPoly acc = zd, sq = zd;
      for (uint64_t i = 1; i < f; ++i) {
        sq = pp_mod(pp_mul(sq, sq, p), h, p);
        acc.c.resize(std::max(acc.c.size(), sq.c.size()), 0);
        for (size_t t = 0; t < sq.c.size(); ++t) acc.c[t] ^= sq.c[t];
      }
      probe = pp_trim(acc);
    } else {
      // (y + delta)^((q-1)/2) - 1
      PPoly base{{delta % p, 1}};
      probe = pp_powmod(base, (q - 1) / 2, h, p);
      if (probe.c.empty())
        probe.c = {p - 1};
      else
        probe.c[0] = (probe.c[0] + p - 1) % p;
      probe = pp_trim(probe);
    }
    if (probe.c.empty()) continue;
    PPoly d = pp_gcd(h, probe, p);
    if (d.c.size() > 1 && d.c.size() < h.c.size()) {
      // split into d and h/d, recurse
      PPoly quot;
      {
        // synthetic division h / d over F_p
        PPoly rem = h;
        quot.c.assign(h.c.size() - d.c.size() + 1, 0);
        uint64_t lead_inv = pp_invmod(d.c.back(), p);
        while (rem.c.size() >= d.c.size() && !rem.c.empty()) {
          uint64_t fcoef = rem.c.back() * lead_inv % p;
          size_t shift = rem.c.size() - d.c.size();
          quot.c[shift] = fcoef;
          for (size_t i = 0; i < d.c.size(); ++i)
            rem.c[shift + i] = (rem.c[shift + i] + p - fcoef * d.c[i] % p) % p;
          rem = pp_trim(rem);
          if (rem.c.empty()) break;
        }
        quot = pp_trim(quot);
      }
      std::vector<PPoly> out = split_equal_degree(d, p, f);
      for (PPoly& part : split_equal_degree(quot, p, f)) out.push_back(std::move(part));
      return out;
    }
  }
  throw std::runtime_error("oracle: equal-degree splitting failed");
}

} // namespace

OracleBlocks oracle_block_partition(const CharacterTable& t, uint64_t p) {
  uint64_t e = t.exponent;
  uint64_t m = e;
  uint64_t pa = 1;
  while (m % p == 0) {
    m /= p;
    pa *= p;
  }
  uint64_t f = ord_mod(p, m);

  // irreducible factor of Phi_m mod p: lexicographically smallest of the
  // equal-degree pieces
  ZPoly phi_m = cyclotomic_polynomial(m);
  PPoly phim_p;
  for (const mpz_class& c : phi_m) {
    mpz_class r = c % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    phim_p.c.push_back(r.get_ui());
  }
  phim_p = pp_trim(phim_p);
  std::vector<PPoly> factors = split_equal_degree(phim_p, p, f);
  std::sort(factors.begin(), factors.end(),
            [](const PPoly& a, const PPoly& b) { return a.c < b.c; });
  const PPoly& g = factors.front();

  // u with u * pa = 1 (mod m)
  uint64_t u = 0;
  for (uint64_t cand = 0; cand < m; ++cand)
    if (cand * (pa % m) % m == 1 % m) {
      u = cand;
      break;
    }

  ZPoly phi_e = cyclotomic_polynomial(e);
  size_t deg_e = phi_e.size() - 1;

  // reduced omega vectors, one per character
  size_t c = t.num_classes();
  std::map<std::vector<std::vector<uint64_t>>, std::vector<int>> groups;
  for (size_t chi = 0; chi < c; ++chi) {
    std::vector<std::vector<uint64_t>> key;
    for (size_t j = 0; j < c; ++j) {
      // omega = |K_j| chi(g_j) / chi(1) in Q[x]/(Phi_e)
      QPoly w;
      mpq_class scale(static_cast<unsigned long>(t.class_sizes[j]),
                      static_cast<unsigned long>(t.degrees[chi]));
      scale.canonicalize();
      for (const auto& [k, coeff] : t.irreducibles[chi][j].terms())
        add_power_mod(w, k, scale * mpq_class(coeff), phi_e);
      w.resize(deg_e, 0);
      // integrality: denominators must be 1 in the power basis
      PPoly red;
      for (size_t i = 0; i < deg_e; ++i) {
        w[i].canonicalize();
        if (w[i].get_den() != 1)
          throw std::runtime_error("oracle: central character not integral");
        // x^i -> y^(u * i mod m) mod (g, p)
        mpz_class cm = w[i].get_num() % static_cast<long>(p);
        if (cm < 0) cm += static_cast<long>(p);
        uint64_t cv = cm.get_ui();
        if (cv == 0) continue;
        PPoly mono;
        mono.c.assign(u * (i % m) % m + 1, 0);
        mono.c.back() = cv;
        mono = pp_mod(mono, g, p);
        red.c.resize(std::max(red.c.size(), mono.c.size()), 0);
        for (size_t tdx = 0; tdx < mono.c.size(); ++tdx)
          red.c[tdx] = (red.c[tdx] + mono.c[tdx]) % p;
      }
      red = pp_trim(red);
      key.push_back(red.c);
    }
    groups[std::move(key)].push_back(static_cast<int>(chi));
  }

  OracleBlocks ob;
  for (auto& [key, chars] : groups) ob.blocks.push_back(chars);
  std::sort(ob.blocks.begin(), ob.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  auto nu = [&](uint64_t n) {
    uint32_t v = 0;
    while (n % p == 0) {
      n /= p;
      ++v;
    }
    return v;
  };
  uint32_t nu_g = nu(t.order);
  ob.heights.assign(c, 0);
  for (const auto& blk : ob.blocks) {
    uint32_t min_nu = UINT32_MAX;
    for (int chi : blk) min_nu = std::min(min_nu, nu(t.degrees[chi]));
    ob.defects.push_back(nu_g - min_nu);
    for (int chi : blk) ob.heights[chi] = nu(t.degrees[chi]) - min_nu;
  }
  return ob;
}

} // namespace blockheight::oracle
