#include "blockheight/fq.hpp"

#include <algorithm>
#include <numeric>

#include "blockheight/errors.hpp"

namespace blockheight {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t q) {
  uint64_t r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

uint64_t invmod_p(uint64_t a, uint64_t q) { return powmod(a % q, q - 2, q); }

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic for all 64-bit integers with these witnesses
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t find_prime_1_mod(uint64_t e, uint64_t lower) {
  uint64_t q = (lower / e + 1) * e + 1;
  if (e == 1) q = lower + 1;
  const uint64_t bound = (1ull << 63);
  for (; q < bound; q += e)
    if (is_prime_u64(q)) return q;
  return 0;
}

namespace {

std::vector<uint64_t> prime_divisors(uint64_t n) {
  std::vector<uint64_t> ps;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

} // namespace

uint64_t primitive_root_of_unity(uint64_t e, uint64_t q) {
  if ((q - 1) % e != 0)
    fail("InvariantViolation", "no e-th roots of unity: e does not divide q-1");
  if (e == 1) return 1;
  std::vector<uint64_t> ps = prime_divisors(e);
  for (uint64_t g = 2; g < q; ++g) {
    uint64_t z = powmod(g, (q - 1) / e, q);
    bool primitive = true;
    for (uint64_t r : ps)
      if (powmod(z, e / r, q) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return z;
  }
  fail("InvariantViolation", "no primitive root found (q not prime?)");
}

bool sqrtmod(uint64_t a, uint64_t q, uint64_t& root) {
  a %= q;
  if (a == 0) {
    root = 0;
    return true;
  }
  if (powmod(a, (q - 1) / 2, q) != 1) return false;
  if (q % 4 == 3) {
    root = powmod(a, (q + 1) / 4, q);
    return true;
  }
  // Tonelli-Shanks with the smallest quadratic non-residue
  uint64_t s = q - 1;
  int e = 0;
  while ((s & 1) == 0) {
    s >>= 1;
    ++e;
  }
  uint64_t n = 2;
  while (powmod(n, (q - 1) / 2, q) == 1) ++n;
  uint64_t x = powmod(a, (s + 1) / 2, q);
  uint64_t b = powmod(a, s, q);
  uint64_t g = powmod(n, s, q);
  int r = e;
  while (true) {
    uint64_t t = b;
    int m = 0;
    while (t != 1 && m < r) {
      t = mulmod(t, t, q);
      ++m;
    }
    if (m == 0) {
      root = x;
      return true;
    }
    uint64_t gs = g;
    for (int i = 0; i < r - m - 1; ++i) gs = mulmod(gs, gs, q);
    x = mulmod(x, gs, q);
    g = mulmod(gs, gs, q);
    b = mulmod(b, g, q);
    r = m;
  }
}

// ---- FqField ----

FqField::Elt FqField::reduce(std::vector<uint64_t> poly) const {
  // poly has arbitrary degree; reduce mod mod_ (monic degree f)
  for (size_t d = poly.size(); d-- > f_;) {
    uint64_t c = poly[d] % p_;
    if (c == 0) continue;
    // subtract c * x^(d-f) * mod_
    for (uint32_t i = 0; i <= f_; ++i) {
      uint64_t sub = c * mod_[i] % p_;
      size_t pos = d - f_ + i;
      poly[pos] = (poly[pos] + p_ - sub) % p_;
    }
  }
  Elt out;
  size_t top = std::min<size_t>(poly.size(), f_);
  out.resize(top);
  for (size_t i = 0; i < top; ++i) out[i] = static_cast<uint32_t>(poly[i] % p_);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

FqField::Elt FqField::add(const Elt& a, const Elt& b) const {
  Elt out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] = static_cast<uint32_t>((out[i] + b[i]) % p_);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

FqField::Elt FqField::sub(const Elt& a, const Elt& b) const {
  Elt out(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i)
    out[i] = static_cast<uint32_t>((out[i] + p_ - b[i]) % p_);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

FqField::Elt FqField::mul(const Elt& a, const Elt& b) const {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> poly(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) {
      poly[i + j] += uint64_t(a[i]) * b[j] % p_;
      if (poly[i + j] >= (uint64_t(1) << 62)) poly[i + j] %= p_;
    }
  return reduce(std::move(poly));
}

FqField::Elt FqField::pow(Elt a, mpz_class e) const {
  Elt r = one();
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FqField::Elt FqField::from_int(const mpz_class& n) const {
  mpz_class m = n % static_cast<unsigned long>(p_);
  if (m < 0) m += static_cast<unsigned long>(p_);
  uint32_t c = static_cast<uint32_t>(m.get_ui());
  if (c == 0) return {};
  return {c};
}

FqField::Elt FqField::x() const {
  if (f_ == 1) {
    // x reduces to -mod_[0]
    uint32_t c = static_cast<uint32_t>((p_ - mod_[0] % p_) % p_);
    return c ? Elt{c} : Elt{};
  }
  return {0, 1};
}

mpz_class FqField::unit_order() const {
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(p_), f_);
  return n - 1;
}

bool FqField::next_element(Elt& e) const {
  // base-p counter over coefficient vectors of length f
  if (e.size() < f_) e.resize(f_, 0);
  for (uint32_t i = 0; i < f_; ++i) {
    if (++e[i] < p_) return true;
    e[i] = 0;
  }
  return false;
}

namespace {

// polynomial helpers over F_p for the irreducibility test
using Poly = std::vector<uint32_t>;

Poly poly_trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint64_t> prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + uint64_t(a[i]) * b[j]) % p;
  size_t f = mod.size() - 1;
  for (size_t d = prod.size(); d-- > f;) {
    uint64_t c = prod[d] % p;
    if (!c) continue;
    for (size_t i = 0; i <= f; ++i)
      prod[d - f + i] = (prod[d - f + i] + p - c * mod[i] % p) % p;
  }
  Poly out(prod.begin(), prod.begin() + std::min(prod.size(), f));
  return poly_trim(out);
}

Poly poly_powmod_x(uint64_t e, const Poly& mod, uint64_t p) {
  // x^e mod (mod)
  Poly r{1};
  Poly base = poly_trim([&] {
    Poly x{0, 1};
    if (mod.size() - 1 == 1) {
      // degree-1 modulus: x = -mod[0]
      return Poly{static_cast<uint32_t>((p - mod[0] % p) % p)};
    }
    return x;
  }());
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  a = poly_trim(a);
  b = poly_trim(b);
  while (!b.empty()) {
    // a mod b
    uint64_t lead_inv = invmod_p(b.back(), p);
    while (a.size() >= b.size()) {
      uint64_t c = uint64_t(a.back()) * lead_inv % p;
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - c * b[i] % p) % p);
      a = poly_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool poly_is_irreducible(const Poly& g, uint64_t p) {
  uint32_t f = static_cast<uint32_t>(g.size() - 1);
  // x^(p^f) == x mod g, and gcd(x^(p^(f/r)) - x, g) = 1 for prime r | f
  auto frob_pow = [&](uint32_t k) {
    // x^(p^k) mod g by repeated p-th powering
    Poly r = poly_powmod_x(p, g, p);
    for (uint32_t i = 1; i < k; ++i) {
      // raise r to the p-th power: square-and-multiply with exponent p
      Poly acc{1};
      Poly base = r;
      uint64_t e = p;
      while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, g, p);
        base = poly_mulmod(base, base, g, p);
        e >>= 1;
      }
      r = acc;
    }
    return r;
  };
  Poly x = (f == 1) ? Poly{static_cast<uint32_t>((p - g[0] % p) % p)} : Poly{0, 1};
  x = poly_trim(x);
  if (poly_trim(frob_pow(f)) != x) return false;
  for (uint64_t r : prime_divisors(f)) {
    Poly xr = frob_pow(f / static_cast<uint32_t>(r));
    Poly diff(std::max<size_t>(xr.size(), 2), 0);
    for (size_t i = 0; i < xr.size(); ++i) diff[i] = xr[i];
    diff[1] = static_cast<uint32_t>((diff[1] + p - 1) % p);
    diff = poly_trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(diff, g, p).size() > 1) return false;
  }
  return true;
}

} // namespace

FqField::FqField(uint64_t p, uint32_t f) : p_(p), f_(f) {
  if (f_ == 0) fail("InvariantViolation", "field degree must be positive");
  // lexicographically first monic irreducible of degree f over F_p
  std::vector<uint32_t> g(f_ + 1, 0);
  g[f_] = 1;
  while (true) {
    if (poly_is_irreducible(g, p_)) break;
    // increment constant..leading-1 coefficients as a base-p counter
    uint32_t i = 0;
    for (; i < f_; ++i) {
      if (++g[i] < p_) break;
      g[i] = 0;
    }
    if (i == f_) fail("InvariantViolation", "no irreducible polynomial found");
  }
  mod_ = g;
}

FqField::Elt FqField::element_of_order(uint64_t m) const {
  mpz_class n = unit_order();
  if (mpz_divisible_ui_p(n.get_mpz_t(), m) == 0)
    fail("InvariantViolation", "m does not divide p^f - 1");
  if (m == 1) return one();
  mpz_class cof = n / static_cast<unsigned long>(m);
  std::vector<uint64_t> ps = prime_divisors(m);
  Elt counter(f_, 0);
  while (next_element(counter)) {
    Elt cand = counter;
    while (!cand.empty() && cand.back() == 0) cand.pop_back();
    Elt z = pow(cand, cof);
    bool ok = !is_zero(z);
    for (uint64_t r : ps)
      if (ok && equal(pow(z, mpz_class(static_cast<unsigned long>(m / r))), one())) ok = false;
    if (ok) return z;
  }
  fail("InvariantViolation", "no element of requested order found");
}

std::vector<FqField::Elt> FqField::all_elements_of_order(uint64_t m) const {
  std::vector<Elt> out;
  Elt z = element_of_order(m);
  // powers z^k with gcd(k, m) = 1
  Elt cur = one();
  for (uint64_t k = 0; k < m; ++k) {
    if (k > 0 && std::gcd(k, m) == 1) out.push_back(cur);
    if (k == 0 && m == 1) out.push_back(cur);
    cur = mul(cur, z);
  }
  return out;
}

uint64_t FqField::hash(const Elt& a) const {
  uint64_t h = 1469598103934665603ull;
  for (uint32_t c : a) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace blockheight
