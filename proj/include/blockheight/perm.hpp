#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace blockheight {

/// A permutation of {0, ..., n-1} stored as its image array: p[i] is the
/// image of point i. Composition is left-to-right: (a*b)(i) = b(a(i)).
using Perm = std::vector<uint16_t>;

inline Perm perm_identity(size_t n) {
  Perm p(n);
  for (size_t i = 0; i < n; ++i) p[i] = static_cast<uint16_t>(i);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<uint16_t>(i);
  return r;
}

/// Conjugate x^g = g^-1 x g.
inline Perm perm_conj(const Perm& x, const Perm& g) {
  Perm r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[g[i]] = g[x[i]];
  return r;
}

/// [a, b] = a^-1 b^-1 a b.
inline Perm perm_comm(const Perm& a, const Perm& b) {
  return perm_mul(perm_inv(perm_mul(b, a)), perm_mul(a, b));
}

inline uint64_t perm_order(const Perm& p) {
  uint64_t ord = 1;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    uint64_t len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

inline Perm perm_pow(const Perm& p, uint64_t k) {
  Perm r = perm_identity(p.size());
  Perm base = p;
  while (k) {
    if (k & 1) r = perm_mul(r, base);
    base = perm_mul(base, base);
    k >>= 1;
  }
  return r;
}

} // namespace blockheight
