#include "blockheight/pgroups.hpp"

#include <algorithm>

#include "blockheight/chartable.hpp"
#include "blockheight/errors.hpp"

namespace blockheight {

namespace {

uint64_t pow_u64(uint64_t b, uint32_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

uint64_t powmod_u64(uint64_t b, uint64_t e, uint64_t n) {
  uint64_t r = 1 % n;
  b %= n;
  while (e) {
    if (e & 1) r = (unsigned __int128)(r)*b % n;
    b = (unsigned __int128)(b)*b % n;
    e >>= 1;
  }
  return r;
}

} // namespace

uint64_t MetacyclicSpec::order() const { return pow_u64(p, m) * pow_u64(p, n); }

bool MetacyclicSpec::is_abelian() const { return r % pow_u64(p, m) == 1 % pow_u64(p, m); }

PermGroup metacyclic(const MetacyclicSpec& spec, uint64_t cap) {
  uint64_t pm = pow_u64(spec.p, spec.m);
  uint64_t pn = pow_u64(spec.p, spec.n);
  if (spec.r % spec.p == 0 || powmod_u64(spec.r, pn, pm) != 1 % pm)
    fail("BadActionParameter", "r^(p^n) must be 1 mod p^m");

  // Points: right cosets <y>x^i as 0..pm-1, right cosets <x>y^j as
  // pm..pm+pn-1. Right multiplication gives
  //   x: i -> i+1 on the first block, fixes the second;
  //   y: i -> r*i on the first block (<y>x^i y = <y>x^(ir)), j -> j+1 on the
  //      second.
  size_t degree = pm + pn;
  uint64_t s = spec.r % pm;
  Perm x(degree), y(degree);
  for (uint64_t i = 0; i < pm; ++i) {
    x[i] = static_cast<uint16_t>((i + 1) % pm);
    y[i] = static_cast<uint16_t>(s * i % pm);
  }
  for (uint64_t j = 0; j < pn; ++j) {
    x[pm + j] = static_cast<uint16_t>(pm + j);
    y[pm + j] = static_cast<uint16_t>(pm + (j + 1) % pn);
  }

  std::string name = "metacyclic_p" + std::to_string(spec.p) + "_m" +
                     std::to_string(spec.m) + "_n" + std::to_string(spec.n) + "_r" +
                     std::to_string(spec.r);
  PermGroup g(name, degree, {x, y});

  // presentation relations on the generators
  if (!perm_is_identity(perm_pow(x, pm)) || !perm_is_identity(perm_pow(y, pn)))
    fail("InvariantViolation", "metacyclic generator orders are wrong");
  Perm xy = perm_conj(x, y);
  if (xy != perm_pow(x, spec.r % pm))
    fail("InvariantViolation", "metacyclic action relation x^y = x^r fails");

  g.enumerate(cap);
  if (g.order() != spec.order())
    fail("InvariantViolation", "metacyclic group has wrong order");
  return g;
}

PermGroup wreath_cyclic_symmetric(uint32_t d, uint32_t a, uint64_t cap) {
  if (d == 0 || a == 0) fail("BadActionParameter", "d and a must be positive");
  size_t degree = size_t(d) * a;
  std::vector<Perm> gens;
  if (d > 1) {
    Perm c = perm_identity(degree);
    for (uint32_t i = 0; i < d; ++i) c[i] = static_cast<uint16_t>((i + 1) % d);
    gens.push_back(c);
  }
  if (a > 1) {
    Perm swap01 = perm_identity(degree);
    for (uint32_t i = 0; i < d; ++i) {
      swap01[i] = static_cast<uint16_t>(d + i);
      swap01[d + i] = static_cast<uint16_t>(i);
    }
    gens.push_back(swap01);
    if (a > 2) {
      Perm cyc = perm_identity(degree);
      for (uint32_t b = 0; b < a; ++b)
        for (uint32_t i = 0; i < d; ++i)
          cyc[size_t(b) * d + i] = static_cast<uint16_t>((size_t(b + 1) % a) * d + i);
      gens.push_back(cyc);
    }
  }
  if (gens.empty()) gens.push_back(perm_identity(degree));

  std::string name = "C" + std::to_string(d) + "wrS" + std::to_string(a);
  PermGroup g(name, degree, gens);
  g.enumerate(cap);
  return g;
}

std::optional<uint32_t> mh_pgroup(const PermGroup& p_group, uint64_t p, uint64_t cap) {
  PermGroup pg = p_group;
  if (!pg.enumerated()) pg.enumerate(cap);
  uint64_t order = pg.order();
  if (order != p_part(order, p))
    fail("NotAPGroup", pg.name() + " has order " + std::to_string(order) +
                           ", not a power of " + std::to_string(p));
  if (pg.is_abelian()) return std::nullopt;

  std::vector<uint64_t> degs = dixon_degrees(pg);
  uint64_t linear = 0;
  std::optional<uint64_t> min_nonlinear;
  for (uint64_t dg : degs) {
    if (dg == 1)
      ++linear;
    else if (!min_nonlinear)
      min_nonlinear = dg; // degrees are sorted
  }
  PermGroup derived = derived_subgroup(pg, cap);
  if (linear * derived.order() != order)
    fail("InvariantViolation",
         "linear character count differs from [P:P'] in " + pg.name());
  if (!min_nonlinear)
    fail("InvariantViolation", "non-abelian p-group with only linear characters");
  uint64_t dg = *min_nonlinear;
  uint32_t h = valuation(dg, p);
  if (pow_u64(p, h) != dg)
    fail("InvariantViolation", "p-group degree is not a power of p");
  return h;
}

bool is_metacyclic_group(const PermGroup& g) {
  uint64_t n = g.order();
  for (uint32_t id = 0; id < n; ++id) {
    Perm x = g.element(id);
    PermGroup cyc("c", g.degree(), {x});
    cyc.enumerate(n);
    if (!is_normal_subgroup(cyc, g)) continue;
    // quotient cyclic iff some element generates g over cyc
    uint64_t q = n / cyc.order();
    for (uint32_t yid = 0; yid < n; ++yid) {
      Perm y = g.element(yid);
      // order of y*cyc in the quotient: least k with y^k in cyc
      uint64_t k = 1;
      Perm cur = y;
      while (!cyc.contains(cur)) {
        cur = perm_mul(cur, y);
        ++k;
      }
      if (k == q) return true;
    }
  }
  return false;
}

} // namespace blockheight
