#include "blockheight/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "blockheight/errors.hpp"

namespace blockheight {

uint32_t partition_size(const Partition& p) {
  uint32_t n = 0;
  for (uint32_t x : p) n += x;
  return n;
}

Partition conjugate_partition(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  c.resize(p[0]);
  for (uint32_t col = 0; col < p[0]; ++col) {
    uint32_t cnt = 0;
    for (uint32_t row : p)
      if (row > col) ++cnt;
    c[col] = cnt;
  }
  return c;
}

std::vector<uint32_t> hook_lengths(const Partition& p) {
  Partition conj = conjugate_partition(p);
  std::vector<uint32_t> hooks;
  for (size_t i = 0; i < p.size(); ++i)
    for (uint32_t j = 0; j < p[i]; ++j)
      hooks.push_back(p[i] - j + conj[j] - static_cast<uint32_t>(i) - 1);
  return hooks;
}

mpz_class degree_sn(const Partition& p) {
  uint32_t n = partition_size(p);
  mpz_class num;
  mpz_fac_ui(num.get_mpz_t(), n);
  mpz_class den = 1;
  for (uint32_t h : hook_lengths(p)) den *= h;
  mpz_class deg, rem;
  mpz_fdiv_qr(deg.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (rem != 0)
    fail("InvariantViolation", "hook product does not divide n!");
  return deg;
}

namespace {

uint32_t legendre_valuation(uint64_t n, uint64_t ell) {
  // nu_ell(n!)
  uint32_t v = 0;
  while (n) {
    n /= ell;
    v += static_cast<uint32_t>(n);
  }
  return v;
}

uint32_t valuation_u64(uint64_t n, uint64_t ell) {
  uint32_t v = 0;
  while (n % ell == 0) {
    n /= ell;
    ++v;
  }
  return v;
}

uint32_t mpz_valuation(const mpz_class& n, uint64_t ell) {
  mpz_class q = n, r;
  uint32_t v = 0;
  while (true) {
    mpz_class quo;
    mpz_fdiv_qr_ui(quo.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t(),
                   static_cast<unsigned long>(ell));
    if (r != 0) return v;
    q = quo;
    ++v;
  }
}

} // namespace

uint32_t degree_sn_valuation(const Partition& p, uint64_t ell) {
  uint32_t n = partition_size(p);
  int64_t v = legendre_valuation(n, ell);
  for (uint32_t h : hook_lengths(p)) v -= valuation_u64(h, ell);
  if (v < 0) fail("InvariantViolation", "negative degree valuation");
  // second, independent route through the big integer
  if (mpz_valuation(degree_sn(p), ell) != static_cast<uint32_t>(v))
    fail("InvariantViolation", "valuation routes disagree");
  return static_cast<uint32_t>(v);
}

void enumerate_partitions(uint32_t n, const std::function<void(const Partition&)>& fn) {
  if (n > kMaxPartitionSize)
    fail("CapExceeded", "partition enumeration capped at n = " +
                            std::to_string(kMaxPartitionSize));
  if (n == 0) {
    fn({});
    return;
  }
  Partition cur{n};
  while (true) {
    fn(cur);
    // next in reverse-lexicographic order: find the last part > 1,
    // decrement it, repack the tail greedily
    size_t i = cur.size();
    while (i > 0 && cur[i - 1] == 1) --i;
    if (i == 0) return;
    uint32_t rest = static_cast<uint32_t>(cur.size() - i) + 1;
    cur.resize(i);
    cur[i - 1] -= 1;
    uint32_t cap = cur[i - 1];
    while (rest > 0) {
      uint32_t part = std::min(rest, cap);
      cur.push_back(part);
      rest -= part;
    }
  }
}

Partition ell_core(const Partition& p, uint32_t ell) {
  if (ell < 2) fail("BadActionParameter", "ell must be at least 2");
  // beta-numbers with bead count padded to a multiple of ell
  uint32_t rows = static_cast<uint32_t>(p.size());
  uint32_t beads = (rows % ell == 0 && rows > 0) ? rows : (rows / ell + 1) * ell;
  std::vector<uint64_t> beta(beads);
  for (uint32_t i = 0; i < beads; ++i) {
    uint32_t part = i < rows ? p[i] : 0;
    beta[i] = part + (beads - 1 - i);
  }
  // runner r holds the beads with beta = r (mod ell); sliding a bead up a
  // runner subtracts ell. After all slides runner r holds positions
  // r, r+ell, ..., so only the bead count per runner matters.
  std::vector<uint32_t> runner_count(ell, 0);
  for (uint64_t b : beta) ++runner_count[b % ell];
  std::vector<uint64_t> slid;
  for (uint32_t r = 0; r < ell; ++r)
    for (uint32_t t = 0; t < runner_count[r]; ++t) slid.push_back(r + uint64_t(t) * ell);
  std::sort(slid.rbegin(), slid.rend());
  Partition core;
  for (uint32_t i = 0; i < beads; ++i) {
    uint64_t part = slid[i] - (beads - 1 - i);
    if (part > 0) core.push_back(static_cast<uint32_t>(part));
  }
  return core;
}

bool is_ell_core(const Partition& p, uint32_t ell) {
  for (uint32_t h : hook_lengths(p))
    if (h % ell == 0) return false;
  return true;
}

std::optional<std::pair<uint32_t, Partition>> core_existence(uint32_t a, uint32_t ell) {
  if (!(ell <= a && a < ell * ell))
    fail("BadActionParameter", "core_existence requires ell <= a < ell^2");
  uint32_t b = ell + a % ell; // the unique b in [ell, 2 ell) with b = a (mod ell)
  std::optional<std::pair<uint32_t, Partition>> found;
  enumerate_partitions(b, [&](const Partition& mu) {
    if (!found && is_ell_core(mu, ell)) found = std::make_pair(b, mu);
  });
  return found;
}

std::vector<std::pair<Partition, std::vector<Partition>>> nakayama_blocks(uint32_t n,
                                                                          uint32_t ell) {
  std::vector<std::pair<Partition, std::vector<Partition>>> blocks;
  std::map<Partition, size_t> index;
  enumerate_partitions(n, [&](const Partition& p) {
    Partition core = ell_core(p, ell);
    auto it = index.find(core);
    if (it == index.end()) {
      index.emplace(core, blocks.size());
      blocks.push_back({core, {p}});
    } else {
      blocks[it->second].second.push_back(p);
    }
  });
  return blocks;
}

mpz_class multinomial(uint32_t n, const std::vector<uint32_t>& parts) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  uint32_t total = 0;
  for (uint32_t s : parts) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), s);
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.get_mpz_t(), f.get_mpz_t());
    if (rem != 0) fail("InvariantViolation", "multinomial is not integral");
    r = q;
    total += s;
  }
  if (total != n) fail("InvariantViolation", "multinomial parts do not sum to n");
  return r;
}

mpz_class wreath_degree(const WreathLabel& label) {
  std::vector<uint32_t> sizes;
  uint32_t a = 0;
  for (const Partition& p : label) {
    sizes.push_back(partition_size(p));
    a += sizes.back();
  }
  mpz_class deg = multinomial(a, sizes);
  for (const Partition& p : label) deg *= degree_sn(p);
  return deg;
}

uint32_t wreath_degree_valuation(const WreathLabel& label, uint64_t ell) {
  // arithmetic route: Legendre for the multinomial, hook valuations for the
  // factors, cross-checked against the big integer
  int64_t v = 0;
  uint32_t a = 0;
  for (const Partition& p : label) a += partition_size(p);
  v += legendre_valuation(a, ell);
  for (const Partition& p : label) {
    v -= legendre_valuation(partition_size(p), ell);
    v += degree_sn_valuation(p, ell);
  }
  if (v < 0) fail("InvariantViolation", "negative wreath degree valuation");
  if (mpz_valuation(wreath_degree(label), ell) != static_cast<uint32_t>(v))
    fail("InvariantViolation", "wreath valuation routes disagree");
  return static_cast<uint32_t>(v);
}

namespace {

void enumerate_labels_rec(uint32_t d, uint32_t remaining, WreathLabel& cur,
                          const std::function<void(const WreathLabel&)>& fn) {
  if (cur.size() + 1 == d) {
    enumerate_partitions(remaining, [&](const Partition& p) {
      cur.push_back(p);
      fn(cur);
      cur.pop_back();
    });
    return;
  }
  for (uint32_t s = remaining + 1; s-- > 0;) {
    enumerate_partitions(s, [&](const Partition& p) {
      cur.push_back(p);
      enumerate_labels_rec(d, remaining - s, cur, fn);
      cur.pop_back();
    });
  }
}

} // namespace

void enumerate_wreath_labels(uint32_t d, uint32_t a,
                             const std::function<void(const WreathLabel&)>& fn) {
  if (d == 0) fail("BadActionParameter", "d must be positive");
  WreathLabel cur;
  enumerate_labels_rec(d, a, cur, fn);
}

std::optional<WreathLabel> check_unipdef(uint32_t d, uint32_t a, uint64_t ell) {
  // pre: ell divides |C_d wr S_a| = d^a * a!
  uint32_t v_group = legendre_valuation(a, ell) + a * valuation_u64(d, ell);
  if (v_group == 0)
    fail("BadActionParameter", "ell does not divide the wreath group order");
  std::optional<WreathLabel> witness;
  enumerate_wreath_labels(d, a, [&](const WreathLabel& label) {
    if (!witness && wreath_degree_valuation(label, ell) == 1) witness = label;
  });
  return witness;
}

} // namespace blockheight
