#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "blockheight/chartable.hpp"
#include "blockheight/errors.hpp"
#include "blockheight/fq.hpp"

namespace blockheight {

namespace {

// Subspace of F_q^c in reduced row echelon form. All subspaces arising
// here are invariant under every class-sum matrix, so restriction never
// leaves the span.
struct Subspace {
  std::vector<std::vector<uint64_t>> basis; // rows, RREF
  std::vector<uint32_t> pivots;             // pivot column of each row
};

struct SparseMat {
  // triples sorted by row; (A w)_j = sum over entries (j,k,v) of v * w_k
  struct Entry {
    uint32_t j, k;
    uint64_t v;
  };
  std::vector<Entry> entries;
};

void rref(std::vector<std::vector<uint64_t>>& rows, std::vector<uint32_t>& pivots,
          uint64_t q) {
  size_t c = rows.empty() ? 0 : rows[0].size();
  pivots.clear();
  size_t rank = 0;
  for (size_t col = 0; col < c && rank < rows.size(); ++col) {
    size_t sel = rank;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    uint64_t inv = invmod_p(rows[rank][col], q);
    for (size_t x = col; x < c; ++x) rows[rank][x] = mulmod(rows[rank][x], inv, q);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      uint64_t f = rows[r][col];
      for (size_t x = col; x < c; ++x)
        rows[r][x] = (rows[r][x] + q - mulmod(f, rows[rank][x], q)) % q;
    }
    pivots.push_back(static_cast<uint32_t>(col));
    ++rank;
  }
  rows.resize(rank);
}

// characteristic polynomial of a square matrix over F_q via Hessenberg
// reduction; coefficients low-to-high, monic
std::vector<uint64_t> charpoly(std::vector<std::vector<uint64_t>> m, uint64_t q) {
  size_t n = m.size();
  // Hessenberg form
  for (size_t col = 0; col + 2 < n; ++col) {
    size_t piv = col + 1;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(m[piv], m[col + 1]);
    for (size_t r = 0; r < n; ++r) std::swap(m[r][piv], m[r][col + 1]);
    uint64_t inv = invmod_p(m[col + 1][col], q);
    for (size_t r = col + 2; r < n; ++r) {
      if (m[r][col] == 0) continue;
      uint64_t f = mulmod(m[r][col], inv, q);
      for (size_t x = 0; x < n; ++x)
        m[r][x] = (m[r][x] + q - mulmod(f, m[col + 1][x], q)) % q;
      for (size_t x = 0; x < n; ++x) m[x][col + 1] = (m[x][col + 1] + mulmod(f, m[x][r], q)) % q;
    }
  }
  // charpoly of Hessenberg by the leading-minor recurrence
  std::vector<std::vector<uint64_t>> p(n + 1);
  p[0] = {1};
  for (size_t k = 1; k <= n; ++k) {
    // p_k(t) = (t - m[k-1][k-1]) p_{k-1}(t) - sum_{i=1}^{k-1}
    //          m[k-1-i][k-1] * (prod of subdiagonal) * p_{k-1-i}(t)
    std::vector<uint64_t> cur(k + 1, 0);
    for (size_t d = 0; d < p[k - 1].size(); ++d) {
      cur[d + 1] = (cur[d + 1] + p[k - 1][d]) % q;
      cur[d] = (cur[d] + q - mulmod(m[k - 1][k - 1], p[k - 1][d], q)) % q;
    }
    uint64_t run = 1;
    for (size_t i = 1; i < k; ++i) {
      run = mulmod(run, m[k - i][k - i - 1], q);
      if (run == 0) break;
      uint64_t coeff = mulmod(m[k - 1 - i][k - 1], run, q);
      if (coeff == 0) continue;
      for (size_t d = 0; d < p[k - 1 - i].size(); ++d)
        cur[d] = (cur[d] + q - mulmod(coeff, p[k - 1 - i][d], q)) % q;
    }
    p[k] = std::move(cur);
  }
  return p[n];
}

std::vector<uint64_t> poly_roots_scan(const std::vector<uint64_t>& poly, uint64_t q) {
  std::vector<uint64_t> roots;
  for (uint64_t t = 0; t < q; ++t) {
    uint64_t acc = 0;
    for (size_t d = poly.size(); d-- > 0;) acc = (mulmod(acc, t, q) + poly[d]) % q;
    if (acc == 0) roots.push_back(t);
  }
  return roots;
}

// kernel of (X - lambda I), X square over F_q; returns basis rows in the
// coordinate space of X
std::vector<std::vector<uint64_t>> eigen_kernel(std::vector<std::vector<uint64_t>> x,
                                                uint64_t lambda, uint64_t q) {
  size_t n = x.size();
  for (size_t i = 0; i < n; ++i) x[i][i] = (x[i][i] + q - lambda) % q;
  std::vector<uint32_t> pivots;
  rref(x, pivots, q);
  std::vector<bool> is_pivot(n, false);
  for (uint32_t pc : pivots) is_pivot[pc] = true;
  std::vector<std::vector<uint64_t>> kernel;
  for (size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<uint64_t> v(n, 0);
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = (q - x[r][free]) % q;
    kernel.push_back(std::move(v));
  }
  return kernel;
}

class DixonEngine {
public:
  DixonEngine(const PermGroup& g, std::optional<uint64_t> force_prime)
      : g_(g), cc_(g.conjugacy_classes()), c_(cc_.count()) {
    e_ = cc_.exponent;
    uint64_t lower = 2 * static_cast<uint64_t>(std::ceil(std::sqrt(double(g_.order()))));
    q_ = force_prime ? *force_prime : find_prime_1_mod(e_, lower);
    if (q_ == 0) fail("NoSuitablePrime", "prime search bound exhausted for " + g_.name());
    if ((q_ - 1) % e_ != 0 || q_ <= lower || !is_prime_u64(q_))
      fail("NoSuitablePrime", "forced prime is not admissible");
    zq_ = primitive_root_of_unity(e_, q_);
    members_.resize(c_);
    for (uint32_t x = 0; x < g_.order(); ++x) members_[cc_.class_of[x]].push_back(x);
  }

  // eigenvectors, one per irreducible, normalized to omega-vectors
  // (identity coordinate 1)
  std::vector<std::vector<uint64_t>> split() {
    std::vector<Subspace> live;
    std::vector<std::vector<uint64_t>> done; // 1-dim results
    seed_with_central_split(live, done);

    size_t stalls = 0;
    for (size_t i = 1; !live.empty(); i = (i % (c_ - 1)) + 1, ++stalls) {
      if (stalls > c_ + 1)
        fail("EigenspaceSplitFailure", "class matrices failed to separate eigenspaces");
      SparseMat a = class_matrix(i);
      std::vector<Subspace> next;
      bool any_split = false;
      for (Subspace& v : live) {
        std::vector<Subspace> parts = split_subspace(v, a);
        if (parts.size() > 1) any_split = true;
        for (Subspace& p : parts) {
          if (p.basis.size() == 1)
            done.push_back(std::move(p.basis[0]));
          else
            next.push_back(std::move(p));
        }
      }
      live.swap(next);
      if (any_split) stalls = 0;
    }

    if (done.size() != c_)
      fail("EigenspaceSplitFailure", "eigenvector count mismatch");
    for (auto& v : done) {
      if (v[0] == 0) fail("EigenspaceSplitFailure", "omega vector vanishes at identity");
      uint64_t inv = invmod_p(v[0], q_);
      for (uint64_t& x : v) x = mulmod(x, inv, q_);
    }
    std::sort(done.begin(), done.end());
    return done;
  }

  uint64_t degree_from_omega(const std::vector<uint64_t>& omega) const {
    uint64_t s = 0;
    for (size_t j = 0; j < c_; ++j) {
      uint64_t term = mulmod(omega[j], omega[cc_.inverse_class[j]], q_);
      s = (s + mulmod(term, invmod_p(cc_.sizes[j] % q_, q_), q_)) % q_;
    }
    if (s == 0) fail("EigenspaceSplitFailure", "degree norm sum vanished");
    uint64_t d2 = mulmod(g_.order() % q_, invmod_p(s, q_), q_);
    uint64_t root;
    if (!sqrtmod(d2, q_, root))
      fail("EigenspaceSplitFailure", "degree square is a non-residue");
    uint64_t deg = std::min(root, q_ - root);
    if (deg == 0 || uint64_t(deg) * deg > g_.order())
      fail("EigenspaceSplitFailure", "degree lift out of range");
    return deg;
  }

  // chi(g_j) mod q for all classes, given omega and the degree
  std::vector<uint64_t> values_mod_q(const std::vector<uint64_t>& omega, uint64_t deg) const {
    std::vector<uint64_t> v(c_);
    for (size_t j = 0; j < c_; ++j)
      v[j] = mulmod(mulmod(omega[j], deg % q_, q_), invmod_p(cc_.sizes[j] % q_, q_), q_);
    return v;
  }

  // exact character value at class j from the mod-q value row
  Cyclotomic lift_value(const std::vector<uint64_t>& vrow, uint64_t deg, size_t j) const {
    uint64_t o = cc_.element_orders[j];
    uint64_t zo = powmod(zq_, e_ / o, q_);
    std::vector<uint64_t> zpow(o);
    zpow[0] = 1;
    for (uint64_t t = 1; t < o; ++t) zpow[t] = mulmod(zpow[t - 1], zo, q_);
    uint64_t oinv = invmod_p(o % q_, q_);
    std::vector<std::pair<uint64_t, mpz_class>> terms;
    mpz_class total = 0;
    for (uint64_t k = 0; k < o; ++k) {
      uint64_t acc = 0;
      for (uint64_t t = 0; t < o; ++t) {
        uint64_t f = vrow[cc_.power_maps[t][j]];
        acc = (acc + mulmod(f, zpow[(o - k) * t % o], q_)) % q_;
      }
      uint64_t mult = mulmod(acc, oinv, q_);
      if (mult == 0) continue;
      if (mult > deg)
        fail("EigenspaceSplitFailure", "lifted multiplicity exceeds degree");
      total += static_cast<unsigned long>(mult);
      terms.emplace_back(k * (e_ / o), mpz_class(static_cast<unsigned long>(mult)));
    }
    if (total != static_cast<unsigned long>(deg))
      fail("EigenspaceSplitFailure", "eigenvalue multiplicities do not sum to degree");
    return Cyclotomic::from_terms(e_, std::move(terms));
  }

  uint64_t prime() const { return q_; }
  uint64_t exponent() const { return e_; }
  size_t num_classes() const { return c_; }
  const ConjClasses& classes() const { return cc_; }

private:
  SparseMat class_matrix(size_t i) const {
    // a_{ijk} = #{(x,y) in K_i x K_j : xy = rep_k}; built column by column
    // from y = x^-1 rep_k, so the cost is |K_i| * #classes
    SparseMat a;
    const std::vector<uint32_t>& mem = members_[i];
    std::vector<uint32_t> xinvs(mem.size());
    for (size_t t = 0; t < mem.size(); ++t) xinvs[t] = g_.id_inv(mem[t]);
    std::vector<uint32_t> scratch;
    scratch.reserve(mem.size());
    for (uint32_t k = 0; k < c_; ++k) {
      scratch.clear();
      for (uint32_t xinv : xinvs)
        scratch.push_back(cc_.class_of[g_.id_mul(xinv, cc_.reps[k])]);
      std::sort(scratch.begin(), scratch.end());
      for (size_t s = 0; s < scratch.size();) {
        size_t run = s;
        while (run < scratch.size() && scratch[run] == scratch[s]) ++run;
        a.entries.push_back({scratch[s], k, static_cast<uint64_t>(run - s) % q_});
        s = run;
      }
    }
    return a;
  }

  // Initial split: the size-1 class of largest element order acts as a
  // permutation matrix on class coordinates; its eigenspaces come from the
  // cycle structure, with no linear algebra on the full space.
  void seed_with_central_split(std::vector<Subspace>& live,
                               std::vector<std::vector<uint64_t>>& done) {
    size_t best = 0;
    for (size_t i = 1; i < c_; ++i)
      if (cc_.sizes[i] == 1 &&
          (best == 0 || cc_.element_orders[i] > cc_.element_orders[best]))
        best = i;
    if (best == 0) {
      Subspace whole;
      whole.basis.assign(c_, std::vector<uint64_t>(c_, 0));
      for (size_t i = 0; i < c_; ++i) {
        whole.basis[i][i] = 1;
        whole.pivots.push_back(static_cast<uint32_t>(i));
      }
      if (c_ == 1)
        done.push_back(whole.basis[0]);
      else
        live.push_back(std::move(whole));
      return;
    }

    // sigma(j) = class of z * rep_j ; (A w)_j = w_sigma(j)
    std::vector<uint32_t> sigma(c_);
    for (size_t j = 0; j < c_; ++j)
      sigma[j] = cc_.class_of[g_.id_mul(cc_.reps[best], cc_.reps[j])];

    std::vector<bool> seen(c_, false);
    // eigenvalue (as root-of-unity index scaled to e) -> rows
    std::map<uint64_t, std::vector<std::vector<uint64_t>>> spaces;
    for (size_t start = 0; start < c_; ++start) {
      if (seen[start]) continue;
      std::vector<uint32_t> cycle;
      for (uint32_t j = static_cast<uint32_t>(start); !seen[j]; j = sigma[j]) {
        seen[j] = true;
        cycle.push_back(j);
      }
      uint64_t len = cycle.size();
      uint64_t mu_base = powmod(zq_, e_ / len, q_); // primitive len-th root
      for (uint64_t t = 0; t < len; ++t) {
        uint64_t mu = powmod(mu_base, t, q_);
        std::vector<uint64_t> v(c_, 0);
        uint64_t phase = 1;
        for (size_t s = 0; s < cycle.size(); ++s) {
          v[cycle[s]] = phase;
          phase = mulmod(phase, mu, q_);
        }
        spaces[mu].push_back(std::move(v));
      }
    }
    for (auto& [mu, rows] : spaces) {
      Subspace sp;
      sp.basis = std::move(rows);
      // disjoint supports: sort rows by first support column = already RREF
      std::sort(sp.basis.begin(), sp.basis.end(), [](const auto& a, const auto& b) {
        return std::find_if(a.begin(), a.end(), [](uint64_t x) { return x != 0; }) - a.begin() <
               std::find_if(b.begin(), b.end(), [](uint64_t x) { return x != 0; }) - b.begin();
      });
      for (const auto& row : sp.basis) {
        size_t p = std::find_if(row.begin(), row.end(), [](uint64_t x) { return x != 0; }) -
                   row.begin();
        sp.pivots.push_back(static_cast<uint32_t>(p));
      }
      if (sp.basis.size() == 1) {
        done.push_back(std::move(sp.basis[0]));
      } else {
        live.push_back(std::move(sp));
      }
    }
  }

  std::vector<Subspace> split_subspace(Subspace& v, const SparseMat& a) const {
    size_t dim = v.basis.size();
    // images of basis rows under A
    std::vector<std::vector<uint64_t>> img(dim, std::vector<uint64_t>(c_, 0));
    for (size_t r = 0; r < dim; ++r) {
      const std::vector<uint64_t>& w = v.basis[r];
      std::vector<uint64_t>& out = img[r];
      for (const SparseMat::Entry& ent : a.entries) {
        if (w[ent.k] == 0) continue;
        out[ent.j] = (out[ent.j] + mulmod(ent.v, w[ent.k], q_)) % q_;
      }
    }
    // restricted matrix X: column r = coords of A b_r, i.e. X[u][r]
    std::vector<std::vector<uint64_t>> x(dim, std::vector<uint64_t>(dim));
    for (size_t r = 0; r < dim; ++r)
      for (size_t u = 0; u < dim; ++u) x[u][r] = img[r][v.pivots[u]];

    std::vector<uint64_t> lambdas = poly_roots_scan(charpoly(x, q_), q_);
    if (lambdas.size() <= 1) return {std::move(v)};

    std::vector<Subspace> parts;
    size_t total = 0;
    for (uint64_t lambda : lambdas) {
      std::vector<std::vector<uint64_t>> ker = eigen_kernel(x, lambda, q_);
      if (ker.empty()) continue;
      Subspace part;
      for (const auto& coords : ker) {
        std::vector<uint64_t> w(c_, 0);
        for (size_t u = 0; u < dim; ++u) {
          if (coords[u] == 0) continue;
          for (size_t col = 0; col < c_; ++col)
            w[col] = (w[col] + mulmod(coords[u], v.basis[u][col], q_)) % q_;
        }
        part.basis.push_back(std::move(w));
      }
      rref(part.basis, part.pivots, q_);
      total += part.basis.size();
      parts.push_back(std::move(part));
    }
    if (total != dim)
      fail("EigenspaceSplitFailure", "eigenspace dimensions do not add up");
    return parts;
  }

  const PermGroup& g_;
  const ConjClasses& cc_;
  size_t c_;
  uint64_t e_ = 1;
  uint64_t q_ = 0;
  uint64_t zq_ = 1;
  std::vector<std::vector<uint32_t>> members_;
};

} // namespace

uint64_t dixon_prime(const PermGroup& group, unsigned skip) {
  const ConjClasses& cc = group.conjugacy_classes();
  uint64_t lower = 2 * static_cast<uint64_t>(std::ceil(std::sqrt(double(group.order()))));
  uint64_t q = find_prime_1_mod(cc.exponent, lower);
  while (skip-- > 0 && q != 0) q = find_prime_1_mod(cc.exponent, q);
  if (q == 0) fail("NoSuitablePrime", "prime search bound exhausted");
  return q;
}

std::vector<uint64_t> dixon_degrees(const PermGroup& group) {
  DixonEngine eng(group, std::nullopt);
  std::vector<std::vector<uint64_t>> omegas = eng.split();
  std::vector<uint64_t> degs;
  degs.reserve(omegas.size());
  mpz_class sq = 0;
  for (const auto& om : omegas) {
    uint64_t d = eng.degree_from_omega(om);
    degs.push_back(d);
    sq += mpz_class(static_cast<unsigned long>(d)) * static_cast<unsigned long>(d);
  }
  if (sq != static_cast<unsigned long>(group.order()))
    fail("InvariantViolation", "sum of squared degrees differs from |G| in " + group.name());
  std::sort(degs.begin(), degs.end());
  return degs;
}

CharacterTable dixon_schneider(const PermGroup& group, std::optional<uint64_t> force_prime) {
  DixonEngine eng(group, force_prime);
  const ConjClasses& cc = eng.classes();
  size_t c = eng.num_classes();

  std::vector<std::vector<uint64_t>> omegas = eng.split();

  struct Row {
    uint64_t degree;
    std::vector<Cyclotomic> values;
  };
  std::vector<Row> rows;
  rows.reserve(c);
  for (const auto& om : omegas) {
    Row row;
    row.degree = eng.degree_from_omega(om);
    std::vector<uint64_t> vq = eng.values_mod_q(om, row.degree);
    row.values.reserve(c);
    for (size_t j = 0; j < c; ++j) row.values.push_back(eng.lift_value(vq, row.degree, j));
    rows.push_back(std::move(row));
  }

  auto is_trivial = [&](const Row& r) {
    if (r.degree != 1) return false;
    for (const Cyclotomic& v : r.values)
      if (!v.is_integer() || v.integer_value() != 1) return false;
    return true;
  };
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    if (a.degree != b.degree) return a.degree < b.degree;
    for (size_t j = 0; j < c; ++j) {
      int cmp = Cyclotomic::order_cmp(a.values[j], b.values[j]);
      if (cmp != 0) return cmp < 0;
    }
    return false;
  });

  CharacterTable t;
  t.group_name = group.name();
  t.order = group.order();
  t.exponent = eng.exponent();
  t.class_sizes = cc.sizes;
  t.class_orders = cc.element_orders;
  t.power_maps = cc.power_maps;
  t.inverse_class = cc.inverse_class;
  for (Row& r : rows) {
    t.degrees.push_back(r.degree);
    t.irreducibles.push_back(std::move(r.values));
  }

  // construction-time checks: degree identities and row norms; full pairwise
  // orthogonality is exercised by the test suites and on import
  mpz_class sq = 0;
  for (size_t i = 0; i < c; ++i) {
    if (t.order % t.degrees[i] != 0)
      fail("InvariantViolation", "character degree does not divide |G|");
    if (!t.irreducibles[i][0].is_integer() ||
        t.irreducibles[i][0].integer_value() != static_cast<long>(t.degrees[i]))
      fail("InvariantViolation", "identity column does not match degree");
    sq += mpz_class(static_cast<unsigned long>(t.degrees[i])) *
          static_cast<unsigned long>(t.degrees[i]);
    if (t.inner_product(i, i) != 1)
      fail("InvariantViolation", "character row norm is not 1");
  }
  if (sq != static_cast<unsigned long>(t.order))
    fail("InvariantViolation", "sum of squared degrees differs from |G|");
  if (!is_trivial(Row{t.degrees[0], t.irreducibles[0]}))
    fail("InvariantViolation", "trivial character missing");
  return t;
}

} // namespace blockheight
