#include "blockheight/permgroup.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <functional>
#include <numeric>

#include "blockheight/errors.hpp"

namespace blockheight {

namespace {

uint64_t hash_images(const uint16_t* img, size_t n) {
  // FNV-1a over the image bytes
  uint64_t h = 1469598103934665603ull;
  const unsigned char* b = reinterpret_cast<const unsigned char*>(img);
  for (size_t i = 0; i < 2 * n; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

constexpr uint32_t kEmptySlot = 0xffffffffu;

} // namespace

PermGroup::PermGroup(std::string name, size_t degree, std::vector<Perm> generators)
    : name_(std::move(name)), degree_(degree), generators_(std::move(generators)) {
  if (degree_ == 0 || degree_ > 65535)
    fail("FormatError", "degree out of range: " + std::to_string(degree_));
  for (const Perm& g : generators_) {
    if (g.size() != degree_)
      fail("FormatError", "generator degree mismatch in group " + name_);
    std::vector<bool> hit(degree_, false);
    for (uint16_t x : g) {
      if (x >= degree_ || hit[x])
        fail("FormatError", "generator is not a bijection in group " + name_);
      hit[x] = true;
    }
  }
}

PermGroup::PermGroup(const PermGroup& other)
    : name_(other.name_), degree_(other.degree_), generators_(other.generators_),
      enumerated_(other.enumerated_), count_(other.count_), buf_(other.buf_),
      table_(other.table_) {
  if (other.classes_) classes_ = std::make_unique<ConjClasses>(*other.classes_);
}

PermGroup& PermGroup::operator=(const PermGroup& other) {
  if (this == &other) return *this;
  name_ = other.name_;
  degree_ = other.degree_;
  generators_ = other.generators_;
  enumerated_ = other.enumerated_;
  count_ = other.count_;
  buf_ = other.buf_;
  table_ = other.table_;
  classes_ = other.classes_ ? std::make_unique<ConjClasses>(*other.classes_) : nullptr;
  return *this;
}

uint32_t PermGroup::lookup(const uint16_t* img) const {
  if (table_.empty()) return kEmptySlot;
  size_t mask = table_.size() - 1;
  size_t slot = hash_images(img, degree_) & mask;
  while (true) {
    uint32_t id = table_[slot];
    if (id == kEmptySlot) return kEmptySlot;
    if (std::memcmp(elem_ptr(id), img, 2 * degree_) == 0) return id;
    slot = (slot + 1) & mask;
  }
}

uint32_t PermGroup::insert(const Perm& p) {
  // grow at 2/3 load
  if (table_.empty() || (count_ + 1) * 3 > table_.size() * 2) {
    size_t cap = table_.empty() ? 1024 : table_.size() * 2;
    std::vector<uint32_t> fresh(cap, kEmptySlot);
    table_.swap(fresh);
    size_t mask = table_.size() - 1;
    for (uint32_t id = 0; id < count_; ++id) {
      size_t slot = hash_images(elem_ptr(id), degree_) & mask;
      while (table_[slot] != kEmptySlot) slot = (slot + 1) & mask;
      table_[slot] = id;
    }
  }
  uint32_t id = static_cast<uint32_t>(count_);
  buf_.insert(buf_.end(), p.begin(), p.end());
  ++count_;
  size_t mask = table_.size() - 1;
  size_t slot = hash_images(p.data(), degree_) & mask;
  while (table_[slot] != kEmptySlot) slot = (slot + 1) & mask;
  table_[slot] = id;
  return id;
}

void PermGroup::enumerate(uint64_t cap) {
  if (enumerated_) return;
  buf_.clear();
  table_.clear();
  count_ = 0;
  insert(perm_identity(degree_));
  std::deque<uint32_t> frontier{0};
  while (!frontier.empty()) {
    uint32_t id = frontier.front();
    frontier.pop_front();
    Perm x(elem_ptr(id), elem_ptr(id) + degree_);
    for (const Perm& g : generators_) {
      Perm y = perm_mul(x, g);
      if (lookup(y.data()) == kEmptySlot) {
        if (count_ >= cap)
          fail("CapExceeded", "group " + name_ + " exceeds enumeration cap " +
                                  std::to_string(cap));
        frontier.push_back(insert(y));
      }
    }
  }
  enumerated_ = true;
}

void PermGroup::require_enumerated(const char* op) const {
  if (!enumerated_)
    fail("InvariantViolation",
         std::string(op) + " requires an enumerated group (" + name_ + ")");
}

uint64_t PermGroup::order() const {
  require_enumerated("order");
  return count_;
}

Perm PermGroup::element(uint32_t id) const {
  require_enumerated("element");
  return Perm(elem_ptr(id), elem_ptr(id) + degree_);
}

std::optional<uint32_t> PermGroup::element_id(const Perm& p) const {
  if (!enumerated_ || p.size() != degree_) return std::nullopt;
  uint32_t id = lookup(p.data());
  if (id == kEmptySlot) return std::nullopt;
  return id;
}

uint32_t PermGroup::id_mul(uint32_t a, uint32_t b) const {
  Perm r(degree_);
  const uint16_t* pa = elem_ptr(a);
  const uint16_t* pb = elem_ptr(b);
  for (size_t i = 0; i < degree_; ++i) r[i] = pb[pa[i]];
  return lookup(r.data());
}

uint32_t PermGroup::id_inv(uint32_t a) const {
  Perm r(degree_);
  const uint16_t* pa = elem_ptr(a);
  for (size_t i = 0; i < degree_; ++i) r[pa[i]] = static_cast<uint16_t>(i);
  return lookup(r.data());
}

mpz_class PermGroup::stabilizer_chain_order() const {
  // Schreier-Sims with explicit transversals and no generator reduction,
  // closed to a fixpoint. Level j holds every strong generator fixing the
  // first j base points, so |G| is the product of the orbit sizes.
  struct Level {
    size_t base = 0;
    std::vector<Perm> gens;
    std::vector<Perm> transversal; // indexed by point
    std::vector<bool> in_orbit;
  };
  size_t n = degree_;
  std::vector<Level> chain;

  auto rebuild_orbit = [&](Level& lv) {
    lv.transversal.assign(n, Perm());
    lv.in_orbit.assign(n, false);
    lv.in_orbit[lv.base] = true;
    lv.transversal[lv.base] = perm_identity(n);
    std::deque<size_t> todo{lv.base};
    while (!todo.empty()) {
      size_t pt = todo.front();
      todo.pop_front();
      for (const Perm& g : lv.gens) {
        size_t q = g[pt];
        if (!lv.in_orbit[q]) {
          lv.in_orbit[q] = true;
          lv.transversal[q] = perm_mul(lv.transversal[pt], g);
          todo.push_back(q);
        }
      }
    }
  };

  auto sift = [&](Perm p, size_t& level) {
    for (level = 0; level < chain.size(); ++level) {
      size_t img = p[chain[level].base];
      if (!chain[level].in_orbit[img]) return p;
      p = perm_mul(p, perm_inv(chain[level].transversal[img]));
    }
    return p;
  };

  // The residue fixes the first `stuck` base points, so it belongs to the
  // generator sets of levels 0..stuck.
  auto insert = [&](const Perm& g) {
    size_t stuck;
    Perm res = sift(g, stuck);
    if (perm_is_identity(res)) return false;
    if (stuck == chain.size()) {
      size_t base = 0;
      while (res[base] == base) ++base;
      chain.push_back(Level{base, {}, {}, {}});
    }
    for (size_t j = 0; j <= stuck; ++j) {
      chain[j].gens.push_back(res);
      rebuild_orbit(chain[j]);
    }
    return true;
  };

  for (const Perm& g : generators_) insert(g);

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t j = 0; j < chain.size() && !changed; ++j) {
      Level& lv = chain[j];
      for (size_t pt = 0; pt < n && !changed; ++pt) {
        if (!lv.in_orbit[pt]) continue;
        for (const Perm& s : lv.gens) {
          Perm schreier = perm_mul(perm_mul(lv.transversal[pt], s),
                                   perm_inv(lv.transversal[s[pt]]));
          if (insert(schreier)) {
            changed = true;
            break;
          }
        }
      }
    }
  }

  mpz_class order = 1;
  for (const Level& lv : chain) {
    size_t orbit = 0;
    for (bool b : lv.in_orbit) orbit += b;
    order *= static_cast<unsigned long>(orbit);
  }
  return order;
}

const ConjClasses& PermGroup::conjugacy_classes() const {
  require_enumerated("conjugacy_classes");
  if (classes_) return *classes_;

  auto cc = std::make_unique<ConjClasses>();
  size_t n = count_;

  // union-find over conjugation by generators
  std::vector<uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](uint32_t a, uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::vector<uint32_t> gen_ids, gen_inv_ids;
  for (const Perm& g : generators_) {
    uint32_t id = lookup(g.data());
    gen_ids.push_back(id);
    gen_inv_ids.push_back(id_inv(id));
  }
  for (uint32_t x = 0; x < n; ++x)
    for (size_t k = 0; k < gen_ids.size(); ++k)
      unite(x, id_mul(id_mul(gen_inv_ids[k], x), gen_ids[k]));

  // class index by minimal representative id
  std::vector<int32_t> root_class(n, -1);
  cc->class_of.assign(n, -1);
  for (uint32_t x = 0; x < n; ++x) {
    uint32_t r = find(x);
    if (root_class[r] < 0) {
      root_class[r] = static_cast<int32_t>(cc->reps.size());
      cc->reps.push_back(r);
      cc->sizes.push_back(0);
    }
    cc->class_of[x] = root_class[r];
    ++cc->sizes[root_class[r]];
  }

  size_t k = cc->reps.size();
  cc->element_orders.resize(k);
  for (size_t j = 0; j < k; ++j) {
    cc->element_orders[j] = perm_order(element(cc->reps[j]));
    cc->exponent = std::lcm(cc->exponent, cc->element_orders[j]);
  }

  cc->power_maps.assign(cc->exponent, std::vector<int32_t>(k));
  cc->inverse_class.resize(k);
  for (size_t j = 0; j < k; ++j) {
    uint32_t cur = 0; // identity
    for (uint64_t t = 0; t < cc->exponent; ++t) {
      cc->power_maps[t][j] = cc->class_of[cur];
      cur = id_mul(cur, cc->reps[j]);
    }
    cc->inverse_class[j] = cc->class_of[id_inv(cc->reps[j])];
  }

  classes_ = std::move(cc);
  return *classes_;
}

bool PermGroup::is_abelian() const {
  for (size_t i = 0; i < generators_.size(); ++i)
    for (size_t j = i + 1; j < generators_.size(); ++j)
      if (perm_mul(generators_[i], generators_[j]) !=
          perm_mul(generators_[j], generators_[i]))
        return false;
  return true;
}

std::vector<int32_t> class_fusion(const PermGroup& sub, const PermGroup& group) {
  const ConjClasses& sc = sub.conjugacy_classes();
  const ConjClasses& gc = group.conjugacy_classes();
  if (sub.degree() != group.degree())
    fail("NotASubgroup", sub.name() + " and " + group.name() + " act on different point sets");
  std::vector<int32_t> fusion(sc.count());
  for (size_t j = 0; j < sc.count(); ++j) {
    auto id = group.element_id(sub.element(sc.reps[j]));
    if (!id)
      fail("NotASubgroup", sub.name() + " has an element outside " + group.name());
    fusion[j] = gc.class_of[*id];
  }
  return fusion;
}

uint32_t valuation(uint64_t n, uint64_t p) {
  uint32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

uint64_t p_part(uint64_t n, uint64_t p) {
  uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

namespace {

// Smallest-id element whose p-part subgroup is nontrivial, raised to its
// p'-part: a deterministic cyclic p-subgroup seed.
Perm seed_p_element(const PermGroup& g, uint64_t p) {
  for (uint32_t id = 1; id < g.order(); ++id) {
    Perm x = g.element(id);
    uint64_t o = perm_order(x);
    if (o % p == 0) {
      uint64_t pp = p_part(o, p);
      return perm_pow(x, o / pp);
    }
  }
  return perm_identity(g.degree());
}

} // namespace

PermGroup sylow_subgroup(const PermGroup& group, uint64_t p, uint64_t cap) {
  uint64_t target = p_part(group.order(), p);
  if (target == 1) {
    PermGroup trivial(group.name() + ".sylow" + std::to_string(p), group.degree(),
                      {perm_identity(group.degree())});
    trivial.enumerate(cap);
    return trivial;
  }
  if (target == group.order()) {
    PermGroup whole = group;
    return whole;
  }

  std::vector<Perm> gens{seed_p_element(group, p)};
  PermGroup h(group.name() + ".sylow" + std::to_string(p), group.degree(), gens);
  h.enumerate(cap);
  while (h.order() < target) {
    // normalizer by filtering the full element list, then adjoin the
    // smallest-id p-element outside h: <h, y> is again a p-group since
    // h is normal in it and yh has p-power order in the quotient.
    bool grew = false;
    for (uint32_t id = 1; id < group.order(); ++id) {
      Perm x = group.element(id);
      bool normalizes = true;
      for (const Perm& g : h.generators()) {
        if (!h.contains(perm_conj(g, x))) {
          normalizes = false;
          break;
        }
      }
      if (!normalizes) continue;
      if (h.contains(x)) continue;
      uint64_t o = perm_order(x);
      if (p_part(o, p) == o) {
        gens.push_back(x);
        h = PermGroup(group.name() + ".sylow" + std::to_string(p), group.degree(), gens);
        h.enumerate(cap);
        grew = true;
        break;
      }
    }
    if (!grew)
      fail("InvariantViolation",
           "sylow climbing stalled below full p-part in " + group.name());
  }
  return h;
}

bool is_normal_subgroup(const PermGroup& sub, const PermGroup& group) {
  for (const Perm& g : group.generators())
    for (const Perm& s : sub.generators())
      if (!sub.contains(perm_conj(s, g))) return false;
  return true;
}

PermGroup derived_subgroup(const PermGroup& group, uint64_t cap) {
  std::vector<Perm> gens;
  auto push_new = [&](const Perm& p) {
    if (perm_is_identity(p)) return false;
    for (const Perm& q : gens)
      if (q == p) return false;
    gens.push_back(p);
    return true;
  };
  for (const Perm& a : group.generators())
    for (const Perm& b : group.generators()) push_new(perm_comm(a, b));
  if (gens.empty())
    gens.push_back(perm_identity(group.degree()));

  // normal closure under conjugation by group generators
  while (true) {
    PermGroup h(group.name() + "'", group.degree(), gens);
    h.enumerate(cap);
    bool changed = false;
    for (const Perm& g : group.generators()) {
      for (const Perm& s : std::vector<Perm>(gens)) {
        Perm c = perm_conj(s, g);
        if (!h.contains(c)) changed |= push_new(c);
      }
    }
    if (!changed) return h;
  }
}

} // namespace blockheight
