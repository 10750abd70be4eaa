#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "blockheight/perm.hpp"

namespace blockheight {

constexpr uint64_t kDefaultEnumerationCap = 1000000;

/// Conjugacy class data of an enumerated permutation group.
///
/// Classes are indexed 0..k-1 with representative = minimal element id,
/// ordered by that id (so class 0 is always the identity class).
struct ConjClasses {
  std::vector<uint32_t> reps;           // element ids of representatives
  std::vector<uint64_t> sizes;
  std::vector<uint64_t> element_orders; // order of any element in the class
  std::vector<int32_t> class_of;        // element id -> class index
  uint64_t exponent = 1;                // lcm of element orders
  // power_maps[k][j] = class of x^k for x in class j, for k in 0..exponent-1
  std::vector<std::vector<int32_t>> power_maps;
  std::vector<int32_t> inverse_class;   // class of x^-1

  size_t count() const { return reps.size(); }
};

/// A finite group given by permutation generators on {1..degree}
/// (stored 0-based internally). Enumeration fills the element table;
/// most analyses require it.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(std::string name, size_t degree, std::vector<Perm> generators);
  PermGroup(const PermGroup& other);
  PermGroup& operator=(const PermGroup& other);
  PermGroup(PermGroup&&) = default;
  PermGroup& operator=(PermGroup&&) = default;

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  /// Breadth-first closure of the generators. Throws CapExceeded if more
  /// than cap elements are found. Idempotent.
  void enumerate(uint64_t cap = kDefaultEnumerationCap);
  bool enumerated() const { return enumerated_; }

  uint64_t order() const;           // requires enumeration
  size_t size() const { return count_; }

  Perm element(uint32_t id) const;  // id in enumeration (BFS) order
  /// Element id, or nullopt if the permutation is not in the group
  /// (or the group is not enumerated).
  std::optional<uint32_t> element_id(const Perm& p) const;
  bool contains(const Perm& p) const { return element_id(p).has_value(); }

  uint32_t id_mul(uint32_t a, uint32_t b) const;
  uint32_t id_inv(uint32_t a) const;

  /// |G| by a stabilizer chain (Schreier-Sims), independent of enumeration.
  mpz_class stabilizer_chain_order() const;

  const ConjClasses& conjugacy_classes() const;

  bool is_abelian() const;

private:
  void require_enumerated(const char* op) const;
  const uint16_t* elem_ptr(uint32_t id) const { return buf_.data() + size_t(id) * degree_; }
  uint32_t lookup(const uint16_t* img) const;
  uint32_t insert(const Perm& p); // returns id; grows table

  std::string name_;
  size_t degree_ = 0;
  std::vector<Perm> generators_;

  bool enumerated_ = false;
  uint64_t count_ = 0;
  std::vector<uint16_t> buf_;        // count_ * degree_ images
  std::vector<uint32_t> table_;      // open-addressing hash of element ids
  mutable std::unique_ptr<ConjClasses> classes_;
};

/// Maps each class of sub to the class of group containing it.
/// Throws NotASubgroup if an element of sub is not in group.
std::vector<int32_t> class_fusion(const PermGroup& sub, const PermGroup& group);

/// A Sylow p-subgroup of group, built by normalizer climbing. If p does not
/// divide |G| the trivial group is returned.
PermGroup sylow_subgroup(const PermGroup& group, uint64_t p, uint64_t cap = kDefaultEnumerationCap);

/// True iff every group-generator conjugate of every sub-generator lies in sub.
bool is_normal_subgroup(const PermGroup& sub, const PermGroup& group);

/// Derived subgroup, as the normal closure of generator commutators.
PermGroup derived_subgroup(const PermGroup& group, uint64_t cap = kDefaultEnumerationCap);

uint32_t valuation(uint64_t n, uint64_t p);          // largest k with p^k | n
uint64_t p_part(uint64_t n, uint64_t p);             // p^valuation(n,p)

} // namespace blockheight
