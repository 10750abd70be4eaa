#pragma once

#include <cstdint>
#include <optional>

#include "blockheight/permgroup.hpp"

namespace blockheight {

/// Split metacyclic presentation <x, y | x^(p^m) = y^(p^n) = 1, x^y = x^r>.
struct MetacyclicSpec {
  uint64_t p = 2;
  uint32_t m = 1;
  uint32_t n = 1;
  uint64_t r = 1;

  uint64_t order() const;
  bool is_abelian() const; // r = 1 (mod p^m)
};

/// The spec realized on p^m + p^n points (coset spaces of the two cyclic
/// factors). Throws BadActionParameter unless r^(p^n) = 1 (mod p^m).
PermGroup metacyclic(const MetacyclicSpec& spec, uint64_t cap = kDefaultEnumerationCap);

/// C_d wr S_a in its imprimitive action on d*a points.
PermGroup wreath_cyclic_symmetric(uint32_t d, uint32_t a,
                                  uint64_t cap = kDefaultEnumerationCap);

/// Minimal log_p degree of a non-linear irreducible character of the
/// p-group P; nullopt (infinity) iff P is abelian. Cross-checks that the
/// number of linear characters equals [P : P'].
std::optional<uint32_t> mh_pgroup(const PermGroup& p_group, uint64_t p,
                                  uint64_t cap = kDefaultEnumerationCap);

/// Whether some cyclic normal subgroup has cyclic quotient (brute force;
/// only sensible for small groups).
bool is_metacyclic_group(const PermGroup& g);

} // namespace blockheight
