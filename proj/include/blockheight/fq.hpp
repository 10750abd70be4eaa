#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace blockheight {

// ---- prime field F_q, q < 2^63, value-level helpers ----

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t q);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t q);
uint64_t invmod_p(uint64_t a, uint64_t q);
bool is_prime_u64(uint64_t n); // deterministic Miller-Rabin

/// Smallest prime q ≡ 1 (mod e) with q > lower, or 0 if the 2^63 search
/// bound is exhausted.
uint64_t find_prime_1_mod(uint64_t e, uint64_t lower);

/// Smallest-generator primitive e-th root of unity in F_q (requires e | q-1).
uint64_t primitive_root_of_unity(uint64_t e, uint64_t q);

/// Square root mod an odd prime via Tonelli-Shanks; returns false if a is a
/// non-residue.
bool sqrtmod(uint64_t a, uint64_t q, uint64_t& root);

// ---- F_{p^f} as F_p[x]/(g), g monic irreducible of degree f ----

/// Arithmetic context for a finite field of small characteristic. The
/// modulus polynomial is the lexicographically first monic irreducible of
/// degree f, so all derived data is deterministic.
class FqField {
public:
  using Elt = std::vector<uint32_t>; // coefficients, degree < f, no trailing zeros

  FqField(uint64_t p, uint32_t f);

  uint64_t p() const { return p_; }
  uint32_t f() const { return f_; }
  const std::vector<uint32_t>& modulus() const { return mod_; }

  Elt zero() const { return {}; }
  Elt one() const { return {1}; }
  Elt from_int(const mpz_class& n) const;
  Elt x() const; // the residue of x

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt mul(const Elt& a, const Elt& b) const;
  Elt pow(Elt a, mpz_class e) const;
  bool is_zero(const Elt& a) const { return a.empty(); }
  bool equal(const Elt& a, const Elt& b) const { return a == b; }

  /// Order of the multiplicative group, p^f - 1.
  mpz_class unit_order() const;

  /// Element of exact multiplicative order m (requires m | p^f - 1),
  /// deterministic: first in the graded enumeration of field elements whose
  /// (p^f-1)/m power has exact order m.
  Elt element_of_order(uint64_t m) const;

  /// All elements of exact order m (for property tests with small fields).
  std::vector<Elt> all_elements_of_order(uint64_t m) const;

  uint64_t hash(const Elt& a) const;

private:
  Elt reduce(std::vector<uint64_t> poly) const;
  bool next_element(Elt& e) const; // graded enumeration; false after last

  uint64_t p_;
  uint32_t f_;
  std::vector<uint32_t> mod_; // monic, degree f, coefficient of x^f is 1
};

} // namespace blockheight
