#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace blockheight {

/// An element of Z[zeta_e], zeta_e a fixed primitive e-th root of unity.
///
/// Canonical form: write e = p1^a1 * ... * pr^ar. Every exponent k mod e
/// decomposes uniquely as k = sum_i j_i * (e/p_i^a_i) mod e with
/// 0 <= j_i < p_i^a_i, and {zeta_e^k : all j_i < (p_i - 1) p_i^(a_i-1)}
/// is a Z-basis (the tensor product of the power bases of the prime-power
/// layers). Out-of-range layers are rewritten greedily with
/// 1 + zeta_p + ... + zeta_p^(p-1) = 0. Equality, zero tests and integer
/// detection read the canonical coefficients directly.
class Cyclotomic {
public:
  Cyclotomic() : modulus_(1) {}
  explicit Cyclotomic(uint64_t modulus) : modulus_(modulus) {}

  static Cyclotomic from_integer(uint64_t modulus, const mpz_class& n);
  /// c * zeta_e^k
  static Cyclotomic term(uint64_t modulus, const mpz_class& c, uint64_t k);
  /// sum of c_i * zeta_e^(k_i); exponents need not be reduced or distinct
  static Cyclotomic from_terms(uint64_t modulus,
                               std::vector<std::pair<uint64_t, mpz_class>> work);

  uint64_t modulus() const { return modulus_; }
  /// canonical (exponent, coefficient) pairs, sorted by exponent
  const std::vector<std::pair<uint32_t, mpz_class>>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_integer() const;
  mpz_class integer_value() const; // requires is_integer()

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  bool operator==(const Cyclotomic& o) const {
    return modulus_ == o.modulus_ && terms_ == o.terms_;
  }

  Cyclotomic scaled(const mpz_class& c) const;
  Cyclotomic conjugate() const; // complex conjugation, zeta -> zeta^-1

  /// Exact division by a nonzero integer; false if some canonical
  /// coefficient is not divisible.
  bool divide_exact(const mpz_class& d, Cyclotomic& out) const;

  /// Re-express at a larger modulus m with modulus() | m.
  Cyclotomic to_modulus(uint64_t m) const;

  uint64_t hash() const;
  std::string str() const; // human-readable, for reports and tests

  /// Deterministic row-ordering comparison: walk exponents upward, larger
  /// coefficient first at the first difference. Returns -1, 0, 1.
  static int order_cmp(const Cyclotomic& a, const Cyclotomic& b);

private:
  static void normalize(uint64_t modulus, std::vector<std::pair<uint64_t, mpz_class>>& work,
                        std::vector<std::pair<uint32_t, mpz_class>>& out);

  uint64_t modulus_;
  std::vector<std::pair<uint32_t, mpz_class>> terms_;
};

} // namespace blockheight
