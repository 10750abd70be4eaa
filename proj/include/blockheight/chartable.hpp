#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "blockheight/cyclotomic.hpp"
#include "blockheight/permgroup.hpp"

namespace blockheight {

/// An exact ordinary character table. Classes are in construction order
/// (class 0 = identity); rows are sorted with the trivial character first,
/// then by degree, then by the deterministic value order of Cyclotomic.
struct CharacterTable {
  std::string group_name;
  uint64_t order = 1;
  uint64_t exponent = 1;
  std::vector<uint64_t> class_sizes;
  std::vector<uint64_t> class_orders;
  std::vector<std::vector<int32_t>> power_maps; // [k][j], k in 0..exponent-1
  std::vector<int32_t> inverse_class;
  std::vector<std::vector<Cyclotomic>> irreducibles;
  std::vector<uint64_t> degrees;

  size_t num_classes() const { return class_sizes.size(); }
  size_t trivial_row() const; // index of the all-ones row

  /// <chi_a, chi_b> = |G|^-1 sum_j |K_j| chi_a(g_j) conj(chi_b(g_j)),
  /// exact; throws NonIntegralMultiplicity if not an integer.
  mpz_class inner_product(size_t a, size_t b) const;
};

/// Dixon-Schneider over F_q with cyclotomic lifting. force_prime substitutes
/// the admissible prime search result (used by the determinism checks);
/// it must itself be admissible.
CharacterTable dixon_schneider(const PermGroup& group,
                               std::optional<uint64_t> force_prime = std::nullopt);

/// Degrees only (ascending): the eigenvector stage of Dixon-Schneider
/// without value lifting. Cheap enough for p-group scans.
std::vector<uint64_t> dixon_degrees(const PermGroup& group);

/// The admissible Dixon prime for this group: smallest q = 1 (mod exponent)
/// with q > 2*ceil(sqrt(|G|)). skip primes to probe alternatives.
uint64_t dixon_prime(const PermGroup& group, unsigned skip = 0);

/// Full first-orthogonality validation; throws InvariantViolation on failure.
void validate_table(const CharacterTable& t);

/// JSON import/export, bit-exact round trip. Import re-validates all
/// invariants and throws FormatError / InvariantViolation.
std::string export_table_json(const CharacterTable& t);
CharacterTable import_table_json(const std::string& text);
CharacterTable import_table_file(const std::string& path);
void export_table_file(const CharacterTable& t, const std::string& path);

/// Multiplicities of all sub-irreducibles in the restriction of row chi
/// (fusion maps sub classes to group classes). Throws
/// NonIntegralMultiplicity on inconsistent input.
std::vector<uint64_t> restrict_character(const CharacterTable& group_table, size_t chi,
                                         const std::vector<int32_t>& fusion,
                                         const CharacterTable& sub_table);

} // namespace blockheight
