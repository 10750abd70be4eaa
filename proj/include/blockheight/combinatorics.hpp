#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace blockheight {

/// Integer partition: weakly decreasing positive parts.
using Partition = std::vector<uint32_t>;

constexpr uint32_t kMaxPartitionSize = 60;

uint32_t partition_size(const Partition& p);
Partition conjugate_partition(const Partition& p);

/// Hook lengths cell by cell, row-major.
std::vector<uint32_t> hook_lengths(const Partition& p);

/// Irreducible S_n degree by the hook length formula, n!/prod(hooks).
mpz_class degree_sn(const Partition& p);

/// l-adic valuation of degree_sn(p), computed arithmetically as
/// nu_l(n!) - sum nu_l(hook) and cross-checked against the big integer.
uint32_t degree_sn_valuation(const Partition& p, uint64_t ell);

/// Reverse-lexicographic enumeration of the partitions of n
/// ((n) first, (1^n) last). n = 0 yields the empty partition.
void enumerate_partitions(uint32_t n, const std::function<void(const Partition&)>& fn);

/// l-core on the abacus: bead count padded to a multiple of ell, beads slid
/// up their runners.
Partition ell_core(const Partition& p, uint32_t ell);
bool is_ell_core(const Partition& p, uint32_t ell); // no hook divisible by ell

/// Searches ell <= b < 2*ell with a = b (mod ell) for an ell-core of size b.
/// Requires ell <= a < ell^2. Returns (b, first core in enumeration order).
std::optional<std::pair<uint32_t, Partition>> core_existence(uint32_t a, uint32_t ell);

/// Partitions of n grouped by their ell-core; pairs (core, members),
/// ordered by first appearance in enumeration order.
std::vector<std::pair<Partition, std::vector<Partition>>> nakayama_blocks(uint32_t n,
                                                                          uint32_t ell);

/// Label of an irreducible character of C_d wr S_a: d partitions with
/// total size a.
using WreathLabel = std::vector<Partition>;

mpz_class multinomial(uint32_t n, const std::vector<uint32_t>& parts);

/// Degree multinomial(a; |l1|,...,|ld|) * prod degree_sn(li).
mpz_class wreath_degree(const WreathLabel& label);
uint32_t wreath_degree_valuation(const WreathLabel& label, uint64_t ell);

void enumerate_wreath_labels(uint32_t d, uint32_t a,
                             const std::function<void(const WreathLabel&)>& fn);

/// First label (in enumeration order) whose degree has ell-part exactly ell,
/// or nullopt. Requires ell | d^a * a!.
std::optional<WreathLabel> check_unipdef(uint32_t d, uint32_t a, uint64_t ell);

} // namespace blockheight
