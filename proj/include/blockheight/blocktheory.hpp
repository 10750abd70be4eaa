#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "blockheight/chartable.hpp"
#include "blockheight/fq.hpp"
#include "blockheight/permgroup.hpp"

namespace blockheight {

/// Reduction Z[zeta_e] -> F_{p^f} modulo a maximal ideal over p: with
/// e = p^a m, p not dividing m, and u p^a + v m = 1, the map sends
/// zeta_e to wbar^u for a fixed primitive m-th root wbar, so p-power
/// roots of unity collapse to 1.
class ModPReduction {
public:
  ModPReduction(uint64_t e, uint64_t p);
  /// Alternative root choice (for the independence property test):
  /// wbar = (first primitive root)^k with gcd(k, m) = 1.
  ModPReduction(uint64_t e, uint64_t p, const FqField::Elt& root);

  FqField::Elt reduce(const Cyclotomic& x) const;
  const FqField& field() const { return field_; }
  uint64_t m() const { return m_; }

private:
  uint64_t e_, p_, m_, u_;
  FqField field_;
  FqField::Elt omega_bar_;
  std::vector<FqField::Elt> root_powers_; // wbar^(u*k mod m) for k mod m
};

/// p-blocks of a character table with defects, heights and minimal
/// positive heights. Blocks are ordered by smallest character index;
/// the principal block is the one containing the trivial character.
struct BlockPartition {
  uint64_t p = 2;
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;               // character -> block
  std::vector<uint32_t> defects;           // per block
  std::vector<uint32_t> heights;           // per character
  std::vector<std::optional<uint32_t>> mh; // per block, nullopt = infinity
  int principal = -1;

  size_t count() const { return blocks.size(); }
};

std::vector<Cyclotomic> central_character(const CharacterTable& t, size_t chi);

BlockPartition block_partition(const CharacterTable& t, uint64_t p);
/// Same partition computed with an explicitly chosen primitive root (must
/// yield identical output for every choice).
BlockPartition block_partition_with_root(const CharacterTable& t, uint64_t p,
                                         const FqField::Elt& root);

std::optional<uint32_t> mh_block(const BlockPartition& bp, size_t block);

/// B covers b iff some chi in B restricts to N with a constituent in b.
/// Requires sub normal in group (verified; throws NotNormal).
std::vector<std::set<int>> block_covering(const CharacterTable& group_table,
                                          const BlockPartition& group_blocks,
                                          const PermGroup& group,
                                          const CharacterTable& sub_table,
                                          const BlockPartition& sub_blocks,
                                          const PermGroup& sub);

/// The permutation of Irr(N) induced by conjugation with g (g in G, N normal
/// in G): chi^g(x) = chi(g x g^-1).
std::vector<int> character_conjugation_action(const CharacterTable& sub_table,
                                              const PermGroup& sub, const Perm& g);

/// Whether block b of N is stable under conjugation by every generator of G.
bool block_is_invariant(const CharacterTable& sub_table, const BlockPartition& sub_blocks,
                        size_t block, const PermGroup& sub, const PermGroup& group);

/// Eaton-Moreto verification verdict for one block.
struct EMBlockReport {
  std::vector<int> characters;
  std::vector<uint64_t> degrees;
  uint32_t defect = 0;
  std::vector<uint32_t> heights;
  std::optional<uint32_t> mh_block;               // nullopt = infinity
  std::string defect_group_status;                // sylow | defect-zero | user-asserted | unknown
  std::optional<std::optional<uint32_t>> mh_defect; // outer nullopt = D unknown
  std::string verdict;                            // holds | open: D unknown | mismatch
  bool principal = false;
};

struct EMReport {
  std::string group_name;
  uint64_t p = 2;
  uint64_t order = 1;
  std::vector<EMBlockReport> blocks;
  int exit_code = 0; // 0 all holds/open, 2 any mismatch
};

/// Per-block mh(B) vs mh(D). D is the Sylow p-subgroup for full-defect
/// blocks when the group is available, the trivial group for defect 0, or a
/// user-supplied candidate of order exactly p^d(B) (accepted as asserted,
/// not certified). Throws DefectOrderMismatch if a user candidate matches
/// no block.
EMReport verify_em(const CharacterTable& table, const PermGroup* group, uint64_t p,
                   const std::vector<PermGroup>& user_defect_groups = {},
                   uint64_t cap = kDefaultEnumerationCap);

} // namespace blockheight
