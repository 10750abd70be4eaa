#include "blockheight/blocktheory.hpp"

#include <algorithm>
#include <map>

#include "blockheight/errors.hpp"
#include "blockheight/pgroups.hpp"

namespace blockheight {

namespace {

uint32_t multiplicative_order(uint64_t a, uint64_t n) {
  if (n == 1) return 1;
  uint64_t x = a % n;
  uint32_t k = 1;
  while (x != 1) {
    x = x * a % n;
    ++k;
    if (k > n) fail("InvariantViolation", "order computation diverged");
  }
  return k;
}

} // namespace

ModPReduction::ModPReduction(uint64_t e, uint64_t p)
    : e_(e), p_(p), m_([&] {
        uint64_t m = e;
        while (m % p == 0) m /= p;
        return m;
      }()),
      u_(0), field_(p, multiplicative_order(p, m_)), omega_bar_(field_.element_of_order(m_)) {
  uint64_t pa = e_ / m_;
  // u pa + v m = 1
  for (uint64_t u = 0; u < m_; ++u)
    if ((u * (pa % m_)) % m_ == 1 % m_) {
      u_ = u;
      break;
    }
  root_powers_.resize(m_);
  for (uint64_t k = 0; k < m_; ++k)
    root_powers_[k] = field_.pow(omega_bar_, mpz_class(static_cast<unsigned long>(u_ * k % m_)));
}

ModPReduction::ModPReduction(uint64_t e, uint64_t p, const FqField::Elt& root)
    : ModPReduction(e, p) {
  omega_bar_ = root;
  for (uint64_t k = 0; k < m_; ++k)
    root_powers_[k] = field_.pow(omega_bar_, mpz_class(static_cast<unsigned long>(u_ * k % m_)));
}

FqField::Elt ModPReduction::reduce(const Cyclotomic& x) const {
  if (x.modulus() != e_)
    fail("InvariantViolation", "reduction modulus mismatch");
  FqField::Elt acc = field_.zero();
  for (const auto& [k, c] : x.terms()) {
    FqField::Elt term = field_.mul(field_.from_int(c), root_powers_[k % m_]);
    acc = field_.add(acc, term);
  }
  return acc;
}

std::vector<Cyclotomic> central_character(const CharacterTable& t, size_t chi) {
  std::vector<Cyclotomic> omega;
  omega.reserve(t.num_classes());
  mpz_class deg(static_cast<unsigned long>(t.degrees[chi]));
  for (size_t j = 0; j < t.num_classes(); ++j) {
    Cyclotomic scaled =
        t.irreducibles[chi][j].scaled(mpz_class(static_cast<unsigned long>(t.class_sizes[j])));
    Cyclotomic w;
    if (!scaled.divide_exact(deg, w))
      fail("NonIntegralOmega", "central character value is not an algebraic integer in " +
                                   t.group_name);
    omega.push_back(std::move(w));
  }
  return omega;
}

namespace {

BlockPartition partition_with(const CharacterTable& t, uint64_t p,
                              const ModPReduction& red) {
  size_t c = t.num_classes();
  BlockPartition bp;
  bp.p = p;
  bp.block_of.assign(c, -1);

  // group characters by the reduced omega-vector
  std::map<std::vector<FqField::Elt>, std::vector<int>> groups;
  for (size_t chi = 0; chi < c; ++chi) {
    std::vector<Cyclotomic> omega = central_character(t, chi);
    std::vector<FqField::Elt> key;
    key.reserve(c);
    for (const Cyclotomic& w : omega) key.push_back(red.reduce(w));
    groups[std::move(key)].push_back(static_cast<int>(chi));
  }
  std::vector<std::vector<int>> blocks;
  for (auto& [key, chars] : groups) blocks.push_back(chars);
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });

  uint32_t nu_g = valuation(t.order, p);
  size_t trivial = t.trivial_row();
  bp.heights.assign(c, 0);
  for (size_t b = 0; b < blocks.size(); ++b) {
    uint32_t min_nu = UINT32_MAX;
    for (int chi : blocks[b]) {
      bp.block_of[chi] = static_cast<int>(b);
      min_nu = std::min(min_nu, valuation(t.degrees[chi], p));
    }
    bp.defects.push_back(nu_g - min_nu);
    std::optional<uint32_t> mh;
    for (int chi : blocks[b]) {
      uint32_t h = valuation(t.degrees[chi], p) - min_nu;
      bp.heights[chi] = h;
      if (h > 0 && (!mh || h < *mh)) mh = h;
    }
    bp.mh.push_back(mh);
    if (std::find(blocks[b].begin(), blocks[b].end(), static_cast<int>(trivial)) !=
        blocks[b].end())
      bp.principal = static_cast<int>(b);
  }
  bp.blocks = std::move(blocks);

  if (bp.defects[bp.principal] != nu_g)
    fail("InvariantViolation", "principal block does not have full defect");
  if (t.order % p != 0)
    for (const auto& blk : bp.blocks)
      if (blk.size() != 1)
        fail("InvariantViolation", "p' blocks must be singletons");
  return bp;
}

} // namespace

BlockPartition block_partition(const CharacterTable& t, uint64_t p) {
  ModPReduction red(t.exponent, p);
  return partition_with(t, p, red);
}

BlockPartition block_partition_with_root(const CharacterTable& t, uint64_t p,
                                         const FqField::Elt& root) {
  ModPReduction red(t.exponent, p, root);
  return partition_with(t, p, red);
}

std::optional<uint32_t> mh_block(const BlockPartition& bp, size_t block) {
  return bp.mh.at(block);
}

std::vector<int> character_conjugation_action(const CharacterTable& sub_table,
                                              const PermGroup& sub, const Perm& g) {
  const ConjClasses& cc = sub.conjugacy_classes();
  size_t c = cc.count();
  // class map: j -> class of g rep_j g^-1
  std::vector<int32_t> cmap(c);
  for (size_t j = 0; j < c; ++j) {
    Perm conj = perm_conj(sub.element(cc.reps[j]), perm_inv(g));
    auto id = sub.element_id(conj);
    if (!id) fail("NotNormal", "conjugation leaves the normal subgroup");
    cmap[j] = cc.class_of[*id];
  }
  std::vector<int> action(c, -1);
  for (size_t chi = 0; chi < c; ++chi) {
    // chi^g is the row with value chi(cmap[j]) at class j
    for (size_t psi = 0; psi < c; ++psi) {
      bool match = true;
      for (size_t j = 0; j < c && match; ++j)
        match = sub_table.irreducibles[psi][j] == sub_table.irreducibles[chi][cmap[j]];
      if (match) {
        action[chi] = static_cast<int>(psi);
        break;
      }
    }
    if (action[chi] < 0)
      fail("InvariantViolation", "conjugate character missing from table");
  }
  return action;
}

bool block_is_invariant(const CharacterTable& sub_table, const BlockPartition& sub_blocks,
                        size_t block, const PermGroup& sub, const PermGroup& group) {
  const std::vector<int>& chars = sub_blocks.blocks[block];
  for (const Perm& g : group.generators()) {
    std::vector<int> act = character_conjugation_action(sub_table, sub, g);
    for (int chi : chars)
      if (std::find(chars.begin(), chars.end(), act[chi]) == chars.end()) return false;
  }
  return true;
}

std::vector<std::set<int>> block_covering(const CharacterTable& group_table,
                                          const BlockPartition& group_blocks,
                                          const PermGroup& group,
                                          const CharacterTable& sub_table,
                                          const BlockPartition& sub_blocks,
                                          const PermGroup& sub) {
  if (!is_normal_subgroup(sub, group))
    fail("NotNormal", sub.name() + " is not normal in " + group.name());
  std::vector<int32_t> fusion = class_fusion(sub, group);
  std::vector<std::set<int>> covered(group_blocks.count());
  for (size_t b = 0; b < group_blocks.count(); ++b) {
    for (int chi : group_blocks.blocks[b]) {
      std::vector<uint64_t> mult =
          restrict_character(group_table, chi, fusion, sub_table);
      for (size_t psi = 0; psi < mult.size(); ++psi)
        if (mult[psi] > 0) covered[b].insert(sub_blocks.block_of[psi]);
    }
  }
  return covered;
}

EMReport verify_em(const CharacterTable& table, const PermGroup* group, uint64_t p,
                   const std::vector<PermGroup>& user_defect_groups, uint64_t cap) {
  BlockPartition bp = block_partition(table, p);
  uint32_t nu_g = valuation(table.order, p);

  EMReport rep;
  rep.group_name = table.group_name;
  rep.p = p;
  rep.order = table.order;

  // Sylow p-subgroup, shared by all full-defect blocks
  std::optional<std::optional<uint32_t>> sylow_mh;
  auto sylow_mh_value = [&]() -> std::optional<uint32_t> {
    if (!sylow_mh) {
      PermGroup syl = sylow_subgroup(*group, p, cap);
      sylow_mh = mh_pgroup(syl, p, cap);
    }
    return *sylow_mh;
  };

  // every user candidate must be a p-group whose order matches some block
  for (const PermGroup& cand : user_defect_groups) {
    uint64_t o = cand.order();
    if (o != p_part(o, p))
      fail("DefectOrderMismatch", "user subgroup " + cand.name() +
                                      " is not a p-group for p=" + std::to_string(p));
    bool matches = false;
    for (uint32_t d : bp.defects) matches |= (valuation(o, p) == d);
    if (!matches)
      fail("DefectOrderMismatch", "user subgroup " + cand.name() + " has order p^" +
                                      std::to_string(valuation(o, p)) +
                                      " matching no block defect");
  }
  auto user_candidate = [&](uint32_t defect) -> const PermGroup* {
    for (const PermGroup& cand : user_defect_groups)
      if (valuation(cand.order(), p) == defect) return &cand;
    return nullptr;
  };

  for (size_t b = 0; b < bp.count(); ++b) {
    EMBlockReport br;
    br.characters = bp.blocks[b];
    for (int chi : br.characters) {
      br.degrees.push_back(table.degrees[chi]);
      br.heights.push_back(bp.heights[chi]);
    }
    br.defect = bp.defects[b];
    br.mh_block = bp.mh[b];
    br.principal = (static_cast<int>(b) == bp.principal);

    if (br.defect == 0) {
      // defect zero: D is trivial, mh(D) infinite
      br.defect_group_status = "defect-zero";
      br.mh_defect = std::optional<uint32_t>(std::nullopt);
    } else if (br.defect == nu_g && group != nullptr) {
      br.defect_group_status = "sylow";
      br.mh_defect = sylow_mh_value();
    } else if (const PermGroup* cand = user_candidate(br.defect)) {
      br.defect_group_status = "user-asserted";
      br.mh_defect = mh_pgroup(*cand, p, cap);
    } else {
      br.defect_group_status = "unknown";
      br.mh_defect = std::nullopt;
    }

    if (br.mh_defect) {
      br.verdict = (*br.mh_defect == br.mh_block) ? "holds" : "mismatch";
      if (br.verdict == "mismatch") rep.exit_code = 2;
    } else {
      br.verdict = "open: D unknown";
    }
    rep.blocks.push_back(std::move(br));
  }

  for (size_t i = 0; i < user_defect_groups.size(); ++i) {
    if (candidate_used[i]) continue;
    uint64_t o = user_defect_groups[i].order();
    std::string why = (o != p_part(o, p))
                          ? " is not a p-group for p=" + std::to_string(p)
                          : " has order p^" + std::to_string(valuation(o, p)) +
                                " matching no block defect";
    fail("DefectOrderMismatch", "user subgroup " + user_defect_groups[i].name() + why);
  }
  return rep;
}

} // namespace blockheight
