#pragma once

#include <random>
#include <string>
#include <vector>

#include "hsp/finite_group.hpp"

namespace hsp {

/**
 * Named groups:
 *   sN        symmetric group S_N on {1..N}, generators (1 2), (1 2 ... N)
 *   zN        cyclic group Z_N, generator 1
 *   dN        dihedral group D_N (order 2N), generators r, s
 *   wr:B:K    B wr Z_K for a base B given as zM or sM
 * Throws InvalidInput on anything else.
 */
FiniteGroup group_from_name(const std::string& name);

/// Every subgroup generated by at most two elements, each as greedy generators,
/// ordered by subgroup order and then by sorted element list. For the small
/// groups used here (cyclic groups, S_3, S_4) this is every subgroup.
std::vector<std::vector<GroupElement>> two_generated_subgroups(const FiniteGroup& group,
                                                               std::size_t cap = kDefaultCap);

/// Subgroup generated by 1..max_gens uniform random elements.
std::vector<GroupElement> random_subgroup_generators(const FiniteGroup& group, std::mt19937_64& rng,
                                                     std::size_t max_gens = 2);

}  // namespace hsp
