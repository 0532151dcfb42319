#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsp/finite_group.hpp"

namespace hsp {

struct PropertyResult {
  std::string suite;
  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  double seconds = 0.0;
  /// Up to a handful of failure descriptions.
  std::vector<std::string> failures;
  /// Free-form counts worth reporting (e.g. cases, queries).
  std::vector<std::pair<std::string, std::uint64_t>> notes;

  bool ok() const { return failed == 0 && passed > 0; }
};

struct SelftestOptions {
  std::size_t max_degree = 6;
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultCap;
  unsigned jobs = 1;
};

std::vector<std::string> selftest_suites();

/// Runs every property of a suite ("all" runs every suite). Throws InvalidInput on unknown names.
std::vector<PropertyResult> run_suite(const std::string& suite, const SelftestOptions& options);

// perm_core
PropertyResult prop_chain_order(const SelftestOptions& o);
PropertyResult prop_unique_factorization(const SelftestOptions& o);
PropertyResult prop_setwise_stabilizers(const SelftestOptions& o);
PropertyResult prop_random_element_uniform(const SelftestOptions& o);
// group_alg
PropertyResult prop_associativity(const SelftestOptions& o);
PropertyResult prop_wreath_embedding(const SelftestOptions& o);
PropertyResult prop_wreath_orders(const SelftestOptions& o);
// instances
PropertyResult prop_planted_kernels(const SelftestOptions& o);
PropertyResult prop_shift_sets(const SelftestOptions& o);
PropertyResult prop_ghsh_unique(const SelftestOptions& o);
PropertyResult prop_oracle_determinism(const SelftestOptions& o);
// reductions
PropertyResult prop_coset_round_trip(const SelftestOptions& o);
PropertyResult prop_ghsh_reduction(const SelftestOptions& o);
PropertyResult prop_orbit_coset(const SelftestOptions& o);
PropertyResult prop_intersection_gadget(const SelftestOptions& o);
// search_decision
PropertyResult prop_decision_search(const SelftestOptions& o);
PropertyResult prop_hidden_shift_search(const SelftestOptions& o);
PropertyResult prop_dihedral_search(const SelftestOptions& o);
// solvers_checkers
PropertyResult prop_checker_completeness(const SelftestOptions& o);
PropertyResult prop_checker_soundness(const SelftestOptions& o);

}  // namespace hsp
