// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hsp/selftest.hpp"

using namespace hsp;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::vector<PropertyResult (*)(const SelftestOptions&)> props;
};

}  // namespace

int main() {
  SelftestOptions opts;
  opts.max_degree = 6;
  opts.seed = 1;
  const std::vector<Criterion> criteria{
      {1, "hidden coset round trip on Z4, Z6, S3", 60, {prop_coset_round_trip}},
      {2, "generalized shift subgroup on Z4, Z5, Z6", 60, {prop_ghsh_reduction}},
      {3, "orbit coset recovery on small actions", 30, {prop_orbit_coset}},
      {4, "decision-to-search on S3, S4 and random S5", 600, {prop_decision_search}},
      {5, "hidden shift chain walk on S3, S4", 60, {prop_hidden_shift_search}},
      {6, "dihedral smooth search for n = 12, 60, 360", 60, {prop_dihedral_search}},
      {7, "checker completeness on 100 instances", 600, {prop_checker_completeness}},
      {8, "checker soundness against constant oracles", 600, {prop_checker_soundness}},
      {9, "algebra suite", 120, {prop_associativity, prop_wreath_embedding, prop_chain_order, prop_unique_factorization}},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    bool ok = true;
    double seconds = 0;
    std::uint64_t checks = 0;
    std::vector<std::string> detail;
    for (auto prop : c.props) {
      const auto r = prop(opts);
      seconds += r.seconds;
      checks += r.passed + r.failed;
      ok = ok && r.ok();
      for (const auto& f : r.failures) detail.push_back(r.name + ": " + f);
      for (const auto& [k, v] : r.notes) detail.push_back(r.name + ": " + k + "=" + std::to_string(v));
    }
    if (seconds > c.limit_seconds) {
      ok = false;
      detail.push_back("over time limit of " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
    }
    std::printf("%s criterion %d: %s (%llu checks, %.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(),
                static_cast<unsigned long long>(checks), seconds);
    for (const auto& d : detail) std::printf("    %s\n", d.c_str());
    failures += !ok;
  }
  return failures == 0 ? 0 : 1;
}
