#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"
#include "hsp/solvers_checkers.hpp"

using namespace hsp;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }
GroupElement perm(std::size_t n, const char* cycles) { return Permutation::from_cycles(n, cycles); }

std::shared_ptr<const HspInstance> planted(std::shared_ptr<const FiniteGroup> g, std::vector<GroupElement> gens,
                                           CosetSide side = CosetSide::Left) {
  return std::make_shared<const HspInstance>(plant_hsp(std::move(g), gens, side));
}

bool all_ticks_after(const DecisionOracle& oracle, std::uint64_t tick, std::size_t skip_first) {
  const auto log = oracle.call_log();
  for (std::size_t c = skip_first; c < log.size(); ++c)
    if (log[c].tick <= tick) return false;
  return true;
}

}  // namespace

TEST_CASE("brute-force HSP solver") {
  const auto s3 = share(symmetric_group(3));
  const auto gens = brute_hsp_solve(*planted(s3, {perm(3, "(1 2)")}));
  const auto span = closure(s3->shape(), gens);
  CHECK(span.size() == 2);
  CHECK(std::find(span.begin(), span.end(), perm(3, "(1 2)")) != span.end());
  CHECK(brute_hsp_solve(*planted(s3, {})).empty());
  CHECK(closure(s3->shape(), brute_hsp_solve(*planted(s3, s3->generators()))).size() == 6);

  HspInstance broken = *planted(s3, {});
  broken.f = OracleFunction(s3, [](const GroupElement& g) { return ValueLabel(g.perm()(1) == 1 ? "fix" : "move"); });
  CHECK(brute_hsp_solve(broken).size() > 0);  // the stabilizer of 1 is a subgroup
  broken.f = OracleFunction(s3, [](const GroupElement& g) {
    return ValueLabel(g.is_identity() || g == GroupElement(Permutation::from_cycles(3, "(1 2 3)")) ? "a" : "b");
  });
  CHECK_THROWS_AS(brute_hsp_solve(broken), PromiseViolation);
}

TEST_CASE("brute-force decision") {
  const auto s3 = share(symmetric_group(3));
  const auto inst = planted(s3, {perm(3, "(1 2)")});
  const auto g12 = ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 2)")});
  const auto g13 = ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 3)")});
  CHECK(brute_decide(multi_intersection(inst, {g12})) == DecisionAnswer::Nontrivial);
  CHECK(brute_decide(multi_intersection(inst, {g13})) == DecisionAnswer::Trivial);
  CHECK(brute_decide(multi_intersection(planted(s3, {}), {})) == DecisionAnswer::Trivial);

  BruteForceDecisionOracle oracle;
  CHECK(oracle.decide(multi_intersection(inst, {g12})) == DecisionAnswer::Nontrivial);
  CHECK(oracle.decide(multi_intersection(inst, {g13})) == DecisionAnswer::Trivial);
  CHECK(oracle.calls() == 2);
}

TEST_CASE("bug wrappers change only the selected answers") {
  const auto s4 = share(symmetric_group(4));
  std::vector<StructuredHspInstance> queries;
  for (const auto& gens : two_generated_subgroups(*share(symmetric_group(3))))
    queries.push_back(multi_intersection(planted(share(symmetric_group(3)), gens), {}));
  for (const auto& gens : std::vector<std::vector<GroupElement>>{{}, {perm(4, "(1 2)")}, {perm(4, "(1 2 3 4)")}})
    queries.push_back(multi_intersection(planted(s4, gens), {}));

  auto base = std::make_shared<BruteForceDecisionOracle>();
  auto trivial = wrap_buggy(base, parse_bug_spec("always-trivial"));
  auto nontrivial = wrap_buggy(base, parse_bug_spec("always-nontrivial"));
  auto flip0 = wrap_buggy(base, parse_bug_spec("flip:0", 3));
  auto flip1 = wrap_buggy(base, parse_bug_spec("flip:1", 3));
  auto wrong = wrap_buggy(base, parse_bug_spec("wrong-on-order-gt:6"));
  for (const auto& q : queries) {
    const auto truth = brute_decide(q);
    CHECK(trivial->decide(q) == DecisionAnswer::Trivial);
    CHECK(nontrivial->decide(q) == DecisionAnswer::Nontrivial);
    CHECK(flip0->decide(q) == truth);
    CHECK(flip1->decide(q) != truth);
    CHECK((wrong->decide(q) != truth) == (q.base->group->order() > 6));
  }
  CHECK_THROWS_AS(parse_bug_spec("sometimes"), InvalidInput);
  CHECK_THROWS_AS(parse_bug_spec("flip:abc"), InvalidInput);
  CHECK_THROWS_AS(parse_bug_spec("flip:2"), InvalidInput);
}

TEST_CASE("flip stream is reproducible") {
  const auto s3 = share(symmetric_group(3));
  const auto q = multi_intersection(planted(s3, {perm(3, "(1 2)")}), {});
  auto base = std::make_shared<BruteForceDecisionOracle>();
  auto a = wrap_buggy(base, parse_bug_spec("flip:0.5", 42));
  auto b = wrap_buggy(base, parse_bug_spec("flip:0.5", 42));
  int flips = 0;
  for (int t = 0; t < 200; ++t) {
    const auto x = a->decide(q);
    CHECK(x == b->decide(q));
    flips += x == DecisionAnswer::Trivial;
  }
  CHECK(flips > 60);
  CHECK(flips < 140);
}

TEST_CASE("decision checker accepts a correct program") {
  BruteForceDecisionOracle oracle;
  for (const char* name : {"s3", "s4"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : std::vector<std::vector<GroupElement>>{{}, {g->generators()[0]}, g->generators()}) {
      const auto v = checker_hspD(oracle, planted(g, gens), 7, 11);
      CHECK(v.verdict == Verdict::Correct);
      CHECK(v.branch == (gens.empty() ? "trivial" : "nontrivial"));
      CHECK(v.transcript.size() == (gens.empty() ? 7 : 1));
      CHECK(v.oracle_calls > 0);
      CHECK(v.checker_steps > 0);
    }
  }
}

TEST_CASE("decision checker trials are nonadaptive") {
  BruteForceDecisionOracle oracle;
  const auto s3 = share(symmetric_group(3));
  oracle.clear_log();
  const auto v = checker_hspD(oracle, planted(s3, {}), 5, 99);
  REQUIRE(v.branch == "trivial");
  CHECK(v.sealed_at > 0);
  CHECK(all_ticks_after(oracle, v.sealed_at, 1));
  CHECK(oracle.calls() == 1 + 5 * decision_query_count(6));
}

TEST_CASE("decision checker catches an always-trivial program") {
  auto base = std::make_shared<BruteForceDecisionOracle>();
  auto buggy = wrap_buggy(base, parse_bug_spec("always-trivial"));
  const auto s3 = share(symmetric_group(3));
  const auto inst = planted(s3, {perm(3, "(1 2)")});
  int buggy_runs = 0;
  for (std::uint64_t run = 0; run < 100; ++run)
    buggy_runs += checker_hspD(*buggy, inst, 7, trial_seed(1, run)).verdict == Verdict::Buggy;
  CHECK(buggy_runs >= 96);
}

TEST_CASE("decision checker catches an always-nontrivial program") {
  auto buggy = wrap_buggy(std::make_shared<BruteForceDecisionOracle>(), parse_bug_spec("always-nontrivial"));
  for (const char* name : {"s3", "s4"}) {
    const auto v = checker_hspD(*buggy, planted(share(group_from_name(name)), {}), 7, 5);
    CHECK(v.verdict == Verdict::Buggy);
    CHECK(v.branch == "nontrivial");
  }
}

TEST_CASE("decision checker is deterministic per seed") {
  auto base = std::make_shared<BruteForceDecisionOracle>();
  const auto inst = planted(share(symmetric_group(3)), {});
  const auto a = checker_hspD(*base, inst, 3, 1234);
  const auto b = checker_hspD(*base, inst, 3, 1234);
  REQUIRE(a.transcript.size() == b.transcript.size());
  for (std::size_t t = 0; t < a.transcript.size(); ++t) CHECK(a.transcript[t].result == b.transcript[t].result);
  CHECK(trial_seed(1, 0) != trial_seed(1, 1));
  CHECK(trial_seed(1, 0) != trial_seed(2, 0));
}

TEST_CASE("search checker") {
  const auto s3 = share(symmetric_group(3));
  const auto correct = brute_search_program();
  const auto inst = planted(s3, {perm(3, "(1 2)")});
  CHECK(checker_hsp(correct, inst, 7, 1).verdict == Verdict::Correct);
  CHECK(checker_hsp(correct, planted(s3, {perm(3, "(1 2)")}, CosetSide::Right), 7, 1).verdict == Verdict::Correct);
  CHECK(checker_hsp(correct, planted(s3, {}), 7, 1).verdict == Verdict::Correct);

  const auto proper = wrap_buggy_search(correct, {SearchBugMode::ProperSubgroup, std::nullopt});
  int caught = 0;
  for (std::uint64_t run = 0; run < 20; ++run) caught += checker_hsp(proper, inst, 7, run).verdict == Verdict::Buggy;
  CHECK(caught == 20);

  const auto shifted = wrap_buggy_search(correct, {SearchBugMode::ShiftedRepresentative, perm(3, "(1 3)")});
  for (std::uint64_t run = 0; run < 20; ++run) CHECK(checker_hsp(shifted, inst, 7, run).verdict == Verdict::Buggy);

  const SearchProgram outside = [](const HspInstance&) { return SearchOutput{{perm(3, "(2 3)")}}; };
  const auto v = checker_hsp(outside, inst, 7, 1);
  CHECK(v.verdict == Verdict::Buggy);
  CHECK(v.transcript.size() == 1);
}
