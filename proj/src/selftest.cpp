#include "hsp/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"
#include "hsp/solvers_checkers.hpp"

namespace hsp {

namespace {

using Clock = std::chrono::steady_clock;

class Tally {
 public:
  Tally(std::string suite, std::string name) : start_(Clock::now()) {
    result_.suite = std::move(suite);
    result_.name = std::move(name);
  }

  void check(bool ok, const std::function<std::string()>& what) {
    if (ok) {
      ++result_.passed;
      return;
    }
    ++result_.failed;
    if (result_.failures.size() < 5) result_.failures.push_back(what());
  }

  void note(std::string key, std::uint64_t value) { result_.notes.emplace_back(std::move(key), value); }

  PropertyResult done() {
    result_.seconds = std::chrono::duration<double>(Clock::now() - start_).count();
    return std::move(result_);
  }

  /// Runs body, turning an escaping exception into one failure.
  template <typename F>
  void guarded(const std::string& label, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(false, [&] { return label + ": " + e.what(); });
    }
  }

 private:
  PropertyResult result_;
  Clock::time_point start_;
};

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

std::vector<GroupElement> sorted(std::vector<GroupElement> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<GroupElement> span(const Shape& shape, const std::vector<GroupElement>& gens, std::size_t cap) {
  return sorted(closure(shape, gens, cap));
}

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

std::size_t clamp_degree(const SelftestOptions& o, std::size_t want) { return std::max<std::size_t>(3, std::min(want, o.max_degree)); }

}  // namespace

std::vector<std::string> selftest_suites() {
  return {"perm_core", "group_alg", "instances", "reductions", "search_decision", "solvers_checkers"};
}

// ---------------------------------------------------------------------------
// perm_core

PropertyResult prop_chain_order(const SelftestOptions& o) {
  Tally t("perm_core", "chain-order-matches-closure");
  std::mt19937_64 rng(o.seed);
  const std::size_t n = clamp_degree(o, 6);
  const auto all = symmetric_group(static_cast<std::uint32_t>(n)).elements(o.cap);
  for (int c = 0; c < 50; ++c) {
    std::vector<Permutation> gens;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int g = 0; g < count; ++g) gens.push_back(random_perm(n, rng));
    t.guarded("subgroup " + std::to_string(c), [&] {
      const StabilizerChain chain(n, gens);
      std::vector<GroupElement> ggens(gens.begin(), gens.end());
      const auto members = closure_set(Shape::perm(static_cast<std::uint32_t>(n)), ggens, o.cap);
      t.check(chain.order() == members.size(), [&] {
        return "order " + std::to_string(chain.order()) + " vs closure " + std::to_string(members.size());
      });
      std::size_t disagreements = 0;
      for (const auto& p : all) disagreements += chain.contains(p.perm()) != members.contains(p);
      t.check(disagreements == 0, [&] { return std::to_string(disagreements) + " membership disagreements"; });
    });
  }
  t.note("degree", n);
  return t.done();
}

PropertyResult prop_unique_factorization(const SelftestOptions& o) {
  Tally t("perm_core", "unique-transversal-factorization");
  std::mt19937_64 rng(o.seed + 1);
  std::uint64_t groups = 0;
  for (int c = 0; c < 200 && groups < 40; ++c) {
    const std::size_t n = 3 + c % (clamp_degree(o, 6) - 2);
    std::vector<Permutation> gens{random_perm(n, rng)};
    if (rng() % 2) gens.push_back(random_perm(n, rng));
    const StabilizerChain chain(n, gens);
    if (chain.order() > 1000) continue;
    ++groups;
    std::vector<Permutation> products{Permutation::identity(n)};
    for (std::size_t level = n; level-- > 0;) {
      std::vector<Permutation> next;
      for (const auto& p : products)
        for (const auto& [pt, rep] : chain.transversal(level)) next.push_back(p * rep);
      products = std::move(next);
    }
    std::set<Permutation> distinct(products.begin(), products.end());
    std::vector<GroupElement> ggens(gens.begin(), gens.end());
    const auto members = closure_set(Shape::perm(static_cast<std::uint32_t>(n)), ggens, o.cap);
    bool exhaust = distinct.size() == products.size() && distinct.size() == members.size();
    for (const auto& p : distinct) exhaust = exhaust && members.contains(GroupElement(p));
    t.check(exhaust, [&] { return "products of transversals do not enumerate the group once each"; });
  }
  t.note("groups", groups);
  return t.done();
}

PropertyResult prop_setwise_stabilizers(const SelftestOptions& o) {
  Tally t("perm_core", "setwise-stabilizer-generators");
  const std::size_t max_n = clamp_degree(o, 6);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const auto all = symmetric_group(static_cast<std::uint32_t>(n)).elements(o.cap);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<Point> pts;
      for (Point x = 1; x <= n; ++x)
        if (mask >> (x - 1) & 1) pts.push_back(x);
      const PointSet set(n, pts);
      std::vector<GroupElement> gens;
      for (const auto& p : setwise_stabilizer_generators(n, set)) gens.emplace_back(p);
      const auto got = closure_set(Shape::perm(static_cast<std::uint32_t>(n)), gens, o.cap);
      std::size_t expected = 0;
      bool inside = true;
      for (const auto& g : all)
        if (set.is_stabilized_by(g.perm())) {
          ++expected;
          inside = inside && got.contains(g);
        }
      t.check(inside && got.size() == expected, [&] { return "n=" + std::to_string(n) + " mask=" + std::to_string(mask); });
    }
  }
  return t.done();
}

PropertyResult prop_random_element_uniform(const SelftestOptions& o) {
  Tally t("perm_core", "random-element-uniform");
  const auto gens = symmetric_group_generators(3);
  const StabilizerChain chain(3, gens);
  std::mt19937_64 rng(o.seed);
  std::map<Permutation, int> counts;
  for (int d = 0; d < 6000; ++d) counts[chain.random_element(rng)]++;
  t.check(counts.size() == 6, [] { return "not every element drawn"; });
  for (const auto& [p, c] : counts)
    t.check(c >= 850 && c <= 1150, [&, c = c] { return p.to_cycle_string() + " drawn " + std::to_string(c) + " times"; });
  std::mt19937_64 a(o.seed), b(o.seed);
  bool same = true;
  for (int d = 0; d < 100; ++d) same = same && chain.random_element(a) == chain.random_element(b);
  t.check(same, [] { return "same seed gave different draws"; });
  return t.done();
}

// ---------------------------------------------------------------------------
// group_alg

PropertyResult prop_associativity(const SelftestOptions& o) {
  Tally t("group_alg", "associativity-and-inverses");
  std::mt19937_64 rng(o.seed);
  const std::vector<std::pair<std::string, FiniteGroup>> groups{
      {"perm", symmetric_group(static_cast<std::uint32_t>(clamp_degree(o, 5)))},
      {"cyclic", cyclic_group(12)},
      {"dihedral", dihedral_group(9)},
      {"wreath", wreath_product(symmetric_group(3), 2)},
      {"wreath-cyclic", wreath_product(cyclic_group(3), 3)},
      {"tuple", direct_product({symmetric_group(3), cyclic_group(4), dihedral_group(3)})},
  };
  for (const auto& [label, g] : groups) {
    const auto& all = g.elements(o.cap);
    std::uint64_t bad = 0;
    for (int c = 0; c < 1000; ++c) {
      const auto& x = all[rng() % all.size()];
      const auto& y = all[rng() % all.size()];
      const auto& z = all[rng() % all.size()];
      bad += !((x * y) * z == x * (y * z));
      bad += !(x * invert(x)).is_identity() || !(invert(x) * x).is_identity();
    }
    t.check(bad == 0, [&, label = label] { return label + ": " + std::to_string(bad) + " violations"; });
  }
  return t.done();
}

PropertyResult prop_wreath_embedding(const SelftestOptions& o) {
  Tally t("group_alg", "wreath-embedding-homomorphism");
  const auto w = wreath_product(symmetric_group(3), 2);
  const auto& all = w.elements(o.cap);
  t.check(all.size() == 72, [&] { return "S_3 wr Z_2 has " + std::to_string(all.size()) + " elements"; });
  std::vector<Permutation> images;
  for (const auto& x : all) images.push_back(wreath_embed(x));
  std::uint64_t bad = 0, round = 0;
  for (std::size_t a = 0; a < all.size(); ++a) {
    round += !(wreath_unembed(images[a], 3) == all[a]);
    for (std::size_t b = 0; b < all.size(); ++b) bad += !(wreath_embed(all[a] * all[b]) == images[a] * images[b]);
  }
  t.check(bad == 0, [&] { return std::to_string(bad) + " pairs break the homomorphism"; });
  t.check(round == 0, [&] { return std::to_string(round) + " elements fail to unembed"; });
  t.note("pairs", all.size() * all.size());
  return t.done();
}

PropertyResult prop_wreath_orders(const SelftestOptions& o) {
  Tally t("group_alg", "wreath-order-formula");
  std::vector<FiniteGroup> bases{cyclic_group(2), cyclic_group(3), cyclic_group(4), cyclic_group(5), symmetric_group(3)};
  for (const auto& base : bases)
    for (std::uint32_t n : {2u, 3u}) {
      const std::uint64_t b = base.elements(o.cap).size();
      std::uint64_t expected = n;
      for (std::uint32_t k = 0; k < n; ++k) expected *= b;
      const auto got = wreath_product(base, n).elements(o.cap).size();
      t.check(got == expected, [&] { return std::to_string(got) + " != " + std::to_string(expected); });
    }
  return t.done();
}

// ---------------------------------------------------------------------------
// instances

PropertyResult prop_planted_kernels(const SelftestOptions& o) {
  Tally t("instances", "planted-kernel-equals-subgroup");
  for (const char* name : {"s3", "s4", "z6", "d4", "wr:z2:2"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : two_generated_subgroups(*g, o.cap))
      for (auto side : {CosetSide::Left, CosetSide::Right}) {
        t.guarded(name, [&] {
          const auto inst = plant_hsp(g, gens, side, o.cap);
          t.check(sorted(kernel_elements(inst, o.cap)) == span(g->shape(), gens, o.cap) && verify_promise(inst, o.cap),
                  [&] { return std::string(name) + ": kernel differs from the planted subgroup"; });
        });
      }
  }
  return t.done();
}

PropertyResult prop_shift_sets(const SelftestOptions& o) {
  Tally t("instances", "coset-shift-set-equals-Hu");
  for (const char* name : {"z4", "z6", "s3", "s4"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : two_generated_subgroups(*g, o.cap)) {
      const auto h = closure(g->shape(), gens, o.cap);
      for (const auto& u : g->elements(o.cap)) {
        std::vector<GroupElement> hu;
        for (const auto& x : h) hu.push_back(x * u);
        const auto hc = plant_coset(g, gens, u, o.cap);
        t.check(shift_set(hc, o.cap) == sorted(hu), [&] { return std::string(name) + " u=" + u.to_string(); });
      }
    }
  }
  return t.done();
}

PropertyResult prop_ghsh_unique(const SelftestOptions& o) {
  Tally t("instances", "generalized-shift-unique");
  for (const char* name : {"z5", "z6", "s3", "d5", "s4"}) {
    const auto g = share(group_from_name(name));
    for (const auto& u : g->elements(o.cap))
      for (std::size_t n : {2u, 3u}) {
        const auto inst = plant_ghsh(g, u, n, o.cap);
        t.check(verify_promise(inst, o.cap), [&] { return std::string(name) + " u=" + u.to_string(); });
      }
  }
  return t.done();
}

PropertyResult prop_oracle_determinism(const SelftestOptions& o) {
  Tally t("instances", "oracle-determinism");
  const auto g = share(symmetric_group(4));
  const auto inst = plant_hsp(g, {Permutation::from_cycles(4, "(1 2 3)")}, CosetSide::Left, o.cap);
  std::mt19937_64 rng(o.seed);
  const auto& all = g->elements(o.cap);
  inst.f.reset_evaluations();
  for (int c = 0; c < 100; ++c) {
    const auto& x = all[rng() % all.size()];
    const auto first = inst.f(x);
    t.check(first == inst.f(x), [&] { return "f(" + x.to_string() + ") changed"; });
  }
  t.check(inst.f.evaluations() == 200, [] { return "evaluation counter is off"; });
  return t.done();
}

// ---------------------------------------------------------------------------
// reductions

PropertyResult prop_coset_round_trip(const SelftestOptions& o) {
  Tally t("reductions", "hidden-coset-round-trip");
  std::uint64_t cases = 0;
  for (const char* name : {"z4", "z6", "s3"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : two_generated_subgroups(*g, o.cap)) {
      const auto h = span(g->shape(), gens, o.cap);
      for (const auto& u : g->elements(o.cap)) {
        ++cases;
        t.guarded(std::string(name) + " u=" + u.to_string(), [&] {
          const auto reduced = hidden_coset_to_hsp(plant_coset(g, gens, u, o.cap), o.cap);
          const auto sol = recover_coset_solution(brute_hsp_solve(reduced, o.cap), *g);
          std::vector<GroupElement> hu, hu2;
          for (const auto& x : h) {
            hu.push_back(x * u);
            hu2.push_back(x * sol.shift);
          }
          t.check(span(g->shape(), sol.subgroup_gens, o.cap) == h && sorted(hu) == sorted(hu2),
                  [&] { return std::string(name) + " H=" + std::to_string(h.size()) + " u=" + u.to_string(); });
        });
      }
    }
  }
  t.note("cases", cases);
  return t.done();
}

PropertyResult prop_ghsh_reduction(const SelftestOptions& o) {
  Tally t("reductions", "generalized-shift-subgroup");
  for (const char* name : {"z4", "z5", "z6"}) {
    const auto g = share(group_from_name(name));
    for (std::size_t n : {2u, 3u})
      for (const auto& u : g->elements(o.cap)) {
        t.guarded(std::string(name) + " u=" + u.to_string(), [&] {
          const auto inst = plant_ghsh(g, u, n, o.cap);
          const auto reduced = ghsh_to_hsp(inst);
          const auto kernel = sorted(kernel_elements(reduced, o.cap));
          const auto predicted = span(reduced.group->shape(), {predicted_ghsh_generator(u, n)}, o.cap);
          t.check(kernel == predicted && kernel.size() == n && verify_promise(reduced, o.cap),
                  [&] { return std::string(name) + " n=" + std::to_string(n) + " u=" + u.to_string(); });
          const auto access = recover_ghsh_functions(reduced);
          bool same = access.count == n;
          for (std::size_t i = 1; i <= n && same; ++i)
            for (const auto& x : g->elements(o.cap)) same = same && access.evaluate(i, x) == inst.evaluate(i, x);
          t.check(same, [&] { return std::string(name) + ": recovered functions differ"; });
        });
      }
  }
  return t.done();
}

namespace {

struct ActionCase {
  std::string label;
  std::shared_ptr<const GroupAction> action;
  std::uint32_t phi1;
  std::optional<GroupElement> shift;
};

std::shared_ptr<const GroupAction> rotation_action(std::uint32_t m, std::uint32_t copies) {
  std::vector<std::uint32_t> row(m * copies);
  for (std::uint32_t c = 0; c < copies; ++c)
    for (std::uint32_t s = 0; s < m; ++s) row[c * m + s] = c * m + (s + 1) % m;
  return std::make_shared<const GroupAction>(share(cyclic_group(m)), m * copies,
                                             std::vector<std::vector<std::uint32_t>>{row});
}

std::shared_ptr<const GroupAction> natural_action(std::uint32_t n, std::uint32_t copies) {
  auto g = share(symmetric_group(n));
  std::vector<std::vector<std::uint32_t>> table;
  for (const auto& s : g->generators()) {
    const auto inv = s.perm().inverse();
    std::vector<std::uint32_t> row(n * copies);
    for (std::uint32_t c = 0; c < copies; ++c)
      for (std::uint32_t p = 0; p < n; ++p) row[c * n + p] = c * n + inv(p + 1) - 1;
    table.push_back(row);
  }
  return std::make_shared<const GroupAction>(g, n * copies, table);
}

std::shared_ptr<const GroupAction> polygon_action(std::uint32_t n) {
  std::vector<std::uint32_t> r(n), s(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return std::make_shared<const GroupAction>(share(dihedral_group(n)), n, std::vector<std::vector<std::uint32_t>>{r, s});
}

std::vector<ActionCase> action_cases() {
  std::vector<ActionCase> out;
  for (std::uint32_t m = 2; m <= 6; ++m) {
    const auto rot = rotation_action(m, 1);
    for (const auto& u : rot->group().elements()) out.push_back({"rotate z" + std::to_string(m), rot, 0, u});
    const auto two = rotation_action(m, 2);
    out.push_back({"two-orbit z" + std::to_string(m), two, 0, std::nullopt});
    out.push_back({"two-orbit z" + std::to_string(m), two, m + 1, make_cyclic(1, m)});
  }
  const auto nat = natural_action(3, 1);
  for (const auto& u : nat->group().elements()) out.push_back({"s3 on points", nat, 0, u});
  const auto nat2 = natural_action(3, 2);
  out.push_back({"s3 on two copies", nat2, 1, std::nullopt});
  out.push_back({"s3 on two copies", nat2, 4, nat2->group().generators()[1]});
  const auto hex = polygon_action(6);
  for (const auto& u : hex->group().elements()) out.push_back({"d6 on hexagon", hex, 2, u});
  const auto still = std::make_shared<const GroupAction>(share(cyclic_group(4)), 2,
                                                         std::vector<std::vector<std::uint32_t>>{{0, 1}});
  out.push_back({"trivial z4", still, 1, make_cyclic(0, 4)});
  out.push_back({"trivial z4", still, 1, std::nullopt});
  return out;
}

}  // namespace

PropertyResult prop_orbit_coset(const SelftestOptions& o) {
  Tally t("reductions", "orbit-coset-recovery");
  const auto cases = action_cases();
  for (const auto& c : cases) {
    t.guarded(c.label, [&] {
      const auto oc = plant_orbit_coset(c.action, c.phi1, c.shift);
      const auto reduced = orbit_coset_to_hsp(oc, o.cap);
      const auto sol = recover_orbit_coset_solution(brute_hsp_solve(reduced, o.cap));
      const auto& shape = oc.group->shape();
      const auto stab = c.action->stabilizer(c.phi1);
      if (c.shift) {
        t.check(!sol.rejected && sol.shift && c.action->act(*sol.shift, c.phi1) == oc.phi0,
                [&] { return c.label + ": no valid shift recovered"; });
      } else {
        t.check(sol.rejected, [&] { return c.label + ": disjoint orbits not certified"; });
      }
      t.check(span(shape, sol.stabilizer_gens, o.cap) == stab,
              [&] { return c.label + ": stabilizer of phi1 not recovered"; });
    });
  }
  t.note("instances", cases.size());
  return t.done();
}

PropertyResult prop_intersection_gadget(const SelftestOptions& o) {
  Tally t("reductions", "intersection-gadget-diagonal");
  const auto g = share(symmetric_group(3));
  const std::vector<std::vector<ConstraintGroup>> cases{
      {},
      {ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 2)")})},
      {ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 3)")})},
      {ConstraintGroup::setwise_stabilizer(PointSet(3, {3}))},
      {ConstraintGroup::setwise_stabilizer(PointSet(3, {1, 2})), ConstraintGroup::generated(3, {})},
  };
  for (const auto& gens : two_generated_subgroups(*g, o.cap)) {
    const auto inst = std::make_shared<const HspInstance>(plant_hsp(g, gens, CosetSide::Left, o.cap));
    for (const auto& cs : cases) {
      const auto q = multi_intersection(inst, cs);
      const auto product = q.product_group();
      const auto at_identity = q.evaluate(product.identity());
      std::vector<Permutation> diagonal;
      bool on_diagonal = true;
      for (const auto& x : product.elements(o.cap))
        if (q.evaluate(x) == at_identity) {
          const auto& items = x.tuple().items;
          for (const auto& item : items) on_diagonal = on_diagonal && item == items.front();
          diagonal.push_back(items.front().perm());
        }
      std::sort(diagonal.begin(), diagonal.end());
      t.check(on_diagonal && diagonal == q.intersection(o.cap), [] { return "materialized kernel is not the diagonal"; });
    }
  }
  return t.done();
}

// ---------------------------------------------------------------------------
// search_decision

PropertyResult prop_decision_search(const SelftestOptions& o) {
  Tally t("search_decision", "decision-search-nontrivial-iff");
  BruteForceDecisionOracle oracle(o.cap);
  double slowest_large = 0;
  std::uint64_t instances = 0;
  auto run = [&](std::shared_ptr<const FiniteGroup> g, const std::vector<GroupElement>& gens, CosetSide side,
                 const std::string& label) {
    ++instances;
    t.guarded(label, [&] {
      const auto inst = std::make_shared<const HspInstance>(plant_hsp(g, gens, side, o.cap));
      const auto members = span(g->shape(), gens, o.cap);
      const std::uint64_t n = g->degree();
      oracle.clear_cache();
      oracle.clear_log();
      const SealedBatch sealed = build_decision_batch(inst).seal();
      const auto answers = sealed.issue(oracle, o.jobs);
      const auto log = oracle.call_log();
      const bool sealed_first =
          std::all_of(log.begin(), log.end(), [&](const OracleCall& c) { return c.tick > sealed.sealed_at(); });
      t.check(sealed_first, [&] { return label + ": a query was answered before the batch was sealed"; });
      t.check(log.size() <= n * n * n * n * n, [&] { return label + ": too many queries"; });
      const auto h = reconstruct_hidden_element(*inst, sealed.indices(), answers);
      if (members.size() == 1) {
        t.check(!h, [&] { return label + ": element returned for a trivial subgroup"; });
      } else {
        t.check(h && !h->is_identity() && std::binary_search(members.begin(), members.end(), GroupElement(*h)),
                [&] { return label + ": no nontrivial member returned"; });
      }
    });
  };
  for (std::uint32_t n : {3u, 4u}) {
    if (n > o.max_degree) continue;
    const auto g = share(symmetric_group(n));
    for (const auto& gens : two_generated_subgroups(*g, o.cap))
      for (auto side : {CosetSide::Left, CosetSide::Right}) run(g, gens, side, "s" + std::to_string(n));
  }
  const std::uint32_t big = static_cast<std::uint32_t>(std::min<std::size_t>(5, o.max_degree));
  const auto g5 = share(symmetric_group(big));
  std::mt19937_64 rng(o.seed);
  for (int c = 0; c < 100; ++c) {
    const auto gens = random_subgroup_generators(*g5, rng, 2);
    const auto start = Clock::now();
    run(g5, gens, c % 2 ? CosetSide::Right : CosetSide::Left, "random s" + std::to_string(big) + " #" + std::to_string(c));
    slowest_large = std::max(slowest_large, std::chrono::duration<double>(Clock::now() - start).count());
  }
  t.note("instances", instances);
  t.note("slowest_large_ms", static_cast<std::uint64_t>(slowest_large * 1000));
  return t.done();
}

PropertyResult prop_hidden_shift_search(const SelftestOptions& o) {
  Tally t("search_decision", "hidden-shift-chain-walk");
  BruteForceShiftOracle oracle;
  std::mt19937_64 rng(o.seed);
  std::uint64_t queries = 0;
  for (std::uint32_t n : {3u, 4u}) {
    const auto g = share(symmetric_group(n));
    const auto& chain = g->chain();
    for (int c = 0; c < 50; ++c) {
      const GroupElement u = chain.random_element(rng);
      t.guarded("s" + std::to_string(n) + " u=" + u.to_string(), [&] {
        const auto hc = plant_coset(g, {}, u, o.cap);
        const auto r = hsh_search_via_decision(g, hc.f1, hc.f2, oracle);
        t.check(GroupElement(r.shift) == u, [&] { return "recovered " + r.shift.to_cycle_string() + " for " + u.to_string(); });
        for (std::size_t i = 0; i < r.level_queries.size(); ++i) {
          queries += r.level_queries[i];
          t.check(r.level_queries[i] <= 1 + chain.transversal(i).size(),
                  [&] { return "level " + std::to_string(i + 1) + " used too many queries"; });
        }
      });
    }
  }
  t.note("queries", queries);
  return t.done();
}

PropertyResult prop_dihedral_search(const SelftestOptions& o) {
  Tally t("search_decision", "dihedral-smooth-search");
  for (std::uint32_t n : {12u, 60u, 360u}) {
    const auto fact = smooth_factorize(n, n);
    std::uint64_t expected = 0, bound = 2;
    for (const auto& f : fact.factors) {
      expected += f.exponent * f.prime;
      bound = std::max(bound, f.prime);
    }
    const auto g = share(dihedral_group(n));
    for (std::uint32_t a = 0; a < n; ++a) {
      t.guarded("n=" + std::to_string(n) + " a=" + std::to_string(a), [&] {
        BruteForceDihedralOracle oracle(
            std::make_shared<const HspInstance>(plant_hsp(g, {make_dihedral(a, true, n)}, CosetSide::Left, o.cap)));
        const auto r = dihedral_search_via_decision(n, bound, oracle);
        t.check(r.a == a && r.queries == expected && oracle.calls() == expected, [&] {
          return "n=" + std::to_string(n) + " a=" + std::to_string(a) + " got " + std::to_string(r.a) + " with " +
                 std::to_string(r.queries) + " queries";
        });
      });
    }
    t.note("queries_n" + std::to_string(n), expected);
  }
  return t.done();
}

// ---------------------------------------------------------------------------
// solvers_checkers

PropertyResult prop_checker_completeness(const SelftestOptions& o) {
  Tally t("solvers_checkers", "checker-completeness");
  struct Case {
    std::shared_ptr<const FiniteGroup> group;
    std::vector<GroupElement> gens;
    CosetSide side;
  };
  std::vector<Case> cases;
  const auto s3 = share(symmetric_group(3));
  const auto s4 = share(symmetric_group(std::min<std::uint32_t>(4, static_cast<std::uint32_t>(o.max_degree))));
  for (const auto& g : {s3, s4})
    for (const auto& gens : two_generated_subgroups(*g, o.cap)) cases.push_back({g, gens, CosetSide::Left});
  std::mt19937_64 rng(o.seed);
  while (cases.size() < 100) {
    const auto& g = rng() % 2 ? s3 : s4;
    std::vector<GroupElement> gens;
    if (rng() % 4 != 0) gens = random_subgroup_generators(*g, rng, 2);
    cases.push_back({g, gens, rng() % 2 ? CosetSide::Left : CosetSide::Right});
  }
  BruteForceDecisionOracle decision(o.cap);
  const auto search = brute_search_program(o.cap);
  std::uint64_t idx = 0, trivial_branch = 0;
  for (const auto& c : cases) {
    const auto inst = std::make_shared<const HspInstance>(plant_hsp(c.group, c.gens, c.side, o.cap));
    const std::string label = "instance " + std::to_string(idx);
    t.guarded(label, [&] {
      decision.clear_cache();
      const auto vd = checker_hspD(decision, inst, 7, trial_seed(o.seed, idx), {o.jobs, o.cap});
      trivial_branch += vd.branch == "trivial";
      t.check(vd.verdict == Verdict::Correct, [&] { return label + ": decision checker said BUGGY"; });
      const auto vs = checker_hsp(search, inst, 7, trial_seed(o.seed, idx), {o.jobs, o.cap});
      t.check(vs.verdict == Verdict::Correct, [&] { return label + ": search checker said BUGGY"; });
    });
    ++idx;
  }
  t.note("instances", cases.size());
  t.note("trivial_branch", trivial_branch);
  return t.done();
}

PropertyResult prop_checker_soundness(const SelftestOptions& o) {
  Tally t("solvers_checkers", "checker-soundness");
  const auto s3 = share(symmetric_group(3));
  const auto nontrivial = std::make_shared<const HspInstance>(
      plant_hsp(s3, {Permutation::from_cycles(3, "(1 2)")}, CosetSide::Left, o.cap));
  const auto trivial = std::make_shared<const HspInstance>(plant_hsp(s3, {}, CosetSide::Left, o.cap));
  auto base = std::make_shared<BruteForceDecisionOracle>(o.cap);

  auto always_trivial = wrap_buggy(base, parse_bug_spec("always-trivial"));
  std::uint64_t caught = 0;
  for (std::uint64_t run = 0; run < 100; ++run)
    caught += checker_hspD(*always_trivial, nontrivial, 7, trial_seed(o.seed, run), {o.jobs, o.cap}).verdict ==
              Verdict::Buggy;
  t.check(caught >= 96, [&] { return "always-trivial caught in " + std::to_string(caught) + "/100 runs"; });
  t.note("always_trivial_buggy", caught);

  auto always_nontrivial = wrap_buggy(base, parse_bug_spec("always-nontrivial"));
  std::uint64_t caught2 = 0;
  for (std::uint64_t run = 0; run < 100; ++run)
    caught2 += checker_hspD(*always_nontrivial, trivial, 7, trial_seed(o.seed, run), {o.jobs, o.cap}).verdict ==
               Verdict::Buggy;
  t.check(caught2 == 100, [&] { return "always-nontrivial caught in " + std::to_string(caught2) + "/100 runs"; });
  t.note("always_nontrivial_buggy", caught2);
  return t.done();
}

std::vector<PropertyResult> run_suite(const std::string& suite, const SelftestOptions& o) {
  using Prop = PropertyResult (*)(const SelftestOptions&);
  static const std::map<std::string, std::vector<Prop>> table{
      {"perm_core", {prop_chain_order, prop_unique_factorization, prop_setwise_stabilizers, prop_random_element_uniform}},
      {"group_alg", {prop_associativity, prop_wreath_embedding, prop_wreath_orders}},
      {"instances", {prop_planted_kernels, prop_shift_sets, prop_ghsh_unique, prop_oracle_determinism}},
      {"reductions", {prop_coset_round_trip, prop_ghsh_reduction, prop_orbit_coset, prop_intersection_gadget}},
      {"search_decision", {prop_decision_search, prop_hidden_shift_search, prop_dihedral_search}},
      {"solvers_checkers", {prop_checker_completeness, prop_checker_soundness}},
  };
  if (o.max_degree < 3) throw InvalidInput("max degree must be at least 3");
  std::vector<PropertyResult> out;
  if (suite == "all") {
    for (const auto& name : selftest_suites())
      for (auto p : table.at(name)) out.push_back(p(o));
    return out;
  }
  auto it = table.find(suite);
  if (it == table.end()) throw InvalidInput("unknown selftest suite '" + suite + "'");
  for (auto p : it->second) out.push_back(p(o));
  return out;
}

}  // namespace hsp
