#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"
#include "hsp/instances.hpp"

using namespace hsp;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupElement perm(std::size_t n, const char* cycles) { return Permutation::from_cycles(n, cycles); }

std::set<ValueLabel> labels_of(const HspInstance& inst) {
  std::set<ValueLabel> out;
  for (const auto& g : inst.group->elements()) out.insert(inst.f(g));
  return out;
}

std::shared_ptr<const GroupAction> cyclic_action(std::uint32_t m) {
  std::vector<std::uint32_t> row(m);
  for (std::uint32_t s = 0; s < m; ++s) row[s] = (s + 1) % m;
  return std::make_shared<const GroupAction>(share(cyclic_group(m)), m, std::vector<std::vector<std::uint32_t>>{row});
}

}  // namespace

TEST_CASE("planted HSP over S_3") {
  const auto s3 = share(symmetric_group(3));
  const auto inst = plant_hsp(s3, {perm(3, "(1 2)")}, CosetSide::Left);
  CHECK(labels_of(inst).size() == 3);
  CHECK(inst.f(perm(3, "(1 2)")) == inst.f(s3->identity()));
  CHECK(verify_promise(inst));

  CHECK(labels_of(plant_hsp(s3, s3->generators(), CosetSide::Left)).size() == 1);
  CHECK(labels_of(plant_hsp(s3, {}, CosetSide::Right)).size() == 6);
  CHECK_THROWS_AS(plant_hsp(s3, {perm(4, "(1 2)")}, CosetSide::Left), NotInGroup);
}

TEST_CASE("left and right labelings differ for a non-normal subgroup") {
  const auto s3 = share(symmetric_group(3));
  const auto left = plant_hsp(s3, {perm(3, "(1 2)")}, CosetSide::Left);
  const auto right = plant_hsp(s3, {perm(3, "(1 2)")}, CosetSide::Right);
  const GroupElement a = perm(3, "(1 3)"), b = a * perm(3, "(1 2)"), c = perm(3, "(1 2)") * a;
  CHECK(left.f(a) == left.f(b));
  CHECK(right.f(a) == right.f(c));
  CHECK(left.f(a) != left.f(c));
  CHECK(verify_promise(right));
}

TEST_CASE("planted kernels equal the subgroup closure") {
  for (const char* name : {"s3", "s4", "z6", "d4", "wr:z2:2"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : two_generated_subgroups(*g)) {
      for (auto side : {CosetSide::Left, CosetSide::Right}) {
        const auto inst = plant_hsp(g, gens, side);
        auto kernel = kernel_elements(inst);
        auto expected = closure(g->shape(), gens);
        std::sort(kernel.begin(), kernel.end());
        std::sort(expected.begin(), expected.end());
        CHECK(kernel == expected);
        CHECK(verify_promise(inst));
      }
    }
  }
}

TEST_CASE("subgroup counts of small groups") {
  CHECK(two_generated_subgroups(symmetric_group(3)).size() == 6);
  CHECK(two_generated_subgroups(symmetric_group(4)).size() == 30);
  CHECK(two_generated_subgroups(cyclic_group(4)).size() == 3);
  CHECK(two_generated_subgroups(cyclic_group(6)).size() == 4);
}

TEST_CASE("broken oracles fail the promise") {
  const auto s3 = share(symmetric_group(3));
  const auto good = plant_hsp(s3, {perm(3, "(1 2)")}, CosetSide::Left);
  HspInstance bad = good;
  bad.f = OracleFunction(s3, [f = good.f](const GroupElement& g) {
    if (g == GroupElement(perm(3, "(1 2)"))) return ValueLabel("odd");
    return f(g);
  });
  bad.planted.reset();
  CHECK_FALSE(verify_promise(bad));

  HspInstance collapsed = good;
  collapsed.planted.reset();
  collapsed.f = OracleFunction(s3, [](const GroupElement& g) {
    return ValueLabel(g.perm()(1) == 1 ? "a" : "b");
  });
  CHECK_FALSE(verify_promise(collapsed));
}

TEST_CASE("hidden coset shift sets") {
  const auto z4 = share(cyclic_group(4));
  const auto hc = plant_coset(z4, {make_cyclic(2, 4)}, make_cyclic(1, 4));
  CHECK(shift_set(hc) == std::vector{make_cyclic(1, 4), make_cyclic(3, 4)});
  CHECK(verify_promise(hc));

  const auto s3 = share(symmetric_group(3));
  const auto single = plant_coset(s3, {}, perm(3, "(1 2 3)"));
  CHECK(shift_set(single) == std::vector{perm(3, "(1 2 3)")});

  const auto same = plant_coset(s3, {}, s3->identity());
  for (const auto& g : s3->elements()) CHECK(same.f1(g) == same.f2(g));
  CHECK_THROWS_AS(plant_coset(z4, {}, make_cyclic(1, 5)), NotInGroup);
}

TEST_CASE("shift set is H u for every subgroup and shift") {
  for (const char* name : {"z4", "z6", "s3", "s4"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : two_generated_subgroups(*g)) {
      const auto h = closure(g->shape(), gens);
      for (const auto& u : g->elements()) {
        const auto hc = plant_coset(g, gens, u);
        std::vector<GroupElement> expected;
        for (const auto& x : h) expected.push_back(x * u);
        std::sort(expected.begin(), expected.end());
        CHECK(shift_set(hc) == expected);
      }
    }
  }
}

TEST_CASE("generalized hidden shift over Z_5") {
  const auto z5 = share(cyclic_group(5));
  const auto inst = plant_ghsh(z5, make_cyclic(2, 5), 3);
  CHECK(inst.evaluate(1, make_cyclic(0, 5)) == element_label(make_cyclic(0, 5)));
  CHECK(inst.evaluate(2, make_cyclic(2, 5)) == element_label(make_cyclic(0, 5)));
  for (const auto& g : z5->elements()) {
    CHECK(inst.evaluate(1, g) == inst.evaluate(2, make_cyclic(2, 5) * g));
    CHECK(inst.evaluate(2, g) == inst.evaluate(3, make_cyclic(2, 5) * g));
  }
  CHECK(verify_promise(inst));

  const auto same = plant_ghsh(z5, make_cyclic(0, 5), 3);
  for (const auto& g : z5->elements()) CHECK(same.evaluate(1, g) == same.evaluate(3, g));
  CHECK_THROWS_AS(plant_ghsh(z5, make_cyclic(1, 5), 1), InvalidInput);

  GhshInstance broken = inst;
  broken.functions[1] = OracleFunction(z5, [](const GroupElement&) { return ValueLabel("x"); });
  CHECK_FALSE(verify_promise(broken));
}

TEST_CASE("the generalized shift is unique") {
  for (const char* name : {"z6", "s3", "d5"}) {
    const auto g = share(group_from_name(name));
    for (const auto& u : g->elements()) {
      const auto inst = plant_ghsh(g, u, 3);
      std::size_t matches = 0;
      for (const auto& v : g->elements()) {
        bool ok = true;
        for (std::size_t i = 1; i < 3 && ok; ++i)
          for (const auto& x : g->elements())
            if (inst.evaluate(i, x) != inst.evaluate(i + 1, v * x)) {
              ok = false;
              break;
            }
        matches += ok;
      }
      CHECK(matches == 1);
    }
  }
}

TEST_CASE("orbit coset instances") {
  const auto action = cyclic_action(4);
  const auto oc = plant_orbit_coset(action, 0, make_cyclic(2, 4));
  CHECK(oc.phi0 == 2);
  CHECK(action->stabilizer(0) == std::vector{make_cyclic(0, 4)});
  CHECK(verify_promise(oc));
  CHECK_THROWS_AS(plant_orbit_coset(action, 0, std::nullopt), NoDisjointOrbit);

  const auto same = plant_orbit_coset(action, 1, make_cyclic(0, 4));
  CHECK(same.phi0 == same.phi1);

  // Z_2 swapping 0 <-> 1 and 2 <-> 3: two orbits.
  const auto two = std::make_shared<const GroupAction>(share(cyclic_group(2)), 4,
                                                       std::vector<std::vector<std::uint32_t>>{{1, 0, 3, 2}});
  const auto split = plant_orbit_coset(two, 0, std::nullopt);
  CHECK(split.phi0 == 2);
  CHECK(verify_promise(split));
  CHECK_FALSE(two->is_transitive());
}

TEST_CASE("action tables must define a homomorphism") {
  // Z_2 generator acting as a 3-cycle is not an action of Z_2.
  CHECK_THROWS_AS(GroupAction(share(cyclic_group(2)), 3, {{1, 2, 0}}), InvalidInput);
  CHECK_THROWS_AS(GroupAction(share(cyclic_group(2)), 3, {{0, 0, 1}}), InvalidInput);
}

TEST_CASE("oracles are deterministic and count evaluations") {
  const auto s4 = share(symmetric_group(4));
  const auto inst = plant_hsp(s4, {perm(4, "(1 2 3)")}, CosetSide::Left);
  inst.f.reset_evaluations();
  std::mt19937_64 rng(1);
  const auto& all = s4->elements();
  for (int t = 0; t < 100; ++t) {
    const auto& g = all[rng() % all.size()];
    CHECK(inst.f(g) == inst.f(g));
  }
  CHECK(inst.f.evaluations() == 200);
}
