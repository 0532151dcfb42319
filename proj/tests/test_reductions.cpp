#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"
#include "hsp/reductions.hpp"
#include "hsp/solvers_checkers.hpp"

using namespace hsp;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupElement z(std::uint32_t v, std::uint32_t m) { return make_cyclic(v, m); }
GroupElement perm(std::size_t n, const char* cycles) { return Permutation::from_cycles(n, cycles); }

std::vector<GroupElement> sorted(std::vector<GroupElement> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<GroupElement> span(const Shape& shape, const std::vector<GroupElement>& gens) {
  return sorted(closure(shape, gens));
}

}  // namespace

TEST_CASE("hidden coset reduction over Z_4") {
  const auto z4 = share(cyclic_group(4));
  const auto reduced = hidden_coset_to_hsp(plant_coset(z4, {z(2, 4)}, z(1, 4)));
  CHECK(reduced.side == CosetSide::Left);
  const auto k = sorted(kernel_elements(reduced));
  std::vector<GroupElement> expected;
  for (std::uint32_t a : {0u, 2u})
    for (std::uint32_t b : {0u, 2u}) expected.push_back(make_wreath({z(a, 4), z(b, 4)}, 0));
  for (std::uint32_t a : {1u, 3u})
    for (std::uint32_t b : {1u, 3u}) expected.push_back(make_wreath({z(a, 4), z(b, 4)}, 1));
  CHECK(k == sorted(expected));
  CHECK(verify_promise(reduced));
}

TEST_CASE("hidden shift reduction hides a two-element subgroup") {
  const auto s3 = share(symmetric_group(3));
  const GroupElement u = perm(3, "(1 2 3)");
  const auto reduced = hidden_coset_to_hsp(plant_coset(s3, {}, u));
  const auto id = s3->identity();
  CHECK(sorted(kernel_elements(reduced)) ==
        sorted({make_wreath({id, id}, 0), make_wreath({invert(u), u}, 1)}));

  const auto whole = hidden_coset_to_hsp(plant_coset(s3, s3->generators(), id));
  CHECK(kernel_elements(whole).size() == 72);
}

TEST_CASE("coset recovery examples") {
  const auto z4 = cyclic_group(4);
  const auto sol = recover_coset_solution({make_wreath({z(1, 4), z(3, 4)}, 1), make_wreath({z(2, 4), z(2, 4)}, 0)}, z4);
  CHECK(span(z4.shape(), sol.subgroup_gens) == std::vector{z(0, 4), z(2, 4)});
  CHECK((sol.shift == z(1, 4) || sol.shift == z(3, 4)));

  const auto s3 = symmetric_group(3);
  const GroupElement u = perm(3, "(1 3 2)");
  const auto single = recover_coset_solution({make_wreath({invert(u), u}, 1)}, s3);
  CHECK(single.subgroup_gens.empty());
  CHECK(single.shift == u);

  CHECK_THROWS_AS(recover_coset_solution({make_wreath({z(2, 4), z(2, 4)}, 0)}, z4), InvalidKGenerators);
}

TEST_CASE("coset reduction preserves the promise and round-trips") {
  for (const char* name : {"z4", "z6", "s3", "s4"}) {
    const auto g = share(group_from_name(name));
    for (const auto& gens : two_generated_subgroups(*g)) {
      const auto h = span(g->shape(), gens);
      for (const auto& u : g->elements()) {
        const auto reduced = hidden_coset_to_hsp(plant_coset(g, gens, u));
        CHECK(verify_promise(reduced));  // includes: kernel = <predicted K generators>
        const auto sol = recover_coset_solution(brute_hsp_solve(reduced), *g);
        CHECK(span(g->shape(), sol.subgroup_gens) == h);
        std::vector<GroupElement> hu, hu2;
        for (const auto& x : h) {
          hu.push_back(x * u);
          hu2.push_back(x * sol.shift);
        }
        CHECK(sorted(hu) == sorted(hu2));
      }
    }
  }
}

TEST_CASE("generalized hidden shift reduction over Z_5") {
  const auto z5 = share(cyclic_group(5));
  const auto inst = plant_ghsh(z5, z(2, 5), 3);
  const auto reduced = ghsh_to_hsp(inst);
  CHECK(reduced.side == CosetSide::Right);
  const auto gen = make_wreath({z(2, 5), z(2, 5), z(1, 5)}, 1);
  CHECK(predicted_ghsh_generator(z(2, 5), 3) == gen);
  CHECK(sorted(kernel_elements(reduced)) == span(reduced.group->shape(), {gen}));
  CHECK(kernel_elements(reduced).size() == 3);
  CHECK(verify_promise(reduced));

  const auto access = recover_ghsh_functions(reduced);
  CHECK(access.count == 3);
  CHECK(access.evaluate(2, z(3, 5)) == inst.evaluate(2, z(3, 5)));
  for (std::size_t i = 1; i <= 3; ++i)
    for (const auto& g : z5->elements()) CHECK(access.evaluate(i, g) == inst.evaluate(i, g));
}

TEST_CASE("trivial generalized shift hides the pure rotations") {
  const auto z5 = share(cyclic_group(5));
  const auto reduced = ghsh_to_hsp(plant_ghsh(z5, z(0, 5), 3));
  const auto e = z(0, 5);
  CHECK(sorted(kernel_elements(reduced)) ==
        sorted({make_wreath({e, e, e}, 0), make_wreath({e, e, e}, 1), make_wreath({e, e, e}, 2)}));
}

TEST_CASE("two-function case hides (u, u^-1, 1)") {
  const auto s3 = share(symmetric_group(3));
  for (const auto& u : s3->elements()) {
    const auto gen = predicted_ghsh_generator(u, 2);
    CHECK(gen == make_wreath({u, invert(u)}, 1));
    CHECK((gen * gen).is_identity());
    CHECK(verify_promise(ghsh_to_hsp(plant_ghsh(s3, u, 2))));
  }
}

TEST_CASE("generalized shift reduction preserves the promise") {
  for (const char* name : {"z4", "z6", "s3"}) {
    const auto g = share(group_from_name(name));
    for (std::size_t n : {2, 3}) {
      for (const auto& u : g->elements()) {
        const auto inst = plant_ghsh(g, u, n);
        const auto reduced = ghsh_to_hsp(inst);
        CHECK(verify_promise(reduced));
        CHECK(kernel_elements(reduced).size() == n);
        const auto access = recover_ghsh_functions(reduced);
        for (std::size_t i = 1; i <= n; ++i)
          for (const auto& x : g->elements()) CHECK(access.evaluate(i, x) == inst.evaluate(i, x));
      }
    }
  }
}

TEST_CASE("orbit coset reduction") {
  // Disjoint orbits with trivial stabilizers: Z_2 swapping 0 <-> 1 and 2 <-> 3.
  const auto z2 = share(cyclic_group(2));
  const auto swap = std::make_shared<const GroupAction>(z2, 4, std::vector<std::vector<std::uint32_t>>{{1, 0, 3, 2}});
  const auto disjoint = orbit_coset_to_hsp(plant_orbit_coset(swap, 0, std::nullopt));
  CHECK(kernel_elements(disjoint) == std::vector{disjoint.group->identity()});
  const auto rejected = recover_orbit_coset_solution(brute_hsp_solve(disjoint));
  CHECK(rejected.rejected);
  CHECK(rejected.stabilizer_gens.empty());

  // Trivial action of S_3 on two states, phi0 = phi1.
  const auto s3 = share(symmetric_group(3));
  const auto fixed = std::make_shared<const GroupAction>(
      s3, 2, std::vector<std::vector<std::uint32_t>>{{0, 1}, {0, 1}});
  const auto all = orbit_coset_to_hsp(plant_orbit_coset(fixed, 1, s3->identity()));
  CHECK(kernel_elements(all).size() == 72);

  // Z_4 rotating four states, phi1 = 0, u = 2.
  std::vector<std::uint32_t> row{1, 2, 3, 0};
  const auto rot = std::make_shared<const GroupAction>(share(cyclic_group(4)), 4,
                                                       std::vector<std::vector<std::uint32_t>>{row});
  const auto reduced = orbit_coset_to_hsp(plant_orbit_coset(rot, 0, z(2, 4)));
  CHECK(verify_promise(reduced));
  const auto k = kernel_elements(reduced);
  CHECK(std::find(k.begin(), k.end(), make_wreath({z(2, 4), z(2, 4)}, 1)) != k.end());
  const auto sol = recover_orbit_coset_solution(brute_hsp_solve(reduced));
  CHECK_FALSE(sol.rejected);
  REQUIRE(sol.shift);
  CHECK(*sol.shift == z(2, 4));
  CHECK(sol.stabilizer_gens.empty());
}

TEST_CASE("intersection gadget") {
  const auto s3 = share(symmetric_group(3));
  const auto inst = std::make_shared<const HspInstance>(plant_hsp(s3, {perm(3, "(1 2)")}, CosetSide::Left));
  CHECK(multi_intersection(inst, {}).intersection().size() == 2);
  const auto same = multi_intersection(inst, {ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 2)")})});
  CHECK(same.intersection().size() == 2);
  const auto other = multi_intersection(inst, {ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 3)")})});
  CHECK(other.intersection().size() == 1);
  CHECK_THROWS_AS(multi_intersection(inst, {ConstraintGroup::setwise_stabilizer(PointSet(4, {1}))}), DegreeMismatch);
}

TEST_CASE("materialized gadget hides the diagonal") {
  const auto s3 = share(symmetric_group(3));
  const std::vector<std::vector<ConstraintGroup>> cases{
      {},
      {ConstraintGroup::generated(3, {Permutation::from_cycles(3, "(1 2)")})},
      {ConstraintGroup::setwise_stabilizer(PointSet(3, {3}))},
      {ConstraintGroup::setwise_stabilizer(PointSet(3, {1, 2})), ConstraintGroup::generated(3, {})},
  };
  for (const auto& gens : two_generated_subgroups(*s3)) {
    const auto inst = std::make_shared<const HspInstance>(plant_hsp(s3, gens, CosetSide::Left));
    for (const auto& cs : cases) {
      const auto q = multi_intersection(inst, cs);
      const auto product = q.product_group();
      REQUIRE(product.order() <= 10000);
      const auto at_identity = q.evaluate(product.identity());
      std::vector<Permutation> diagonal;
      for (const auto& x : product.elements())
        if (q.evaluate(x) == at_identity) {
          const auto& items = x.tuple().items;
          for (const auto& item : items) CHECK(item == items.front());
          diagonal.push_back(items.front().perm());
        }
      std::sort(diagonal.begin(), diagonal.end());
      CHECK(diagonal == q.intersection());
    }
  }
}
