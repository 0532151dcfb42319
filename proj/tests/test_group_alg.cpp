#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsp/errors.hpp"
#include "hsp/finite_group.hpp"
#include "support.hpp"

using namespace hsp;
using namespace testing_support;

namespace {

GroupElement z(std::uint32_t v, std::uint32_t m) { return make_cyclic(v, m); }

GroupElement random_of(const FiniteGroup& g, std::mt19937_64& rng) {
  const auto& all = g.elements();
  return all[rng() % all.size()];
}

}  // namespace

TEST_CASE("wreath product over Z_4") {
  const auto x = make_wreath({z(1, 4), z(2, 4)}, 1);
  const auto y = make_wreath({z(3, 4), z(0, 4)}, 1);
  CHECK(x * y == make_wreath({z(1, 4), z(1, 4)}, 0));
  CHECK(invert(x) == make_wreath({z(2, 4), z(3, 4)}, 1));
  CHECK(x * identity_of(x.shape()) == x);
  CHECK(invert(identity_of(x.shape())).is_identity());
}

TEST_CASE("dihedral relations") {
  const auto rs = make_dihedral(1, true, 12);
  CHECK((rs * rs).is_identity());
  const auto r = make_dihedral(1, false, 12), s = make_dihedral(0, true, 12);
  CHECK(s * r * s == invert(r));
  CHECK(power(r, 12).is_identity());
  CHECK(power(r, -1) == make_dihedral(11, false, 12));
}

TEST_CASE("shape mismatches are rejected") {
  CHECK_THROWS_AS(z(1, 4) * z(1, 5), ShapeMismatch);
  CHECK_THROWS_AS(z(1, 4) * GroupElement(Permutation::identity(3)), ShapeMismatch);
  CHECK_THROWS_AS(make_wreath({z(1, 4), z(1, 5)}, 0), ShapeMismatch);
  CHECK_THROWS_AS(make_wreath({z(1, 4), z(1, 4)}, 2), InvalidInput);
  CHECK_THROWS_AS(z(1, 4).perm(), ShapeMismatch);
}

TEST_CASE("group orders by closure") {
  CHECK(dihedral_group(12).elements().size() == 24);
  CHECK(FiniteGroup(Shape::perm(3), {}).elements().size() == 1);
  CHECK(wreath_product(cyclic_group(5), 3).elements().size() == 375);
  for (std::uint32_t m = 2; m <= 5; ++m)
    for (std::uint32_t n = 2; n <= 3; ++n) {
      std::size_t expected = n;
      for (std::uint32_t k = 0; k < n; ++k) expected *= m;
      CHECK(wreath_product(cyclic_group(m), n).elements().size() == expected);
    }
  CHECK(wreath_product(symmetric_group(3), 2).elements().size() == 72);
  CHECK(wreath_product(symmetric_group(3), 3).elements().size() == 648);
  CHECK_THROWS_AS(symmetric_group(5).elements(100), ExceedsCap);
}

TEST_CASE("enumeration is deterministic and starts at the identity") {
  const auto a = enumerate_group(dihedral_group(6));
  const auto b = enumerate_group(dihedral_group(6));
  CHECK(a == b);
  CHECK(a.front().is_identity());
}

TEST_CASE("associativity and inverses on every shape") {
  std::mt19937_64 rng(99);
  const std::vector<FiniteGroup> groups{
      symmetric_group(5),
      cyclic_group(12),
      dihedral_group(9),
      wreath_product(cyclic_group(3), 3),
      wreath_product(symmetric_group(3), 2),
      direct_product({symmetric_group(3), cyclic_group(4)}),
  };
  for (const auto& g : groups) {
    for (int t = 0; t < 1000; ++t) {
      const auto x = random_of(g, rng), y = random_of(g, rng), w = random_of(g, rng);
      CHECK((x * y) * w == x * (y * w));
    }
    for (int t = 0; t < 100; ++t) {
      const auto x = random_of(g, rng);
      CHECK((x * invert(x)).is_identity());
      CHECK((invert(x) * x).is_identity());
      CHECK(invert(invert(x)) == x);
    }
  }
}

TEST_CASE("wreath embedding examples") {
  const auto id2 = GroupElement(Permutation::identity(2));
  CHECK(wreath_embed(make_wreath({id2, id2}, 0)).is_identity());
  CHECK(wreath_embed(make_wreath({id2, id2}, 1)) == Permutation({3, 4, 1, 2}));
  const auto t = GroupElement(Permutation::from_cycles(2, "(1 2)"));
  CHECK(wreath_embed(make_wreath({t, id2}, 0)) == Permutation({2, 1, 3, 4}));
  CHECK_THROWS_AS(wreath_unembed(Permutation({1, 3, 2, 4}), 2), InvalidInput);
}

TEST_CASE("wreath embedding is a homomorphism on S_3 wr Z_2") {
  const auto w = wreath_product(symmetric_group(3), 2);
  const auto& all = w.elements();
  REQUIRE(all.size() == 72);
  for (const auto& x : all) {
    CHECK(wreath_unembed(wreath_embed(x), 3) == x);
    for (const auto& y : all) CHECK(wreath_embed(x * y) == wreath_embed(x) * wreath_embed(y));
  }
  CHECK(embedded_wreath_square(symmetric_group(3)).order() == 72);
}

TEST_CASE("canonical element text is injective on a wreath group") {
  std::set<std::string> seen;
  const auto w = wreath_product(cyclic_group(3), 2);
  for (const auto& x : w.elements()) seen.insert(x.to_string());
  CHECK(seen.size() == 18);
}

TEST_CASE("permutation group membership") {
  const auto g = permutation_group(4, {Permutation::from_cycles(4, "(1 2)(3 4)")});
  CHECK(g.contains(Permutation::from_cycles(4, "(1 2)(3 4)")));
  CHECK_FALSE(g.contains(Permutation::from_cycles(4, "(1 2)")));
  CHECK(g.order() == 2);
}
