#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"
#include "hsp/io.hpp"

using namespace hsp;

namespace {

std::shared_ptr<const FiniteGroup> share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

}  // namespace

TEST_CASE("tagged element JSON round-trips for every kind") {
  for (const char* name : {"s4", "z6", "d5", "wr:s3:2", "wr:z2:3"}) {
    const auto g = group_from_name(name);
    for (const auto& x : g.elements()) {
      const Json j = element_to_json(x);
      CHECK(element_from_json(Json::parse(j.dump())) == x);
    }
  }
  const auto t = make_tuple({Permutation::from_cycles(3, "(1 2)"), make_cyclic(2, 5), make_dihedral(1, true, 4)});
  CHECK(element_from_json(element_to_json(t)) == t);
  CHECK(element_to_json(make_dihedral(3, true, 7)).dump() == R"({"kind":"dihedral","rotation":3,"reflection":1,"n":7})");
}

TEST_CASE("plain image arrays read as permutations") {
  CHECK(element_from_json(Json::parse("[2,1,3]")) == GroupElement(Permutation::from_cycles(3, "(1 2)")));
  CHECK_THROWS_AS(element_from_json(Json::parse("[1,1,3]")), InvalidInput);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"kind":"cyclic","value":5,"modulus":5})")), InvalidInput);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"kind":"blob"})")), InvalidInput);
}

TEST_CASE("group JSON") {
  const auto s3 = symmetric_group(3);
  const Json j = group_to_json(s3);
  CHECK(j.dump() == R"({"degree":3,"generators":[[2,1,3],[2,3,1]]})");
  CHECK(group_from_json(j).order() == 6);
  CHECK(group_from_json(Json("d6")).order() == 12);
  const auto w = wreath_product(cyclic_group(3), 2);
  CHECK(group_from_json(Json::parse(group_to_json(w).dump())).order() == 18);
  CHECK_THROWS_AS(group_from_json(Json::parse(R"({"degree":3,"generators":[[2,1]]})")), InvalidInput);
}

TEST_CASE("element text forms") {
  CHECK(parse_element("(1 2 3)", Shape::perm(4)) == GroupElement(Permutation::from_cycles(4, "(1 2 3)")));
  CHECK(parse_element("[2,1,3,4]", Shape::perm(4)) == GroupElement(Permutation::from_cycles(4, "(1 2)")));
  CHECK(parse_element("-1", Shape::cyclic(6)) == make_cyclic(5, 6));
  CHECK(parse_element("r3s", Shape::dihedral(8)) == make_dihedral(3, true, 8));
  CHECK(parse_element("r", Shape::dihedral(8)) == make_dihedral(0, false, 8));
  CHECK_THROWS_AS(parse_element("r3x", Shape::dihedral(8)), InvalidInput);
  CHECK_THROWS_AS(parse_element("[2,1]", Shape::perm(3)), InvalidInput);
  CHECK(parse_elements("(1 2); (3 4)", Shape::perm(4)).size() == 2);
  CHECK(parse_elements("  ", Shape::perm(4)).empty());
}

TEST_CASE("planted specs round-trip and rebuild the same oracle") {
  PlantedSpec hc;
  hc.problem = "hidden_coset";
  hc.group = share(symmetric_group(3));
  hc.subgroup = {Permutation::from_cycles(3, "(1 2)")};
  hc.shift = Permutation::from_cycles(3, "(1 3)");
  const Json j = spec_to_json(hc);
  const auto back = spec_from_json(Json::parse(j.dump()));
  CHECK(spec_to_json(back) == j);
  CHECK(digest(spec_to_json(back)) == digest(j));
  CHECK(digest(j).size() == 16);

  const auto a = materialize_coset(hc, 1000);
  const auto b = materialize_coset(back, 1000);
  for (const auto& g : hc.group->elements()) {
    CHECK(a.f1(g) == b.f1(g));
    CHECK(a.f2(g) == b.f2(g));
  }

  const auto reduced = reduce_spec(back);
  const Json rj = spec_to_json(reduced);
  CHECK(rj["reduction"] == "hidden-coset-to-hsp");
  const auto r2 = spec_from_json(rj);
  CHECK(materialize_hsp(r2, 100000).group->order() == 72);
}

TEST_CASE("orbit coset spec keeps the action table") {
  PlantedSpec oc;
  oc.problem = "orbit_coset";
  oc.group = share(cyclic_group(4));
  oc.states = 4;
  oc.table = {{1, 2, 3, 0}};
  oc.phi1 = 0;
  oc.shift = make_cyclic(2, 4);
  const auto back = spec_from_json(spec_to_json(oc));
  CHECK(materialize_orbit_coset(back, 1000).phi0 == 2);
  Json no_shift = spec_to_json(oc);
  no_shift["shift"] = nullptr;
  CHECK_THROWS_AS(materialize_orbit_coset(spec_from_json(no_shift), 1000), NoDisjointOrbit);
}

TEST_CASE("malformed specs are rejected") {
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"problem":"hsp"})")), InvalidInput);
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"problem":"hsp","group":"s3","side":"up","subgroup":[]})")), InvalidInput);
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"problem":"hsp","group":"s3","side":"left","subgroup":[[2,1,3,4]]})")),
                  InvalidInput);
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"problem":"ghsh","group":"z5","shift":{"kind":"cyclic","value":1,"modulus":5},"count":1})")),
                  InvalidInput);
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"problem":"reduced","reduction":"orbit-coset-to-hsp","source":{"problem":"hsp","group":"s3","side":"left","subgroup":[]}})")),
                  InvalidInput);
}
