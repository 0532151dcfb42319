#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsp/instances.hpp"
#include "hsp/reductions.hpp"

namespace hsp {

using Json = nlohmann::ordered_json;

/// Tagged form {"kind": ..., ...}. Plain image arrays are read as permutations.
Json element_to_json(const GroupElement& g);
GroupElement element_from_json(const Json& j);

Json shape_to_json(const Shape& s);
Shape shape_from_json(const Json& j);

/// {"degree", "generators": [[images]...]} for permutation groups, otherwise
/// {"shape", "generators": [tagged...]}. A string is read as a catalog name.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// Text forms: "(1 2)(3 4)" or "[2,1,3]" for permutations, "3" for cyclic,
/// "r2" / "r2s" for dihedral, or any tagged JSON literal.
GroupElement parse_element(const std::string& text, const Shape& shape);
/// Generators separated by ';'. Empty text gives no generators.
std::vector<GroupElement> parse_elements(const std::string& text, const Shape& shape);

/**
 * Planted instance description. Oracles are rebuilt from it and are never
 * serialized. `problem` is one of hsp, hidden_coset, hidden_shift, ghsh,
 * orbit_coset or reduced; a reduced instance names the reduction applied to
 * its `source`.
 */
struct PlantedSpec {
  std::string problem;
  std::shared_ptr<const FiniteGroup> group;
  CosetSide side = CosetSide::Left;
  std::vector<GroupElement> subgroup;
  std::optional<GroupElement> shift;
  std::size_t count = 2;
  std::size_t states = 0;
  std::vector<std::vector<std::uint32_t>> table;
  std::uint32_t phi1 = 0;
  std::string reduction;
  std::shared_ptr<const PlantedSpec> source;
};

Json spec_to_json(const PlantedSpec& spec);
PlantedSpec spec_from_json(const Json& j);

/// FNV-1a over the compact dump, as 16 hex digits.
std::string digest(const Json& j);

HspInstance materialize_hsp(const PlantedSpec& spec, std::size_t cap);
HiddenCosetInstance materialize_coset(const PlantedSpec& spec, std::size_t cap);
GhshInstance materialize_ghsh(const PlantedSpec& spec, std::size_t cap);
OrbitCosetInstance materialize_orbit_coset(const PlantedSpec& spec, std::size_t cap);

/// Name of the reduction that turns `problem` into an HSP instance.
std::string reduction_for(const std::string& problem);
PlantedSpec reduce_spec(const PlantedSpec& spec);

}  // namespace hsp
