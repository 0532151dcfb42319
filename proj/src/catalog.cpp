#include "hsp/catalog.hpp"

#include <algorithm>
#include <map>
#include <regex>

#include "hsp/errors.hpp"
#include "hsp/instances.hpp"

namespace hsp {

namespace {

std::uint32_t parse_size(const std::string& digits, const std::string& name) {
  if (digits.empty() || digits.size() > 4) throw InvalidInput("bad group name '" + name + "'");
  const auto v = static_cast<std::uint32_t>(std::stoul(digits));
  if (v < 1) throw InvalidInput("bad group name '" + name + "'");
  return v;
}

}  // namespace

FiniteGroup group_from_name(const std::string& name) {
  static const std::regex simple("([szd])([0-9]+)");
  static const std::regex wreath("wr:([sz])([0-9]+):([0-9]+)");
  std::smatch m;
  if (std::regex_match(name, m, simple)) {
    const auto size = parse_size(m[2], name);
    if (m[1] == "s") {
      if (size > 16) throw InvalidInput("symmetric groups are limited to degree 16");
      return symmetric_group(size);
    }
    if (m[1] == "z") return cyclic_group(size);
    if (size < 1) throw InvalidInput("bad dihedral group '" + name + "'");
    return dihedral_group(size);
  }
  if (std::regex_match(name, m, wreath)) {
    const auto base_size = parse_size(m[2], name);
    const auto arity = parse_size(m[3], name);
    const FiniteGroup base = m[1] == "s" ? symmetric_group(base_size) : cyclic_group(base_size);
    return wreath_product(base, arity);
  }
  throw InvalidInput("unknown group name '" + name + "'");
}

std::vector<std::vector<GroupElement>> two_generated_subgroups(const FiniteGroup& group, std::size_t cap) {
  const auto& all = group.elements(cap);
  std::map<std::pair<std::size_t, std::vector<GroupElement>>, std::vector<GroupElement>> found;
  auto record = [&](const std::vector<GroupElement>& gens) {
    auto members = closure(group.shape(), gens, cap);
    std::sort(members.begin(), members.end());
    auto key = std::make_pair(members.size(), members);
    if (found.contains(key)) return;
    found.emplace(std::move(key), greedy_generators(group.shape(), members, cap).value());
  };
  record({});
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a; b < all.size(); ++b) record({all[a], all[b]});
  std::vector<std::vector<GroupElement>> out;
  for (auto& [key, gens] : found) out.push_back(std::move(gens));
  return out;
}

std::vector<GroupElement> random_subgroup_generators(const FiniteGroup& group, std::mt19937_64& rng,
                                                     std::size_t max_gens) {
  std::vector<GroupElement> gens;
  const std::size_t count = 1 + rng() % std::max<std::size_t>(1, max_gens);
  if (group.is_permutation_group()) {
    for (std::size_t i = 0; i < count; ++i) gens.emplace_back(group.chain().random_element(rng));
  } else {
    const auto& all = group.elements();
    for (std::size_t i = 0; i < count; ++i) gens.push_back(all[rng() % all.size()]);
  }
  return gens;
}

}  // namespace hsp
