#include "hsp/io.hpp"

#include <cstdio>

#include "hsp/catalog.hpp"
#include "hsp/errors.hpp"

namespace hsp {

namespace {

std::uint32_t u32(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned()) throw InvalidInput(std::string("missing or bad field '") + key + "'");
  return j.at(key).get<std::uint32_t>();
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json element_to_json(const GroupElement& g) {
  switch (g.kind()) {
    case ElementKind::Perm: {
      const auto img = g.perm().images();
      return Json{{"kind", "perm"}, {"images", std::vector<Point>(img.begin(), img.end())}};
    }
    case ElementKind::Cyclic:
      return Json{{"kind", "cyclic"}, {"value", g.cyclic().value}, {"modulus", g.cyclic().modulus}};
    case ElementKind::Dihedral:
      return Json{{"kind", "dihedral"},
                  {"rotation", g.dihedral().rotation},
                  {"reflection", g.dihedral().reflection},
                  {"n", g.dihedral().n}};
    case ElementKind::Wreath: {
      Json slots = Json::array();
      for (const auto& s : g.wreath().slots) slots.push_back(element_to_json(s));
      return Json{{"kind", "wreath"}, {"slots", slots}, {"shift", g.wreath().shift}};
    }
    case ElementKind::Tuple: {
      Json items = Json::array();
      for (const auto& s : g.tuple().items) items.push_back(element_to_json(s));
      return Json{{"kind", "tuple"}, {"items", items}};
    }
  }
  throw InvalidInput("unknown element kind");
}

GroupElement element_from_json(const Json& j) {
  if (j.is_array()) return Permutation(j.get<std::vector<Point>>());
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "perm") return Permutation(field(j, "images").get<std::vector<Point>>());
  if (kind == "cyclic") {
    const auto m = u32(j, "modulus");
    const auto v = u32(j, "value");
    if (m == 0 || v >= m) throw InvalidInput("cyclic residue out of range");
    return make_cyclic(v, m);
  }
  if (kind == "dihedral") {
    const auto n = u32(j, "n");
    const auto a = u32(j, "rotation");
    const auto b = u32(j, "reflection");
    if (n == 0 || a >= n || b > 1) throw InvalidInput("dihedral element out of range");
    return make_dihedral(a, b == 1, n);
  }
  if (kind == "wreath") {
    std::vector<GroupElement> slots;
    for (const auto& s : field(j, "slots")) slots.push_back(element_from_json(s));
    return make_wreath(std::move(slots), u32(j, "shift"));
  }
  if (kind == "tuple") {
    std::vector<GroupElement> items;
    for (const auto& s : field(j, "items")) items.push_back(element_from_json(s));
    return make_tuple(std::move(items));
  }
  throw InvalidInput("unknown element kind '" + kind + "'");
}

Json shape_to_json(const Shape& s) {
  Json j{{"kind", to_string(s.kind)}, {"size", s.size}};
  if (!s.parts.empty()) {
    Json parts = Json::array();
    for (const auto& p : s.parts) parts.push_back(shape_to_json(p));
    j["parts"] = parts;
  }
  return j;
}

Shape shape_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  std::vector<Shape> parts;
  if (j.contains("parts"))
    for (const auto& p : j.at("parts")) parts.push_back(shape_from_json(p));
  if (kind == "perm") return Shape::perm(u32(j, "size"));
  if (kind == "cyclic") return Shape::cyclic(u32(j, "size"));
  if (kind == "dihedral") return Shape::dihedral(u32(j, "size"));
  if (kind == "wreath") {
    if (parts.size() != 1) throw InvalidInput("wreath shape needs one part");
    return Shape::wreath(parts[0], u32(j, "size"));
  }
  if (kind == "tuple") return Shape::tuple(std::move(parts));
  throw InvalidInput("unknown shape kind '" + kind + "'");
}

Json group_to_json(const FiniteGroup& g) {
  if (g.is_permutation_group()) {
    Json gens = Json::array();
    for (const auto& p : g.permutation_generators()) {
      const auto img = p.images();
      gens.push_back(std::vector<Point>(img.begin(), img.end()));
    }
    return Json{{"degree", g.degree()}, {"generators", gens}};
  }
  Json gens = Json::array();
  for (const auto& x : g.generators()) gens.push_back(element_to_json(x));
  return Json{{"shape", shape_to_json(g.shape())}, {"generators", gens}};
}

FiniteGroup group_from_json(const Json& j) {
  if (j.is_string()) return group_from_name(j.get<std::string>());
  if (j.contains("degree")) {
    const auto n = u32(j, "degree");
    std::vector<Permutation> gens;
    for (const auto& x : field(j, "generators")) {
      auto e = element_from_json(x);
      if (e.kind() != ElementKind::Perm || e.perm().degree() != n) throw DegreeMismatch("generator degree differs from group degree");
      gens.push_back(e.perm());
    }
    return permutation_group(n, std::move(gens));
  }
  const Shape shape = shape_from_json(field(j, "shape"));
  std::vector<GroupElement> gens;
  for (const auto& x : field(j, "generators")) gens.push_back(element_from_json(x));
  return FiniteGroup(shape, std::move(gens));
}

GroupElement parse_element(const std::string& raw, const Shape& shape) {
  std::string text = raw;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.erase(text.begin());
  if (text.empty()) throw InvalidInput("empty element");
  GroupElement g;
  if (text.front() == '{') {
    g = element_from_json(Json::parse(text));
  } else if (shape.kind == ElementKind::Perm) {
    g = text.front() == '[' ? GroupElement(Permutation(Json::parse(text).get<std::vector<Point>>()))
                            : GroupElement(Permutation::from_cycles(shape.size, text));
  } else if (shape.kind == ElementKind::Cyclic) {
    const long long v = std::stoll(text);
    const long long m = shape.size;
    g = make_cyclic(static_cast<std::uint32_t>(((v % m) + m) % m), shape.size);
  } else if (shape.kind == ElementKind::Dihedral) {
    if (text.front() != 'r') throw InvalidInput("dihedral elements are written r<a> or r<a>s");
    std::size_t used = 0;
    const long long a = text.size() > 1 && std::isdigit(static_cast<unsigned char>(text[1])) ? std::stoll(text.substr(1), &used) : 0;
    const std::string rest = text.substr(1 + used);
    if (rest != "" && rest != "s") throw InvalidInput("bad dihedral element '" + raw + "'");
    const long long n = shape.size;
    g = make_dihedral(static_cast<std::uint32_t>(((a % n) + n) % n), rest == "s", shape.size);
  } else {
    throw InvalidInput("elements of this group must be given as tagged JSON");
  }
  if (!(g.shape() == shape)) throw ShapeMismatch("element " + g.to_string() + " does not match the group");
  return g;
}

std::vector<GroupElement> parse_elements(const std::string& text, const Shape& shape) {
  std::vector<GroupElement> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(';', start);
    const auto piece = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (piece.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_element(piece, shape));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

Json spec_to_json(const PlantedSpec& spec) {
  Json j{{"problem", spec.problem}};
  if (spec.problem == "reduced") {
    j["reduction"] = spec.reduction;
    j["source"] = spec_to_json(*spec.source);
    return j;
  }
  j["group"] = group_to_json(*spec.group);
  auto elems = [](const std::vector<GroupElement>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(element_to_json(x));
    return a;
  };
  if (spec.problem == "hsp") {
    j["side"] = to_string(spec.side);
    j["subgroup"] = elems(spec.subgroup);
  } else if (spec.problem == "hidden_coset") {
    j["subgroup"] = elems(spec.subgroup);
    j["shift"] = element_to_json(*spec.shift);
  } else if (spec.problem == "hidden_shift") {
    j["shift"] = element_to_json(*spec.shift);
  } else if (spec.problem == "ghsh") {
    j["shift"] = element_to_json(*spec.shift);
    j["count"] = spec.count;
  } else if (spec.problem == "orbit_coset") {
    j["action"] = Json{{"states", spec.states}, {"table", spec.table}};
    j["phi1"] = spec.phi1;
    j["shift"] = spec.shift ? element_to_json(*spec.shift) : Json(nullptr);
  }
  return j;
}

PlantedSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("instance must be a JSON object");
  PlantedSpec spec;
  spec.problem = field(j, "problem").get<std::string>();
  if (spec.problem == "reduced") {
    spec.source = std::make_shared<const PlantedSpec>(spec_from_json(field(j, "source")));
    spec.reduction = field(j, "reduction").get<std::string>();
    if (spec.reduction != reduction_for(spec.source->problem))
      throw InvalidInput("reduction '" + spec.reduction + "' does not apply to " + spec.source->problem);
    return spec;
  }
  spec.group = std::make_shared<const FiniteGroup>(group_from_json(field(j, "group")));
  const Shape& shape = spec.group->shape();
  auto checked = [&](const Json& x) {
    auto g = element_from_json(x);
    if (!(g.shape() == shape)) throw ShapeMismatch("element " + g.to_string() + " does not match the group");
    if (!spec.group->contains(g)) throw NotInGroup("element " + g.to_string() + " is not in the group");
    return g;
  };
  auto elems = [&](const char* key) {
    std::vector<GroupElement> out;
    for (const auto& x : field(j, key)) out.push_back(checked(x));
    return out;
  };
  if (spec.problem == "hsp") {
    const auto side = field(j, "side").get<std::string>();
    if (side != "left" && side != "right") throw InvalidInput("side must be left or right");
    spec.side = side == "left" ? CosetSide::Left : CosetSide::Right;
    spec.subgroup = elems("subgroup");
  } else if (spec.problem == "hidden_coset") {
    spec.subgroup = elems("subgroup");
    spec.shift = checked(field(j, "shift"));
  } else if (spec.problem == "hidden_shift") {
    spec.shift = checked(field(j, "shift"));
  } else if (spec.problem == "ghsh") {
    spec.shift = checked(field(j, "shift"));
    spec.count = u32(j, "count");
    if (spec.count < 2) throw InvalidInput("ghsh needs at least two functions");
  } else if (spec.problem == "orbit_coset") {
    const auto& action = field(j, "action");
    spec.states = u32(action, "states");
    spec.table = field(action, "table").get<std::vector<std::vector<std::uint32_t>>>();
    spec.phi1 = u32(j, "phi1");
    if (spec.phi1 >= spec.states) throw InvalidInput("phi1 is not a state");
    if (j.contains("shift") && !j.at("shift").is_null()) spec.shift = checked(j.at("shift"));
  } else {
    throw InvalidInput("unknown problem '" + spec.problem + "'");
  }
  return spec;
}

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

HspInstance materialize_hsp(const PlantedSpec& spec, std::size_t cap) {
  if (spec.problem == "hsp") return plant_hsp(spec.group, spec.subgroup, spec.side, cap);
  if (spec.problem != "reduced") throw InvalidInput(spec.problem + " is not a hidden subgroup instance");
  const auto& src = *spec.source;
  if (src.problem == "hidden_coset" || src.problem == "hidden_shift")
    return hidden_coset_to_hsp(materialize_coset(src, cap), cap);
  if (src.problem == "ghsh") return ghsh_to_hsp(materialize_ghsh(src, cap));
  if (src.problem == "orbit_coset") return orbit_coset_to_hsp(materialize_orbit_coset(src, cap), cap);
  throw InvalidInput("no reduction from " + src.problem);
}

HiddenCosetInstance materialize_coset(const PlantedSpec& spec, std::size_t cap) {
  if (spec.problem == "hidden_coset") return plant_coset(spec.group, spec.subgroup, *spec.shift, cap);
  if (spec.problem == "hidden_shift") return plant_coset(spec.group, {}, *spec.shift, cap);
  throw InvalidInput(spec.problem + " is not a hidden coset instance");
}

GhshInstance materialize_ghsh(const PlantedSpec& spec, std::size_t cap) {
  if (spec.problem != "ghsh") throw InvalidInput(spec.problem + " is not a generalized hidden shift instance");
  return plant_ghsh(spec.group, *spec.shift, spec.count, cap);
}

OrbitCosetInstance materialize_orbit_coset(const PlantedSpec& spec, std::size_t cap) {
  if (spec.problem != "orbit_coset") throw InvalidInput(spec.problem + " is not an orbit coset instance");
  auto action = std::make_shared<const GroupAction>(spec.group, spec.states, spec.table, cap);
  return plant_orbit_coset(action, spec.phi1, spec.shift);
}

std::string reduction_for(const std::string& problem) {
  if (problem == "hidden_coset" || problem == "hidden_shift") return "hidden-coset-to-hsp";
  if (problem == "ghsh") return "generalized-shift-to-hsp";
  if (problem == "orbit_coset") return "orbit-coset-to-hsp";
  throw InvalidInput("no reduction to the hidden subgroup problem from " + problem);
}

PlantedSpec reduce_spec(const PlantedSpec& spec) {
  PlantedSpec out;
  out.problem = "reduced";
  out.reduction = reduction_for(spec.problem);
  out.source = std::make_shared<const PlantedSpec>(spec);
  return out;
}

}  // namespace hsp
