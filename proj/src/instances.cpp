#include "hsp/instances.hpp"

#include <algorithm>
#include <map>

#include "hsp/errors.hpp"

namespace hsp {

std::string to_string(CosetSide side) { return side == CosetSide::Left ? "left" : "right"; }

ValueLabel GhshInstance::evaluate(std::size_t i, const GroupElement& g) const {
  if (i < 1 || i > functions.size()) throw InvalidInput("function index out of range");
  return functions[i - 1](g);
}

ValueLabel element_label(const GroupElement& g) { return ValueLabel(g.to_string()); }

namespace {

std::vector<GroupElement> sorted_elements(const FiniteGroup& group, std::size_t cap) {
  auto all = group.elements(cap);
  std::sort(all.begin(), all.end());
  return all;
}

void require_member(const FiniteGroup& group, const GroupElement& g, std::size_t cap, const char* what) {
  if (!group.contains(g, cap)) throw NotInGroup(std::string(what) + " " + g.to_string() + " is not in the group");
}

}  // namespace

std::unordered_map<GroupElement, ValueLabel, GroupElementHash> coset_labels(const FiniteGroup& group,
                                                                           const ElementSet& subgroup,
                                                                           CosetSide side, std::size_t cap) {
  std::unordered_map<GroupElement, ValueLabel, GroupElementHash> labels;
  for (const auto& g : sorted_elements(group, cap)) {
    if (labels.contains(g)) continue;
    const ValueLabel label = element_label(g);
    for (const auto& h : subgroup) labels.emplace(side == CosetSide::Left ? g * h : h * g, label);
  }
  return labels;
}

std::optional<std::vector<GroupElement>> greedy_generators(const Shape& shape, std::vector<GroupElement> members,
                                                           std::size_t cap) {
  std::sort(members.begin(), members.end());
  const ElementSet member_set(members.begin(), members.end());
  if (!member_set.contains(identity_of(shape))) return std::nullopt;
  std::vector<GroupElement> gens;
  ElementSet span{identity_of(shape)};
  for (const auto& m : members) {
    if (span.contains(m)) continue;
    gens.push_back(m);
    try {
      auto grown = closure(shape, gens, std::min(cap, member_set.size()));
      for (const auto& x : grown)
        if (!member_set.contains(x)) return std::nullopt;
      span = ElementSet(grown.begin(), grown.end());
    } catch (const ExceedsCap&) {
      return std::nullopt;
    }
  }
  if (span.size() != member_set.size()) return std::nullopt;
  return gens;
}

std::vector<GroupElement> kernel_elements(const HspInstance& inst, std::size_t cap) {
  if (inst.kernel) return inst.kernel(cap);
  const auto& all = inst.group->elements(cap);
  const ValueLabel at_identity = inst.f(inst.group->identity());
  std::vector<GroupElement> out;
  for (const auto& g : all)
    if (inst.f(g) == at_identity) out.push_back(g);
  return out;
}

HspInstance plant_hsp(std::shared_ptr<const FiniteGroup> group, const std::vector<GroupElement>& subgroup_gens,
                      CosetSide side, std::size_t cap) {
  for (const auto& h : subgroup_gens) require_member(*group, h, cap, "subgroup generator");
  const auto h_set = closure_set(group->shape(), subgroup_gens, cap);
  auto labels = std::make_shared<const std::unordered_map<GroupElement, ValueLabel, GroupElementHash>>(
      coset_labels(*group, h_set, side, cap));
  OracleFunction f(group, [labels](const GroupElement& g) {
    auto it = labels->find(g);
    if (it == labels->end()) throw NotInGroup("oracle evaluated outside its domain: " + g.to_string());
    return it->second;
  });
  return HspInstance{std::move(group), std::move(f), side, subgroup_gens, {}};
}

HiddenCosetInstance plant_coset(std::shared_ptr<const FiniteGroup> group,
                                const std::vector<GroupElement>& subgroup_gens, const GroupElement& shift,
                                std::size_t cap) {
  require_member(*group, shift, cap, "shift");
  for (const auto& h : subgroup_gens) require_member(*group, h, cap, "subgroup generator");
  const auto h_set = closure_set(group->shape(), subgroup_gens, cap);
  auto labels = std::make_shared<const std::unordered_map<GroupElement, ValueLabel, GroupElementHash>>(
      coset_labels(*group, h_set, CosetSide::Left, cap));
  auto lookup = [labels](const GroupElement& g) {
    auto it = labels->find(g);
    if (it == labels->end()) throw NotInGroup("oracle evaluated outside its domain: " + g.to_string());
    return it->second;
  };
  const GroupElement shift_inv = invert(shift);
  OracleFunction f1(group, lookup);
  OracleFunction f2(group, [lookup, shift_inv](const GroupElement& g) { return lookup(g * shift_inv); });
  return HiddenCosetInstance{std::move(group), std::move(f1), std::move(f2), subgroup_gens, shift};
}

GhshInstance plant_ghsh(std::shared_ptr<const FiniteGroup> group, const GroupElement& shift, std::size_t count,
                        std::size_t cap) {
  if (count < 2) throw InvalidInput("generalized hidden shift needs at least two functions");
  require_member(*group, shift, cap, "shift");
  const auto members = std::make_shared<const ElementSet>(group->elements(cap).begin(), group->elements(cap).end());
  GhshInstance inst{group, {}, shift};
  for (std::size_t i = 1; i <= count; ++i) {
    const GroupElement prefix = power(shift, 1 - static_cast<std::int64_t>(i));
    inst.functions.emplace_back(group, [prefix, members](const GroupElement& g) {
      if (!members->contains(g)) throw NotInGroup("oracle evaluated outside its domain: " + g.to_string());
      return element_label(prefix * g);
    });
  }
  return inst;
}

GroupAction::GroupAction(std::shared_ptr<const FiniteGroup> group, std::size_t states,
                         std::vector<std::vector<std::uint32_t>> table, std::size_t cap)
    : group_(std::move(group)), states_(states), table_(std::move(table)) {
  const auto& gens = group_->generators();
  if (table_.size() != gens.size()) throw InvalidInput("action table needs one row per generator");
  for (const auto& row : table_) {
    if (row.size() != states_) throw InvalidInput("action row length differs from the state count");
    std::vector<bool> seen(states_, false);
    for (auto s : row) {
      if (s >= states_ || seen[s]) throw InvalidInput("action row is not a permutation of the states");
      seen[s] = true;
    }
  }
  std::vector<std::uint32_t> id(states_);
  for (std::uint32_t s = 0; s < states_; ++s) id[s] = s;
  std::vector<GroupElement> layer{group_->identity()};
  images_.emplace(layer.front(), id);
  while (!layer.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : layer) {
      const auto ax = images_.at(x);
      for (std::size_t k = 0; k < gens.size(); ++k) {
        std::vector<std::uint32_t> axs(states_);
        for (std::uint32_t s = 0; s < states_; ++s) axs[s] = ax[table_[k][s]];
        GroupElement y = x * gens[k];
        auto [it, inserted] = images_.emplace(y, axs);
        if (inserted) {
          if (images_.size() > cap) throw ExceedsCap("acting group exceeds cap");
          next.push_back(std::move(y));
        } else if (it->second != axs) {
          throw InvalidInput("action table is not consistent with a group homomorphism");
        }
      }
    }
    layer = std::move(next);
  }
}

std::uint32_t GroupAction::act(const GroupElement& g, std::uint32_t state) const {
  auto it = images_.find(g);
  if (it == images_.end()) throw NotInGroup("acting element not in the group: " + g.to_string());
  if (state >= states_) throw InvalidInput("state out of range");
  return it->second[state];
}

std::vector<std::uint32_t> GroupAction::orbit(std::uint32_t state) const {
  if (state >= states_) throw InvalidInput("state out of range");
  std::vector<bool> in(states_, false);
  for (const auto& [g, img] : images_) in[img[state]] = true;
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < states_; ++s)
    if (in[s]) out.push_back(s);
  return out;
}

std::vector<GroupElement> GroupAction::stabilizer(std::uint32_t state) const {
  if (state >= states_) throw InvalidInput("state out of range");
  std::vector<GroupElement> out;
  for (const auto& [g, img] : images_)
    if (img[state] == state) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

OrbitCosetInstance plant_orbit_coset(std::shared_ptr<const GroupAction> action, std::uint32_t phi1,
                                     const std::optional<GroupElement>& shift) {
  if (phi1 >= action->states()) throw InvalidInput("phi1 is not a valid state");
  auto group = std::shared_ptr<const FiniteGroup>(action, &action->group());
  if (shift) {
    const auto phi0 = action->act(*shift, phi1);
    return OrbitCosetInstance{group, action, phi0, phi1, shift};
  }
  const auto orbit = action->orbit(phi1);
  for (std::uint32_t s = 0; s < action->states(); ++s)
    if (!std::binary_search(orbit.begin(), orbit.end(), s)) return OrbitCosetInstance{group, action, s, phi1, {}};
  throw NoDisjointOrbit("the action is transitive; no state outside the orbit of phi1");
}

bool verify_promise(const HspInstance& inst, std::size_t cap) {
  const auto& all = inst.group->elements(cap);
  const ValueLabel at_identity = inst.f(inst.group->identity());
  std::vector<GroupElement> kernel;
  std::vector<ValueLabel> values;
  values.reserve(all.size());
  for (const auto& g : all) {
    values.push_back(inst.f(g));
    if (values.back() == at_identity) kernel.push_back(g);
  }
  if (!greedy_generators(inst.group->shape(), kernel, cap)) return false;
  const ElementSet kernel_set(kernel.begin(), kernel.end());

  // Each label class must be exactly one coset r K of its first member r.
  std::unordered_map<ValueLabel, std::pair<GroupElement, std::size_t>, ValueLabelHash> classes;
  for (std::size_t idx = 0; idx < all.size(); ++idx) {
    const auto& g = all[idx];
    auto [it, inserted] = classes.try_emplace(values[idx], g, 0);
    const auto& rep = it->second.first;
    const auto rel = inst.side == CosetSide::Left ? invert(rep) * g : g * invert(rep);
    if (!kernel_set.contains(rel)) return false;
    ++it->second.second;
  }
  for (const auto& [label, entry] : classes)
    if (entry.second != kernel.size()) return false;
  if (inst.planted) {
    const auto planted = closure_set(inst.group->shape(), *inst.planted, cap);
    if (planted != kernel_set) return false;
  }
  return true;
}

std::vector<GroupElement> shift_set(const HiddenCosetInstance& inst, std::size_t cap) {
  auto all = sorted_elements(*inst.group, cap);
  std::vector<ValueLabel> f1_values;
  f1_values.reserve(all.size());
  for (const auto& g : all) f1_values.push_back(inst.f1(g));
  std::vector<GroupElement> shifts;
  for (const auto& v : all) {
    bool ok = true;
    for (std::size_t i = 0; i < all.size() && ok; ++i) ok = f1_values[i] == inst.f2(all[i] * v);
    if (ok) shifts.push_back(v);
  }
  return shifts;
}

bool verify_promise(const HiddenCosetInstance& inst, std::size_t cap) {
  const auto shifts = shift_set(inst, cap);
  if (shifts.empty()) return false;
  const GroupElement u_inv = invert(shifts.front());
  std::vector<GroupElement> h;
  for (const auto& s : shifts) h.push_back(s * u_inv);
  if (!greedy_generators(inst.group->shape(), h, cap)) return false;
  if (inst.planted_subgroup && inst.planted_shift) {
    const auto planted = closure_set(inst.group->shape(), *inst.planted_subgroup, cap);
    const ElementSet found(h.begin(), h.end());
    if (planted != found) return false;
    if (!std::binary_search(shifts.begin(), shifts.end(), *inst.planted_shift)) return false;
  }
  return true;
}

bool verify_promise(const GhshInstance& inst, std::size_t cap) {
  if (inst.count() < 2) return false;
  const auto& all = inst.group->elements(cap);
  std::vector<std::unordered_map<GroupElement, ValueLabel, GroupElementHash>> tables(inst.count());
  for (std::size_t i = 0; i < inst.count(); ++i) {
    std::unordered_set<ValueLabel, ValueLabelHash> seen;
    for (const auto& g : all) {
      auto v = inst.functions[i](g);
      if (!seen.insert(v).second) return false;  // not injective
      tables[i].emplace(g, std::move(v));
    }
  }
  std::vector<GroupElement> shifts;
  for (const auto& u : all) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < inst.count() && ok; ++i)
      for (const auto& g : all)
        if (tables[i].at(g) != tables[i + 1].at(u * g)) {
          ok = false;
          break;
        }
    if (ok) shifts.push_back(u);
  }
  if (shifts.size() != 1) return false;
  return !inst.planted_shift || *inst.planted_shift == shifts.front();
}

bool verify_promise(const OrbitCosetInstance& inst, std::size_t cap) {
  (void)cap;
  const auto& action = *inst.action;
  if (inst.phi0 >= action.states() || inst.phi1 >= action.states()) return false;
  const auto orbit1 = action.orbit(inst.phi1);
  const bool meet = std::binary_search(orbit1.begin(), orbit1.end(), inst.phi0);
  if (inst.planted_shift) return meet && action.act(*inst.planted_shift, inst.phi1) == inst.phi0;
  return !meet;
}

}  // namespace hsp
