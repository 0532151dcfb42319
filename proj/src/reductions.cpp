#include "hsp/reductions.hpp"

#include <algorithm>
#include <sstream>

#include "hsp/errors.hpp"

namespace hsp {

ConstraintGroup ConstraintGroup::generated(std::size_t degree, std::vector<Permutation> generators) {
  ConstraintGroup c;
  c.degree_ = degree;
  c.generators_ = std::move(generators);
  c.chain_ = std::make_shared<const StabilizerChain>(degree, c.generators_);
  return c;
}

ConstraintGroup ConstraintGroup::setwise_stabilizer(PointSet points) {
  ConstraintGroup c;
  c.degree_ = points.degree();
  c.set_ = std::move(points);
  return c;
}

bool ConstraintGroup::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("constraint membership across degrees");
  if (set_) return set_->is_stabilized_by(p);
  return chain_->contains(p);
}

std::vector<Permutation> ConstraintGroup::generators() const {
  if (set_) return setwise_stabilizer_generators(degree_, *set_);
  return generators_;
}

std::string ConstraintGroup::describe() const {
  std::ostringstream out;
  if (set_) {
    out << "Stab{";
    for (std::size_t i = 0; i < set_->size(); ++i) out << (i ? "," : "") << set_->points()[i];
    out << "}";
  } else {
    out << "<";
    for (std::size_t i = 0; i < generators_.size(); ++i) out << (i ? "," : "") << generators_[i].to_cycle_string();
    out << ">";
  }
  return out.str();
}

ValueLabel StructuredHspInstance::evaluate(const GroupElement& tuple) const {
  const auto& items = tuple.tuple().items;
  if (items.size() != constraints.size() + 1) throw ShapeMismatch("tuple arity differs from 1 + constraint count");
  std::vector<ValueLabel> parts;
  parts.reserve(items.size());
  parts.push_back(base->f(items[0]));
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (!constraints[i].contains(items[i + 1].perm()))
      throw NotInGroup("tuple component outside its constraint group");
    parts.push_back(element_label(items[0] * invert(items[i + 1])));
  }
  return ValueLabel::composite(std::move(parts));
}

FiniteGroup StructuredHspInstance::product_group() const {
  std::vector<FiniteGroup> factors{*base->group};
  for (const auto& c : constraints)
    factors.push_back(permutation_group(static_cast<std::uint32_t>(c.degree()), c.generators()));
  return direct_product(factors);
}

std::vector<Permutation> StructuredHspInstance::intersection(std::size_t cap) const {
  std::vector<Permutation> out;
  for (const auto& g : kernel_elements(*base, cap)) {
    const auto& p = g.perm();
    if (std::all_of(constraints.begin(), constraints.end(), [&](const auto& c) { return c.contains(p); }))
      out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StructuredHspInstance multi_intersection(std::shared_ptr<const HspInstance> inst,
                                         std::vector<ConstraintGroup> constraints) {
  if (!inst->group->is_permutation_group()) throw ShapeMismatch("intersection gadget needs a permutation group");
  const auto n = inst->group->degree();
  for (const auto& c : constraints)
    if (c.degree() != n) throw DegreeMismatch("constraint group degree differs from the base group degree");
  return StructuredHspInstance{std::move(inst), std::move(constraints)};
}

HspInstance hidden_coset_to_hsp(const HiddenCosetInstance& hc, std::size_t cap) {
  (void)cap;
  auto wreath = std::make_shared<const FiniteGroup>(wreath_product(*hc.group, 2));
  OracleFunction f(wreath, [f1 = hc.f1, f2 = hc.f2](const GroupElement& x) {
    const auto& w = x.wreath();
    if (w.shift == 0) return ValueLabel::pair(f1(w.slots[0]), f2(w.slots[1]));
    return ValueLabel::pair(f2(w.slots[1]), f1(w.slots[0]));
  });
  HspInstance out{std::move(wreath), std::move(f), CosetSide::Left, std::nullopt, {}};
  if (hc.planted_subgroup && hc.planted_shift)
    out.planted = predicted_coset_kernel(*hc.planted_subgroup, *hc.planted_shift);
  return out;
}

std::vector<GroupElement> predicted_coset_kernel(const std::vector<GroupElement>& subgroup_gens,
                                                 const GroupElement& shift) {
  const GroupElement id = identity_of(shift.shape());
  const GroupElement u_inv = invert(shift);
  std::vector<GroupElement> gens;
  for (const auto& h : subgroup_gens) {
    gens.push_back(make_wreath({h, id}, 0));
    gens.push_back(make_wreath({id, u_inv * h * shift}, 0));
  }
  gens.push_back(make_wreath({u_inv, shift}, 1));
  return gens;
}

CosetSolution recover_coset_solution(const std::vector<GroupElement>& k_gens, const FiniteGroup& group) {
  std::vector<GroupElement> swapping;
  for (const auto& k : k_gens) {
    const auto& w = k.wreath();
    if (w.slots.size() != 2) throw ShapeMismatch("K generators must lie in G wr Z_2");
    if (w.slots[0].shape() != group.shape()) throw ShapeMismatch("K generator slots do not match the base group");
    if (w.shift == 1) swapping.push_back(k);
  }
  if (swapping.empty()) throw InvalidKGenerators("no generator of the form (k1, k2, 1)");
  const GroupElement u = std::min_element(swapping.begin(), swapping.end())->wreath().slots[1];
  const GroupElement u_inv = invert(u);

  std::vector<GroupElement> s;
  for (const auto& k : k_gens) {
    const auto& w = k.wreath();
    if (w.shift == 0) {
      s.push_back(w.slots[0]);
      s.push_back(u * w.slots[1] * u_inv);
    } else {
      s.push_back(u * w.slots[0]);
      s.push_back(w.slots[1] * u_inv);
    }
  }
  std::erase_if(s, [](const GroupElement& g) { return g.is_identity(); });
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return CosetSolution{std::move(s), u};
}

HspInstance ghsh_to_hsp(const GhshInstance& inst) {
  const auto n = static_cast<std::uint32_t>(inst.count());
  auto wreath = std::make_shared<const FiniteGroup>(wreath_product(*inst.group, n));
  OracleFunction f(wreath, [fs = inst.functions](const GroupElement& x) {
    const auto& w = x.wreath();
    const std::size_t n = w.slots.size();
    std::vector<ValueLabel> parts;
    parts.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) parts.push_back(fs[shifted_slot(k, w.shift, n) - 1](w.slots[k - 1]));
    return ValueLabel::composite(std::move(parts));
  });
  HspInstance out{std::move(wreath), std::move(f), CosetSide::Right, std::nullopt, {}};
  if (inst.planted_shift) out.planted = std::vector{predicted_ghsh_generator(*inst.planted_shift, n)};
  return out;
}

GroupElement predicted_ghsh_generator(const GroupElement& shift, std::size_t count) {
  std::vector<GroupElement> slots(count, shift);
  slots.back() = power(shift, 1 - static_cast<std::int64_t>(count));
  return make_wreath(std::move(slots), 1);
}

GhshAccess recover_ghsh_functions(const HspInstance& reduced) {
  const auto& shape = reduced.group->shape();
  if (shape.kind != ElementKind::Wreath) throw ShapeMismatch("GHSh recovery needs an instance over G wr Z_n");
  const std::size_t n = shape.size;
  GhshAccess access;
  access.count = n;
  access.evaluate = [f = reduced.f, n](std::size_t i, const GroupElement& g) {
    if (i < 1 || i > n) throw InvalidInput("function index out of range");
    return f(make_wreath(std::vector<GroupElement>(n, g), 0)).component(i - 1);
  };
  return access;
}

ValueLabel state_label(std::uint32_t state) { return ValueLabel("s" + std::to_string(state)); }

HspInstance orbit_coset_to_hsp(const OrbitCosetInstance& oc, std::size_t cap) {
  auto wreath = std::make_shared<const FiniteGroup>(wreath_product(*oc.group, 2));
  OracleFunction f(wreath, [action = oc.action, phi0 = oc.phi0, phi1 = oc.phi1](const GroupElement& x) {
    const auto& w = x.wreath();
    auto a = state_label(action->act(w.slots[0], phi0));
    auto b = state_label(action->act(w.slots[1], phi1));
    if (w.shift == 0) return ValueLabel::pair(std::move(a), std::move(b));
    return ValueLabel::pair(std::move(b), std::move(a));
  });
  HspInstance out{std::move(wreath), std::move(f), CosetSide::Left, std::nullopt, {}};

  const auto& shape = oc.group->shape();
  const GroupElement id = identity_of(shape);
  std::vector<GroupElement> gens;
  const auto stab0 = greedy_generators(shape, oc.action->stabilizer(oc.phi0), cap).value();
  const auto stab1 = greedy_generators(shape, oc.action->stabilizer(oc.phi1), cap).value();
  for (const auto& s : stab0) gens.push_back(make_wreath({s, id}, 0));
  for (const auto& s : stab1) gens.push_back(make_wreath({id, s}, 0));
  if (oc.planted_shift) gens.push_back(make_wreath({invert(*oc.planted_shift), *oc.planted_shift}, 1));
  out.planted = std::move(gens);
  return out;
}

OrbitCosetSolution recover_orbit_coset_solution(const std::vector<GroupElement>& h_gens) {
  OrbitCosetSolution out;
  std::vector<GroupElement> swapping;
  for (const auto& k : h_gens) {
    if (k.wreath().slots.size() != 2) throw ShapeMismatch("hidden subgroup generators must lie in G wr Z_2");
    if (k.wreath().shift == 1) swapping.push_back(k);
  }
  std::vector<GroupElement> stab;
  if (swapping.empty()) {
    // Disjoint orbits: H = G_phi0 x G_phi1 x {0}; its second projection is G_phi1.
    out.rejected = true;
    for (const auto& k : h_gens) stab.push_back(k.wreath().slots[1]);
  } else {
    const GroupElement u = std::min_element(swapping.begin(), swapping.end())->wreath().slots[1];
    const GroupElement u_inv = invert(u);
    out.shift = u;
    for (const auto& k : h_gens) {
      const auto& w = k.wreath();
      if (w.shift == 0) {
        stab.push_back(w.slots[1]);
        stab.push_back(u_inv * w.slots[0] * u);
      } else {
        stab.push_back(w.slots[0] * u);
        stab.push_back(u_inv * w.slots[1]);
      }
    }
  }
  std::erase_if(stab, [](const GroupElement& g) { return g.is_identity(); });
  std::sort(stab.begin(), stab.end());
  stab.erase(std::unique(stab.begin(), stab.end()), stab.end());
  out.stabilizer_gens = std::move(stab);
  return out;
}

}  // namespace hsp
