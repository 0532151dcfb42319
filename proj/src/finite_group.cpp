#include "hsp/finite_group.hpp"

#include <algorithm>

#include "hsp/errors.hpp"

namespace hsp {

FiniteGroup::FiniteGroup(Shape shape, std::vector<GroupElement> generators)
    : shape_(std::move(shape)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  for (const auto& g : generators_)
    if (g.shape() != shape_)
      throw ShapeMismatch("generator " + g.to_string() + " does not have shape " + shape_.to_string());
}

std::size_t FiniteGroup::degree() const {
  if (!is_permutation_group()) throw ShapeMismatch("degree() on a non-permutation group");
  return shape_.size;
}

std::vector<Permutation> FiniteGroup::permutation_generators() const {
  std::vector<Permutation> out;
  out.reserve(generators_.size());
  for (const auto& g : generators_) out.push_back(g.perm());
  return out;
}

const std::vector<GroupElement>& FiniteGroup::elements(std::size_t cap) const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->elements) cache_->elements = enumerate_group(*this, cap);
  if (cache_->elements->size() > cap) throw ExceedsCap("group order exceeds enumeration cap");
  return *cache_->elements;
}

const StabilizerChain& FiniteGroup::chain() const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->chain) {
    const auto gens = permutation_generators();
    cache_->chain.emplace(degree(), gens);
  }
  return *cache_->chain;
}

bool FiniteGroup::contains(const GroupElement& g, std::size_t cap) const {
  if (g.shape() != shape_) return false;
  if (is_permutation_group()) return chain().contains(g.perm());
  const auto& all = elements(cap);
  std::lock_guard lock(cache_->mutex);
  if (!cache_->members) cache_->members.emplace(all.begin(), all.end());
  return cache_->members->contains(g);
}

std::uint64_t FiniteGroup::order(std::size_t cap) const {
  if (is_permutation_group()) return chain().order();
  return elements(cap).size();
}

namespace {

template <typename Sink>
void bfs_closure(const Shape& shape, const std::vector<GroupElement>& generators, std::size_t cap, Sink&& sink) {
  std::unordered_set<GroupElement, GroupElementHash> seen;
  std::vector<GroupElement> layer{identity_of(shape)};
  seen.insert(layer.front());
  sink(layer.front());
  while (!layer.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : layer) {
      for (const auto& s : generators) {
        GroupElement y = group_op(x, s);
        if (seen.insert(y).second) {
          if (seen.size() > cap) throw ExceedsCap("closure exceeds cap of " + std::to_string(cap) + " elements");
          next.push_back(std::move(y));
        }
      }
    }
    std::sort(next.begin(), next.end());
    for (const auto& y : next) sink(y);
    layer = std::move(next);
  }
}

}  // namespace

std::vector<GroupElement> closure(const Shape& shape, const std::vector<GroupElement>& generators, std::size_t cap) {
  if (cap < 1) throw InvalidInput("enumeration cap must be >= 1");
  std::vector<GroupElement> out;
  bfs_closure(shape, generators, cap, [&](const GroupElement& g) { out.push_back(g); });
  return out;
}

std::unordered_set<GroupElement, GroupElementHash> closure_set(const Shape& shape,
                                                               const std::vector<GroupElement>& generators,
                                                               std::size_t cap) {
  auto all = closure(shape, generators, cap);
  return {std::make_move_iterator(all.begin()), std::make_move_iterator(all.end())};
}

std::vector<GroupElement> enumerate_group(const FiniteGroup& group, std::size_t cap) {
  return closure(group.shape(), group.generators(), cap);
}

FiniteGroup symmetric_group(std::uint32_t degree) {
  std::vector<GroupElement> gens;
  for (auto& p : symmetric_group_generators(degree)) gens.emplace_back(std::move(p));
  return FiniteGroup(Shape::perm(degree), std::move(gens));
}

FiniteGroup cyclic_group(std::uint32_t modulus) {
  std::vector<GroupElement> gens;
  if (modulus > 1) gens.push_back(make_cyclic(1, modulus));
  return FiniteGroup(Shape::cyclic(modulus), std::move(gens));
}

FiniteGroup dihedral_group(std::uint32_t n) {
  std::vector<GroupElement> gens;
  if (n > 1) gens.push_back(make_dihedral(1, false, n));
  gens.push_back(make_dihedral(0, true, n));
  return FiniteGroup(Shape::dihedral(n), std::move(gens));
}

FiniteGroup permutation_group(std::uint32_t degree, std::vector<Permutation> generators) {
  std::vector<GroupElement> gens;
  for (auto& p : generators) gens.emplace_back(std::move(p));
  return FiniteGroup(Shape::perm(degree), std::move(gens));
}

FiniteGroup wreath_product(const FiniteGroup& base, std::uint32_t arity) {
  if (arity < 1) throw InvalidInput("wreath arity must be >= 1");
  const GroupElement id = base.identity();
  std::vector<GroupElement> gens;
  for (const auto& s : base.generators()) {
    for (std::uint32_t k = 0; k < arity; ++k) {
      std::vector<GroupElement> slots(arity, id);
      slots[k] = s;
      gens.push_back(make_wreath(std::move(slots), 0));
    }
  }
  if (arity > 1) gens.push_back(make_wreath(std::vector<GroupElement>(arity, id), 1));
  return FiniteGroup(Shape::wreath(base.shape(), arity), std::move(gens));
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& factors) {
  std::vector<Shape> shapes;
  std::vector<GroupElement> ids;
  for (const auto& f : factors) {
    shapes.push_back(f.shape());
    ids.push_back(f.identity());
  }
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (const auto& s : factors[i].generators()) {
      auto items = ids;
      items[i] = s;
      gens.push_back(make_tuple(std::move(items)));
    }
  }
  return FiniteGroup(Shape::tuple(std::move(shapes)), std::move(gens));
}

FiniteGroup embedded_wreath_square(const FiniteGroup& base) {
  if (!base.is_permutation_group()) throw ShapeMismatch("embedded wreath square needs a permutation group");
  const auto w = wreath_product(base, 2);
  std::vector<Permutation> gens;
  for (const auto& g : w.generators()) gens.push_back(wreath_embed(g));
  return permutation_group(static_cast<std::uint32_t>(2 * base.degree()), std::move(gens));
}

}  // namespace hsp
