#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_set>
#include <vector>

#include "hsp/group_element.hpp"
#include "hsp/stabilizer_chain.hpp"

namespace hsp {

inline constexpr std::size_t kDefaultCap = 100000;

/**
 * A finite group given by generators of a common shape. The element list is
 * computed on demand by closure and cached; copies share the cache.
 */
class FiniteGroup {
 public:
  FiniteGroup(Shape shape, std::vector<GroupElement> generators);

  const Shape& shape() const { return shape_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  GroupElement identity() const { return identity_of(shape_); }

  bool is_permutation_group() const { return shape_.kind == ElementKind::Perm; }
  std::size_t degree() const;  // permutation groups only
  std::vector<Permutation> permutation_generators() const;

  /// Closure in breadth-first order (see enumerate_group); cached.
  const std::vector<GroupElement>& elements(std::size_t cap = kDefaultCap) const;

  /// Membership by closure, or by stabilizer chain for permutation groups.
  bool contains(const GroupElement& g, std::size_t cap = kDefaultCap) const;

  std::uint64_t order(std::size_t cap = kDefaultCap) const;

  /// Stabilizer chain of a permutation group, built once and cached.
  const StabilizerChain& chain() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<GroupElement>> elements;
    std::optional<std::unordered_set<GroupElement, GroupElementHash>> members;
    std::optional<StabilizerChain> chain;
  };

  Shape shape_;
  std::vector<GroupElement> generators_;
  std::shared_ptr<Cache> cache_;
};

/**
 * Exact closure of the generators under group_op, breadth-first from the
 * identity; each new layer is sorted by the canonical element order.
 * Throws ExceedsCap once more than `cap` elements are found.
 */
std::vector<GroupElement> enumerate_group(const FiniteGroup& group, std::size_t cap = kDefaultCap);

/// Closure of an element list of the given shape.
std::vector<GroupElement> closure(const Shape& shape, const std::vector<GroupElement>& generators,
                                  std::size_t cap = kDefaultCap);

/// Same closure as a set, for membership tests.
std::unordered_set<GroupElement, GroupElementHash> closure_set(const Shape& shape,
                                                               const std::vector<GroupElement>& generators,
                                                               std::size_t cap = kDefaultCap);

FiniteGroup symmetric_group(std::uint32_t degree);
FiniteGroup cyclic_group(std::uint32_t modulus);
FiniteGroup dihedral_group(std::uint32_t n);
FiniteGroup permutation_group(std::uint32_t degree, std::vector<Permutation> generators);

/// G wr Z_n with generators: each generator of G placed in each slot, plus the unit shift.
FiniteGroup wreath_product(const FiniteGroup& base, std::uint32_t arity);

/// Direct product with tuple elements; generators are embedded per component.
FiniteGroup direct_product(const std::vector<FiniteGroup>& factors);

/// Image of a permutation wreath product G wr Z_2 inside S_{2n} under wreath_embed.
FiniteGroup embedded_wreath_square(const FiniteGroup& base);

}  // namespace hsp
