#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "hsp/permutation.hpp"

namespace hsp {

class GroupElement;

enum class ElementKind : std::uint8_t { Perm = 0, Cyclic = 1, Dihedral = 2, Wreath = 3, Tuple = 4 };

std::string to_string(ElementKind kind);

/// Residue `value` in the additive group Z_modulus.
struct CyclicElement {
  std::uint32_t value = 0;
  std::uint32_t modulus = 1;
  friend bool operator==(const CyclicElement&, const CyclicElement&) = default;
  friend auto operator<=>(const CyclicElement&, const CyclicElement&) = default;
};

/// r^rotation * sigma^reflection in D_n, with sigma r sigma = r^-1.
struct DihedralElement {
  std::uint32_t rotation = 0;
  std::uint32_t reflection = 0;
  std::uint32_t n = 1;
  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
  friend auto operator<=>(const DihedralElement&, const DihedralElement&) = default;
};

/// (g_1, ..., g_n, shift) in G wr Z_n. `shift` is the residue tau, read as the
/// cyclic permutation x -> x + tau (mod n) of the slot indices 1..n.
struct WreathElement {
  std::vector<GroupElement> slots;
  std::uint32_t shift = 0;
};

struct TupleElement {
  std::vector<GroupElement> items;
};

/// Shape descriptor: enough to build the identity and to check compatibility.
struct Shape {
  ElementKind kind = ElementKind::Perm;
  /// Perm: degree. Cyclic: modulus. Dihedral: n. Wreath: slot count. Tuple: unused.
  std::uint32_t size = 1;
  /// Wreath: {slot shape}. Tuple: component shapes.
  std::vector<Shape> parts;

  static Shape perm(std::uint32_t degree) { return {ElementKind::Perm, degree, {}}; }
  static Shape cyclic(std::uint32_t modulus) { return {ElementKind::Cyclic, modulus, {}}; }
  static Shape dihedral(std::uint32_t n) { return {ElementKind::Dihedral, n, {}}; }
  static Shape wreath(Shape base, std::uint32_t arity) { return {ElementKind::Wreath, arity, {std::move(base)}}; }
  static Shape tuple(std::vector<Shape> parts) { return {ElementKind::Tuple, 0, std::move(parts)}; }

  friend bool operator==(const Shape&, const Shape&) = default;
  std::string to_string() const;
};

/**
 * Element of one of the supported finite groups. Values are immutable; the
 * canonical total order compares kind first and then the fields in their
 * serialized order, lexicographically.
 */
class GroupElement {
 public:
  GroupElement() : value_(CyclicElement{}) {}
  GroupElement(Permutation p) : value_(std::move(p)) {}
  GroupElement(CyclicElement c);
  GroupElement(DihedralElement d);
  GroupElement(WreathElement w);
  GroupElement(TupleElement t);

  ElementKind kind() const { return static_cast<ElementKind>(value_.index()); }

  const Permutation& perm() const;
  const CyclicElement& cyclic() const;
  const DihedralElement& dihedral() const;
  const WreathElement& wreath() const;
  const TupleElement& tuple() const;

  Shape shape() const;
  bool is_identity() const;
  std::size_t hash() const;

  /// Compact, injective text form, e.g. "[2,1,3]", "3%4", "r5s%12", "w([..],[..];1)".
  std::string to_string() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

 private:
  std::variant<Permutation, CyclicElement, DihedralElement, WreathElement, TupleElement> value_;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

GroupElement identity_of(const Shape& shape);

/// Product x*y. Permutations compose left to right, cyclic groups add,
/// dihedral uses r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b xor d), wreath
/// elements follow (g, t) * (g', t') = (g_{t'(1)} g'_1, ..., g_{t'(n)} g'_n, t + t'),
/// tuples multiply componentwise.
GroupElement group_op(const GroupElement& x, const GroupElement& y);
GroupElement invert(const GroupElement& x);
GroupElement power(const GroupElement& x, std::int64_t exponent);

inline GroupElement operator*(const GroupElement& x, const GroupElement& y) { return group_op(x, y); }

/// Slot index reached from `slot` (1-based) under the cyclic shift tau = `shift` mod n.
std::size_t shifted_slot(std::size_t slot, std::uint32_t shift, std::size_t n);

GroupElement make_cyclic(std::uint32_t value, std::uint32_t modulus);
GroupElement make_dihedral(std::uint32_t rotation, bool reflection, std::uint32_t n);
/// Validates that all slots share one shape and that shift < slots.size().
GroupElement make_wreath(std::vector<GroupElement> slots, std::uint32_t shift);
GroupElement make_tuple(std::vector<GroupElement> items);

/**
 * Embeds S_n wr Z_2 into the symmetric group on Gamma = {(i, j) : 1 <= i <= n, j in {1, 2}},
 * with (i, j) flattened to i + (j - 1) n. The element (g_1, g_2, tau) sends
 * (i, j) to (g_{tau(j)}(i), tau(j)): the point first moves to column tau(j) and
 * then the slot permutation of that column acts on it. This is the reading
 * under which the embedding is a homomorphism for the product above.
 */
Permutation wreath_embed(const GroupElement& w);

/// Inverse of wreath_embed. Throws InvalidInput unless p maps each column
/// onto a single column.
GroupElement wreath_unembed(const Permutation& p, std::size_t n);

}  // namespace hsp
