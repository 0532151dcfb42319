#include "hsp/group_element.hpp"

#include <sstream>

#include "hsp/errors.hpp"

namespace hsp {

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Perm: return "perm";
    case ElementKind::Cyclic: return "cyclic";
    case ElementKind::Dihedral: return "dihedral";
    case ElementKind::Wreath: return "wreath";
    case ElementKind::Tuple: return "tuple";
  }
  return "?";
}

std::string Shape::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case ElementKind::Perm: out << "S" << size; break;
    case ElementKind::Cyclic: out << "Z" << size; break;
    case ElementKind::Dihedral: out << "D" << size; break;
    case ElementKind::Wreath: out << "(" << parts.at(0).to_string() << " wr Z" << size << ")"; break;
    case ElementKind::Tuple:
      out << "(";
      for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? " x " : "") << parts[i].to_string();
      out << ")";
      break;
  }
  return out.str();
}

GroupElement::GroupElement(CyclicElement c) : value_(c) {
  if (c.modulus == 0 || c.value >= c.modulus) throw InvalidInput("cyclic residue out of range");
}

GroupElement::GroupElement(DihedralElement d) : value_(d) {
  if (d.n == 0 || d.rotation >= d.n || d.reflection > 1) throw InvalidInput("dihedral element out of range");
}

GroupElement::GroupElement(WreathElement w) {
  if (w.slots.empty()) throw InvalidInput("wreath element needs at least one slot");
  if (w.shift >= w.slots.size()) throw InvalidInput("wreath shift out of range");
  const Shape s = w.slots.front().shape();
  for (const auto& slot : w.slots)
    if (slot.shape() != s) throw ShapeMismatch("wreath slots must share one shape");
  value_ = std::move(w);
}

GroupElement::GroupElement(TupleElement t) : value_(std::move(t)) {}

namespace {
[[noreturn]] void wrong_kind(ElementKind want, ElementKind have) {
  throw ShapeMismatch("expected " + to_string(want) + " element, got " + to_string(have));
}
}  // namespace

const Permutation& GroupElement::perm() const {
  if (auto* p = std::get_if<Permutation>(&value_)) return *p;
  wrong_kind(ElementKind::Perm, kind());
}
const CyclicElement& GroupElement::cyclic() const {
  if (auto* p = std::get_if<CyclicElement>(&value_)) return *p;
  wrong_kind(ElementKind::Cyclic, kind());
}
const DihedralElement& GroupElement::dihedral() const {
  if (auto* p = std::get_if<DihedralElement>(&value_)) return *p;
  wrong_kind(ElementKind::Dihedral, kind());
}
const WreathElement& GroupElement::wreath() const {
  if (auto* p = std::get_if<WreathElement>(&value_)) return *p;
  wrong_kind(ElementKind::Wreath, kind());
}
const TupleElement& GroupElement::tuple() const {
  if (auto* p = std::get_if<TupleElement>(&value_)) return *p;
  wrong_kind(ElementKind::Tuple, kind());
}

Shape GroupElement::shape() const {
  switch (kind()) {
    case ElementKind::Perm: return Shape::perm(static_cast<std::uint32_t>(perm().degree()));
    case ElementKind::Cyclic: return Shape::cyclic(cyclic().modulus);
    case ElementKind::Dihedral: return Shape::dihedral(dihedral().n);
    case ElementKind::Wreath: {
      const auto& w = wreath();
      return Shape::wreath(w.slots.front().shape(), static_cast<std::uint32_t>(w.slots.size()));
    }
    case ElementKind::Tuple: {
      std::vector<Shape> parts;
      for (const auto& item : tuple().items) parts.push_back(item.shape());
      return Shape::tuple(std::move(parts));
    }
  }
  return {};
}

bool GroupElement::is_identity() const {
  switch (kind()) {
    case ElementKind::Perm: return perm().is_identity();
    case ElementKind::Cyclic: return cyclic().value == 0;
    case ElementKind::Dihedral: return dihedral().rotation == 0 && dihedral().reflection == 0;
    case ElementKind::Wreath: {
      const auto& w = wreath();
      if (w.shift != 0) return false;
      for (const auto& s : w.slots)
        if (!s.is_identity()) return false;
      return true;
    }
    case ElementKind::Tuple:
      for (const auto& s : tuple().items)
        if (!s.is_identity()) return false;
      return true;
  }
  return false;
}

std::size_t GroupElement::hash() const {
  auto mix = [](std::size_t h, std::size_t v) { return (h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2))); };
  std::size_t h = static_cast<std::size_t>(kind()) * 0x9e3779b97f4a7c15ULL;
  switch (kind()) {
    case ElementKind::Perm: return mix(h, perm().hash());
    case ElementKind::Cyclic: return mix(mix(h, cyclic().value), cyclic().modulus);
    case ElementKind::Dihedral:
      return mix(mix(mix(h, dihedral().rotation), dihedral().reflection), dihedral().n);
    case ElementKind::Wreath:
      for (const auto& s : wreath().slots) h = mix(h, s.hash());
      return mix(h, wreath().shift);
    case ElementKind::Tuple:
      for (const auto& s : tuple().items) h = mix(h, s.hash());
      return h;
  }
  return h;
}

std::string GroupElement::to_string() const {
  std::ostringstream out;
  switch (kind()) {
    case ElementKind::Perm: {
      out << '[';
      const auto im = perm().images();
      for (std::size_t i = 0; i < im.size(); ++i) out << (i ? "," : "") << im[i];
      out << ']';
      break;
    }
    case ElementKind::Cyclic: out << cyclic().value << '%' << cyclic().modulus; break;
    case ElementKind::Dihedral:
      out << 'r' << dihedral().rotation << (dihedral().reflection ? "s" : "") << '%' << dihedral().n;
      break;
    case ElementKind::Wreath: {
      out << "w(";
      const auto& w = wreath();
      for (std::size_t i = 0; i < w.slots.size(); ++i) out << (i ? "," : "") << w.slots[i].to_string();
      out << ';' << w.shift << ')';
      break;
    }
    case ElementKind::Tuple: {
      out << "t(";
      const auto& t = tuple();
      for (std::size_t i = 0; i < t.items.size(); ++i) out << (i ? "," : "") << t.items[i].to_string();
      out << ')';
      break;
    }
  }
  return out.str();
}

bool operator==(const GroupElement& a, const GroupElement& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case ElementKind::Perm: return a.perm() <=> b.perm();
    case ElementKind::Cyclic: {
      if (auto c = a.cyclic().value <=> b.cyclic().value; c != 0) return c;
      return a.cyclic().modulus <=> b.cyclic().modulus;
    }
    case ElementKind::Dihedral: {
      const auto& x = a.dihedral();
      const auto& y = b.dihedral();
      if (auto c = x.rotation <=> y.rotation; c != 0) return c;
      if (auto c = x.reflection <=> y.reflection; c != 0) return c;
      return x.n <=> y.n;
    }
    case ElementKind::Wreath: {
      const auto& x = a.wreath();
      const auto& y = b.wreath();
      if (auto c = std::lexicographical_compare_three_way(x.slots.begin(), x.slots.end(), y.slots.begin(),
                                                          y.slots.end());
          c != 0)
        return c;
      return x.shift <=> y.shift;
    }
    case ElementKind::Tuple: {
      const auto& x = a.tuple().items;
      const auto& y = b.tuple().items;
      return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
    }
  }
  return std::strong_ordering::equal;
}

GroupElement identity_of(const Shape& shape) {
  switch (shape.kind) {
    case ElementKind::Perm: return Permutation::identity(shape.size);
    case ElementKind::Cyclic: return CyclicElement{0, shape.size};
    case ElementKind::Dihedral: return DihedralElement{0, 0, shape.size};
    case ElementKind::Wreath: {
      if (shape.parts.size() != 1) throw InvalidInput("wreath shape needs exactly one slot shape");
      return WreathElement{std::vector<GroupElement>(shape.size, identity_of(shape.parts[0])), 0};
    }
    case ElementKind::Tuple: {
      std::vector<GroupElement> items;
      for (const auto& p : shape.parts) items.push_back(identity_of(p));
      return TupleElement{std::move(items)};
    }
  }
  throw InvalidInput("unknown shape");
}

std::size_t shifted_slot(std::size_t slot, std::uint32_t shift, std::size_t n) {
  // slot in 1..n; result is ((slot + shift) mod n) with 0 read as n.
  const std::size_t r = (slot + shift) % n;
  return r == 0 ? n : r;
}

namespace {
void require_same_shape(const GroupElement& x, const GroupElement& y) {
  if (x.kind() != y.kind()) throw ShapeMismatch("group_op on " + to_string(x.kind()) + " and " + to_string(y.kind()));
}
}  // namespace

GroupElement group_op(const GroupElement& x, const GroupElement& y) {
  require_same_shape(x, y);
  switch (x.kind()) {
    case ElementKind::Perm: {
      if (x.perm().degree() != y.perm().degree()) throw ShapeMismatch("permutation degrees differ");
      return x.perm() * y.perm();
    }
    case ElementKind::Cyclic: {
      const auto& a = x.cyclic();
      const auto& b = y.cyclic();
      if (a.modulus != b.modulus) throw ShapeMismatch("cyclic moduli differ");
      return CyclicElement{static_cast<std::uint32_t>((std::uint64_t{a.value} + b.value) % a.modulus), a.modulus};
    }
    case ElementKind::Dihedral: {
      const auto& a = x.dihedral();
      const auto& b = y.dihedral();
      if (a.n != b.n) throw ShapeMismatch("dihedral orders differ");
      const std::uint64_t c = a.reflection ? (a.n - b.rotation) % a.n : b.rotation;
      return DihedralElement{static_cast<std::uint32_t>((a.rotation + c) % a.n), a.reflection ^ b.reflection, a.n};
    }
    case ElementKind::Wreath: {
      const auto& a = x.wreath();
      const auto& b = y.wreath();
      const std::size_t n = a.slots.size();
      if (b.slots.size() != n) throw ShapeMismatch("wreath arities differ");
      WreathElement out;
      out.slots.reserve(n);
      for (std::size_t k = 1; k <= n; ++k)
        out.slots.push_back(group_op(a.slots[shifted_slot(k, b.shift, n) - 1], b.slots[k - 1]));
      out.shift = static_cast<std::uint32_t>((a.shift + b.shift) % n);
      return out;
    }
    case ElementKind::Tuple: {
      const auto& a = x.tuple().items;
      const auto& b = y.tuple().items;
      if (a.size() != b.size()) throw ShapeMismatch("tuple lengths differ");
      TupleElement out;
      out.items.reserve(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) out.items.push_back(group_op(a[i], b[i]));
      return out;
    }
  }
  throw ShapeMismatch("unknown element kind");
}

GroupElement invert(const GroupElement& x) {
  switch (x.kind()) {
    case ElementKind::Perm: return x.perm().inverse();
    case ElementKind::Cyclic: {
      const auto& a = x.cyclic();
      return CyclicElement{(a.modulus - a.value) % a.modulus, a.modulus};
    }
    case ElementKind::Dihedral: {
      const auto& a = x.dihedral();
      if (a.reflection) return a;  // reflections are involutions
      return DihedralElement{(a.n - a.rotation) % a.n, 0, a.n};
    }
    case ElementKind::Wreath: {
      // (g, t)^-1 = (h, -t) with h_k = (g_{k - t})^-1.
      const auto& a = x.wreath();
      const std::size_t n = a.slots.size();
      const auto back = static_cast<std::uint32_t>((n - a.shift) % n);
      WreathElement out;
      out.slots.reserve(n);
      for (std::size_t k = 1; k <= n; ++k) out.slots.push_back(invert(a.slots[shifted_slot(k, back, n) - 1]));
      out.shift = back;
      return out;
    }
    case ElementKind::Tuple: {
      TupleElement out;
      for (const auto& item : x.tuple().items) out.items.push_back(invert(item));
      return out;
    }
  }
  throw ShapeMismatch("unknown element kind");
}

GroupElement power(const GroupElement& x, std::int64_t exponent) {
  GroupElement base = exponent < 0 ? invert(x) : x;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent) : static_cast<std::uint64_t>(exponent);
  GroupElement result = identity_of(x.shape());
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

GroupElement make_cyclic(std::uint32_t value, std::uint32_t modulus) { return CyclicElement{value, modulus}; }

GroupElement make_dihedral(std::uint32_t rotation, bool reflection, std::uint32_t n) {
  return DihedralElement{rotation, reflection ? 1U : 0U, n};
}

GroupElement make_wreath(std::vector<GroupElement> slots, std::uint32_t shift) {
  return WreathElement{std::move(slots), shift};
}

GroupElement make_tuple(std::vector<GroupElement> items) { return TupleElement{std::move(items)}; }

Permutation wreath_embed(const GroupElement& w) {
  const auto& e = w.wreath();
  if (e.slots.size() != 2) throw ShapeMismatch("wreath_embed needs an element of G wr Z_2");
  const std::size_t n = e.slots[0].perm().degree();
  if (e.slots[1].perm().degree() != n) throw ShapeMismatch("wreath slots have different degrees");
  std::vector<Point> images(2 * n);
  for (std::size_t j = 1; j <= 2; ++j) {
    const std::size_t target = shifted_slot(j, e.shift, 2);
    const auto& g = e.slots[target - 1].perm();
    for (Point i = 1; i <= n; ++i)
      images[(i - 1) + (j - 1) * n] = static_cast<Point>(g(i) + (target - 1) * n);
  }
  return Permutation(std::move(images));
}

GroupElement wreath_unembed(const Permutation& p, std::size_t n) {
  if (n == 0 || p.degree() != 2 * n) throw InvalidInput("wreath_unembed: degree must be 2n");
  auto column_of = [n](Point x) { return x <= n ? 1U : 2U; };
  const auto target1 = column_of(p(1));
  std::vector<Point> images[2] = {std::vector<Point>(n), std::vector<Point>(n)};
  for (std::size_t j = 1; j <= 2; ++j) {
    const auto target = j == 1 ? target1 : 3 - target1;
    for (Point i = 1; i <= n; ++i) {
      const Point y = p(static_cast<Point>(i + (j - 1) * n));
      if (column_of(y) != target) throw InvalidInput("permutation does not preserve the column structure");
      images[target - 1][i - 1] = static_cast<Point>(y - (target - 1) * n);
    }
  }
  return WreathElement{{Permutation(std::move(images[0])), Permutation(std::move(images[1]))},
                       target1 == 1 ? 0U : 1U};
}

}  // namespace hsp
