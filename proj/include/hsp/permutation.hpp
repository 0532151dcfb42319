#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hsp {

using Point = std::uint32_t;

/**
 * A permutation of {1..n} stored as its image array.
 *
 * Products are read left to right: `p * q` applies p first and then q, so
 * (p * q)(x) = q(p(x)).
 */
class Permutation {
 public:
  Permutation() = default;

  /// Validates that `images` is a bijection on {1..images.size()}.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  /// Parses cycle notation such as "(1 2)(3 4 5)" or "()" for the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text);

  /// Transposition (a b).
  static Permutation transposition(std::size_t degree, Point a, Point b);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x - 1]; }
  std::span<const Point> images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;

  /// Cycle notation without fixed points; "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return a.images_ <=> b.images_;
  }

  std::size_t hash() const;

 private:
  struct Unchecked {};
  Permutation(std::vector<Point> images, Unchecked) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation& p, const Permutation& q);

  std::vector<Point> images_;
};

/// Apply p first, then q. Throws DegreeMismatch on unequal degrees.
Permutation compose(const Permutation& p, const Permutation& q);

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

/// A sorted, duplicate-free subset of {1..degree}.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t degree, std::vector<Point> points);

  std::size_t degree() const { return degree_; }
  std::span<const Point> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool contains(Point x) const;

  /// Complement inside {1..degree}.
  PointSet complement() const;

  /// True iff p maps this set onto itself.
  bool is_stabilized_by(const Permutation& p) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t degree_ = 0;
  std::vector<Point> points_;
};

}  // namespace hsp
