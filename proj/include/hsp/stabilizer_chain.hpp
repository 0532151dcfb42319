#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hsp/permutation.hpp"

namespace hsp {

/**
 * Stabilizer chain G = G^(0) >= G^(1) >= ... >= G^(n) = {id} of a permutation
 * group, where G^(i) fixes 1..i pointwise.
 *
 * Level i (0-based) holds the transversal C_{i+1}: one representative of each
 * right coset of G^(i+1) in G^(i), keyed by the image of point i+1. Every
 * element factors uniquely as g = t_{n-1} * ... * t_1 * t_0 with t_i taken
 * from level i (so t_0 is applied last).
 *
 * Construction is the deterministic sift-and-close loop: a residue that does
 * not sift becomes a new representative, and all products of it with the
 * existing representatives are queued for sifting.
 */
class StabilizerChain {
 public:
  using Transversal = std::map<Point, Permutation>;

  StabilizerChain(std::size_t degree, std::span<const Permutation> generators);

  std::size_t degree() const { return degree_; }

  /// |G|. Degrees stay small enough (<= 20) that this fits in 64 bits.
  std::uint64_t order() const { return order_; }

  /// C_{level+1}; level in [0, degree).
  const Transversal& transversal(std::size_t level) const { return levels_.at(level); }

  bool contains(const Permutation& p) const;

  /// The factors t_0, t_1, ..., t_{n-1} of p (t_i from level i), or nullopt
  /// if p is not in the group.
  std::optional<std::vector<Permutation>> factor(const Permutation& p) const;

  /// Non-identity representatives of every level; they generate G.
  std::vector<Permutation> strong_generators() const;

  /// Generators of G^(fixed): the non-identity representatives of levels >= fixed.
  std::vector<Permutation> stabilizer_generators(std::size_t fixed) const;

  /// Uniform element: one independent uniform draw per level.
  Permutation random_element(std::mt19937_64& rng) const;

  /// All group elements, in factorization order. Intended for small groups.
  std::vector<Permutation> elements() const;

 private:
  std::size_t degree_;
  std::vector<Transversal> levels_;
  std::uint64_t order_ = 1;
};

StabilizerChain build_stabilizer_chain(std::span<const Permutation> generators, std::size_t degree);
bool is_member(const StabilizerChain& chain, const Permutation& p);
Permutation random_element(const StabilizerChain& chain, std::mt19937_64& rng);

/// Generators of the setwise stabilizer of X in S_n, i.e. S_X x S_{complement}:
/// adjacent transpositions inside X and inside its complement.
std::vector<Permutation> setwise_stabilizer_generators(std::size_t degree, const PointSet& x);

/// Generators (1 2) and (1 2 ... n) of S_n; empty for n = 1.
std::vector<Permutation> symmetric_group_generators(std::size_t degree);

}  // namespace hsp
