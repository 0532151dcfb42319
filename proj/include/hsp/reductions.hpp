#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsp/instances.hpp"

namespace hsp {

/// A subgroup of S_n used as a factor in the intersection gadget: either given
/// by generators, or the setwise stabilizer of a point set (membership by an
/// image-set check, never enumerated).
class ConstraintGroup {
 public:
  static ConstraintGroup generated(std::size_t degree, std::vector<Permutation> generators);
  static ConstraintGroup setwise_stabilizer(PointSet points);

  std::size_t degree() const { return degree_; }
  bool contains(const Permutation& p) const;
  std::vector<Permutation> generators() const;
  const std::optional<PointSet>& stabilized_set() const { return set_; }
  std::string describe() const;

 private:
  std::size_t degree_ = 0;
  std::optional<PointSet> set_;
  std::vector<Permutation> generators_;
  std::shared_ptr<const StabilizerChain> chain_;
};

/**
 * The instance <G, f, G_1, ..., G_k> over G x G_1 x ... x G_k without
 * materializing the product. Its hidden subgroup is the diagonal
 * {(g, ..., g) : g in H, g in every G_i}; f' is available for audit.
 */
struct StructuredHspInstance {
  std::shared_ptr<const HspInstance> base;
  std::vector<ConstraintGroup> constraints;

  std::size_t degree() const { return base->group->degree(); }

  /// f'(g, g_1, ..., g_k) = (f(g), g g_1^-1, ..., g g_k^-1) on a tuple element.
  ValueLabel evaluate(const GroupElement& tuple) const;

  /// G x G_1 x ... x G_k with tuple elements (audit only).
  FiniteGroup product_group() const;

  /// H intersected with every constraint, by filtering the base kernel.
  std::vector<Permutation> intersection(std::size_t cap = kDefaultCap) const;
};

StructuredHspInstance multi_intersection(std::shared_ptr<const HspInstance> inst,
                                         std::vector<ConstraintGroup> constraints);

/// Hidden Coset -> HSP over G wr Z_2. f(g1, g2, 0) = (f1(g1), f2(g2)),
/// f(g1, g2, 1) = (f2(g2), f1(g1)); hides K = (H x u^-1Hu x {0}) u (u^-1H x Hu x {1})
/// on left cosets.
HspInstance hidden_coset_to_hsp(const HiddenCosetInstance& hc, std::size_t cap = kDefaultCap);

/// Generators of K as predicted from the planted H and u.
std::vector<GroupElement> predicted_coset_kernel(const std::vector<GroupElement>& subgroup_gens,
                                                 const GroupElement& shift);

struct CosetSolution {
  std::vector<GroupElement> subgroup_gens;
  GroupElement shift;
};

/**
 * Reads (H, u) off generators of K. u is k2 of the smallest generator
 * (k1, k2, 1); H is generated by k1 and u k2 u^-1 for each (k1, k2, 0) and by
 * u k1 and k2 u^-1 for each (k1, k2, 1).
 */
CosetSolution recover_coset_solution(const std::vector<GroupElement>& k_gens, const FiniteGroup& group);

/// (n, G)-GHSh -> HSP over G wr Z_n, f(g, t) = (f_{t(1)}(g_1), ..., f_{t(n)}(g_n)),
/// hiding <(u, ..., u, u^(1-n), 1)> on right cosets.
HspInstance ghsh_to_hsp(const GhshInstance& inst);

GroupElement predicted_ghsh_generator(const GroupElement& shift, std::size_t count);

/// F(i, g) read as the i-th component of f((g, ..., g, 0)).
struct GhshAccess {
  std::size_t count = 0;
  std::function<ValueLabel(std::size_t, const GroupElement&)> evaluate;
};

GhshAccess recover_ghsh_functions(const HspInstance& reduced);

/// Orbit Coset -> HSP over G wr Z_2 with ordered state-pair labels.
HspInstance orbit_coset_to_hsp(const OrbitCosetInstance& oc, std::size_t cap = kDefaultCap);

struct OrbitCosetSolution {
  bool rejected = false;
  std::optional<GroupElement> shift;
  std::vector<GroupElement> stabilizer_gens;
};

/// From generators of the hidden subgroup of an orbit_coset_to_hsp image.
OrbitCosetSolution recover_orbit_coset_solution(const std::vector<GroupElement>& h_gens);

ValueLabel state_label(std::uint32_t state);

}  // namespace hsp
