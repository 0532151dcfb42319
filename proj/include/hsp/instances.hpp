#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hsp/finite_group.hpp"
#include "hsp/oracle.hpp"

namespace hsp {

/// Left: f is constant on each left coset gH. Right: on each right coset Hg.
enum class CosetSide { Left, Right };

std::string to_string(CosetSide side);

using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;
/// Structure-aware enumeration of {g : f(g) = f(id)}, bounded by a cap.
using KernelEnumerator = std::function<std::vector<GroupElement>(std::size_t cap)>;

struct HspInstance {
  std::shared_ptr<const FiniteGroup> group;
  OracleFunction f;
  CosetSide side = CosetSide::Left;
  /// Generators of the planted subgroup; only test oracles may read this.
  std::optional<std::vector<GroupElement>> planted;
  /// Set by constructions whose group is too large to scan but whose hidden
  /// subgroup can be enumerated from a smaller instance they wrap. Brute-force
  /// solvers use it when present.
  KernelEnumerator kernel;
};

/// Right-shift convention: f1(g) = f2(g u) for all g; the shift set is H u.
struct HiddenCosetInstance {
  std::shared_ptr<const FiniteGroup> group;
  OracleFunction f1;
  OracleFunction f2;
  std::optional<std::vector<GroupElement>> planted_subgroup;
  std::optional<GroupElement> planted_shift;
};

/// Left-shift convention: f_i(g) = f_{i+1}(u g) for 1 <= i < n, each f_i injective.
struct GhshInstance {
  std::shared_ptr<const FiniteGroup> group;
  std::vector<OracleFunction> functions;
  std::optional<GroupElement> planted_shift;

  std::size_t count() const { return functions.size(); }
  /// Uniform access F(i, g) = f_i(g), i 1-based.
  ValueLabel evaluate(std::size_t i, const GroupElement& g) const;
};

/**
 * Left action of a finite group on states {0..states-1}, given by one image
 * table per generator. The action of every group element is derived by the
 * rule act(x*s) = act(x) o act(s) (act(s) applied first); construction fails
 * if the table is not consistent with a homomorphism.
 */
class GroupAction {
 public:
  GroupAction(std::shared_ptr<const FiniteGroup> group, std::size_t states,
              std::vector<std::vector<std::uint32_t>> table, std::size_t cap = kDefaultCap);

  std::size_t states() const { return states_; }
  const std::vector<std::vector<std::uint32_t>>& table() const { return table_; }
  const FiniteGroup& group() const { return *group_; }

  std::uint32_t act(const GroupElement& g, std::uint32_t state) const;
  std::vector<std::uint32_t> orbit(std::uint32_t state) const;
  /// Stabilizer elements in canonical order.
  std::vector<GroupElement> stabilizer(std::uint32_t state) const;
  bool is_transitive() const { return orbit(0).size() == states_; }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::size_t states_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::unordered_map<GroupElement, std::vector<std::uint32_t>, GroupElementHash> images_;
};

struct OrbitCosetInstance {
  std::shared_ptr<const FiniteGroup> group;
  std::shared_ptr<const GroupAction> action;
  std::uint32_t phi0 = 0;
  std::uint32_t phi1 = 0;
  /// u with u.phi1 = phi0 when the orbits meet.
  std::optional<GroupElement> planted_shift;
};

/// Canonical injective label of an element.
ValueLabel element_label(const GroupElement& g);

/// Label of every element: the minimal member of its coset of H on the given side.
std::unordered_map<GroupElement, ValueLabel, GroupElementHash> coset_labels(const FiniteGroup& group,
                                                                           const ElementSet& subgroup,
                                                                           CosetSide side, std::size_t cap);

/// Generators greedily drawn from `members` (canonical order) until their
/// closure is the whole set; nullopt if the set is not a subgroup.
std::optional<std::vector<GroupElement>> greedy_generators(const Shape& shape, std::vector<GroupElement> members,
                                                           std::size_t cap = kDefaultCap);

/// {g : f(g) = f(id)} by scanning the group, or via the instance's kernel enumerator.
std::vector<GroupElement> kernel_elements(const HspInstance& inst, std::size_t cap = kDefaultCap);

HspInstance plant_hsp(std::shared_ptr<const FiniteGroup> group, const std::vector<GroupElement>& subgroup_gens,
                      CosetSide side, std::size_t cap = kDefaultCap);

/// f1 labels the cosets gH; f2(g) = f1(g u^-1). The shift set is exactly H u.
HiddenCosetInstance plant_coset(std::shared_ptr<const FiniteGroup> group,
                                const std::vector<GroupElement>& subgroup_gens, const GroupElement& shift,
                                std::size_t cap = kDefaultCap);

/// f_i(g) = label(u^(1-i) g).
GhshInstance plant_ghsh(std::shared_ptr<const FiniteGroup> group, const GroupElement& shift, std::size_t count,
                        std::size_t cap = kDefaultCap);

/// With a shift, phi0 = u.phi1. Without one, phi0 is the smallest state outside
/// the orbit of phi1; throws NoDisjointOrbit if the action is transitive.
OrbitCosetInstance plant_orbit_coset(std::shared_ptr<const GroupAction> action, std::uint32_t phi1,
                                     const std::optional<GroupElement>& shift);

bool verify_promise(const HspInstance& inst, std::size_t cap = kDefaultCap);
bool verify_promise(const HiddenCosetInstance& inst, std::size_t cap = kDefaultCap);
bool verify_promise(const GhshInstance& inst, std::size_t cap = kDefaultCap);
bool verify_promise(const OrbitCosetInstance& inst, std::size_t cap = kDefaultCap);

/// All v with f1(g) = f2(g v) for every g, in canonical order.
std::vector<GroupElement> shift_set(const HiddenCosetInstance& inst, std::size_t cap = kDefaultCap);

}  // namespace hsp
