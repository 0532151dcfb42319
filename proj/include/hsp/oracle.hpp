#pragma once

#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hsp/finite_group.hpp"
#include "hsp/group_element.hpp"

namespace hsp {

/**
 * Opaque value of an oracle function. Either an atom or an ordered list of
 * labels (pairs and tuples built by reductions keep their order). Distinct
 * atoms model mutually orthogonal states.
 */
class ValueLabel {
 public:
  ValueLabel() = default;
  explicit ValueLabel(std::string atom) : atom_(std::move(atom)) {}

  static ValueLabel composite(std::vector<ValueLabel> parts);
  static ValueLabel pair(ValueLabel first, ValueLabel second);

  bool is_atom() const { return !composite_; }
  const std::string& atom() const { return atom_; }
  const std::vector<ValueLabel>& parts() const { return parts_; }
  /// i-th component of a composite label (0-based).
  const ValueLabel& component(std::size_t i) const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const ValueLabel&, const ValueLabel&) = default;
  friend std::strong_ordering operator<=>(const ValueLabel& a, const ValueLabel& b);

 private:
  bool composite_ = false;
  std::string atom_;
  std::vector<ValueLabel> parts_;
};

struct ValueLabelHash {
  std::size_t operator()(const ValueLabel& v) const { return v.hash(); }
};

/**
 * Black-box function on a group. Evaluation is deterministic and reentrant;
 * the evaluation counter is exact (atomic) and shared between copies.
 */
class OracleFunction {
 public:
  using Eval = std::function<ValueLabel(const GroupElement&)>;

  OracleFunction() = default;
  OracleFunction(std::shared_ptr<const FiniteGroup> domain, Eval eval);

  ValueLabel operator()(const GroupElement& g) const;

  const FiniteGroup& domain() const { return *domain_; }
  std::shared_ptr<const FiniteGroup> domain_ptr() const { return domain_; }
  std::uint64_t evaluations() const { return counter_ ? counter_->load() : 0; }
  void reset_evaluations() const {
    if (counter_) counter_->store(0);
  }

 private:
  std::shared_ptr<const FiniteGroup> domain_;
  Eval eval_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
};

}  // namespace hsp
