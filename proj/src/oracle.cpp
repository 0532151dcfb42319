#include "hsp/oracle.hpp"

#include "hsp/errors.hpp"

namespace hsp {

ValueLabel ValueLabel::composite(std::vector<ValueLabel> parts) {
  ValueLabel v;
  v.composite_ = true;
  v.parts_ = std::move(parts);
  return v;
}

ValueLabel ValueLabel::pair(ValueLabel first, ValueLabel second) {
  std::vector<ValueLabel> parts;
  parts.reserve(2);
  parts.push_back(std::move(first));
  parts.push_back(std::move(second));
  return composite(std::move(parts));
}

const ValueLabel& ValueLabel::component(std::size_t i) const {
  if (!composite_ || i >= parts_.size()) throw InvalidInput("label has no component " + std::to_string(i));
  return parts_[i];
}

std::string ValueLabel::to_string() const {
  if (!composite_) return atom_;
  std::string out = "<";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += '|';
    out += parts_[i].to_string();
  }
  return out + ">";
}

std::size_t ValueLabel::hash() const {
  std::size_t h = composite_ ? 0x51ed270b2fd3a8c5ULL : std::hash<std::string>{}(atom_);
  for (const auto& p : parts_) h = (h * 0x100000001b3ULL) ^ p.hash();
  return h;
}

std::strong_ordering operator<=>(const ValueLabel& a, const ValueLabel& b) {
  if (auto c = a.composite_ <=> b.composite_; c != 0) return c;
  if (!a.composite_) return a.atom_.compare(b.atom_) <=> 0;
  return std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(), b.parts_.end());
}

OracleFunction::OracleFunction(std::shared_ptr<const FiniteGroup> domain, Eval eval)
    : domain_(std::move(domain)), eval_(std::move(eval)), counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

ValueLabel OracleFunction::operator()(const GroupElement& g) const {
  if (!eval_) throw InvalidInput("evaluating an empty oracle function");
  counter_->fetch_add(1, std::memory_order_relaxed);
  return eval_(g);
}

}  // namespace hsp
