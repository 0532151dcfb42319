#include "hsp/stabilizer_chain.hpp"

#include <deque>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

struct SiftResult {
  std::size_t level;  // degree() when the residue is the identity
  Permutation residue;
};

SiftResult sift(const std::vector<StabilizerChain::Transversal>& levels, Permutation g) {
  for (std::size_t level = 0; level < levels.size(); ++level) {
    const Point base = static_cast<Point>(level + 1);
    const Point image = g(base);
    if (image == base) continue;
    auto it = levels[level].find(image);
    if (it == levels[level].end()) return {level, std::move(g)};
    g = g * it->second.inverse();
  }
  return {levels.size(), std::move(g)};
}

}  // namespace

StabilizerChain::StabilizerChain(std::size_t degree, std::span<const Permutation> generators)
    : degree_(degree), levels_(degree) {
  if (degree == 0) throw InvalidInput("stabilizer chain needs degree >= 1");
  const auto id = Permutation::identity(degree);
  for (std::size_t level = 0; level < degree; ++level) levels_[level].emplace(static_cast<Point>(level + 1), id);

  std::deque<Permutation> pending;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw DegreeMismatch("generator degree differs from chain degree");
    pending.push_back(g);
  }

  std::vector<Permutation> reps;
  while (!pending.empty()) {
    auto [level, residue] = sift(levels_, std::move(pending.front()));
    pending.pop_front();
    if (level == degree_) continue;
    levels_[level].emplace(residue(static_cast<Point>(level + 1)), residue);
    reps.push_back(residue);
    for (const auto& s : reps) {
      pending.push_back(residue * s);
      if (&s != &reps.back()) pending.push_back(s * residue);
    }
  }

  for (const auto& t : levels_) order_ *= t.size();
}

bool StabilizerChain::contains(const Permutation& p) const {
  if (p.degree() != degree_) return false;
  return sift(levels_, p).level == degree_;
}

std::optional<std::vector<Permutation>> StabilizerChain::factor(const Permutation& p) const {
  if (p.degree() != degree_) return std::nullopt;
  std::vector<Permutation> factors;
  factors.reserve(degree_);
  Permutation g = p;
  for (std::size_t level = 0; level < degree_; ++level) {
    auto it = levels_[level].find(g(static_cast<Point>(level + 1)));
    if (it == levels_[level].end()) return std::nullopt;
    factors.push_back(it->second);
    g = g * it->second.inverse();
  }
  return factors;
}

std::vector<Permutation> StabilizerChain::strong_generators() const { return stabilizer_generators(0); }

std::vector<Permutation> StabilizerChain::stabilizer_generators(std::size_t fixed) const {
  std::vector<Permutation> gens;
  for (std::size_t level = fixed; level < degree_; ++level)
    for (const auto& [image, rep] : levels_[level])
      if (!rep.is_identity()) gens.push_back(rep);
  return gens;
}

Permutation StabilizerChain::random_element(std::mt19937_64& rng) const {
  Permutation result = Permutation::identity(degree_);
  for (std::size_t level = degree_; level-- > 0;) {
    const auto& t = levels_[level];
    std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
    auto it = t.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(rng)));
    result = result * it->second;
  }
  return result;
}

std::vector<Permutation> StabilizerChain::elements() const {
  std::vector<Permutation> current{Permutation::identity(degree_)};
  for (std::size_t level = degree_; level-- > 0;) {
    if (levels_[level].size() == 1) continue;
    std::vector<Permutation> next;
    next.reserve(current.size() * levels_[level].size());
    for (const auto& prefix : current)
      for (const auto& [image, rep] : levels_[level]) next.push_back(prefix * rep);
    current = std::move(next);
  }
  return current;
}

StabilizerChain build_stabilizer_chain(std::span<const Permutation> generators, std::size_t degree) {
  return StabilizerChain(degree, generators);
}

bool is_member(const StabilizerChain& chain, const Permutation& p) {
  if (p.degree() != chain.degree()) throw DegreeMismatch("membership test across degrees");
  return chain.contains(p);
}

Permutation random_element(const StabilizerChain& chain, std::mt19937_64& rng) { return chain.random_element(rng); }

std::vector<Permutation> setwise_stabilizer_generators(std::size_t degree, const PointSet& x) {
  if (x.degree() != degree) throw DegreeMismatch("point set degree differs");
  std::vector<Permutation> gens;
  auto add_chain = [&](std::span<const Point> pts) {
    for (std::size_t i = 1; i < pts.size(); ++i) gens.push_back(Permutation::transposition(degree, pts[i - 1], pts[i]));
  };
  add_chain(x.points());
  const auto rest = x.complement();
  add_chain(rest.points());
  return gens;
}

std::vector<Permutation> symmetric_group_generators(std::size_t degree) {
  if (degree < 2) return {};
  std::vector<Point> cycle(degree);
  for (std::size_t i = 0; i < degree; ++i) cycle[i] = static_cast<Point>((i + 1) % degree + 1);
  return {Permutation::transposition(degree, 1, 2), Permutation(std::move(cycle))};
}

}  // namespace hsp
