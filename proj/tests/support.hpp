#pragma once

// Brute-force helpers shared by the unit tests. They use plain image vectors
// and std::set so they do not depend on the library's own closure code.

#include <cstdint>
#include <deque>
#include <random>
#include <set>
#include <vector>

#include "hsp/permutation.hpp"

namespace testing_support {

using Images = std::vector<std::uint32_t>;

inline Images images_of(const hsp::Permutation& p) { return Images(p.images().begin(), p.images().end()); }

inline Images naive_compose(const Images& p, const Images& q) {
  Images r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[p[x] - 1];
  return r;
}

inline std::set<Images> naive_closure(std::size_t n, const std::vector<hsp::Permutation>& gens) {
  Images id(n);
  for (std::size_t x = 0; x < n; ++x) id[x] = static_cast<std::uint32_t>(x + 1);
  std::set<Images> seen{id};
  std::deque<Images> todo{id};
  while (!todo.empty()) {
    Images cur = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      Images nxt = naive_compose(cur, images_of(g));
      if (seen.insert(nxt).second) todo.push_back(nxt);
    }
  }
  return seen;
}

inline std::vector<Images> all_permutations(std::size_t n) {
  Images p(n);
  for (std::size_t x = 0; x < n; ++x) p[x] = static_cast<std::uint32_t>(x + 1);
  std::vector<Images> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline hsp::Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  Images p(n);
  for (std::size_t x = 0; x < n; ++x) p[x] = static_cast<std::uint32_t>(x + 1);
  std::shuffle(p.begin(), p.end(), rng);
  return hsp::Permutation(p);
}

}  // namespace testing_support
