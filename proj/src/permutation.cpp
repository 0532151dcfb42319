#include "hsp/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "hsp/errors.hpp"

namespace hsp {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw InvalidInput("permutation must have degree >= 1");
  std::vector<bool> seen(images_.size() + 1, false);
  for (Point x : images_) {
    if (x < 1 || x > images_.size() || seen[x])
      throw InvalidInput("image array is not a bijection on {1..n}");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0) throw InvalidInput("permutation must have degree >= 1");
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i + 1);
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::transposition(std::size_t degree, Point a, Point b) {
  auto p = identity(degree);
  if (a < 1 || b < 1 || a > degree || b > degree) throw InvalidInput("transposition point out of range");
  std::swap(p.images_[a - 1], p.images_[b - 1]);
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  auto images = identity(degree).images_;
  std::vector<bool> used(degree + 1, false);
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw InvalidInput("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    std::vector<Point> cycle;
    for (;;) {
      skip_space();
      if (pos >= text.size()) throw InvalidInput("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw InvalidInput("unexpected character in cycle notation: " + std::string(text));
      std::uint64_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (value > degree) throw InvalidInput("cycle point exceeds degree: " + std::string(text));
        ++pos;
      }
      if (value == 0) throw InvalidInput("cycle points are 1-based: " + std::string(text));
      cycle.push_back(static_cast<Point>(value));
    }
    for (Point x : cycle) {
      if (used[x]) throw InvalidInput("cycles must be disjoint: " + std::string(text));
      used[x] = true;
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) images[cycle[i] - 1] = cycle[(i + 1) % cycle.size()];
    skip_space();
  }
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = static_cast<Point>(i + 1);
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i + 1) return false;
  return true;
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream out;
  std::vector<bool> seen(images_.size() + 1, false);
  for (Point start = 1; start <= images_.size(); ++start) {
    if (seen[start] || (*this)(start) == start) continue;
    out << '(';
    Point x = start;
    bool first = true;
    do {
      if (!first) out << ' ';
      out << x;
      seen[x] = true;
      x = (*this)(x);
      first = false;
    } while (x != start);
    out << ')';
  }
  auto s = out.str();
  return s.empty() ? "()" : s;
}

std::size_t Permutation::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL ^ images_.size();
  for (Point x : images_) h = (h ^ x) * 0x100000001b3ULL;
  return h;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree())
    throw DegreeMismatch("cannot compose permutations of degree " + std::to_string(p.degree()) + " and " +
                         std::to_string(q.degree()));
  std::vector<Point> out(p.degree());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = q.images_[p.images_[i] - 1];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

PointSet::PointSet(std::size_t degree, std::vector<Point> points) : degree_(degree), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
    throw InvalidInput("point set contains duplicates");
  for (Point x : points_)
    if (x < 1 || x > degree_) throw InvalidInput("point set member outside {1..n}");
}

bool PointSet::contains(Point x) const { return std::binary_search(points_.begin(), points_.end(), x); }

PointSet PointSet::complement() const {
  std::vector<Point> rest;
  for (Point x = 1; x <= degree_; ++x)
    if (!contains(x)) rest.push_back(x);
  return PointSet(degree_, std::move(rest));
}

bool PointSet::is_stabilized_by(const Permutation& p) const {
  if (p.degree() != degree_) throw DegreeMismatch("point set and permutation degrees differ");
  for (Point x : points_)
    if (!contains(p(x))) return false;
  return true;
}

}  // namespace hsp
