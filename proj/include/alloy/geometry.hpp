#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace alloy {

// Lattice point in Z^d. std::vector's lexicographic operator< doubles as the
// canonical ordering for all site maps, so iteration order is deterministic.
using Point = std::vector<int>;

inline Point point_sub(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point point_add(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline std::string point_to_string(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s;
}

// The cube [0,L]^d of side parameter L, with the lexicographic row-major
// bijection onto {0,...,(L+1)^d - 1}.
class Box {
 public:
  Box(int d, int L) : d_(d), L_(L) {
    if (d < 1) throw std::invalid_argument("box dimension must be >= 1");
    if (L < 0) throw std::invalid_argument("box side parameter must be >= 0");
    size_ = 1;
    for (int i = 0; i < d; ++i) {
      size_ *= static_cast<std::int64_t>(L + 1);
      if (size_ > (std::int64_t{1} << 40))
        throw std::invalid_argument("box too large");
    }
  }

  int dim() const { return d_; }
  int side() const { return L_; }
  std::int64_t size() const { return size_; }

  bool contains(const Point& p) const {
    if (static_cast<int>(p.size()) != d_) return false;
    for (int c : p)
      if (c < 0 || c > L_) return false;
    return true;
  }

  std::int64_t index_of(const Point& p) const {
    if (!contains(p)) throw std::out_of_range("point outside box");
    std::int64_t idx = 0;
    for (int i = 0; i < d_; ++i) idx = idx * (L_ + 1) + p[i];
    return idx;
  }

  Point point_at(std::int64_t idx) const {
    if (idx < 0 || idx >= size_) throw std::out_of_range("box index");
    Point p(d_);
    for (int i = d_ - 1; i >= 0; --i) {
      p[i] = static_cast<int>(idx % (L_ + 1));
      idx /= (L_ + 1);
    }
    return p;
  }

  // All points in lexicographic order.
  std::vector<Point> points() const {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(size_));
    for (std::int64_t i = 0; i < size_; ++i) pts.push_back(point_at(i));
    return pts;
  }

 private:
  int d_;
  int L_;
  std::int64_t size_;
};

// Axis-aligned integer cuboid [lo_i, hi_i]^d, used for coupling index sets
// and coefficient domains that can extend below 0.
inline std::vector<Point> cuboid_points(const std::vector<int>& lo,
                                        const std::vector<int>& hi) {
  const int d = static_cast<int>(lo.size());
  std::vector<Point> pts;
  Point cur(lo);
  while (true) {
    pts.push_back(cur);
    int i = d - 1;
    while (i >= 0) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        break;
      }
      cur[i] = lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return pts;
}

}  // namespace alloy
