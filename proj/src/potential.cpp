#include "alloy/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alloy {

SingleSitePotential SingleSitePotential::compact(int d, std::map<Point, Rat> values,
                                                std::string label) {
  if (d < 1) throw std::invalid_argument("potential dimension must be >= 1");
  for (auto it = values.begin(); it != values.end();) {
    if (static_cast<int>(it->first.size()) != d)
      throw std::invalid_argument("potential point has wrong dimension");
    if (it->second == 0)
      it = values.erase(it);  // support holds nonzero entries only
    else
      ++it;
  }
  if (values.empty())
    throw std::invalid_argument("potential must not vanish identically");

  // Translate so every coordinate maxes out at 0; n is the largest width.
  std::vector<int> mins(d, std::numeric_limits<int>::max());
  std::vector<int> maxs(d, std::numeric_limits<int>::min());
  for (const auto& [p, v] : values) {
    (void)v;
    for (int i = 0; i < d; ++i) {
      mins[i] = std::min(mins[i], p[i]);
      maxs[i] = std::max(maxs[i], p[i]);
    }
  }
  Point shift(d);
  int n = 0;
  for (int i = 0; i < d; ++i) {
    shift[i] = -maxs[i];
    n = std::max(n, maxs[i] - mins[i]);
  }
  std::map<Point, Rat> shifted;
  for (auto& [p, v] : values) shifted.emplace(point_add(p, shift), std::move(v));

  SingleSitePotential u;
  u.kind_ = Kind::Compact;
  u.d_ = d;
  u.values_ = std::move(shifted);
  u.reach_ = n;
  u.shift_ = std::move(shift);
  u.label_ = std::move(label);
  return u;
}

SingleSitePotential SingleSitePotential::geometric(std::map<int, Rat> head,
                                                  double tail_amplitude,
                                                  double tail_ratio,
                                                  std::string label) {
  if (!(tail_ratio > 0.0 && tail_ratio < 1.0))
    throw std::invalid_argument("tail ratio must lie in (0,1)");
  for (auto it = head.begin(); it != head.end();) {
    if (it->second == 0)
      it = head.erase(it);
    else
      ++it;
  }
  if (head.empty() && tail_amplitude == 0.0)
    throw std::invalid_argument("potential must not vanish identically");
  SingleSitePotential u;
  u.kind_ = Kind::Geometric;
  u.d_ = 1;
  u.head_ = std::move(head);
  u.tail_amp_ = tail_amplitude;
  u.tail_ratio_ = tail_ratio;
  u.label_ = std::move(label);
  return u;
}

SingleSitePotential SingleSitePotential::delta(int d) {
  return compact(d, {{Point(d, 0), Rat(1)}}, "delta");
}

SingleSitePotential SingleSitePotential::dipole_1d() {
  return compact(1, {{{0}, Rat(1)}, {{-1}, Rat(-1)}}, "dipole");
}

int SingleSitePotential::reach() const {
  if (kind_ != Kind::Compact)
    throw std::logic_error("reach defined for compact potentials only");
  return reach_;
}

int SingleSitePotential::rank() const {
  if (kind_ != Kind::Compact)
    throw std::logic_error("rank defined for compact potentials only");
  return static_cast<int>(values_.size());
}

const std::map<Point, Rat>& SingleSitePotential::values() const {
  if (kind_ != Kind::Compact)
    throw std::logic_error("exact values defined for compact potentials only");
  return values_;
}

Rat SingleSitePotential::at(const Point& p) const {
  auto it = values().find(p);
  return it == values_.end() ? Rat(0) : it->second;
}

Rat SingleSitePotential::mean_exact() const {
  Rat s = 0;
  for (const auto& [p, v] : values()) {
    (void)p;
    s += v;
  }
  return s;
}

const Point& SingleSitePotential::applied_shift() const {
  if (kind_ != Kind::Compact)
    throw std::logic_error("shift defined for compact potentials only");
  return shift_;
}

double SingleSitePotential::mean() const {
  if (kind_ == Kind::Compact) return to_double(mean_exact());
  // head exactly, plus amp * sum_{k not in head} s^|k|
  double m = 0.0;
  double head_geo = 0.0;
  for (const auto& [k, v] : head_) {
    m += to_double(v);
    head_geo += std::pow(tail_ratio_, std::abs(static_cast<double>(k)));
  }
  const double s = tail_ratio_;
  const double all_geo = (1.0 + s) / (1.0 - s);  // sum over all of Z of s^|k|
  return m + tail_amp_ * (all_geo - head_geo);
}

double SingleSitePotential::value(const Point& p) const {
  if (kind_ == Kind::Compact) {
    auto it = values_.find(p);
    return it == values_.end() ? 0.0 : to_double(it->second);
  }
  return value1(p.at(0));
}

double SingleSitePotential::value1(long long k) const {
  if (kind_ == Kind::Compact) {
    if (d_ != 1) throw std::logic_error("value1 needs a 1D potential");
    auto it = values_.find(Point{static_cast<int>(k)});
    return it == values_.end() ? 0.0 : to_double(it->second);
  }
  auto it = head_.find(static_cast<int>(k));
  if (it != head_.end()) return to_double(it->second);
  if (tail_amp_ == 0.0) return 0.0;
  return tail_amp_ * std::pow(tail_ratio_, std::abs(static_cast<double>(k)));
}

double SingleSitePotential::tail_coefficient() const {
  if (kind_ != Kind::Geometric)
    throw std::logic_error("tail model defined for geometric potentials only");
  double c = std::abs(tail_amp_);
  for (const auto& [k, v] : head_) {
    const double need =
        std::abs(to_double(v)) / std::pow(tail_ratio_, std::abs(static_cast<double>(k)));
    c = std::max(c, need);
  }
  return c;
}

int SingleSitePotential::head_radius() const {
  int r = 0;
  for (const auto& [k, v] : head_) {
    (void)v;
    r = std::max(r, std::abs(k));
  }
  return r;
}

double SingleSitePotential::tail_mass(int m) const {
  if (kind_ != Kind::Geometric)
    throw std::logic_error("tail mass defined for geometric potentials only");
  if (m < 0) m = 0;
  const double s = tail_ratio_;
  // geometric part over |k| >= m, then swap head sites in for their values
  double geo;
  if (m == 0)
    geo = (1.0 + s) / (1.0 - s);
  else
    geo = 2.0 * std::pow(s, m) / (1.0 - s);
  double mass = std::abs(tail_amp_) * geo;
  for (const auto& [k, v] : head_) {
    if (std::abs(k) >= m)
      mass += std::abs(to_double(v)) -
              std::abs(tail_amp_) * std::pow(s, std::abs(static_cast<double>(k)));
  }
  return mass;
}

int SingleSitePotential::truncation_radius(double budget) const {
  if (kind_ != Kind::Geometric)
    throw std::logic_error("truncation defined for geometric potentials only");
  int r = head_radius();
  if (tail_amp_ == 0.0) return r;
  while (tail_mass(r + 1) > budget) {
    ++r;
    if (r > 100000) throw std::runtime_error("tail truncation radius exceeds cap");
  }
  return r;
}

}  // namespace alloy
