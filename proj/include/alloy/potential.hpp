#pragma once

#include <map>
#include <optional>
#include <string>

#include "alloy/geometry.hpp"
#include "alloy/rational.hpp"

namespace alloy {

// Single site potential u.  Two kinds:
//  - compact: finite map of nonzero rationals, normalized by translation so
//    supp u is contained in [-n,0]^d with n minimal (the applied shift is
//    recorded);
//  - geometric (1D only): explicit head map plus a two-sided geometric tail
//    u(k) = tail_amplitude * tail_ratio^|k| for k outside the head, giving
//    the decay model |u(k)| <= C s^|k|.  tail_amplitude may be 0 (explicit
//    values with a zero tail, still routed through the numeric machinery).
class SingleSitePotential {
 public:
  enum class Kind { Compact, Geometric };

  static SingleSitePotential compact(int d, std::map<Point, Rat> values,
                                     std::string label = "");
  static SingleSitePotential geometric(std::map<int, Rat> head,
                                       double tail_amplitude, double tail_ratio,
                                       std::string label = "");

  // Common shorthands.
  static SingleSitePotential delta(int d);                 // u = delta_0
  static SingleSitePotential dipole_1d();                  // u(0)=1, u(-1)=-1

  Kind kind() const { return kind_; }
  bool compactly_supported() const { return kind_ == Kind::Compact; }
  int dim() const { return d_; }
  const std::string& label() const { return label_; }

  // --- compact interface -------------------------------------------------
  // n: the smallest integer with supp u inside [-n,0]^d.
  int reach() const;
  int rank() const;
  const std::map<Point, Rat>& values() const;
  Rat at(const Point& p) const;       // 0 outside the support
  Rat mean_exact() const;             // u-bar as an exact rational
  const Point& applied_shift() const; // translation used in normalization

  // --- interface valid for both kinds ------------------------------------
  double mean() const;                // u-bar (closed form for geometric)
  double value(const Point& p) const; // u(p) as double
  double value1(long long k) const;   // 1D evaluation

  // --- geometric interface ------------------------------------------------
  double tail_amplitude() const { return tail_amp_; }
  double tail_ratio() const { return tail_ratio_; }
  // C with |u(k)| <= C * tail_ratio^|k| everywhere.
  double tail_coefficient() const;
  // Radius T with sum_{|k|>T} |u(k)| <= budget (tail mass truncation).
  int truncation_radius(double budget) const;
  // sum_{|k| >= m} |u(k)|, closed form.
  double tail_mass(int m) const;
  // Extent of the explicit head, max |k| over head keys (0 if empty).
  int head_radius() const;
  const std::map<int, Rat>& head() const { return head_; }

 private:
  SingleSitePotential() = default;

  Kind kind_ = Kind::Compact;
  int d_ = 1;
  std::string label_;

  // compact
  std::map<Point, Rat> values_;
  int reach_ = 0;
  Point shift_;

  // geometric
  std::map<int, Rat> head_;
  double tail_amp_ = 0.0;
  double tail_ratio_ = 0.5;
};

}  // namespace alloy
