#pragma once

#include <map>
#include <vector>

#include "alloy/rational.hpp"

namespace alloy {

// Dense univariate polynomial over exact rationals; coeffs[i] multiplies t^i.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);

  static RatPoly zero() { return RatPoly(); }

  // p(t) = sum_{nu=0}^{n} t^nu w(-nu) for a 1D map with supp in {-n..0}.
  static RatPoly accompanying(const std::map<int, Rat>& w);

  const std::vector<Rat>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  bool is_zero() const { return c_.empty(); }

  Rat eval(const Rat& t) const;  // Horner
  RatPoly derivative() const;

  bool operator==(const RatPoly& other) const { return c_ == other.c_; }

 private:
  void trim();
  std::vector<Rat> c_;
};

// Order of the root t=1: smallest j with p^(j)(1) != 0, and that value.
// The zero polynomial has a root of infinite order.
struct RootOrder {
  bool infinite = false;
  int order = 0;
  Rat value;  // p^(order)(1); meaningless when infinite
};

RootOrder root_order_at_one(const RatPoly& p);

}  // namespace alloy
