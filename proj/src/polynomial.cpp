#include "alloy/polynomial.hpp"

#include <stdexcept>

namespace alloy {

RatPoly::RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

RatPoly RatPoly::accompanying(const std::map<int, Rat>& w) {
  int n = 0;
  for (const auto& [k, v] : w) {
    if (v == 0) continue;
    if (k > 0) throw std::invalid_argument("accompanying polynomial needs supp in {-n..0}");
    n = std::max(n, -k);
  }
  std::vector<Rat> c(static_cast<std::size_t>(n) + 1, Rat(0));
  for (const auto& [k, v] : w) c[static_cast<std::size_t>(-k)] = v;
  return RatPoly(std::move(c));
}

Rat RatPoly::eval(const Rat& t) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return RatPoly();
  std::vector<Rat> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    d[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return RatPoly(std::move(d));
}

RootOrder root_order_at_one(const RatPoly& p) {
  if (p.is_zero()) return RootOrder{true, 0, Rat(0)};
  RatPoly cur = p;
  int j = 0;
  while (!cur.is_zero()) {
    Rat v = cur.eval(Rat(1));
    if (v != 0) return RootOrder{false, j, std::move(v)};
    cur = cur.derivative();
    ++j;
  }
  // All derivatives vanish at 1 only for the zero polynomial; a nonzero
  // polynomial of degree D has p^(D) a nonzero constant.
  throw std::logic_error("unreachable: nonzero polynomial with all derivatives zero");
}

}  // namespace alloy
