#include "alloy/density.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace alloy {

CouplingDensity CouplingDensity::uniform(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("uniform density needs b > a");
  CouplingDensity f;
  f.kind_ = Kind::Uniform;
  f.lo_ = a;
  f.hi_ = b;
  f.bv_ = 2.0 / (b - a);  // two jumps of height 1/(b-a)
  return f;
}

CouplingDensity CouplingDensity::triangular(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("triangular density needs b > a");
  CouplingDensity f;
  f.kind_ = Kind::Triangular;
  f.lo_ = a;
  f.hi_ = b;
  f.bv_ = 4.0 / (b - a);  // no jumps; |f'| integrates to twice the peak
  return f;
}

CouplingDensity CouplingDensity::piecewise_linear(
    std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2)
    throw std::invalid_argument("piecewise-linear density needs >= 2 knots");
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i + 1].first > knots[i].first))
      throw std::invalid_argument("piecewise-linear knots must be strictly increasing");
  for (const auto& [x, y] : knots) {
    (void)x;
    if (y < 0) throw std::invalid_argument("density values must be >= 0");
  }
  CouplingDensity f;
  f.kind_ = Kind::PiecewiseLinear;
  f.knots_ = std::move(knots);
  f.lo_ = f.knots_.front().first;
  f.hi_ = f.knots_.back().first;
  double bv = f.knots_.front().second + f.knots_.back().second;
  for (std::size_t i = 0; i + 1 < f.knots_.size(); ++i)
    bv += std::abs(f.knots_[i + 1].second - f.knots_[i].second);
  f.bv_ = bv;
  f.cum_.assign(f.knots_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < f.knots_.size(); ++i) {
    const double w = f.knots_[i + 1].first - f.knots_[i].first;
    f.cum_[i + 1] = f.cum_[i] + 0.5 * w * (f.knots_[i].second + f.knots_[i + 1].second);
  }
  f.validate_mass();
  return f;
}

void CouplingDensity::validate_mass() const {
  if (kind_ != Kind::PiecewiseLinear) return;  // closed-form kinds are normalized
  if (std::abs(cum_.back() - 1.0) > 1e-12)
    throw std::invalid_argument("unnormalized density: integral = " +
                                std::to_string(cum_.back()));
}

double CouplingDensity::inverse_cdf(double u) const {
  if (u < 0.0) u = 0.0;
  if (u > 1.0) u = 1.0;
  switch (kind_) {
    case Kind::Uniform:
      return lo_ + (hi_ - lo_) * u;
    case Kind::Triangular: {
      const double w = hi_ - lo_;
      if (u <= 0.5) return lo_ + w * std::sqrt(u / 2.0);
      return hi_ - w * std::sqrt((1.0 - u) / 2.0);
    }
    case Kind::PiecewiseLinear: {
      std::size_t i = 0;
      while (i + 2 < knots_.size() && cum_[i + 1] < u) ++i;
      const double x0 = knots_[i].first, x1 = knots_[i + 1].first;
      const double y0 = knots_[i].second, y1 = knots_[i + 1].second;
      const double w = x1 - x0;
      const double target = u - cum_[i];
      const double slope = (y1 - y0) / w;
      // Solve y0*t + slope*t^2/2 = target on [0,w].
      if (std::abs(slope) < 1e-15 * (std::abs(y0) + 1e-300)) {
        if (y0 <= 0) return x0;
        return x0 + target / y0;
      }
      const double disc = y0 * y0 + 2.0 * slope * target;
      double t = (-y0 + std::sqrt(std::max(0.0, disc))) / slope;
      if (t < 0) t = 0;
      if (t > w) t = w;
      return x0 + t;
    }
  }
  return lo_;
}

double CouplingDensity::mean() const {
  switch (kind_) {
    case Kind::Uniform:
    case Kind::Triangular:
      return 0.5 * (lo_ + hi_);
    case Kind::PiecewiseLinear: {
      double m = 0.0;
      for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double x0 = knots_[i].first, x1 = knots_[i + 1].first;
        const double y0 = knots_[i].second, y1 = knots_[i + 1].second;
        const double w = x1 - x0;
        // integral of x * (linear interpolant) over the segment
        m += w * (x0 * (2 * y0 + y1) + x1 * (y0 + 2 * y1)) / 6.0;
      }
      return m;
    }
  }
  return 0.0;
}

std::string CouplingDensity::id() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Uniform:
      os << "uniform[" << lo_ << "," << hi_ << "]";
      break;
    case Kind::Triangular:
      os << "triangular[" << lo_ << "," << hi_ << "]";
      break;
    case Kind::PiecewiseLinear:
      os << "pwlinear[" << lo_ << "," << hi_ << ";" << knots_.size() << " knots]";
      break;
  }
  return os.str();
}

}  // namespace alloy
