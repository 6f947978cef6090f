#include "alloy/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace alloy {

Rat ReducedPotential::scalar() const {
  if (level != 0) throw std::logic_error("reduced potential is not scalar yet");
  auto it = values.find(Point{});
  if (it == values.end()) throw std::logic_error("scalar value missing");
  return it->second;
}

ReducedPotential reduction_start(const SingleSitePotential& u) {
  if (u.kind() != SingleSitePotential::Kind::Compact)
    throw std::invalid_argument(
        "monomial construction needs a compactly supported potential");
  ReducedPotential w;
  w.level = u.dim();
  w.reach = u.reach();
  w.values = u.values();
  return w;
}

ReductionStep reduce_dimension(const ReducedPotential& w) {
  if (w.level < 1)
    throw std::invalid_argument("reduce_dimension needs level >= 1");
  if (w.values.empty()) throw std::runtime_error("vanishing potential");

  // Slices share a prefix of length level-1; map entries are already in
  // lexicographic order, so each prefix group is contiguous.
  struct Slice {
    Point prefix;
    std::map<int, Rat> line;
  };
  std::vector<Slice> slices;
  for (const auto& [p, v] : w.values) {
    Point prefix(p.begin(), p.end() - 1);
    int last = p.back();
    if (slices.empty() || slices.back().prefix != prefix)
      slices.push_back({prefix, {}});
    slices.back().line[last] = v;
  }

  int m = std::numeric_limits<int>::max();
  std::vector<RatPoly> polys;
  polys.reserve(slices.size());
  for (const auto& s : slices) {
    RatPoly p = RatPoly::accompanying(s.line);
    RootOrder r = root_order_at_one(p);
    if (!r.infinite) m = std::min(m, r.order);
    polys.push_back(std::move(p));
  }
  if (m == std::numeric_limits<int>::max())
    throw std::runtime_error("vanishing potential");

  ReductionStep step;
  step.exponent = m;
  step.reduced.level = w.level - 1;
  step.reduced.reach = w.reach;
  step.reduced.consumed_exponents = w.consumed_exponents;
  step.reduced.consumed_exponents.push_back(m);
  for (std::size_t i = 0; i < slices.size(); ++i) {
    RatPoly der = polys[i];
    for (int j = 0; j < m; ++j) der = der.derivative();
    Rat val = der.eval(Rat(1));
    if (val != 0) step.reduced.values[slices[i].prefix] = val;
  }
  if (step.reduced.values.empty()) throw std::runtime_error("vanishing potential");
  return step;
}

namespace {

// k^M with the convention that exponent 0 weights every site by 1.
Rat monomial_weight(long long k, int M) {
  if (M == 0) return Rat(1);
  return Rat(int_pow(k, M));
}

}  // namespace

Rat CoefficientField::weight_at(const Point& k) const {
  auto it = weights.find(k);
  return it == weights.end() ? Rat(0) : it->second;
}

Rat CoefficientField::sum_abs_weights() const {
  Rat s = 0;
  for (const auto& [k, v] : weights) s += abs(v);
  return s;
}

std::string CoefficientField::tag_name(Tag t) {
  switch (t) {
    case Tag::Monomial: return "monomial";
    case Tag::MeanWindow: return "mean-window";
    case Tag::CorollaryWindow: return "corollary-window";
    case Tag::ExpTruncated: return "exp-truncated";
  }
  throw std::logic_error("unknown tag");
}

CoefficientField build_monomial_coefficients(const SingleSitePotential& u, int L) {
  if (L < 0) throw std::invalid_argument("box size must be nonnegative");
  ReducedPotential w = reduction_start(u);
  const int d = w.level;
  const int n = w.reach;
  while (w.level > 0) {
    ReductionStep step = reduce_dimension(w);
    w = std::move(step.reduced);
  }
  Rat w0 = w.scalar();

  CoefficientField field;
  field.dim = d;
  field.tag = CoefficientField::Tag::Monomial;
  field.sign = sign_of(w0);
  field.delta_exact = abs(w0);
  field.delta = to_double(*field.delta_exact);
  // consumed order was M_d, M_{d-1}, ..., M_1
  field.exponents.assign(w.consumed_exponents.rbegin(),
                         w.consumed_exponents.rend());

  Box domain(d, L + n);
  for (const Point& k : domain.points()) {
    Rat a(field.sign);
    for (int i = 0; i < d; ++i) a *= monomial_weight(k[i], field.exponents[i]);
    field.weights[k] = a;
  }
  return field;
}

CoefficientField mean_window_coefficients(const SingleSitePotential& u, int L) {
  if (L < 0) throw std::invalid_argument("box size must be nonnegative");
  CoefficientField field;
  if (u.kind() == SingleSitePotential::Kind::Compact) {
    Rat mean = u.mean_exact();
    if (mean == 0)
      throw std::domain_error("degenerate mean; use monomial construction");
    field.dim = u.dim();
    field.tag = CoefficientField::Tag::CorollaryWindow;
    field.sign = sign_of(mean);
    field.delta_exact = abs(mean);
    field.delta = to_double(*field.delta_exact);
    Box domain(u.dim(), L + u.reach());
    for (const Point& k : domain.points()) field.weights[k] = Rat(field.sign);
    return field;
  }

  double mean = u.mean();
  if (std::abs(mean) <= 1e-12)
    throw std::domain_error("degenerate mean; use monomial construction");
  field.dim = 1;
  field.tag = CoefficientField::Tag::MeanWindow;
  field.sign = mean > 0 ? 1 : -1;
  field.delta = std::abs(mean) / 2;
  int m = 1;
  while (u.tail_mass(m) > std::abs(mean) / 2) {
    ++m;
    if (m > 1000000)
      throw std::runtime_error("tail mass does not reach the mean budget");
  }
  for (int k = -m; k <= L + m; ++k) field.weights[{k}] = Rat(field.sign);
  return field;
}

namespace {

double falling_factorial(double nu, int j) {
  double f = 1.0;
  for (int i = 0; i < j; ++i) f *= nu - i;
  return f;
}

// Adds the tail part sum_k ff(-k,j) * amp * s^|k| over sites not covered by
// the head, enumerated outward from 0 with a geometric remainder bound.
void accumulate_tail(const SingleSitePotential& u, int j, double& F, double& A) {
  double amp = u.tail_amplitude();
  if (amp == 0.0) return;
  double s = u.tail_ratio();
  const auto& head = u.head();
  for (int r = 0;; ++r) {
    double sr = std::pow(s, r);
    for (int sgn : {1, -1}) {
      if (r == 0 && sgn < 0) continue;  // visit the origin once
      const int k = sgn * r;
      if (head.count(k)) continue;
      double t = falling_factorial(static_cast<double>(-k), j) * amp * sr;
      F += t;
      A += std::abs(t);
    }
    // terms beyond radius r are bounded by 2|amp| (r'+j)^j s^r', with ratio
    // at most q once the polynomial growth is dominated
    double q = s * std::pow((r + 2.0 + j) / (r + 1.0 + j), j);
    if (q < 1.0) {
      double first = 2.0 * std::abs(amp) * std::pow(r + 1.0 + j, j) *
                     std::pow(s, r + 1);
      double rem = first / (1.0 - q);
      if (rem <= 1e-15 * (A + 1e-300)) return;
    }
    if (r > 1000000)
      throw std::runtime_error("laurent series tail did not converge");
  }
}

}  // namespace

LaurentRoot laurent_root_order(const SingleSitePotential& u, double tol,
                               int j_max) {
  if (u.dim() != 1)
    throw std::invalid_argument("laurent root order needs a one-dimensional potential");
  // exact head terms: site k contributes u(k) at Laurent exponent nu = -k
  std::map<int, double> head;
  if (u.kind() == SingleSitePotential::Kind::Compact) {
    for (const auto& [p, v] : u.values()) head[p[0]] = to_double(v);
  } else {
    for (const auto& [k, v] : u.head()) head[k] = to_double(v);
  }
  for (int j = 0; j <= j_max; ++j) {
    double F = 0.0, A = 0.0;
    for (const auto& [k, v] : head) {
      double t = falling_factorial(static_cast<double>(-k), j) * v;
      F += t;
      A += std::abs(t);
    }
    if (u.kind() == SingleSitePotential::Kind::Geometric)
      accumulate_tail(u, j, F, A);
    if (A > 0.0 && std::abs(F) > tol * A) return {j, F, A};
  }
  throw std::runtime_error("order undetermined at tolerance");
}

WindowCaps default_window_caps(int L) {
  return {-(2 * L + 64), 3 * L + 64};
}

CoefficientField truncation_window(const SingleSitePotential& u, int L,
                                   const LaurentRoot& root,
                                   std::optional<WindowCaps> caps) {
  if (u.dim() != 1)
    throw std::invalid_argument("truncation window needs a one-dimensional potential");
  if (root.value == 0.0) throw std::invalid_argument("zero leading coefficient");
  WindowCaps c = caps.value_or(default_window_caps(L));
  if (c.lo_min > c.hi_max) throw std::invalid_argument("empty window cap range");
  const int D = root.order;
  const int sign = root.value > 0 ? 1 : -1;
  const double target = std::abs(root.value) / 2;

  const int span = c.hi_max - c.lo_min + 1;
  std::vector<double> wgt(span);
  for (int k = c.lo_min; k <= c.hi_max; ++k)
    wgt[k - c.lo_min] = D == 0 ? 1.0 : to_double(Rat(int_pow(k, D)));
  // u(x-k) lookups cover x in [0,L], k in [lo_min, hi_max]
  const int t_lo = -c.hi_max, t_hi = L - c.lo_min;
  std::vector<double> uval(t_hi - t_lo + 1);
  for (int t = t_lo; t <= t_hi; ++t) uval[t - t_lo] = u.value1(t);

  for (int S = 1; S <= span; ++S) {
    for (int lo = c.lo_min; lo + S - 1 <= c.hi_max; ++lo) {
      const int hi = lo + S - 1;
      bool ok = true;
      for (int x = 0; x <= L && ok; ++x) {
        double sum = 0.0;
        for (int k = lo; k <= hi; ++k)
          sum += wgt[k - c.lo_min] * uval[x - k - t_lo];
        ok = sign * sum >= target;
      }
      if (!ok) continue;
      CoefficientField field;
      field.dim = 1;
      field.tag = CoefficientField::Tag::ExpTruncated;
      field.sign = sign;
      field.delta = target;
      field.exponents = {D};
      for (int k = lo; k <= hi; ++k)
        field.weights[{k}] = Rat(sign) * monomial_weight(k, D);
      return field;
    }
  }
  throw std::runtime_error("truncation window exceeds search caps");
}

VerifyResult verify_positive_combination(const CoefficientField& field,
                                         const SingleSitePotential& u,
                                         const Box& box) {
  if (box.dim() != field.dim)
    throw std::invalid_argument("box dimension does not match the field");
  VerifyResult res;
  if (u.kind() == SingleSitePotential::Kind::Compact) {
    if (u.dim() != field.dim)
      throw std::invalid_argument("potential dimension does not match the field");
    res.exact = true;
    bool first = true;
    for (const Point& x : box.points()) {
      Rat s = 0;
      for (const auto& [p, v] : u.values()) {
        Point k = point_sub(x, p);
        auto it = field.weights.find(k);
        if (it != field.weights.end()) s += it->second * v;
      }
      if (first || s < res.min_exact) res.min_exact = s;
      first = false;
    }
    res.min_value = to_double(res.min_exact);
    if (field.delta_exact) {
      if (res.min_exact < *field.delta_exact)
        throw std::runtime_error("positivity certificate failed");
    } else if (res.min_value < field.delta - 1e-9 * (1 + std::abs(field.delta))) {
      throw std::runtime_error("positivity certificate failed");
    }
    return res;
  }

  double min = std::numeric_limits<double>::infinity();
  for (const Point& x : box.points()) {
    double s = 0.0;
    for (const auto& [k, a] : field.weights) {
      if (a == 0) continue;
      s += to_double(a) * u.value1(x[0] - k[0]);
    }
    min = std::min(min, s);
  }
  res.min_value = min;
  if (min < field.delta - 1e-9 * (1 + std::abs(field.delta)))
    throw std::runtime_error("positivity certificate failed");
  return res;
}

std::string CoefficientField::serialize() const {
  std::ostringstream out;
  out << "# coefficient field v1\n";
  out << "# dim " << dim << "\n";
  out << "# tag " << tag_name(tag) << "\n";
  out << "# sign " << sign << "\n";
  if (!exponents.empty()) {
    out << "# exponents";
    for (int e : exponents) out << ' ' << e;
    out << "\n";
  }
  if (delta_exact) {
    out << "# delta " << rat_to_string(*delta_exact) << "\n";
  } else {
    out.precision(17);
    out << "# delta ~ " << delta << "\n";
  }
  for (const auto& [k, v] : weights) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) out << ' ';
      out << k[i];
    }
    out << " : " << rat_to_string(v) << "\n";
  }
  return out.str();
}

CoefficientField CoefficientField::parse(std::istream& in) {
  CoefficientField field;
  bool have_delta = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string key;
      h >> key;
      if (key == "dim") {
        h >> field.dim;
      } else if (key == "tag") {
        std::string name;
        h >> name;
        bool found = false;
        for (Tag t : {Tag::Monomial, Tag::MeanWindow, Tag::CorollaryWindow,
                      Tag::ExpTruncated}) {
          if (tag_name(t) == name) {
            field.tag = t;
            found = true;
          }
        }
        if (!found) throw std::runtime_error("unknown coefficient tag: " + name);
      } else if (key == "sign") {
        h >> field.sign;
      } else if (key == "exponents") {
        int e;
        while (h >> e) field.exponents.push_back(e);
      } else if (key == "delta") {
        std::string tok;
        h >> tok;
        if (tok == "~") {
          h >> field.delta;
        } else {
          field.delta_exact = rat_from_string(tok);
          field.delta = to_double(*field.delta_exact);
        }
        have_delta = true;
      }
      continue;
    }
    std::istringstream row(line);
    Point k;
    std::string tok;
    bool seen_colon = false;
    while (row >> tok) {
      if (tok == ":") {
        seen_colon = true;
        break;
      }
      k.push_back(std::stoi(tok));
    }
    if (!seen_colon || static_cast<int>(k.size()) != field.dim)
      throw std::runtime_error("malformed coefficient line: " + line);
    std::string val;
    if (!(row >> val)) throw std::runtime_error("missing weight: " + line);
    field.weights[k] = rat_from_string(val);
  }
  if (!have_delta) throw std::runtime_error("coefficient header lacks delta");
  return field;
}

}  // namespace alloy
