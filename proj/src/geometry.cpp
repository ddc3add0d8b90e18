#include "nufsample/geometry.hpp"

#include "nufsample/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nufs {

namespace {

// Relative slack for boundary points produced by floating-point generators.
constexpr double kBoundaryTol = 1e-12;

double lq_norm(std::vector<double> const &v, double q)
{
  if (q == kInfinity) {
    double m = 0.0;
    for (double x : v) { m = std::max(m, std::abs(x)); }
    return m;
  }
  double s = 0.0;
  for (double x : v) { s += std::pow(std::abs(x), q); }
  return std::pow(s, 1.0 / q);
}

void check_norm(NormSpec const &n)
{
  require(n.dim >= 1, "norm dimension must be positive");
  require(!std::isnan(n.p) && n.p >= 1.0, "norm exponent p must lie in [1, inf]");
  require(n.scales.empty() || static_cast<int>(n.scales.size()) == n.dim, "norm scales do not match dimension");
  for (double s : n.scales) { require(s > 0.0 && std::isfinite(s), "norm scales must be positive"); }
}

} // namespace

double NormSpec::min_scale() const
{
  if (scales.empty()) { return 1.0; }
  return *std::min_element(scales.begin(), scales.end());
}

NormSpec lp_norm(double p, int dim)
{
  NormSpec n{p, dim, {}};
  check_norm(n);
  return n;
}

NormSpec max_norm(int dim) { return lp_norm(kInfinity, dim); }

double norm_eval(std::span<double const> x, NormSpec const &n)
{
  check_norm(n);
  require(static_cast<int>(x.size()) == n.dim, "vector dimension does not match norm dimension");
  if (n.is_max()) {
    double m = 0.0;
    for (int j = 0; j < n.dim; ++j) { m = std::max(m, std::abs(n.scale(j) * x[j])); }
    return m;
  }
  if (n.p == 1.0) {
    double s = 0.0;
    for (int j = 0; j < n.dim; ++j) { s += std::abs(n.scale(j) * x[j]); }
    return s;
  }
  if (n.p == 2.0) {
    double s = 0.0;
    for (int j = 0; j < n.dim; ++j) { s = std::hypot(s, n.scale(j) * x[j]); }
    return s;
  }
  double s = 0.0;
  for (int j = 0; j < n.dim; ++j) { s += std::pow(std::abs(n.scale(j) * x[j]), n.p); }
  return std::pow(s, 1.0 / n.p);
}

double dual_exponent(double p)
{
  require(!std::isnan(p) && p >= 1.0, "norm exponent p must lie in [1, inf]");
  if (p == 1.0) { return kInfinity; }
  if (p == kInfinity) { return 1.0; }
  return p / (p - 1.0);
}

NormSpec dual(NormSpec const &n)
{
  check_norm(n);
  NormSpec d{dual_exponent(n.p), n.dim, {}};
  if (!n.scales.empty()) {
    d.scales.resize(n.dim);
    for (int j = 0; j < n.dim; ++j) { d.scales[j] = 1.0 / n.scales[j]; }
  }
  return d;
}

EquivalenceConstants equivalence_constants(NormSpec const &n)
{
  check_norm(n);
  std::vector<double> s(n.dim), inv(n.dim);
  for (int j = 0; j < n.dim; ++j) {
    s[j] = n.scale(j);
    inv[j] = 1.0 / s[j];
  }
  // |x|_2 against |Sx|_p: extremals sit on axis vectors or on the Lagrange point of the
  // concave (p <= 2) or convex (p >= 2) problem over the Euclidean sphere.
  EquivalenceConstants c;
  if (n.p <= 2.0) {
    double const q = (n.p == 2.0) ? kInfinity : 2.0 * n.p / (2.0 - n.p);
    c.lower = 1.0 / lq_norm(s, q);
    c.upper = lq_norm(inv, kInfinity);
  } else {
    double const q = n.is_max() ? 2.0 : 2.0 * n.p / (n.p - 2.0);
    c.lower = 1.0 / lq_norm(s, kInfinity);
    c.upper = lq_norm(inv, q);
  }
  return c;
}

SupportSet SupportSet::lp_ball(double p, double radius, int dim)
{
  require(!std::isnan(p) && p >= 1.0, "support ball exponent must lie in [1, inf]");
  require(radius > 0.0 && std::isfinite(radius), "support ball radius must be positive");
  require(dim >= 1, "support dimension must be positive");
  SupportSet E;
  E.shape = Shape::LpBall;
  E.dim = dim;
  E.p = p;
  E.radius = radius;
  return E;
}

SupportSet SupportSet::rectangle(std::vector<double> half_widths)
{
  require(!half_widths.empty(), "rectangle needs at least one half width");
  for (double s : half_widths) { require(s > 0.0 && std::isfinite(s), "rectangle half widths must be positive"); }
  SupportSet E;
  E.shape = Shape::Rectangle;
  E.dim = static_cast<int>(half_widths.size());
  E.half_widths = std::move(half_widths);
  return E;
}

NormSpec dual_norm(SupportSet const &E)
{
  switch (E.shape) {
  case SupportSet::Shape::LpBall: {
    NormSpec n{dual_exponent(E.p), E.dim, {}};
    if (E.radius != 1.0) { n.scales.assign(E.dim, E.radius); }
    return n;
  }
  case SupportSet::Shape::Rectangle: {
    NormSpec n{1.0, E.dim, {}};
    bool const unit = std::all_of(E.half_widths.begin(), E.half_widths.end(), [](double s) { return s == 1.0; });
    if (!unit) { n.scales = E.half_widths; }
    return n;
  }
  }
  fail("unsupported support shape");
}

double compute_mE(SupportSet const &E)
{
  switch (E.shape) {
  case SupportSet::Shape::LpBall: {
    double const expo = E.p == kInfinity ? 0.5 : 0.5 - 1.0 / E.p;
    return E.radius * std::max(1.0, std::pow(static_cast<double>(E.dim), expo));
  }
  case SupportSet::Shape::Rectangle: {
    double s = 0.0;
    for (double h : E.half_widths) { s = std::hypot(s, h); }
    return s;
  }
  }
  fail("unsupported support shape");
}

double polar_constant(SupportSet const &E) { return equivalence_constants(dual_norm(E)).upper; }

DomainY DomainY::square(double K, int dim)
{
  require(K > 0.0 && std::isfinite(K), "domain bandwidth K must be positive");
  require(dim >= 1, "domain dimension must be positive");
  return DomainY{Kind::Square, dim, K, 0.0, 0};
}

DomainY DomainY::ball(double K, int dim)
{
  require(K > 0.0 && std::isfinite(K), "domain bandwidth K must be positive");
  require(dim >= 1, "domain dimension must be positive");
  return DomainY{Kind::Ball, dim, K, 0.0, 0};
}

DomainY DomainY::spiral_region(double r, int turns)
{
  require(r > 0.0 && std::isfinite(r), "spiral separation r must be positive");
  require(turns >= 1, "spiral turn count must be positive");
  return DomainY{Kind::SpiralRegion, 2, r * turns, r, turns};
}

bool domain_contains(DomainY const &Y, std::span<double const> point)
{
  require(static_cast<int>(point.size()) == Y.dim, "point dimension does not match domain dimension");
  double const slack = 1.0 + kBoundaryTol;
  switch (Y.kind) {
  case DomainY::Kind::Square:
    return std::all_of(point.begin(), point.end(), [&](double x) { return std::abs(x) <= Y.K * slack; });
  case DomainY::Kind::Ball: {
    double s = 0.0;
    for (double x : point) { s = std::hypot(s, x); }
    return s <= Y.K * slack;
  }
  case DomainY::Kind::SpiralRegion: {
    double const rho = std::hypot(point[0], point[1]);
    if (rho == 0.0) { return true; }
    double phi = std::atan2(point[1], point[0]);
    if (phi < 0.0) { phi += 2.0 * std::numbers::pi; }
    // Outermost arm at angle phi. The ray phi = 0 also carries the arm end S_r(2 pi k).
    double const turns = phi == 0.0 ? Y.turns : Y.turns - 1 + phi / (2.0 * std::numbers::pi);
    return rho <= Y.r * turns * slack;
  }
  }
  return false;
}

char const *domain_kind_name(DomainY::Kind kind)
{
  switch (kind) {
  case DomainY::Kind::Square: return "square";
  case DomainY::Kind::Ball: return "ball";
  case DomainY::Kind::SpiralRegion: return "spiral_region";
  }
  return "unknown";
}

} // namespace nufs
