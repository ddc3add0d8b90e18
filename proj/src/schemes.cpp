#include "nufsample/schemes.hpp"

#include "nufsample/error.hpp"
#include "nufsample/nearest.hpp"
#include "nufsample/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace nufs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSpiralLines = 10'000'000;

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double canonical(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// floor(a / b) that forgives a quotient landing one ulp below an integer.
long robust_floor_ratio(double a, double b)
{
  double const q = a / b;
  double const nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, std::abs(q))) { return static_cast<long>(nearest); }
  return static_cast<long>(std::floor(q));
}

long integral_ratio(double K, double r, char const *what)
{
  double const q = K / r;
  double const n = std::round(q);
  if (n < 1.0 || std::abs(q - n) > 1e-9 * std::max(1.0, q)) { fail(std::string(what) + ": K/r must be a positive integer"); }
  return static_cast<long>(n);
}

// cos/sin of 2 pi num / den, exact on quarter turns.
std::array<double, 2> unit_vector(long num, long den)
{
  long const r = ((num % den) + den) % den;
  if ((4 * r) % den == 0) {
    switch ((4 * r) / den) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    case 3: return {0.0, -1.0};
    }
  }
  double const t = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

struct Cell
{
  double x, y;
};

double half_diameter(NormSpec const &norm, double h)
{
  std::vector<double> v(norm.dim, 0.5 * h);
  return norm_eval(v, norm);
}

} // namespace

SamplingScheme::SamplingScheme(int dim, std::vector<double> coords, DomainY domain, GeneratorInfo generator)
  : dim_(dim)
  , coords_(std::move(coords))
  , domain_(domain)
  , generator_(std::move(generator))
{
  require(dim == 1 || dim == 2, "sampling schemes support d = 1 or 2");
  require(domain_.dim == dim, "scheme dimension does not match its domain");
  require(coords_.size() % dim == 0, "coordinate array is not a multiple of the dimension");
  for (double v : coords_) { require(std::isfinite(v), "scheme coordinates must be finite"); }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!domain_contains(domain_, point(i))) { fail("scheme point " + std::to_string(i) + " lies outside its domain"); }
  }
  check_distinct(dim, coords_);
}

void check_distinct(int dim, std::vector<double> const &coords)
{
  std::size_t const n = coords.size() / dim;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) { order[i] = i; }
  auto key = [&](std::size_t i) {
    return std::array<double, 2>{coords[i * dim], dim == 2 ? coords[i * dim + 1] : 0.0};
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  for (std::size_t i = 1; i < n; ++i) {
    if (key(order[i]) == key(order[i - 1])) {
      fail("duplicate sampling points at indices " + std::to_string(std::min(order[i], order[i - 1])) + " and " +
           std::to_string(std::max(order[i], order[i - 1])));
    }
  }
}

namespace {

SamplingScheme jittered_impl(double K, double eps, double eta, std::uint64_t seed, bool alternating)
{
  require(K > 0.0 && std::isfinite(K), "jittered scheme: K must be positive");
  require(eps > 0.0 && std::isfinite(eps), "jittered scheme: eps must be positive");
  require(eta >= 0.0 && std::isfinite(eta), "jittered scheme: eta must be non-negative");
  long const half = robust_floor_ratio(K, eps);
  double const K_prime = eps * static_cast<double>(half) + eta;
  require(K_prime > 0.0, "jittered scheme: the domain K' = eps floor(K/eps) + eta is empty");

  long const side = 2 * half + 1;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(2 * side * side));
  std::mt19937_64 rng(seed);
  auto draw = [&]() { return eta * (2.0 * canonical(rng) - 1.0); };
  auto sign = [](long n) { return (n % 2 != 0) ? 1.0 : -1.0; };
  for (long n = -half; n <= half; ++n) {
    for (long m = -half; m <= half; ++m) {
      double ex, ey;
      if (alternating) {
        ex = eta * sign(n);
        ey = eta * sign(m);
      } else {
        ex = draw();
        ey = draw();
      }
      coords.push_back(static_cast<double>(n) * eps + ex);
      coords.push_back(static_cast<double>(m) * eps + ey);
    }
  }

  if (!alternating && eta > 0.0) {
    // Exact collisions need eta >= eps / 2 and a measure-zero draw; re-draw the later point.
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::size_t const n = coords.size() / 2;
      std::vector<std::size_t> order(n);
      for (std::size_t i = 0; i < n; ++i) { order[i] = i; }
      auto key = [&](std::size_t i) { return std::array<double, 2>{coords[2 * i], coords[2 * i + 1]}; };
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
      bool clean = true;
      for (std::size_t i = 1; i < n; ++i) {
        if (key(order[i]) == key(order[i - 1])) {
          std::size_t const later = std::max(order[i], order[i - 1]);
          long const nn = static_cast<long>(later) / side - half;
          long const mm = static_cast<long>(later) % side - half;
          coords[2 * later] = static_cast<double>(nn) * eps + draw();
          coords[2 * later + 1] = static_cast<double>(mm) * eps + draw();
          clean = false;
        }
      }
      if (clean) { break; }
    }
  }

  GeneratorInfo info;
  info.kind = alternating ? "jittered_alternating" : "jittered";
  info.params = {{"K", K}, {"eps", eps}, {"eta", eta}};
  info.seed = alternating ? 0 : seed;
  return SamplingScheme(2, std::move(coords), DomainY::square(K_prime, 2), std::move(info));
}

} // namespace

SamplingScheme gen_jittered(double K, double eps, double eta, std::uint64_t seed)
{
  return jittered_impl(K, eps, eta, seed, false);
}

SamplingScheme gen_jittered_alternating(double K, double eps, double eta)
{
  return jittered_impl(K, eps, eta, 0, true);
}

double polar_max_angle(double K, double r, double D)
{
  require(r > 0.0 && D > 0.0 && K > 0.0, "polar angle: K, r and D must be positive");
  if (D <= r / 2.0) { fail("polar angle: D must exceed r/2"); }
  if (K <= D) { fail("polar angle: K must exceed D"); }
  double const radial = std::atan(std::sqrt(D * D - 0.25 * r * r) / (K - 0.5 * r));
  double const outer = std::acos(1.0 - D * D / (2.0 * K * K));
  return 2.0 * std::min(radial, outer);
}

SamplingScheme gen_polar(double K, double r, int lines)
{
  require(K > 0.0 && r > 0.0 && std::isfinite(K) && std::isfinite(r), "polar scheme: K and r must be positive");
  require(lines >= 1, "polar scheme: the number of lines must be at least 1");
  long const rings = integral_ratio(K, r, "polar scheme");
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(2 * (2 * rings * lines + 1)));
  coords.push_back(0.0);
  coords.push_back(0.0);
  for (int n = 0; n < lines; ++n) {
    auto const u = unit_vector(n, 2L * lines);
    for (long m = -rings; m <= rings; ++m) {
      if (m == 0) { continue; }
      double const rho = static_cast<double>(m) * r;
      coords.push_back(rho * u[0]);
      coords.push_back(rho * u[1]);
    }
  }
  GeneratorInfo info;
  info.kind = "polar";
  info.params = {{"K", K}, {"r", r}, {"lines", static_cast<double>(lines)}};
  return SamplingScheme(2, std::move(coords), DomainY::ball(K, 2), std::move(info));
}

double spiral_gap(double r, int turns, double theta)
{
  // S_r(2 pi k) = (r k, 0); S_r(2 pi k - theta/2) = r (k - theta/(4 pi)) e^{-i theta/2}.
  double const rho = r * (static_cast<double>(turns) - theta / (4.0 * kPi));
  return std::hypot(r * turns - rho * std::cos(0.5 * theta), rho * std::sin(0.5 * theta));
}

int spiral_line_count(double K, double r, double D)
{
  require(K > 0.0 && r > 0.0 && D > 0.0, "spiral scheme: K, r and D must be positive");
  if (r >= 2.0 * D) { fail("spiral scheme: r must be smaller than 2D"); }
  if (K <= 0.8 * D) { fail("spiral scheme: K must exceed 4D/5"); }
  int const turns = static_cast<int>(integral_ratio(K, r, "spiral scheme"));
  double const target = D - 0.5 * r;

  double lo = 0.0, hi = kPi;
  while (hi - lo > 1e-12) {
    double const mid = 0.5 * (lo + hi);
    (spiral_gap(r, turns, mid) < target ? lo : hi) = mid;
  }
  double const theta_max = lo;
  if (!(theta_max > 0.0) || 2.0 * kPi / theta_max > kMaxSpiralLines) {
    throw Error(ErrorKind::Resource, "spiral scheme: no admissible step with at most 1e7 points per turn");
  }
  long N = std::max(3L, static_cast<long>(std::floor(2.0 * kPi / theta_max)) + 1);
  while (spiral_gap(r, turns, 2.0 * kPi / static_cast<double>(N)) >= target) {
    if (++N > kMaxSpiralLines) {
      throw Error(ErrorKind::Resource, "spiral scheme: no admissible step with at most 1e7 points per turn");
    }
  }
  return static_cast<int>(N);
}

SamplingScheme gen_spiral(double K, double r, double D)
{
  int const N = spiral_line_count(K, r, D);
  int const turns = static_cast<int>(integral_ratio(K, r, "spiral scheme"));
  long const count = static_cast<long>(N) * turns;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(2 * (count + 1)));
  for (long n = 0; n <= count; ++n) {
    double const rho = r * static_cast<double>(n) / static_cast<double>(N);
    auto const u = unit_vector(n, N);
    coords.push_back(rho * u[0]);
    coords.push_back(rho * u[1]);
  }
  GeneratorInfo info;
  info.kind = "spiral";
  info.params = {{"K", K}, {"r", r}, {"D", D}, {"N", static_cast<double>(N)}};
  return SamplingScheme(2, std::move(coords), DomainY::spiral_region(r, turns), std::move(info));
}

namespace {

struct GridDistances
{
  std::vector<Cell> centres;
  std::vector<double> dist;
  std::vector<char> inside; // centre in the domain; otherwise the cell only overlaps it
};

// Whether the grid cell of width h centred at c can meet the domain. Cells of the square
// grid tile the square exactly; for the ball the test is exact; for the spiral region the
// centre, corners and edge midpoints are probed, which misses only slivers of width O(h^2/K).
bool cell_touches(DomainY const &Y, Cell const &c, double h, int dim)
{
  switch (Y.kind) {
  case DomainY::Kind::Square: {
    double const p[2] = {c.x, c.y};
    return domain_contains(Y, std::span<double const>(p, dim));
  }
  case DomainY::Kind::Ball: return std::hypot(c.x, dim == 2 ? c.y : 0.0) <= Y.K + 0.5 * h * std::sqrt(dim);
  case DomainY::Kind::SpiralRegion:
    for (int i = -1; i <= 1; ++i) {
      for (int j = -1; j <= 1; ++j) {
        double const p[2] = {c.x + 0.5 * h * i, c.y + 0.5 * h * j};
        if (domain_contains(Y, std::span<double const>(p, 2))) { return true; }
      }
    }
    return false;
  }
  return false;
}

GridDistances grid_distances(SamplingScheme const &s, NearestIndex const &index, int grid_n)
{
  DomainY const &Y = s.domain();
  double const B = Y.bounding_half_width();
  double const h = 2.0 * B / grid_n;
  int const rows = s.dim() == 2 ? grid_n : 1;
  std::vector<GridDistances> per_row(rows);
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy) {
      double const y = s.dim() == 2 ? -B + (static_cast<double>(iy) + 0.5) * h : 0.0;
      for (int ix = 0; ix < grid_n; ++ix) {
        Cell const c{-B + (ix + 0.5) * h, y};
        if (!cell_touches(Y, c, h, s.dim())) { continue; }
        double const p[2] = {c.x, c.y};
        std::span<double const> pt(p, s.dim());
        per_row[iy].centres.push_back(c);
        per_row[iy].dist.push_back(index.query(pt).distance);
        per_row[iy].inside.push_back(domain_contains(Y, pt) ? 1 : 0);
      }
    }
  });
  GridDistances out;
  for (auto const &r : per_row) {
    out.centres.insert(out.centres.end(), r.centres.begin(), r.centres.end());
    out.dist.insert(out.dist.end(), r.dist.begin(), r.dist.end());
    out.inside.insert(out.inside.end(), r.inside.begin(), r.inside.end());
  }
  return out;
}

double inside_max(GridDistances const &g)
{
  double m = -1.0;
  for (std::size_t i = 0; i < g.dist.size(); ++i) {
    if (g.inside[i]) { m = std::max(m, g.dist[i]); }
  }
  require(m >= 0.0, "density: no grid point falls inside the domain");
  return m;
}

void check_density_args(SamplingScheme const &s, NormSpec const &norm, int grid_n)
{
  require(!s.empty(), "density: the scheme is empty");
  require(grid_n >= 2, "density: grid_n must be at least 2");
  require(norm.dim == s.dim(), "density: norm dimension does not match the scheme");
}

} // namespace

DensityReport measure_density(SamplingScheme const &s, NormSpec const &norm, int grid_n)
{
  check_density_args(s, norm, grid_n);
  NearestIndex index(s.dim(), s.coords(), norm);
  GridDistances const g = grid_distances(s, index, grid_n);
  DensityReport rep;
  rep.delta_lower = inside_max(g);
  double const h = 2.0 * s.domain().bounding_half_width() / grid_n;
  rep.delta_upper = *std::max_element(g.dist.begin(), g.dist.end()) + half_diameter(norm, h);
  rep.norm = norm;
  rep.domain = s.domain();
  rep.grid_n = grid_n;
  rep.evaluated = g.dist.size();
  return rep;
}

DensityReport measure_density_refined(SamplingScheme const &s, NormSpec const &norm, int grid_n, double target_width,
                                      int max_levels)
{
  check_density_args(s, norm, grid_n);
  require(target_width > 0.0, "density: target bracket width must be positive");
  require(max_levels >= 0, "density: max_levels must be non-negative");
  NearestIndex index(s.dim(), s.coords(), norm);
  GridDistances g = grid_distances(s, index, grid_n);

  DomainY const &Y = s.domain();
  double h = 2.0 * Y.bounding_half_width() / grid_n;
  double hd = half_diameter(norm, h);
  double lower = inside_max(g);
  double upper_settled = 0.0;
  std::size_t evaluated = g.dist.size();

  std::vector<Cell> frontier;
  for (std::size_t i = 0; i < g.dist.size(); ++i) {
    double const u = g.dist[i] + hd;
    if (u > lower + target_width) {
      frontier.push_back(g.centres[i]);
    } else {
      upper_settled = std::max(upper_settled, u);
    }
  }

  int level = 0;
  while (!frontier.empty() && level < max_levels) {
    ++level;
    double const child_h = 0.5 * h;
    double const child_hd = half_diameter(norm, child_h);
    std::vector<Cell> children;
    children.reserve(frontier.size() * (s.dim() == 2 ? 4 : 2));
    for (Cell const &c : frontier) {
      for (int ox = -1; ox <= 1; ox += 2) {
        for (int oy = -1; oy <= 1; oy += 2) {
          if (s.dim() == 1 && oy == 1) { continue; }
          Cell const child{c.x + 0.5 * ox * child_h, s.dim() == 2 ? c.y + 0.5 * oy * child_h : 0.0};
          if (cell_touches(Y, child, child_h, s.dim())) { children.push_back(child); }
        }
      }
    }
    std::vector<double> d(children.size());
    std::vector<char> in(children.size());
    parallel_for(children.size(), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        double const p[2] = {children[i].x, children[i].y};
        std::span<double const> pt(p, s.dim());
        d[i] = index.query(pt).distance;
        in[i] = domain_contains(Y, pt) ? 1 : 0;
      }
    });
    evaluated += children.size();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (in[i]) { lower = std::max(lower, d[i]); }
    }
    frontier.clear();
    for (std::size_t i = 0; i < children.size(); ++i) {
      double const u = d[i] + child_hd;
      if (u > lower + target_width) {
        frontier.push_back(children[i]);
      } else {
        upper_settled = std::max(upper_settled, u);
      }
    }
    h = child_h;
    hd = child_hd;
  }
  // Cells still open at the depth limit keep their centre-plus-radius bound.
  NearestIndex const &idx = index;
  for (Cell const &c : frontier) {
    double const p[2] = {c.x, c.y};
    upper_settled = std::max(upper_settled, idx.query(std::span<double const>(p, s.dim())).distance + hd);
  }

  DensityReport rep;
  rep.delta_lower = lower;
  rep.delta_upper = std::max(lower, upper_settled);
  rep.norm = norm;
  rep.domain = Y;
  rep.grid_n = grid_n;
  rep.evaluated = evaluated;
  rep.refine_levels = level;
  return rep;
}

} // namespace nufs
