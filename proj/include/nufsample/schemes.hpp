#pragma once

#include "nufsample/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nufs {

struct GeneratorInfo
{
  std::string kind = "external";
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
};

/// A finite list of distinct frequency points inside a domain Y_K (d = 1 or 2).
class SamplingScheme
{
public:
  SamplingScheme() = default;

  /// Validates dimension, domain membership and distinctness.
  SamplingScheme(int dim, std::vector<double> coords, DomainY domain, GeneratorInfo generator = {});

  int dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return size() == 0; }
  std::span<double const> point(std::size_t i) const { return {&coords_[i * dim_], static_cast<std::size_t>(dim_)}; }
  std::vector<double> const &coords() const { return coords_; }
  DomainY const &domain() const { return domain_; }
  GeneratorInfo const &generator() const { return generator_; }

private:
  int dim_ = 0;
  std::vector<double> coords_;
  DomainY domain_;
  GeneratorInfo generator_;
};

/// Throws if two points coincide exactly.
void check_distinct(int dim, std::vector<double> const &coords);

/// Jittered grid (n, m) eps + eta_{n,m} with eta drawn uniformly from [-eta, eta]^2.
SamplingScheme gen_jittered(double K, double eps, double eta, std::uint64_t seed);

/// Jittered grid with the deterministic worst-case offsets eta * (s_n, s_m), s_n = +1 for
/// odd n and -1 for even n, which stretches every [even, odd] x [even, odd] cell to eps + 2 eta.
SamplingScheme gen_jittered_alternating(double K, double eps, double eta);

/// Supremum of admissible angles between neighbouring radial lines for delta_2 < D.
double polar_max_angle(double K, double r, double D);

/// Concentric rings m r, |m| <= K/r, on N lines at angles n pi / N; origin included once.
SamplingScheme gen_polar(double K, double r, int lines);

/// d_{r,k}(theta) = |S_r(2 pi k) - S_r(2 pi k - theta / 2)| for the spiral S_r(t) = r t/(2 pi) e^{it}.
double spiral_gap(double r, int turns, double theta);

/// Smallest line count N with d_{r,k}(2 pi / N) < D - r/2.
int spiral_line_count(double K, double r, double D);

/// Constant angular velocity spiral with k = K/r turns and step 2 pi / N.
SamplingScheme gen_spiral(double K, double r, double D);

struct DensityReport
{
  double delta_lower = 0.0;
  double delta_upper = 0.0;
  NormSpec norm;
  DomainY domain;
  int grid_n = 0;
  std::size_t evaluated = 0; // grid points (or refined cells) evaluated
  int refine_levels = 0;
};

/// Grid-bracketed density: max over in-domain cell centres of the distance to the nearest
/// sample; the upper bracket adds half a cell diameter.
DensityReport measure_density(SamplingScheme const &s, NormSpec const &norm, int grid_n);

/// Same bracket, tightened by recursively splitting only the cells whose upper estimate can
/// still exceed the running lower bracket by more than target_width.
DensityReport measure_density_refined(SamplingScheme const &s, NormSpec const &norm, int grid_n, double target_width,
                                      int max_levels = 16);

} // namespace nufs
