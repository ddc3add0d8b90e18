#pragma once

#include "nufsample/schemes.hpp"

#include <cstdint>
#include <vector>

namespace nufs {

/// A scheme paired with Voronoi-region measures mu_omega.
struct WeightedScheme
{
  SamplingScheme scheme;
  std::vector<double> weights;
  NormSpec norm;
  double domain_measure = 0.0;

  // Grid quantization; counts are empty for weights not produced on a grid.
  int grid_n = 0;
  double cell_measure = 0.0;
  std::vector<std::uint64_t> cell_counts;
  std::uint64_t domain_cells = 0;
  std::vector<std::size_t> zero_weight; // indices whose quantized cell is empty
};

/// Assigns every in-domain cell of a grid_n^d grid over the domain's bounding box to its
/// nearest sample (lowest index on ties); mu = cell measure x assigned cell count.
WeightedScheme voronoi_weights_grid(SamplingScheme const &s, NormSpec const &norm, int grid_n);

/// Exact midpoint rule on an interval domain [-K', K'] (d = 1).
WeightedScheme voronoi_weights_1d(SamplingScheme const &s);

/// mu = 1 for every sample; used for unweighted reconstructions.
WeightedScheme unit_weights(SamplingScheme const &s);

/// Same scheme, caller-supplied weights (for example read back from a file).
WeightedScheme with_weights(SamplingScheme const &s, std::vector<double> weights, NormSpec norm);

} // namespace nufs
