#include "nufsample/weights.hpp"

#include "nufsample/error.hpp"
#include "nufsample/nearest.hpp"
#include "nufsample/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nufs {

WeightedScheme voronoi_weights_grid(SamplingScheme const &s, NormSpec const &norm, int grid_n)
{
  require(!s.empty(), "weights: the scheme is empty");
  require(grid_n >= 2, "weights: grid_n must be at least 2");
  require(norm.dim == s.dim(), "weights: norm dimension does not match the scheme");
  check_distinct(s.dim(), s.coords());

  DomainY const &Y = s.domain();
  double const B = Y.bounding_half_width();
  double const h = 2.0 * B / grid_n;
  int const rows = s.dim() == 2 ? grid_n : 1;
  NearestIndex index(s.dim(), s.coords(), norm);

  // Per-row owner lists, reduced in row order so the counts do not depend on threading.
  std::vector<std::vector<std::size_t>> owners(rows);
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t iy = lo; iy < hi; ++iy) {
      double const y = -B + (static_cast<double>(iy) + 0.5) * h;
      for (int ix = 0; ix < grid_n; ++ix) {
        double const p[2] = {-B + (ix + 0.5) * h, y};
        std::span<double const> pt(p, s.dim());
        if (domain_contains(Y, pt)) { owners[iy].push_back(index.query(pt).index); }
      }
    }
  });

  WeightedScheme ws;
  ws.scheme = s;
  ws.norm = norm;
  ws.grid_n = grid_n;
  ws.cell_measure = std::pow(h, s.dim());
  ws.cell_counts.assign(s.size(), 0);
  for (auto const &row : owners) {
    for (std::size_t i : row) { ++ws.cell_counts[i]; }
    ws.domain_cells += row.size();
  }
  require(ws.domain_cells > 0, "weights: no grid cell centre lies inside the domain");
  ws.weights.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    ws.weights[i] = ws.cell_measure * static_cast<double>(ws.cell_counts[i]);
    if (ws.cell_counts[i] == 0) { ws.zero_weight.push_back(i); }
  }
  ws.domain_measure = ws.cell_measure * static_cast<double>(ws.domain_cells);
  return ws;
}

WeightedScheme voronoi_weights_1d(SamplingScheme const &s)
{
  require(s.dim() == 1, "1D weights need a one-dimensional scheme");
  require(!s.empty(), "weights: the scheme is empty");
  require(s.domain().kind == DomainY::Kind::Square, "1D weights need an interval domain");
  double const K = s.domain().K;
  std::size_t const n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.coords()[a] < s.coords()[b]; });
  auto at = [&](std::size_t k) { return s.coords()[order[k]]; };
  for (std::size_t k = 0; k < n; ++k) {
    require(at(k) >= -K && at(k) <= K, "1D weights: point outside the interval [-K', K']");
  }

  WeightedScheme ws;
  ws.scheme = s;
  ws.norm = lp_norm(2.0, 1);
  ws.weights.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double const left = k == 0 ? -K : 0.5 * (at(k - 1) + at(k));
    double const right = k + 1 == n ? K : 0.5 * (at(k) + at(k + 1));
    ws.weights[order[k]] = right - left;
  }
  ws.domain_measure = 2.0 * K;
  return ws;
}

WeightedScheme unit_weights(SamplingScheme const &s)
{
  require(!s.empty(), "weights: the scheme is empty");
  return with_weights(s, std::vector<double>(s.size(), 1.0), lp_norm(2.0, s.dim()));
}

WeightedScheme with_weights(SamplingScheme const &s, std::vector<double> weights, NormSpec norm)
{
  require(weights.size() == s.size(), "weights: one weight per sample is required");
  for (double w : weights) { require(std::isfinite(w) && w >= 0.0, "weights must be finite and non-negative"); }
  WeightedScheme ws;
  ws.scheme = s;
  ws.weights = std::move(weights);
  ws.norm = std::move(norm);
  ws.domain_measure = std::accumulate(ws.weights.begin(), ws.weights.end(), 0.0);
  for (std::size_t i = 0; i < ws.weights.size(); ++i) {
    if (ws.weights[i] == 0.0) { ws.zero_weight.push_back(i); }
  }
  return ws;
}

} // namespace nufs
