#pragma once

#include "nufsample/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nufs {

struct NearestHit
{
  std::size_t index = 0;
  double distance = 0.0;
};

/// Exact nearest-point queries in an l^p norm over a fixed point set (d = 1 or 2).
/// Points are bucketed on a uniform grid and rings of buckets are scanned until the
/// ring's l^inf lower bound exceeds the best distance, so the answer always equals the
/// brute-force scan, including the lowest-index rule on ties.
class NearestIndex
{
public:
  NearestIndex(int dim, std::span<double const> coords, NormSpec norm);

  NearestHit query(std::span<double const> y) const;
  std::size_t size() const { return count_; }

private:
  long bucket_of(double v, int axis) const;

  int dim_;
  std::size_t count_;
  std::vector<double> coords_;
  NormSpec norm_;
  double lo_[2] = {0.0, 0.0};
  double width_ = 1.0;
  long nb_[2] = {1, 1};
  std::vector<std::size_t> start_; // CSR offsets per bucket
  std::vector<std::size_t> items_; // point indices, ascending within a bucket
};

/// Reference scan used to validate NearestIndex.
NearestHit nearest_brute_force(int dim, std::span<double const> coords, NormSpec const &norm,
                               std::span<double const> y);

} // namespace nufs
