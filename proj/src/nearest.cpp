#include "nufsample/nearest.hpp"

#include "nufsample/error.hpp"
#include "nufsample/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

namespace nufs {

namespace {

std::atomic<int> g_threads{1};

double distance(int dim, double const *a, double const *b, NormSpec const &n)
{
  double d[2] = {0.0, 0.0};
  for (int j = 0; j < dim; ++j) { d[j] = std::abs(a[j] - b[j]) * n.scale(j); }
  if (dim == 1) { return d[0]; }
  if (n.p == 2.0) { return std::hypot(d[0], d[1]); }
  if (n.p == 1.0) { return d[0] + d[1]; }
  if (n.is_max()) { return std::max(d[0], d[1]); }
  return std::pow(std::pow(d[0], n.p) + std::pow(d[1], n.p), 1.0 / n.p);
}

bool better(double dist, std::size_t idx, NearestHit const &best, bool have)
{
  return !have || dist < best.distance || (dist == best.distance && idx < best.index);
}

} // namespace

int thread_count() { return g_threads.load(); }

void set_thread_count(int n) { g_threads.store(std::max(1, n)); }

NearestIndex::NearestIndex(int dim, std::span<double const> coords, NormSpec norm)
  : dim_(dim)
  , count_(0)
  , coords_(coords.begin(), coords.end())
  , norm_(std::move(norm))
{
  require(dim == 1 || dim == 2, "nearest-point search supports d = 1 or 2");
  require(norm_.dim == dim, "norm dimension does not match point dimension");
  require(coords.size() % dim == 0, "coordinate array is not a multiple of the dimension");
  count_ = coords.size() / dim;
  require(count_ > 0, "nearest-point search needs at least one point");

  double hi[2] = {0.0, 0.0};
  for (int j = 0; j < dim; ++j) {
    lo_[j] = std::numeric_limits<double>::infinity();
    hi[j] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < count_; ++i) {
    for (int j = 0; j < dim; ++j) {
      lo_[j] = std::min(lo_[j], coords_[i * dim + j]);
      hi[j] = std::max(hi[j], coords_[i * dim + j]);
    }
  }
  double extent = 0.0;
  double volume = 1.0;
  for (int j = 0; j < dim; ++j) {
    extent = std::max(extent, hi[j] - lo_[j]);
    volume *= std::max(hi[j] - lo_[j], 1e-300);
  }
  if (extent <= 0.0) { extent = 1.0; }
  // About two points per bucket on average.
  double const target = std::max(1.0, static_cast<double>(count_) / 2.0);
  width_ = dim == 1 ? extent / target : std::sqrt(volume / target);
  width_ = std::max(width_, extent / 4096.0);
  double const max_buckets = 4.0 * static_cast<double>(count_) + 16.0;
  for (;;) {
    double total = 1.0;
    for (int j = 0; j < dim; ++j) {
      nb_[j] = std::max<long>(1, static_cast<long>(std::floor((hi[j] - lo_[j]) / width_)) + 1);
      total *= static_cast<double>(nb_[j]);
    }
    if (total <= max_buckets) { break; }
    width_ *= 2.0;
  }

  std::size_t const nbuckets = static_cast<std::size_t>(nb_[0] * nb_[1]);
  start_.assign(nbuckets + 1, 0);
  std::vector<std::size_t> bucket(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    long b = bucket_of(coords_[i * dim], 0);
    if (dim == 2) { b = b * nb_[1] + bucket_of(coords_[i * dim + 1], 1); }
    bucket[i] = static_cast<std::size_t>(b);
    ++start_[bucket[i] + 1];
  }
  for (std::size_t b = 0; b < nbuckets; ++b) { start_[b + 1] += start_[b]; }
  items_.resize(count_);
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  for (std::size_t i = 0; i < count_; ++i) { items_[fill[bucket[i]]++] = i; }
}

long NearestIndex::bucket_of(double v, int axis) const
{
  double const t = std::floor((v - lo_[axis]) / width_);
  if (!(t >= 0.0)) { return 0; }
  return std::min<long>(static_cast<long>(t), nb_[axis] - 1);
}

NearestHit NearestIndex::query(std::span<double const> y) const
{
  NearestHit best;
  bool have = false;
  double const scale = norm_.min_scale();
  long const cx = bucket_of(y[0], 0);
  long const cy = dim_ == 2 ? bucket_of(y[1], 1) : 0;
  long const max_ring = std::max({cx, nb_[0] - 1 - cx, cy, nb_[1] - 1 - cy});

  auto scan = [&](long bx, long by) {
    std::size_t const b = static_cast<std::size_t>(bx * nb_[1] + by);
    for (std::size_t k = start_[b]; k < start_[b + 1]; ++k) {
      std::size_t const i = items_[k];
      double const d = distance(dim_, y.data(), &coords_[i * dim_], norm_);
      if (better(d, i, best, have)) {
        best = {i, d};
        have = true;
      }
    }
  };

  for (long ring = 0; ring <= max_ring; ++ring) {
    if (have && ring >= 1 && static_cast<double>(ring - 1) * width_ * scale > best.distance) { break; }
    if (dim_ == 1) {
      if (ring == 0) {
        scan(cx, 0);
      } else {
        if (cx - ring >= 0) { scan(cx - ring, 0); }
        if (cx + ring < nb_[0]) { scan(cx + ring, 0); }
      }
      continue;
    }
    for (long bx = cx - ring; bx <= cx + ring; ++bx) {
      if (bx < 0 || bx >= nb_[0]) { continue; }
      bool const edge = (bx == cx - ring || bx == cx + ring);
      if (edge) {
        for (long by = std::max(0L, cy - ring); by <= std::min(nb_[1] - 1, cy + ring); ++by) { scan(bx, by); }
      } else {
        if (cy - ring >= 0) { scan(bx, cy - ring); }
        if (ring > 0 && cy + ring < nb_[1]) { scan(bx, cy + ring); }
      }
    }
  }
  return best;
}

NearestHit nearest_brute_force(int dim, std::span<double const> coords, NormSpec const &norm,
                               std::span<double const> y)
{
  require(!coords.empty(), "nearest-point search needs at least one point");
  NearestHit best;
  bool have = false;
  std::size_t const n = coords.size() / dim;
  for (std::size_t i = 0; i < n; ++i) {
    double diff[2] = {0.0, 0.0};
    for (int j = 0; j < dim; ++j) { diff[j] = y[j] - coords[i * dim + j]; }
    double const d = norm_eval(std::span<double const>(diff, dim), norm);
    if (better(d, i, best, have)) {
      best = {i, d};
      have = true;
    }
  }
  return best;
}

} // namespace nufs
