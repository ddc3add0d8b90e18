#include <doctest.h>

#include "nufsample/nearest.hpp"

#include <random>

using namespace nufs;

namespace {

void compare_with_scan(int dim, std::vector<double> const &pts, NormSpec const &norm,
                       std::vector<double> const &queries)
{
  NearestIndex const index(dim, pts, norm);
  for (std::size_t q = 0; q < queries.size() / dim; ++q) {
    std::span<double const> y(&queries[q * dim], dim);
    auto const a = index.query(y);
    auto const b = nearest_brute_force(dim, pts, norm, y);
    REQUIRE(a.index == b.index);
    REQUIRE(a.distance == b.distance);
  }
}

} // namespace

TEST_SUITE("nearest")
{
  TEST_CASE("random points agree with the reference scan in several norms")
  {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<double> pts(2 * 500), queries(2 * 4000);
    for (double &v : pts) { v = u(rng); }
    for (double &v : queries) { v = 1.3 * u(rng); }
    NormSpec scaled = lp_norm(1.0, 2);
    scaled.scales = {0.5, 3.0};
    for (auto const &n : {lp_norm(1.0, 2), lp_norm(2.0, 2), max_norm(2), lp_norm(3.5, 2), scaled}) {
      compare_with_scan(2, pts, n, queries);
    }
  }

  TEST_CASE("ties resolve to the lowest index")
  {
    // Lattice with queries at cell centres: four equidistant neighbours each.
    std::vector<double> pts;
    for (int i = 4; i >= -4; --i) {
      for (int j = -4; j <= 4; ++j) {
        pts.push_back(0.5 * i);
        pts.push_back(0.5 * j);
      }
    }
    std::vector<double> queries;
    for (int i = -4; i < 4; ++i) {
      for (int j = -4; j < 4; ++j) {
        queries.push_back(0.5 * i + 0.25);
        queries.push_back(0.5 * j + 0.25);
      }
    }
    for (auto const &n : {lp_norm(1.0, 2), lp_norm(2.0, 2), max_norm(2)}) { compare_with_scan(2, pts, n, queries); }
  }

  TEST_CASE("collinear and one-dimensional point sets")
  {
    std::vector<double> line;
    for (int i = 0; i < 3000; ++i) {
      line.push_back(1e-3 * i);
      line.push_back(0.0);
    }
    std::vector<double> q = {-1.0, 0.5, 1.5, -0.25, 3.5, 0.0, 0.0005, 10.0};
    compare_with_scan(2, line, lp_norm(2.0, 2), q);
    NearestIndex const idx(2, line, lp_norm(2.0, 2));
    CHECK(idx.size() == 3000);

    std::vector<double> pts1 = {0.25, -0.5, 0.9, 0.35, -1.0};
    std::vector<double> q1 = {0.0, 0.05, 0.325, -5.0, 5.0, 0.6};
    compare_with_scan(1, pts1, lp_norm(2.0, 1), q1);
    NearestIndex const i1(1, pts1, lp_norm(2.0, 1));
    double const tie = -0.125; // halfway between -0.5 and 0.25
    CHECK(i1.query(std::span<double const>(&tie, 1)).index == 0);
  }

  TEST_CASE("clustered points")
  {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1e-3);
    std::vector<double> pts;
    for (int i = 0; i < 400; ++i) {
      pts.push_back(g(rng));
      pts.push_back(g(rng));
    }
    pts.push_back(5.0);
    pts.push_back(5.0);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    std::vector<double> queries(2 * 2000);
    for (double &v : queries) { v = u(rng); }
    compare_with_scan(2, pts, lp_norm(2.0, 2), queries);
  }
}
