#include <doctest.h>

#include "nufsample/error.hpp"
#include "nufsample/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace nufs;

namespace {

bool has_point(SamplingScheme const &s, double x, double y)
{
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.point(i)[0] == x && s.point(i)[1] == y) { return true; }
  }
  return false;
}

// Direct evaluation of |S(2 pi k) - S(2 pi k - theta/2)| with S(t) = r t/(2 pi) e^{it}.
double gap_direct(double r, int k, double theta)
{
  auto S = [r](double t) { return r * t / (2.0 * std::numbers::pi) * std::polar(1.0, t); };
  return std::abs(S(2.0 * std::numbers::pi * k) - S(2.0 * std::numbers::pi * k - 0.5 * theta));
}

} // namespace

TEST_SUITE("schemes")
{
  TEST_CASE("unjittered grid")
  {
    auto const s = gen_jittered(1.0, 0.5, 0.0, 7);
    CHECK(s.size() == 25);
    CHECK(s.domain().K == 1.0);
    for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      for (double y : {-1.0, -0.5, 0.0, 0.5, 1.0}) { CHECK(has_point(s, x, y)); }
    }
    // floor(K/eps) must not lose a row to rounding: 0.3 / 0.1 = 2.9999999999999996.
    CHECK(gen_jittered(0.3, 0.1, 0.0, 1).size() == 49);
  }

  TEST_CASE("jittered points stay within eta of their lattice site")
  {
    double const eps = 0.2, eta = 0.03;
    auto const s = gen_jittered(2.0, eps, eta, 42);
    CHECK(s.size() == 21 * 21);
    CHECK(s.domain().K == doctest::Approx(2.0 + eta));
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto p = s.point(i);
      long const n = static_cast<long>(i) / 21 - 10;
      long const m = static_cast<long>(i) % 21 - 10;
      CHECK(std::abs(p[0] - n * eps) <= eta);
      CHECK(std::abs(p[1] - m * eps) <= eta);
    }
    auto const again = gen_jittered(2.0, eps, eta, 42);
    CHECK(again.coords() == s.coords());
    CHECK(gen_jittered(2.0, eps, eta, 43).coords() != s.coords());
    CHECK(s.generator().kind == "jittered");
    CHECK(s.generator().seed == 42);
  }

  TEST_CASE("alternating jitter")
  {
    auto const s = gen_jittered_alternating(1.0, 0.2, 0.05);
    // n = 1 (odd) moves up, n = 0 and n = 2 move down.
    CHECK(has_point(s, 0.2 + 0.05, 0.2 + 0.05));
    CHECK(has_point(s, -0.05, -0.05));
    CHECK(has_point(s, 0.4 - 0.05, 0.2 + 0.05));
  }

  TEST_CASE("jittered argument validation")
  {
    CHECK_THROWS_AS(gen_jittered(1.0, 0.0, 0.0, 1), Error);
    CHECK_THROWS_AS(gen_jittered(-1.0, 0.1, 0.0, 1), Error);
    CHECK_THROWS_AS(gen_jittered(1.0, 0.1, -0.1, 1), Error);
  }

  TEST_CASE("polar scheme size, origin and axes")
  {
    auto const s = gen_polar(32.0, 0.25, 345);
    CHECK(s.size() == 345u * 257u - 344u);
    std::size_t origins = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.point(i)[0] == 0.0 && s.point(i)[1] == 0.0) { ++origins; }
    }
    CHECK(origins == 1);
    auto const q = gen_polar(2.0, 0.5, 4);
    CHECK(q.size() == 4u * 9u - 3u);
    CHECK(has_point(q, 2.0, 0.0));
    CHECK(has_point(q, 0.0, 2.0));
    CHECK(has_point(q, -1.5, 0.0));
    CHECK(q.domain().kind == DomainY::Kind::Ball);
    CHECK_THROWS_AS(gen_polar(32.0, 0.3, 10), Error);
    CHECK_THROWS_AS(gen_polar(32.0, 0.25, 0), Error);
  }

  TEST_CASE("polar angle condition against an exact Voronoi-vertex oracle")
  {
    // tests/oracles/oracles.py: bisection on the exact density of the outer wedge.
    CHECK(polar_max_angle(8.0, 0.5, 0.5) == doctest::Approx(0.11162915056664677).epsilon(1e-10));
    CHECK(polar_max_angle(32.0, 0.25, 0.25) == doctest::Approx(0.013584503306788457).epsilon(1e-10));
    CHECK_THROWS_AS(polar_max_angle(8.0, 1.0, 0.5), Error);
    CHECK_THROWS_AS(polar_max_angle(0.4, 0.1, 0.5), Error);
  }

  TEST_CASE("spiral gap and line count")
  {
    for (double theta : {0.01, 0.3, 1.0, 2.5}) {
      CHECK(spiral_gap(1.0, 4, theta) == doctest::Approx(gap_direct(1.0, 4, theta)).epsilon(1e-12));
      CHECK(spiral_gap(0.25, 7, theta) == doctest::Approx(gap_direct(0.25, 7, theta)).epsilon(1e-12));
    }
    // Brute-force sweep over N in tests/oracles/oracles.py.
    int const N = spiral_line_count(4.0, 1.0, 0.75);
    CHECK(N == 51);
    CHECK(gap_direct(1.0, 4, 2.0 * std::numbers::pi / N) < 0.25);
    CHECK(gap_direct(1.0, 4, 2.0 * std::numbers::pi / (N - 1)) >= 0.25);
    CHECK_THROWS_AS(spiral_line_count(4.0, 2.0, 0.75), Error);
    CHECK_THROWS_AS(spiral_line_count(4.0, 0.3, 0.75), Error);
  }

  TEST_CASE("spiral scheme")
  {
    auto const s = gen_spiral(4.0, 1.0, 0.75);
    CHECK(s.size() == 51u * 4u + 1u);
    CHECK(s.point(0)[0] == 0.0);
    CHECK(s.point(s.size() - 1)[0] == 4.0);
    CHECK(s.point(s.size() - 1)[1] == 0.0);
    CHECK(s.domain().kind == DomainY::Kind::SpiralRegion);
    CHECK(s.domain().turns == 4);
  }

  TEST_CASE("scheme validation")
  {
    auto const Y = DomainY::square(1.0);
    CHECK_THROWS_AS(SamplingScheme(2, {0.0, 0.0, 0.0, 0.0}, Y), Error);
    CHECK_THROWS_AS(SamplingScheme(2, {2.0, 0.0}, Y), Error);
    CHECK_THROWS_AS(SamplingScheme(3, {0.0, 0.0, 0.0}, DomainY::square(1.0, 3)), Error);
    CHECK_THROWS_AS(SamplingScheme(2, {0.0, NAN}, Y), Error);
    CHECK_NOTHROW(SamplingScheme(2, {}, Y));
  }

  TEST_CASE("lattice densities")
  {
    auto const s = gen_jittered(1.0, 0.2, 0.0, 0);
    auto const d1 = measure_density(s, lp_norm(1.0, 2), 1000);
    CHECK(d1.delta_lower <= 0.2 + 1e-12);
    CHECK(d1.delta_upper >= 0.2 - 1e-12);
    CHECK(d1.delta_upper < 0.25);
    auto const d2 = measure_density(s, lp_norm(2.0, 2), 1000);
    CHECK(d2.delta_lower <= 0.2 / std::sqrt(2.0) + 1e-12);
    CHECK(d2.delta_upper >= 0.2 / std::sqrt(2.0) - 1e-12);
    auto const di = measure_density(s, max_norm(2), 1000);
    CHECK(di.delta_lower <= 0.1 + 1e-12);
    CHECK(di.delta_upper >= 0.1 - 1e-12);
    CHECK(d1.evaluated == 1000u * 1000u);
  }

  TEST_CASE("bracket contains the density near a curved boundary")
  {
    // One sample at the centre of the unit disk: delta = 1 exactly, attained on the circle.
    SamplingScheme const s(2, {0.0, 0.0}, DomainY::ball(1.0));
    for (int n : {64, 255, 1000}) {
      auto const d = measure_density(s, lp_norm(2.0, 2), n);
      CHECK(d.delta_lower <= 1.0);
      CHECK(d.delta_upper >= 1.0);
    }
    auto const r = measure_density_refined(s, lp_norm(2.0, 2), 64, 1e-4);
    CHECK(r.delta_lower <= 1.0);
    CHECK(r.delta_upper >= 1.0);
    CHECK(r.delta_upper - r.delta_lower <= 1e-4 + 1e-15);
  }

  TEST_CASE("grid bracket against a fine brute-force maximum")
  {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> pts(2 * 12);
    for (double &v : pts) { v = u(rng); }
    SamplingScheme const s(2, pts, DomainY::square(1.0));
    NormSpec const n = lp_norm(2.0, 2);
    auto const d = measure_density(s, n, 128);
    // Fine raster evaluated by a plain scan over all samples.
    double fine = 0.0;
    int const F = 1024;
    for (int i = 0; i <= F; ++i) {
      for (int j = 0; j <= F; ++j) {
        double const y[2] = {-1.0 + 2.0 * i / F, -1.0 + 2.0 * j / F};
        double best = kInfinity;
        for (std::size_t k = 0; k < s.size(); ++k) {
          double const diff[2] = {y[0] - pts[2 * k], y[1] - pts[2 * k + 1]};
          best = std::min(best, norm_eval(diff, n));
        }
        fine = std::max(fine, best);
      }
    }
    CHECK(d.delta_lower <= fine);
    CHECK(d.delta_upper >= fine);

    auto const r = measure_density_refined(s, n, 128, 1e-5);
    CHECK(r.delta_lower >= d.delta_lower);
    CHECK(r.delta_upper <= d.delta_upper + 1e-15);
    CHECK(r.delta_upper - r.delta_lower <= 1e-5 + 1e-15);
    CHECK(r.delta_lower <= fine + 1e-3);
    CHECK(r.delta_upper >= fine);
    CHECK(r.refine_levels > 0);
  }

  TEST_CASE("density argument validation")
  {
    SamplingScheme const empty(2, {}, DomainY::square(1.0));
    CHECK_THROWS_AS(measure_density(empty, lp_norm(2.0, 2), 64), Error);
    auto const s = gen_jittered(1.0, 0.5, 0.0, 0);
    CHECK_THROWS_AS(measure_density(s, lp_norm(2.0, 2), 1), Error);
    CHECK_THROWS_AS(measure_density(s, lp_norm(2.0, 1), 64), Error);
    CHECK_THROWS_AS(measure_density_refined(s, lp_norm(2.0, 2), 64, 0.0), Error);
  }
}
