#include <doctest.h>

#include "nufsample/frames.hpp"
#include "nufsample/nugs.hpp"
#include "nufsample/parallel.hpp"

#include <random>

using namespace nufs;

namespace {

SamplingScheme random_scheme(std::mt19937_64 &rng, int n, double K)
{
  std::uniform_real_distribution<double> u(-K, K);
  std::vector<double> pts(2 * n);
  for (double &v : pts) { v = u(rng); }
  return SamplingScheme(2, pts, DomainY::square(K));
}

struct ThreadGuard
{
  int saved = thread_count();
  ~ThreadGuard() { set_thread_count(saved); }
};

} // namespace

TEST_SUITE("properties")
{
  TEST_CASE("norm equivalence holds for random vectors")
  {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (int d = 1; d <= 6; ++d) {
      for (double p : {1.0, 1.5, 2.0, 3.0, kInfinity}) {
        NormSpec const n = p == kInfinity ? max_norm(d) : lp_norm(p, d);
        auto const c = equivalence_constants(n);
        for (int t = 0; t < 200; ++t) {
          std::vector<double> x(d);
          for (double &v : x) { v = g(rng); }
          double const r = norm_eval(x, lp_norm(2.0, d)) / norm_eval(x, n);
          CHECK(r >= c.lower * (1.0 - 1e-12));
          CHECK(r <= c.upper * (1.0 + 1e-12));
        }
      }
    }
  }

  TEST_CASE("adding samples never increases the density bracket")
  {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 5; ++trial) {
      auto const big = random_scheme(rng, 60, 1.0);
      std::vector<double> sub(big.coords().begin(), big.coords().begin() + 2 * 30);
      SamplingScheme const small(2, sub, big.domain());
      for (auto const &n : {lp_norm(1.0, 2), lp_norm(2.0, 2), max_norm(2)}) {
        auto const a = measure_density(big, n, 96);
        auto const b = measure_density(small, n, 96);
        CHECK(a.delta_lower <= b.delta_lower);
        CHECK(a.delta_upper <= b.delta_upper);
        CHECK(a.delta_lower <= a.delta_upper);
      }
    }
  }

  TEST_CASE("density brackets scale with the scheme")
  {
    auto const a = gen_jittered(1.0, 0.25, 0.05, 5);
    auto const b = gen_jittered(2.0, 0.5, 0.1, 5);
    for (std::size_t i = 0; i < a.coords().size(); ++i) { REQUIRE(b.coords()[i] == 2.0 * a.coords()[i]); }
    auto const da = measure_density(a, lp_norm(2.0, 2), 200);
    auto const db = measure_density(b, lp_norm(2.0, 2), 200);
    CHECK(db.delta_lower == doctest::Approx(2.0 * da.delta_lower).epsilon(1e-14));
    CHECK(db.delta_upper == doctest::Approx(2.0 * da.delta_upper).epsilon(1e-14));
  }

  TEST_CASE("Voronoi weights are non-negative and sum to the domain measure")
  {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 5; ++trial) {
      auto const s = random_scheme(rng, 50, 1.5);
      for (auto const &n : {lp_norm(1.0, 2), lp_norm(2.0, 2), max_norm(2)}) {
        auto const ws = voronoi_weights_grid(s, n, 200);
        double sum = 0.0;
        for (double w : ws.weights) {
          CHECK(w >= 0.0);
          sum += w;
        }
        CHECK(sum == doctest::Approx(9.0).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("results do not depend on the thread count")
  {
    ThreadGuard guard;
    auto const s = gen_polar(4.0, 0.5, 12);
    set_thread_count(1);
    auto const w1 = voronoi_weights_grid(s, lp_norm(2.0, 2), 300);
    auto const d1 = measure_density_refined(s, lp_norm(1.0, 2), 64, 1e-3);
    set_thread_count(4);
    auto const w4 = voronoi_weights_grid(s, lp_norm(2.0, 2), 300);
    auto const d4 = measure_density_refined(s, lp_norm(1.0, 2), 64, 1e-3);
    CHECK(w1.weights == w4.weights);
    CHECK(d1.delta_lower == d4.delta_lower);
    CHECK(d1.delta_upper == d4.delta_upper);
  }

  TEST_CASE("Rayleigh quotients of the design lie in the frame ratio interval")
  {
    std::mt19937_64 rng(4);
    auto const s = gen_jittered(3.0, 0.4, 0.1, 6);
    auto const ws = voronoi_weights_grid(s, lp_norm(2.0, 2), 128);
    auto const space = ReconSpace::trig(4);
    auto const fr = empirical_frame_ratio(ws, space);
    DesignOperator const op(ws, space);
    for (int t = 0; t < 20; ++t) {
      CVector const c = CVector::Random(16);
      double const q = op.apply(c).squaredNorm() / c.squaredNorm();
      CHECK(q >= fr.C1 * (1.0 - 1e-10));
      CHECK(q <= fr.C2 * (1.0 + 1e-10));
    }
  }

  TEST_CASE("CG least-squares residuals are non-increasing")
  {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
      auto const s = random_scheme(rng, 120, 3.0);
      auto const ws = voronoi_weights_grid(s, lp_norm(2.0, 2), 128);
      auto const f = TestFunction::separable_trig(1.0 + trial, 0.5 + trial);
      auto const res = nugs_solve(sample_test_function(f, s), ws, ReconSpace::pixel(5), 30, 0.0);
      auto const &r = res.report.ls_residuals;
      for (std::size_t k = 1; k < r.size(); ++k) { CHECK(r[k] <= r[k - 1] * (1.0 + 1e-12)); }
    }
  }

  TEST_CASE("Haar transform is orthonormal")
  {
    for (int M : {1, 2, 8, 16}) {
      for (int dim : {1, 2}) {
        std::size_t const n = dim == 2 ? static_cast<std::size_t>(M) * M : M;
        CVector const a = CVector::Random(static_cast<Eigen::Index>(n));
        CVector const b = CVector::Random(static_cast<Eigen::Index>(n));
        auto const ha = haar_forward(a, M, dim);
        auto const hb = haar_forward(b, M, dim);
        CHECK(std::abs(ha.dot(hb) - a.dot(b)) < 1e-12);
        CHECK((haar_inverse(ha, M, dim) - a).norm() < 1e-12);
      }
    }
  }

  TEST_CASE("residual R_K does not increase with K")
  {
    double prev = 1.0;
    for (double K : {1.0, 2.0, 4.0, 8.0}) {
      double const r = residual_RK(ReconSpace::trig(4), DomainY::square(K), 128).value;
      CHECK(r <= prev + 1e-9);
      prev = r;
    }
  }
}
