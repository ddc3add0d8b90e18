#include "nufsample/quadrature.hpp"

#include "nufsample/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nufs {

Rule1d gauss_legendre(int n)
{
  require(n >= 1, "Gauss-Legendre order must be positive");
  Rule1d rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double const p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) { p0 = 1.0; }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double const dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) { break; }
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double const p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    double const w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) { rule.nodes[n / 2] = 0.0; }
  return rule;
}

Rule1d composite_gauss_legendre(double a, double b, int panels, int order, std::vector<double> const &breaks)
{
  require(b > a, "quadrature interval must have positive length");
  require(panels >= 1, "quadrature needs at least one panel");
  std::vector<double> edges;
  edges.reserve(panels + 1 + breaks.size());
  for (int i = 0; i <= panels; ++i) { edges.push_back(a + (b - a) * i / panels); }
  for (double x : breaks) {
    if (x > a && x < b) { edges.push_back(x); }
  }
  std::sort(edges.begin(), edges.end());
  double const tiny = 1e-14 * (b - a);
  edges.erase(std::unique(edges.begin(), edges.end(), [&](double u, double v) { return v - u <= tiny; }), edges.end());

  Rule1d const base = gauss_legendre(order);
  Rule1d rule;
  rule.nodes.reserve((edges.size() - 1) * order);
  rule.weights.reserve((edges.size() - 1) * order);
  for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
    double const mid = 0.5 * (edges[e] + edges[e + 1]);
    double const half = 0.5 * (edges[e + 1] - edges[e]);
    for (int k = 0; k < order; ++k) {
      rule.nodes.push_back(mid + half * base.nodes[k]);
      rule.weights.push_back(half * base.weights[k]);
    }
  }
  return rule;
}

} // namespace nufs
