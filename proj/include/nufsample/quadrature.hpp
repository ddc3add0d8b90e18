#pragma once

#include <vector>

namespace nufs {

struct Rule1d
{
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
Rule1d gauss_legendre(int n);

/// Composite Gauss-Legendre rule on [a, b]: `panels` equal panels, further split at every
/// breakpoint inside (a, b), with `order` nodes per sub-panel.
Rule1d composite_gauss_legendre(double a, double b, int panels, int order, std::vector<double> const &breaks = {});

} // namespace nufs
