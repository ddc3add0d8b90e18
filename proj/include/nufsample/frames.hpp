#pragma once

#include "nufsample/nugs.hpp"

namespace nufs {

/// Explicit weighted-frame bounds reported in square-root form.
struct FrameBoundReport
{
  double delta = 0.0;
  double m_E = 1.0;
  double c_star = 1.0;
  int dim = 0;               // set by grochenig_frame_bounds only
  double threshold = 0.0;    // admissibility threshold on delta
  double sqrtA_lower = 1.0;  // may be <= 0 when inadmissible
  double sqrtB_upper = 1.0;
  double B_upper = 1.0;      // = sqrtB_upper^2 = exp(4 pi m_E delta c^*)
  bool admissible = true;
};

/// sqrt(A) >= 2 - exp(2 pi m_E delta c^*), sqrt(B) <= exp(2 pi m_E delta c^*), admissible iff
/// delta < log 2 / (2 pi m_E c^*). The upper bound stays valid when inadmissible.
FrameBoundReport explicit_frame_bounds(double delta, double m_E, double c_star);

/// Groechenig's classical form: exponent 2 pi delta d, threshold log 2 / (2 pi d).
FrameBoundReport grochenig_frame_bounds(double delta, int dim);

/// B <= exp(pi m_E c°) in the delta_{E°} < 1/4 regime (no computable lower bound there).
double sharp_regime_upper_bound(double m_E, double c_circ);

/// Open upper end of the admissible epsilon interval, sqrt(e (2 - e)), e = exp(2 pi m_E delta c^*).
double reconstruction_epsilon_limit(double delta, double m_E, double c_star);

/// C(Omega_N, T) <= 2 / (sqrt(1 - eps^2) + 1 - exp(2 pi m_E delta c^*)).
double reconstruction_constant_bound(double delta, double m_E, double c_star, double epsilon);

/// Lower estimate for sqrt(C1) on a finite bandwidth: sqrt(1 - R_K^2) + 1 - exp(2 pi m_E delta c^*).
double finite_band_sqrtC1_lower(double delta, double m_E, double c_star, double residual);

struct FrameRatio
{
  double C1 = 0.0; // smallest eigenvalue of G^H G
  double C2 = 0.0; // largest eigenvalue of G^H G
  double constant() const;
};

/// Extreme eigenvalues of the weighted normal matrix over the reconstruction space.
FrameRatio empirical_frame_ratio(WeightedScheme const &ws, ReconSpace const &space);

inline constexpr std::size_t kEigenGuard = 10'000;

} // namespace nufs
