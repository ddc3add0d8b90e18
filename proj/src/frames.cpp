#include "nufsample/frames.hpp"

#include "nufsample/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace nufs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FrameBoundReport bounds_from_exponent(double delta, double exponent, double threshold)
{
  FrameBoundReport rep;
  rep.delta = delta;
  rep.threshold = threshold;
  double const e = std::exp(exponent);
  rep.sqrtA_lower = 2.0 - e;
  rep.sqrtB_upper = e;
  rep.B_upper = std::exp(2.0 * exponent);
  rep.admissible = delta < threshold;
  return rep;
}

} // namespace

FrameBoundReport explicit_frame_bounds(double delta, double m_E, double c_star)
{
  require(std::isfinite(delta) && delta >= 0.0, "frame bounds: delta must be non-negative");
  require(std::isfinite(m_E) && m_E > 0.0, "frame bounds: m_E must be positive");
  require(std::isfinite(c_star) && c_star > 0.0, "frame bounds: c^* must be positive");
  FrameBoundReport rep =
      bounds_from_exponent(delta, kTwoPi * m_E * delta * c_star, std::numbers::ln2 / (kTwoPi * m_E * c_star));
  rep.m_E = m_E;
  rep.c_star = c_star;
  return rep;
}

FrameBoundReport grochenig_frame_bounds(double delta, int dim)
{
  require(std::isfinite(delta) && delta >= 0.0, "frame bounds: delta must be non-negative");
  require(dim >= 1, "frame bounds: dimension must be positive");
  FrameBoundReport rep = bounds_from_exponent(delta, kTwoPi * delta * dim, std::numbers::ln2 / (kTwoPi * dim));
  rep.dim = dim;
  return rep;
}

double sharp_regime_upper_bound(double m_E, double c_circ)
{
  require(std::isfinite(m_E) && m_E > 0.0, "upper bound: m_E must be positive");
  require(std::isfinite(c_circ) && c_circ > 0.0, "upper bound: c° must be positive");
  return std::exp(std::numbers::pi * m_E * c_circ);
}

double reconstruction_epsilon_limit(double delta, double m_E, double c_star)
{
  double const e = std::exp(kTwoPi * m_E * delta * c_star);
  return std::sqrt(std::max(0.0, e * (2.0 - e)));
}

double reconstruction_constant_bound(double delta, double m_E, double c_star, double epsilon)
{
  FrameBoundReport const fb = explicit_frame_bounds(delta, m_E, c_star);
  if (!fb.admissible) {
    std::ostringstream msg;
    msg << "reconstruction bound: delta = " << delta << " violates delta < " << fb.threshold;
    fail(msg.str());
  }
  double const limit = reconstruction_epsilon_limit(delta, m_E, c_star);
  if (!(epsilon > 0.0 && epsilon < limit)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "reconstruction bound: epsilon = " << epsilon << " outside the admissible interval (0, " << limit << ")";
    fail(msg.str());
  }
  return 2.0 / (std::sqrt(1.0 - epsilon * epsilon) + fb.sqrtA_lower - 1.0);
}

double finite_band_sqrtC1_lower(double delta, double m_E, double c_star, double residual)
{
  require(residual >= 0.0 && residual <= 1.0, "residual must lie in [0, 1]");
  FrameBoundReport const fb = explicit_frame_bounds(delta, m_E, c_star);
  return std::sqrt(1.0 - residual * residual) + fb.sqrtA_lower - 1.0;
}

double FrameRatio::constant() const { return C1 > 0.0 ? std::sqrt(C2 / C1) : kInfinity; }

FrameRatio empirical_frame_ratio(WeightedScheme const &ws, ReconSpace const &space)
{
  require(!ws.scheme.empty(), "frame ratio: the scheme is empty");
  if (space.size() > kEigenGuard) {
    throw Error(ErrorKind::Resource, "frame ratio: reconstruction space larger than 1e4 functions");
  }
  DesignOperator const op(ws, space);
  CMatrix const A = op.normal_matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(A, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) { throw Error(ErrorKind::Numerical, "frame ratio: eigensolver failed"); }
  FrameRatio out;
  out.C1 = eig.eigenvalues()(0);
  out.C2 = eig.eigenvalues()(eig.eigenvalues().size() - 1);
  return out;
}

} // namespace nufs
