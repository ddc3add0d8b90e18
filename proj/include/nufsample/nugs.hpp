#pragma once

#include "nufsample/weights.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nufs {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Normalized sinc, sin(pi t) / (pi t).
double sinc(double t);

/// Finite-dimensional reconstruction space on [-1, 1]^d with an orthonormal tensor basis.
/// Flat index j = jy * M + jx (d = 2) or j = jx (d = 1).
struct ReconSpace
{
  enum class Kind
  {
    Pixel, // L2-normalized indicators of an M^d uniform partition; Haar space for M = 2^J
    Trig   // e^{i pi k.x} / 2^{d/2}, k in {-M/2, ..., M/2 - 1}^d
  };

  Kind kind = Kind::Pixel;
  int M = 1;
  int dim = 2;

  static ReconSpace pixel(int M, int dim = 2);
  static ReconSpace trig(int M, int dim = 2);

  std::size_t size() const { return dim == 2 ? static_cast<std::size_t>(M) * M : static_cast<std::size_t>(M); }
};

char const *space_kind_name(ReconSpace::Kind kind);

/// Fourier transform of the 1D factor i at omega, f^(w) = int f(x) e^{-2 pi i w x} dx.
cplx basis_ft_1d(ReconSpace const &space, int i, double omega);

/// Value of the 1D factor i at x in [-1, 1].
cplx basis_value_1d(ReconSpace const &space, int i, double x);

cplx basis_ft(ReconSpace const &space, std::span<int const> multi_index, std::span<double const> omega);
cplx basis_ft(ReconSpace const &space, std::size_t j, std::span<double const> omega);

/// Test functions supported in [-1, 1]^d with closed-form Fourier transforms.
class TestFunction
{
public:
  enum class Kind
  {
    SeparableTrig, // sin(a pi (x+1)) cos(b pi (y+1)) on [-1, 1]^2 (the sine factor alone for d = 1)
    IndicatorRect,
    PixelImage // piecewise constant values on an M^d grid, index j = jy * M + jx
  };

  static TestFunction separable_trig(double a, double b, int dim = 2);
  static TestFunction indicator_rect(std::vector<double> lo, std::vector<double> hi);
  static TestFunction pixel_image(int M, std::vector<double> values, int dim = 2);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  cplx ft(std::span<double const> omega) const;
  double eval(std::span<double const> x) const;
  double l2_norm() const;
  /// Points where the function (or a derivative) jumps, per axis.
  std::vector<double> breakpoints(int axis) const;

  double a() const { return a_; }
  double b() const { return b_; }
  std::vector<double> const &lo() const { return lo_; }
  std::vector<double> const &hi() const { return hi_; }
  int image_size() const { return M_; }
  std::vector<double> const &values() const { return values_; }

private:
  Kind kind_ = Kind::SeparableTrig;
  int dim_ = 2;
  double a_ = 0.0, b_ = 0.0;
  std::vector<double> lo_, hi_;
  int M_ = 0;
  std::vector<double> values_;
};

CVector sample_test_function(TestFunction const &f, SamplingScheme const &s);

/// Weighted design operator G with entries sqrt(mu_n) phi_j^(omega_n). The tensor structure
/// is used for products; rows are generated on demand when the factor tables would not fit
/// the cache budget.
class DesignOperator
{
public:
  DesignOperator(WeightedScheme const &ws, ReconSpace const &space);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return space_.size(); }
  ReconSpace const &space() const { return space_; }

  cplx entry(std::size_t n, std::size_t j) const;
  CVector apply(CVector const &c) const;
  CVector apply_adjoint(CVector const &y) const;
  /// Dense G (resource guard rows * cols <= 1e8).
  CMatrix dense() const;
  /// G^H G accumulated from row blocks.
  CMatrix normal_matrix() const;
  /// sqrt(mu_n) * samples_n.
  CVector weight_samples(CVector const &samples) const;

private:
  struct Block
  {
    std::size_t begin, end;
    CMatrix fx, fy;
  };
  Block block(std::size_t begin, std::size_t end) const;
  CMatrix dense_block(Block const &b) const;

  ReconSpace space_;
  std::size_t rows_ = 0;
  int dim_ = 2;
  std::vector<double> coords_;
  Eigen::VectorXd sqrt_w_;
  bool cached_ = false;
  CMatrix fx_, fy_;
};

inline constexpr double kDenseGuard = 1e8;

using DesignMatrix = CMatrix;

/// Dense weighted design matrix; rows with mu = 0 are kept as zero rows.
DesignMatrix assemble_design(WeightedScheme const &ws, ReconSpace const &space);

struct SolveReport
{
  int iterations = 0;
  double final_residual = 0.0;           // ||G^H r_k|| / ||G^H y||
  std::vector<double> normal_residuals; // per iteration, starting with iteration 0
  std::vector<double> ls_residuals;     // ||y - G c_k||, non-increasing
  bool converged = false;
};

struct SolveResult
{
  CVector coeffs;
  SolveReport report;
};

/// Conjugate gradients on the normal equations G^H G c = G^H y (CGLS form), from c = 0.
template <typename Op>
SolveResult cgls(Op const &op, CVector const &y, int max_iters, double tol);

/// Weighted least squares over the space; samples are the raw f^(omega_n).
SolveResult nugs_solve(CVector const &samples, WeightedScheme const &ws, ReconSpace const &space, int max_iters,
                       double tol);

/// One application of the weighted adjoint: c_j = sum_n mu_n samples_n conj(phi_j^(omega_n)).
CVector gridding_recon(CVector const &samples, WeightedScheme const &ws, ReconSpace const &space);

/// sigma_max / sigma_min; +infinity when sigma_min < eps * sigma_max or rows < cols.
double condition_number(CMatrix const &D);

struct ResidualReport
{
  double value = 0.0;
  double lambda_min = 0.0;
  int quad_n = 0;
};

/// R_K(T) = sqrt(1 - lambda_min(G_K)), G_K the Gram matrix of the basis transforms over Y_K.
ResidualReport residual_RK(ReconSpace const &space, DomainY const &Y, int quad_n);

/// Orthogonal projection coefficients of f onto the space.
CVector project(ReconSpace const &space, TestFunction const &f, int quad_n = 64);

/// ||f - sum_j c_j phi_j||_{L2([-1,1]^d)} by cell-aligned tensor Gauss-Legendre quadrature.
double l2_error(CVector const &coeffs, ReconSpace const &space, TestFunction const &f, int quad_n);

/// Same error measured against the normalized (unit total mass) measure on [-1, 1]^d.
double l2_error_normalized(CVector const &coeffs, ReconSpace const &space, TestFunction const &f, int quad_n);

/// Values of sum_j c_j phi_j at the centres of an n^d raster over [-1, 1]^d, index iy * n + ix.
CVector evaluate_raster(CVector const &coeffs, ReconSpace const &space, int n);

/// Orthonormal Haar analysis of pixel coefficients (M a power of two), rows then columns.
CVector haar_forward(CVector const &pixel_coeffs, int M, int dim);
CVector haar_inverse(CVector const &haar_coeffs, int M, int dim);

// ---------------------------------------------------------------------------

template <typename Op>
SolveResult cgls(Op const &op, CVector const &y, int max_iters, double tol)
{
  SolveResult out;
  out.coeffs = CVector::Zero(static_cast<Eigen::Index>(op.cols()));
  CVector r = y;
  CVector s = op.apply_adjoint(r);
  CVector p = s;
  double gamma = s.squaredNorm();
  double const gamma0 = gamma;
  out.report.normal_residuals.push_back(gamma0 > 0.0 ? 1.0 : 0.0);
  out.report.ls_residuals.push_back(r.norm());
  if (gamma0 == 0.0) {
    out.report.converged = true;
    return out;
  }
  for (int it = 1; it <= max_iters; ++it) {
    CVector const q = op.apply(p);
    double const qq = q.squaredNorm();
    if (qq == 0.0) { break; }
    double const alpha = gamma / qq;
    out.coeffs += alpha * p;
    r -= alpha * q;
    s = op.apply_adjoint(r);
    double const gamma_new = s.squaredNorm();
    double const rel = std::sqrt(gamma_new / gamma0);
    out.report.iterations = it;
    out.report.normal_residuals.push_back(rel);
    out.report.ls_residuals.push_back(r.norm());
    out.report.final_residual = rel;
    if (rel <= tol) {
      out.report.converged = true;
      break;
    }
    p = s + (gamma_new / gamma) * p;
    gamma = gamma_new;
  }
  return out;
}

/// Adapts a dense matrix to the operator interface used by cgls.
struct DenseOperator
{
  CMatrix const &G;
  std::size_t cols() const { return static_cast<std::size_t>(G.cols()); }
  CVector apply(CVector const &c) const { return G * c; }
  CVector apply_adjoint(CVector const &y) const { return G.adjoint() * y; }
};

} // namespace nufs
