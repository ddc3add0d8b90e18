#include "nufsample/nugs.hpp"

#include "nufsample/error.hpp"
#include "nufsample/parallel.hpp"
#include "nufsample/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace nufs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};
constexpr std::size_t kBlockRows = 4096;
constexpr double kCacheBytes = 256.0 * 1024 * 1024;

// sin(pi t) with the argument reduced to [-1, 1] first.
double sin_pi(double t)
{
  double const u = t - 2.0 * std::round(0.5 * t);
  return std::sin(kPi * u);
}

double cell_width(ReconSpace const &s) { return 2.0 / s.M; }

// int_a^b e^{-2 pi i w x} dx
cplx interval_ft(double a, double b, double w)
{
  double const len = b - a;
  return len * std::exp(-kI * (kPi * w * (a + b))) * sinc(w * len);
}

void check_space(ReconSpace const &s)
{
  require(s.M >= 1, "reconstruction space: M must be positive");
  require(s.dim == 1 || s.dim == 2, "reconstruction space: d must be 1 or 2");
}

int trig_frequency(ReconSpace const &s, int i) { return i - s.M / 2; }

} // namespace

double sinc(double t)
{
  double const x = kPi * t;
  if (std::abs(x) < 1e-4) {
    double const x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return sin_pi(t) / x;
}

ReconSpace ReconSpace::pixel(int M, int dim)
{
  ReconSpace s{Kind::Pixel, M, dim};
  check_space(s);
  return s;
}

ReconSpace ReconSpace::trig(int M, int dim)
{
  ReconSpace s{Kind::Trig, M, dim};
  check_space(s);
  return s;
}

char const *space_kind_name(ReconSpace::Kind kind) { return kind == ReconSpace::Kind::Pixel ? "pixel" : "trig"; }

cplx basis_ft_1d(ReconSpace const &space, int i, double omega)
{
  if (space.kind == ReconSpace::Kind::Pixel) {
    double const h = cell_width(space);
    double const a = -1.0 + h * i;
    return interval_ft(a, a + h, omega) / std::sqrt(h);
  }
  // (1/sqrt 2) int_{-1}^{1} e^{i pi k x} e^{-2 pi i w x} dx = sqrt 2 sinc(2 w - k)
  return std::sqrt(2.0) * sinc(2.0 * omega - trig_frequency(space, i));
}

cplx basis_value_1d(ReconSpace const &space, int i, double x)
{
  if (x < -1.0 || x > 1.0) { return 0.0; }
  if (space.kind == ReconSpace::Kind::Pixel) {
    double const h = cell_width(space);
    int cell = static_cast<int>(std::floor((x + 1.0) / h));
    cell = std::clamp(cell, 0, space.M - 1);
    return cell == i ? 1.0 / std::sqrt(h) : 0.0;
  }
  return std::exp(kI * (kPi * trig_frequency(space, i) * x)) / std::sqrt(2.0);
}

cplx basis_ft(ReconSpace const &space, std::span<int const> multi_index, std::span<double const> omega)
{
  check_space(space);
  require(static_cast<int>(multi_index.size()) == space.dim, "basis index dimension mismatch");
  require(static_cast<int>(omega.size()) == space.dim, "frequency dimension mismatch");
  cplx v = 1.0;
  for (int a = 0; a < space.dim; ++a) {
    if (multi_index[a] < 0 || multi_index[a] >= space.M) { fail("basis index out of range"); }
    require(std::isfinite(omega[a]), "frequency must be finite");
    v *= basis_ft_1d(space, multi_index[a], omega[a]);
  }
  return v;
}

cplx basis_ft(ReconSpace const &space, std::size_t j, std::span<double const> omega)
{
  if (j >= space.size()) { fail("basis index out of range"); }
  int idx[2] = {static_cast<int>(j % space.M), static_cast<int>(j / space.M)};
  return basis_ft(space, std::span<int const>(idx, space.dim), omega);
}

// --- test functions --------------------------------------------------------

TestFunction TestFunction::separable_trig(double a, double b, int dim)
{
  require(dim == 1 || dim == 2, "test function: d must be 1 or 2");
  require(std::isfinite(a) && std::isfinite(b), "test function parameters must be finite");
  TestFunction f;
  f.kind_ = Kind::SeparableTrig;
  f.dim_ = dim;
  f.a_ = a;
  f.b_ = b;
  return f;
}

TestFunction TestFunction::indicator_rect(std::vector<double> lo, std::vector<double> hi)
{
  require(!lo.empty() && lo.size() == hi.size() && lo.size() <= 2, "indicator: corners must have dimension 1 or 2");
  for (std::size_t j = 0; j < lo.size(); ++j) {
    require(-1.0 <= lo[j] && lo[j] < hi[j] && hi[j] <= 1.0, "indicator: rectangle must lie inside [-1, 1]^d");
  }
  TestFunction f;
  f.kind_ = Kind::IndicatorRect;
  f.dim_ = static_cast<int>(lo.size());
  f.lo_ = std::move(lo);
  f.hi_ = std::move(hi);
  return f;
}

TestFunction TestFunction::pixel_image(int M, std::vector<double> values, int dim)
{
  require(M >= 1 && (dim == 1 || dim == 2), "pixel image: bad size");
  std::size_t const n = dim == 2 ? static_cast<std::size_t>(M) * M : static_cast<std::size_t>(M);
  require(values.size() == n, "pixel image: expected M^d values");
  TestFunction f;
  f.kind_ = Kind::PixelImage;
  f.dim_ = dim;
  f.M_ = M;
  f.values_ = std::move(values);
  return f;
}

cplx TestFunction::ft(std::span<double const> omega) const
{
  require(static_cast<int>(omega.size()) == dim_, "frequency dimension mismatch");
  switch (kind_) {
  case Kind::SeparableTrig: {
    // sin(a pi (x+1)) = (e^{i a pi (x+1)} - e^{-i a pi (x+1)}) / 2i, and likewise for cos.
    cplx const ea = std::exp(kI * (kPi * a_));
    cplx v = (ea * 2.0 * sinc(2.0 * omega[0] - a_) - std::conj(ea) * 2.0 * sinc(2.0 * omega[0] + a_)) / (2.0 * kI);
    if (dim_ == 2) {
      cplx const eb = std::exp(kI * (kPi * b_));
      v *= (eb * 2.0 * sinc(2.0 * omega[1] - b_) + std::conj(eb) * 2.0 * sinc(2.0 * omega[1] + b_)) / 2.0;
    }
    return v;
  }
  case Kind::IndicatorRect: {
    cplx v = 1.0;
    for (int j = 0; j < dim_; ++j) { v *= interval_ft(lo_[j], hi_[j], omega[j]); }
    return v;
  }
  case Kind::PixelImage: {
    double const h = 2.0 / M_;
    std::vector<cplx> gx(M_), gy(dim_ == 2 ? M_ : 1, 1.0);
    for (int i = 0; i < M_; ++i) {
      gx[i] = interval_ft(-1.0 + h * i, -1.0 + h * (i + 1), omega[0]);
      if (dim_ == 2) { gy[i] = interval_ft(-1.0 + h * i, -1.0 + h * (i + 1), omega[1]); }
    }
    cplx v = 0.0;
    for (std::size_t iy = 0; iy < gy.size(); ++iy) {
      cplx row = 0.0;
      for (int ix = 0; ix < M_; ++ix) { row += values_[iy * M_ + ix] * gx[ix]; }
      v += row * gy[iy];
    }
    return v;
  }
  }
  return 0.0;
}

double TestFunction::eval(std::span<double const> x) const
{
  require(static_cast<int>(x.size()) == dim_, "point dimension mismatch");
  for (double v : x) {
    if (v < -1.0 || v > 1.0) { return 0.0; }
  }
  switch (kind_) {
  case Kind::SeparableTrig: {
    double v = std::sin(a_ * kPi * (x[0] + 1.0));
    if (dim_ == 2) { v *= std::cos(b_ * kPi * (x[1] + 1.0)); }
    return v;
  }
  case Kind::IndicatorRect:
    for (int j = 0; j < dim_; ++j) {
      if (x[j] < lo_[j] || x[j] > hi_[j]) { return 0.0; }
    }
    return 1.0;
  case Kind::PixelImage: {
    double const h = 2.0 / M_;
    int const ix = std::clamp(static_cast<int>(std::floor((x[0] + 1.0) / h)), 0, M_ - 1);
    int const iy = dim_ == 2 ? std::clamp(static_cast<int>(std::floor((x[1] + 1.0) / h)), 0, M_ - 1) : 0;
    return values_[static_cast<std::size_t>(iy) * M_ + ix];
  }
  }
  return 0.0;
}

double TestFunction::l2_norm() const
{
  switch (kind_) {
  case Kind::SeparableTrig: {
    // int_0^2 sin^2(a pi u) du = 1 - sinc(4a); int_0^2 cos^2(b pi u) du = 1 + sinc(4b)
    double n2 = 1.0 - sinc(4.0 * a_);
    if (dim_ == 2) { n2 *= 1.0 + sinc(4.0 * b_); }
    return std::sqrt(n2);
  }
  case Kind::IndicatorRect: {
    double vol = 1.0;
    for (int j = 0; j < dim_; ++j) { vol *= hi_[j] - lo_[j]; }
    return std::sqrt(vol);
  }
  case Kind::PixelImage: {
    double s = 0.0;
    for (double v : values_) { s += v * v; }
    return std::sqrt(s * std::pow(2.0 / M_, dim_));
  }
  }
  return 0.0;
}

std::vector<double> TestFunction::breakpoints(int axis) const
{
  switch (kind_) {
  case Kind::SeparableTrig: return {};
  case Kind::IndicatorRect: return {lo_[axis], hi_[axis]};
  case Kind::PixelImage: {
    std::vector<double> b;
    for (int i = 1; i < M_; ++i) { b.push_back(-1.0 + 2.0 * i / M_); }
    return b;
  }
  }
  return {};
}

CVector sample_test_function(TestFunction const &f, SamplingScheme const &s)
{
  require(f.dim() == s.dim(), "test function dimension does not match the scheme");
  CVector out(static_cast<Eigen::Index>(s.size()));
  parallel_for(s.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) { out(static_cast<Eigen::Index>(n)) = f.ft(s.point(n)); }
  });
  return out;
}

// --- design operator -------------------------------------------------------

DesignOperator::DesignOperator(WeightedScheme const &ws, ReconSpace const &space)
  : space_(space)
  , rows_(ws.scheme.size())
  , dim_(ws.scheme.dim())
  , coords_(ws.scheme.coords())
{
  check_space(space);
  require(rows_ >= 1, "design: the scheme is empty");
  require(space.dim == dim_, "design: space dimension does not match the scheme");
  require(ws.weights.size() == rows_, "design: one weight per sample is required");
  sqrt_w_.resize(static_cast<Eigen::Index>(rows_));
  for (std::size_t n = 0; n < rows_; ++n) { sqrt_w_(static_cast<Eigen::Index>(n)) = std::sqrt(ws.weights[n]); }
  double const bytes = static_cast<double>(rows_) * space.M * dim_ * sizeof(cplx);
  if (bytes <= kCacheBytes) {
    Block b = block(0, rows_);
    fx_ = std::move(b.fx);
    fy_ = std::move(b.fy);
    cached_ = true;
  }
}

DesignOperator::Block DesignOperator::block(std::size_t begin, std::size_t end) const
{
  Block b{begin, end, {}, {}};
  auto const count = static_cast<Eigen::Index>(end - begin);
  if (cached_) {
    b.fx = fx_.middleRows(static_cast<Eigen::Index>(begin), count);
    if (dim_ == 2) { b.fy = fy_.middleRows(static_cast<Eigen::Index>(begin), count); }
    return b;
  }
  b.fx.resize(count, space_.M);
  if (dim_ == 2) { b.fy.resize(count, space_.M); }
  for (Eigen::Index r = 0; r < count; ++r) {
    std::size_t const n = begin + static_cast<std::size_t>(r);
    for (int i = 0; i < space_.M; ++i) {
      b.fx(r, i) = basis_ft_1d(space_, i, coords_[n * dim_]);
      if (dim_ == 2) { b.fy(r, i) = basis_ft_1d(space_, i, coords_[n * dim_ + 1]); }
    }
  }
  return b;
}

cplx DesignOperator::entry(std::size_t n, std::size_t j) const
{
  require(n < rows_ && j < cols(), "design entry out of range");
  int const jx = static_cast<int>(j % space_.M);
  int const jy = static_cast<int>(j / space_.M);
  cplx v = basis_ft_1d(space_, jx, coords_[n * dim_]);
  if (dim_ == 2) { v *= basis_ft_1d(space_, jy, coords_[n * dim_ + 1]); }
  return sqrt_w_(static_cast<Eigen::Index>(n)) * v;
}

CMatrix DesignOperator::dense_block(Block const &b) const
{
  auto const count = static_cast<Eigen::Index>(b.end - b.begin);
  CMatrix G(count, static_cast<Eigen::Index>(cols()));
  int const M = space_.M;
  for (Eigen::Index r = 0; r < count; ++r) {
    double const w = sqrt_w_(static_cast<Eigen::Index>(b.begin) + r);
    if (dim_ == 1) {
      for (int jx = 0; jx < M; ++jx) { G(r, jx) = w * b.fx(r, jx); }
      continue;
    }
    for (int jy = 0; jy < M; ++jy) {
      for (int jx = 0; jx < M; ++jx) { G(r, jy * M + jx) = w * (b.fx(r, jx) * b.fy(r, jy)); }
    }
  }
  return G;
}

CVector DesignOperator::apply(CVector const &c) const
{
  require(static_cast<std::size_t>(c.size()) == cols(), "design apply: coefficient length mismatch");
  CVector out(static_cast<Eigen::Index>(rows_));
  std::size_t const nblocks = (rows_ + kBlockRows - 1) / kBlockRows;
  int const M = space_.M;
  parallel_for(nblocks, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      std::size_t const begin = k * kBlockRows;
      std::size_t const end = std::min(rows_, begin + kBlockRows);
      Block const b = block(begin, end);
      auto const count = static_cast<Eigen::Index>(end - begin);
      CVector part;
      if (dim_ == 1) {
        part = b.fx * c;
      } else {
        Eigen::Map<CMatrix const> C(c.data(), M, M); // C(jx, jy)
        CMatrix const P = b.fx * C;
        part = P.cwiseProduct(b.fy).rowwise().sum();
      }
      out.segment(static_cast<Eigen::Index>(begin), count) =
          part.cwiseProduct(sqrt_w_.segment(static_cast<Eigen::Index>(begin), count).cast<cplx>());
    }
  });
  return out;
}

CVector DesignOperator::apply_adjoint(CVector const &y) const
{
  require(static_cast<std::size_t>(y.size()) == rows_, "design adjoint: sample length mismatch");
  std::size_t const nblocks = (rows_ + kBlockRows - 1) / kBlockRows;
  int const M = space_.M;
  std::vector<CVector> partial(nblocks);
  parallel_for(nblocks, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      std::size_t const begin = k * kBlockRows;
      std::size_t const end = std::min(rows_, begin + kBlockRows);
      Block const b = block(begin, end);
      auto const count = static_cast<Eigen::Index>(end - begin);
      CVector const z = y.segment(static_cast<Eigen::Index>(begin), count)
                            .cwiseProduct(sqrt_w_.segment(static_cast<Eigen::Index>(begin), count).cast<cplx>());
      if (dim_ == 1) {
        partial[k] = b.fx.adjoint() * z;
      } else {
        CMatrix const C = b.fx.adjoint() * (z.asDiagonal() * b.fy.conjugate());
        partial[k] = Eigen::Map<CVector const>(C.data(), static_cast<Eigen::Index>(M) * M);
      }
    }
  });
  // Block order, so the sum does not depend on the thread count.
  CVector out = CVector::Zero(static_cast<Eigen::Index>(cols()));
  for (auto const &p : partial) { out += p; }
  return out;
}

CMatrix DesignOperator::dense() const
{
  if (static_cast<double>(rows_) * static_cast<double>(cols()) > kDenseGuard) {
    throw Error(ErrorKind::Resource,
                "design: dense matrix exceeds 1e8 entries; use the operator form (DesignOperator::apply)");
  }
  return dense_block(block(0, rows_));
}

CMatrix DesignOperator::normal_matrix() const
{
  auto const m = static_cast<Eigen::Index>(cols());
  CMatrix A = CMatrix::Zero(m, m);
  for (std::size_t begin = 0; begin < rows_; begin += kBlockRows) {
    std::size_t const end = std::min(rows_, begin + kBlockRows);
    CMatrix const G = dense_block(block(begin, end));
    A.selfadjointView<Eigen::Lower>().rankUpdate(G.adjoint());
  }
  A.triangularView<Eigen::StrictlyUpper>() = A.adjoint();
  return A;
}

CVector DesignOperator::weight_samples(CVector const &samples) const
{
  require(static_cast<std::size_t>(samples.size()) == rows_, "sample vector length does not match the scheme");
  for (Eigen::Index n = 0; n < samples.size(); ++n) {
    require(std::isfinite(samples(n).real()) && std::isfinite(samples(n).imag()), "samples must be finite");
  }
  return samples.cwiseProduct(sqrt_w_.cast<cplx>());
}

DesignMatrix assemble_design(WeightedScheme const &ws, ReconSpace const &space)
{
  return DesignOperator(ws, space).dense();
}

SolveResult nugs_solve(CVector const &samples, WeightedScheme const &ws, ReconSpace const &space, int max_iters,
                       double tol)
{
  require(max_iters >= 0, "solver: max_iters must be non-negative");
  require(tol >= 0.0, "solver: tol must be non-negative");
  DesignOperator const op(ws, space);
  CVector const y = op.weight_samples(samples);
  return cgls(op, y, max_iters, tol);
}

CVector gridding_recon(CVector const &samples, WeightedScheme const &ws, ReconSpace const &space)
{
  DesignOperator const op(ws, space);
  return op.apply_adjoint(op.weight_samples(samples));
}

double condition_number(CMatrix const &D)
{
  require(D.rows() >= 1 && D.cols() >= 1, "condition number: empty matrix");
  if (static_cast<double>(D.rows()) * static_cast<double>(D.cols()) > kDenseGuard) {
    throw Error(ErrorKind::Resource, "condition number: matrix exceeds 1e8 entries");
  }
  if (D.rows() < D.cols()) { return kInfinity; }
  Eigen::BDCSVD<CMatrix> svd(D);
  auto const &sv = svd.singularValues();
  double const smax = sv(0);
  double const smin = sv(sv.size() - 1);
  if (!(smax > 0.0) || smin < std::numeric_limits<double>::epsilon() * smax) { return kInfinity; }
  return smax / smin;
}

// --- residual and errors ---------------------------------------------------

namespace {

constexpr int kResidualOrder = 16;

CMatrix ft_table(ReconSpace const &space, std::vector<double> const &nodes)
{
  CMatrix T(static_cast<Eigen::Index>(nodes.size()), space.M);
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    for (int i = 0; i < space.M; ++i) { T(static_cast<Eigen::Index>(q), i) = basis_ft_1d(space, i, nodes[q]); }
  }
  return T;
}

CMatrix value_table(ReconSpace const &space, std::vector<double> const &nodes)
{
  CMatrix T(static_cast<Eigen::Index>(nodes.size()), space.M);
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    for (int i = 0; i < space.M; ++i) { T(static_cast<Eigen::Index>(q), i) = basis_value_1d(space, i, nodes[q]); }
  }
  return T;
}

Rule1d error_rule(ReconSpace const &space, TestFunction const &f, int axis, int quad_n)
{
  constexpr int order = 8;
  std::vector<double> breaks = f.breakpoints(axis);
  if (space.kind == ReconSpace::Kind::Pixel) {
    for (int i = 1; i < space.M; ++i) { breaks.push_back(-1.0 + 2.0 * i / space.M); }
  }
  int const panels = std::max(1, (quad_n + order - 1) / order);
  return composite_gauss_legendre(-1.0, 1.0, panels, order, breaks);
}

// F(qx, qy) = f at tensor nodes; column qy.
Eigen::MatrixXd function_grid(TestFunction const &f, Rule1d const &rx, Rule1d const &ry)
{
  Eigen::MatrixXd F(static_cast<Eigen::Index>(rx.nodes.size()), static_cast<Eigen::Index>(ry.nodes.size()));
  for (std::size_t qy = 0; qy < ry.nodes.size(); ++qy) {
    for (std::size_t qx = 0; qx < rx.nodes.size(); ++qx) {
      double const p[2] = {rx.nodes[qx], ry.nodes[qy]};
      F(static_cast<Eigen::Index>(qx), static_cast<Eigen::Index>(qy)) = f.eval(std::span<double const>(p, f.dim()));
    }
  }
  return F;
}

} // namespace

ResidualReport residual_RK(ReconSpace const &space, DomainY const &Y, int quad_n)
{
  check_space(space);
  require(quad_n >= 16, "residual: quad_n must be at least 16");
  require(Y.dim == space.dim, "residual: domain dimension does not match the space");
  double const B = Y.bounding_half_width();
  int const panels = std::max(1, (quad_n + kResidualOrder - 1) / kResidualOrder);
  Rule1d const rule = composite_gauss_legendre(-B, B, panels, kResidualOrder);
  CMatrix const T = ft_table(space, rule.nodes);
  Eigen::VectorXd const w = Eigen::Map<Eigen::VectorXd const>(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
  auto const m = static_cast<Eigen::Index>(space.size());
  CMatrix G(m, m);

  if (Y.kind == DomainY::Kind::Square || space.dim == 1) {
    // The domain mask is the full tensor grid (d = 1 intervals are squares too).
    require(Y.kind == DomainY::Kind::Square || space.dim == 2, "residual: 1D domains must be intervals");
    CMatrix const G1 = T.adjoint() * w.cast<cplx>().asDiagonal() * T;
    if (space.dim == 1) {
      G = G1;
    } else {
      int const M = space.M;
      for (int jy = 0; jy < M; ++jy) {
        for (int ky = 0; ky < M; ++ky) { G.block(jy * M, ky * M, M, M) = G1(jy, ky) * G1; }
      }
    }
  } else {
    G.setZero();
    int const M = space.M;
    std::size_t const Q = rule.nodes.size();
    for (std::size_t qy = 0; qy < Q; ++qy) {
      std::vector<Eigen::Index> inside;
      for (std::size_t qx = 0; qx < Q; ++qx) {
        double const p[2] = {rule.nodes[qx], rule.nodes[qy]};
        if (domain_contains(Y, std::span<double const>(p, 2))) { inside.push_back(static_cast<Eigen::Index>(qx)); }
      }
      if (inside.empty()) { continue; }
      CMatrix Phi(static_cast<Eigen::Index>(inside.size()), m);
      for (std::size_t r = 0; r < inside.size(); ++r) {
        double const s = std::sqrt(w(inside[r]) * w(static_cast<Eigen::Index>(qy)));
        for (int jy = 0; jy < M; ++jy) {
          cplx const fy = T(static_cast<Eigen::Index>(qy), jy) * s;
          for (int jx = 0; jx < M; ++jx) { Phi(static_cast<Eigen::Index>(r), jy * M + jx) = T(inside[r], jx) * fy; }
        }
      }
      G.selfadjointView<Eigen::Lower>().rankUpdate(Phi.adjoint());
    }
    G.triangularView<Eigen::StrictlyUpper>() = G.adjoint();
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(G, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) { throw Error(ErrorKind::Numerical, "residual: eigensolver failed"); }
  ResidualReport rep;
  rep.lambda_min = eig.eigenvalues()(0);
  rep.quad_n = panels * kResidualOrder;
  if (rep.lambda_min > 1.0 + 1e-6) {
    throw Error(ErrorKind::Numerical, "residual: quadrature failure, lambda_min(G_K) exceeds 1");
  }
  rep.value = std::sqrt(std::clamp(1.0 - rep.lambda_min, 0.0, 1.0));
  return rep;
}

CVector project(ReconSpace const &space, TestFunction const &f, int quad_n)
{
  check_space(space);
  require(f.dim() == space.dim, "projection: dimension mismatch");
  auto const m = static_cast<Eigen::Index>(space.size());
  CVector c(m);
  int const M = space.M;
  if (space.kind == ReconSpace::Kind::Trig) {
    // <f, e^{i pi k.x} / 2^{d/2}> = f^(k/2) / 2^{d/2}
    double const norm = std::pow(2.0, -0.5 * space.dim);
    for (Eigen::Index j = 0; j < m; ++j) {
      double w[2] = {0.5 * trig_frequency(space, static_cast<int>(j % M)),
                     0.5 * trig_frequency(space, static_cast<int>(j / M))};
      c(j) = f.ft(std::span<double const>(w, space.dim)) * norm;
    }
    return c;
  }
  Rule1d const rx = error_rule(space, f, 0, quad_n);
  Rule1d const ry = space.dim == 2 ? error_rule(space, f, 1, quad_n) : Rule1d{{0.0}, {1.0}};
  Eigen::MatrixXd const F = function_grid(f, rx, ry);
  CMatrix const Bx = value_table(space, rx.nodes);
  Eigen::VectorXd const wx = Eigen::Map<Eigen::VectorXd const>(rx.weights.data(), static_cast<Eigen::Index>(rx.weights.size()));
  Eigen::VectorXd const wy = Eigen::Map<Eigen::VectorXd const>(ry.weights.data(), static_cast<Eigen::Index>(ry.weights.size()));
  CMatrix const Fw = (wx.asDiagonal() * F * wy.asDiagonal()).cast<cplx>();
  if (space.dim == 1) {
    CVector const col = Bx.adjoint() * Fw.col(0);
    return col;
  }
  CMatrix const By = value_table(space, ry.nodes);
  CMatrix const C = Bx.adjoint() * Fw * By.conjugate(); // C(jx, jy)
  return Eigen::Map<CVector const>(C.data(), m);
}

double l2_error(CVector const &coeffs, ReconSpace const &space, TestFunction const &f, int quad_n)
{
  check_space(space);
  require(quad_n >= 32, "l2 error: quad_n must be at least 32");
  require(f.dim() == space.dim, "l2 error: dimension mismatch");
  require(static_cast<std::size_t>(coeffs.size()) == space.size(), "l2 error: coefficient length mismatch");
  Rule1d const rx = error_rule(space, f, 0, quad_n);
  Rule1d const ry = space.dim == 2 ? error_rule(space, f, 1, quad_n) : Rule1d{{0.0}, {1.0}};
  Eigen::MatrixXd const F = function_grid(f, rx, ry);
  CMatrix const Bx = value_table(space, rx.nodes);
  CMatrix Gv;
  if (space.dim == 1) {
    Gv = Bx * coeffs;
  } else {
    CMatrix const By = value_table(space, ry.nodes);
    Eigen::Map<CMatrix const> C(coeffs.data(), space.M, space.M);
    Gv = Bx * C * By.transpose();
  }
  double s = 0.0;
  for (Eigen::Index qy = 0; qy < F.cols(); ++qy) {
    for (Eigen::Index qx = 0; qx < F.rows(); ++qx) {
      s += rx.weights[qx] * ry.weights[qy] * std::norm(F(qx, qy) - Gv(qx, qy));
    }
  }
  return std::sqrt(s);
}

double l2_error_normalized(CVector const &coeffs, ReconSpace const &space, TestFunction const &f, int quad_n)
{
  return l2_error(coeffs, space, f, quad_n) / std::sqrt(std::pow(2.0, space.dim));
}

CVector evaluate_raster(CVector const &coeffs, ReconSpace const &space, int n)
{
  check_space(space);
  require(n >= 1, "raster: size must be positive");
  require(static_cast<std::size_t>(coeffs.size()) == space.size(), "raster: coefficient length mismatch");
  std::vector<double> nodes(n);
  for (int i = 0; i < n; ++i) { nodes[i] = -1.0 + (i + 0.5) * 2.0 / n; }
  CMatrix const B = value_table(space, nodes);
  if (space.dim == 1) { return B * coeffs; }
  Eigen::Map<CMatrix const> C(coeffs.data(), space.M, space.M);
  CMatrix const V = B * C * B.transpose(); // V(ix, iy)
  return Eigen::Map<CVector const>(V.data(), static_cast<Eigen::Index>(n) * n);
}

namespace {

bool power_of_two(int M) { return M >= 1 && (M & (M - 1)) == 0; }

void haar_1d(cplx *v, int M, std::ptrdiff_t stride, bool forward)
{
  std::vector<cplx> tmp(M);
  double const s = 1.0 / std::sqrt(2.0);
  if (forward) {
    for (int len = M; len >= 2; len /= 2) {
      for (int i = 0; i < len / 2; ++i) {
        cplx const a = v[(2 * i) * stride], b = v[(2 * i + 1) * stride];
        tmp[i] = s * (a + b);
        tmp[len / 2 + i] = s * (a - b);
      }
      for (int i = 0; i < len; ++i) { v[i * stride] = tmp[i]; }
    }
  } else {
    for (int len = 2; len <= M; len *= 2) {
      for (int i = 0; i < len / 2; ++i) {
        cplx const a = v[i * stride], d = v[(len / 2 + i) * stride];
        tmp[2 * i] = s * (a + d);
        tmp[2 * i + 1] = s * (a - d);
      }
      for (int i = 0; i < len; ++i) { v[i * stride] = tmp[i]; }
    }
  }
}

CVector haar_apply(CVector const &in, int M, int dim, bool forward)
{
  require(power_of_two(M), "Haar transform: M must be a power of two");
  require(dim == 1 || dim == 2, "Haar transform: d must be 1 or 2");
  std::size_t const n = dim == 2 ? static_cast<std::size_t>(M) * M : static_cast<std::size_t>(M);
  require(static_cast<std::size_t>(in.size()) == n, "Haar transform: coefficient length mismatch");
  CVector v = in;
  if (dim == 1) {
    haar_1d(v.data(), M, 1, forward);
    return v;
  }
  for (int iy = 0; iy < M; ++iy) { haar_1d(v.data() + static_cast<std::ptrdiff_t>(iy) * M, M, 1, forward); }
  for (int ix = 0; ix < M; ++ix) { haar_1d(v.data() + ix, M, M, forward); }
  return v;
}

} // namespace

CVector haar_forward(CVector const &pixel_coeffs, int M, int dim) { return haar_apply(pixel_coeffs, M, dim, true); }

CVector haar_inverse(CVector const &haar_coeffs, int M, int dim) { return haar_apply(haar_coeffs, M, dim, false); }

} // namespace nufs
