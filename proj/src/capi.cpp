#include "nufsample/nufsample.h"

#include "nufsample/error.hpp"
#include "nufsample/frames.hpp"
#include "nufsample/io.hpp"
#include "nufsample/nugs.hpp"
#include "nufsample/parallel.hpp"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

struct nufs_scheme
{
  nufs::SamplingScheme s;
};

struct nufs_weighted
{
  nufs::WeightedScheme w;
};

struct nufs_function
{
  nufs::TestFunction f;
};

namespace {

thread_local std::string g_last_error;

nufs_status record(nufs_status st, char const *what)
{
  g_last_error = what;
  return st;
}

template <typename Fn>
nufs_status guarded(Fn &&fn)
{
  try {
    fn();
    g_last_error.clear();
    return NUFS_OK;
  } catch (nufs::Error const &e) {
    return record(static_cast<nufs_status>(static_cast<int>(e.kind())), e.what());
  } catch (std::bad_alloc const &) {
    return record(NUFS_ERR_RESOURCE, "out of memory");
  } catch (std::exception const &e) {
    return record(NUFS_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(NUFS_ERR_INTERNAL, "unknown error");
  }
}

void need(void const *p, char const *name)
{
  if (p == nullptr) { nufs::fail(std::string(name) + " must not be NULL"); }
}

void check_dim(int dim)
{
  nufs::require(dim >= 1 && dim <= NUFS_MAX_DIM, "dimension must be between 1 and " + std::to_string(NUFS_MAX_DIM));
}

nufs::NormSpec to_norm(nufs_norm const *n)
{
  need(n, "norm");
  check_dim(n->dim);
  nufs::NormSpec out = nufs::lp_norm(n->p, n->dim);
  if (n->has_scales) { out.scales.assign(n->scales, n->scales + n->dim); }
  return out;
}

nufs_norm from_norm(nufs::NormSpec const &n)
{
  nufs_norm out{};
  out.p = n.p;
  out.dim = n.dim;
  out.has_scales = n.scales.empty() ? 0 : 1;
  for (int j = 0; j < n.dim && j < NUFS_MAX_DIM; ++j) { out.scales[j] = n.scale(j); }
  return out;
}

nufs::DomainY to_domain(nufs_domain const *Y)
{
  need(Y, "domain");
  switch (Y->kind) {
  case NUFS_DOMAIN_SQUARE: return nufs::DomainY::square(Y->K, Y->dim);
  case NUFS_DOMAIN_BALL: return nufs::DomainY::ball(Y->K, Y->dim);
  case NUFS_DOMAIN_SPIRAL: return nufs::DomainY::spiral_region(Y->r, Y->turns);
  }
  nufs::fail("unknown domain kind");
}

nufs_domain from_domain(nufs::DomainY const &Y)
{
  nufs_domain out{};
  out.kind = Y.kind == nufs::DomainY::Kind::Square ? NUFS_DOMAIN_SQUARE
             : Y.kind == nufs::DomainY::Kind::Ball ? NUFS_DOMAIN_BALL
                                                   : NUFS_DOMAIN_SPIRAL;
  out.dim = Y.dim;
  out.K = Y.K;
  out.r = Y.r;
  out.turns = Y.turns;
  return out;
}

nufs::SupportSet to_support(nufs_support const *E)
{
  need(E, "support set");
  check_dim(E->dim);
  if (E->shape == NUFS_SUPPORT_LP_BALL) { return nufs::SupportSet::lp_ball(E->p, E->radius, E->dim); }
  if (E->shape == NUFS_SUPPORT_RECTANGLE) {
    return nufs::SupportSet::rectangle(std::vector<double>(E->half_widths, E->half_widths + E->dim));
  }
  nufs::fail("unknown support shape");
}

nufs::ReconSpace to_space(nufs_space const *s)
{
  need(s, "space");
  if (s->kind == NUFS_SPACE_PIXEL) { return nufs::ReconSpace::pixel(s->M, s->dim); }
  if (s->kind == NUFS_SPACE_TRIG) { return nufs::ReconSpace::trig(s->M, s->dim); }
  nufs::fail("unknown space kind");
}

nufs::CVector read_complex(double const *data, std::size_t count)
{
  need(data, "complex array");
  nufs::CVector v(static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) { v(static_cast<Eigen::Index>(i)) = {data[2 * i], data[2 * i + 1]}; }
  return v;
}

void write_complex(nufs::CVector const &v, double *out, std::size_t capacity)
{
  need(out, "output array");
  auto const n = static_cast<std::size_t>(v.size());
  nufs::require(capacity >= 2 * n, "output capacity too small: need " + std::to_string(2 * n) + " doubles");
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = v(static_cast<Eigen::Index>(i)).real();
    out[2 * i + 1] = v(static_cast<Eigen::Index>(i)).imag();
  }
}

template <typename T>
T *make(T value, T **out)
{
  need(out, "output handle");
  *out = new T(std::move(value));
  return *out;
}

void fill(nufs::DensityReport const &r, nufs_density_report *out)
{
  out->delta_lower = r.delta_lower;
  out->delta_upper = r.delta_upper;
  out->grid_n = r.grid_n;
  out->evaluated = r.evaluated;
  out->refine_levels = r.refine_levels;
}

void fill(nufs::FrameBoundReport const &r, nufs_frame_report *out)
{
  out->delta = r.delta;
  out->m_E = r.m_E;
  out->c_star = r.c_star;
  out->dim = r.dim;
  out->threshold = r.threshold;
  out->sqrtA_lower = r.sqrtA_lower;
  out->sqrtB_upper = r.sqrtB_upper;
  out->B_upper = r.B_upper;
  out->admissible = r.admissible ? 1 : 0;
}

} // namespace

extern "C" {

const char *nufs_version(void) { return "0.1.0"; }

const char *nufs_last_error(void) { return g_last_error.c_str(); }

nufs_status nufs_set_threads(int n)
{
  return guarded([&] {
    nufs::require(n >= 1, "thread count must be at least 1");
    nufs::set_thread_count(n);
  });
}

int nufs_get_threads(void) { return nufs::thread_count(); }

nufs_status nufs_norm_lp(double p, int dim, nufs_norm *out)
{
  return guarded([&] {
    need(out, "out");
    check_dim(dim);
    *out = from_norm(nufs::lp_norm(p, dim));
  });
}

nufs_status nufs_equivalence_constants(const nufs_norm *norm, double *c_lower, double *c_upper)
{
  return guarded([&] {
    need(c_lower, "c_lower");
    need(c_upper, "c_upper");
    auto const c = nufs::equivalence_constants(to_norm(norm));
    *c_lower = c.lower;
    *c_upper = c.upper;
  });
}

nufs_status nufs_support_info(const nufs_support *E, nufs_support_constants *out)
{
  return guarded([&] {
    need(out, "out");
    auto const e = to_support(E);
    out->m_E = nufs::compute_mE(e);
    out->c_circ = nufs::polar_constant(e);
    out->polar = from_norm(nufs::dual_norm(e));
  });
}

nufs_status nufs_domain_contains(const nufs_domain *Y, const double *point, int *inside)
{
  return guarded([&] {
    need(point, "point");
    need(inside, "inside");
    auto const y = to_domain(Y);
    *inside = nufs::domain_contains(y, std::span<double const>(point, static_cast<std::size_t>(y.dim))) ? 1 : 0;
  });
}

nufs_status nufs_scheme_jittered(double K, double eps, double eta, uint64_t seed, nufs_scheme **out)
{
  return guarded([&] { make(nufs_scheme{nufs::gen_jittered(K, eps, eta, seed)}, out); });
}

nufs_status nufs_scheme_jittered_alternating(double K, double eps, double eta, nufs_scheme **out)
{
  return guarded([&] { make(nufs_scheme{nufs::gen_jittered_alternating(K, eps, eta)}, out); });
}

nufs_status nufs_scheme_polar(double K, double r, int lines, nufs_scheme **out)
{
  return guarded([&] { make(nufs_scheme{nufs::gen_polar(K, r, lines)}, out); });
}

nufs_status nufs_scheme_spiral(double K, double r, double D, nufs_scheme **out)
{
  return guarded([&] { make(nufs_scheme{nufs::gen_spiral(K, r, D)}, out); });
}

nufs_status nufs_scheme_from_points(int dim, const double *coords, size_t count, const nufs_domain *Y,
                                    nufs_scheme **out)
{
  return guarded([&] {
    need(coords, "coords");
    std::vector<double> c(coords, coords + count * static_cast<std::size_t>(std::max(dim, 0)));
    make(nufs_scheme{nufs::SamplingScheme(dim, std::move(c), to_domain(Y))}, out);
  });
}

nufs_status nufs_scheme_read(const char *csv_path, nufs_scheme **out)
{
  return guarded([&] {
    need(csv_path, "path");
    make(nufs_scheme{nufs::read_scheme(csv_path)}, out);
  });
}

nufs_status nufs_scheme_write(const nufs_scheme *s, const char *csv_path)
{
  return guarded([&] {
    need(s, "scheme");
    need(csv_path, "path");
    nufs::write_scheme_csv(csv_path, s->s);
    nufs::write_scheme_sidecar(nufs::sidecar_path(csv_path), s->s);
  });
}

void nufs_scheme_free(nufs_scheme *s) { delete s; }

size_t nufs_scheme_size(const nufs_scheme *s) { return s ? s->s.size() : 0; }

int nufs_scheme_dim(const nufs_scheme *s) { return s ? s->s.dim() : 0; }

nufs_status nufs_scheme_domain(const nufs_scheme *s, nufs_domain *out)
{
  return guarded([&] {
    need(s, "scheme");
    need(out, "out");
    *out = from_domain(s->s.domain());
  });
}

nufs_status nufs_scheme_points(const nufs_scheme *s, double *coords, size_t capacity)
{
  return guarded([&] {
    need(s, "scheme");
    need(coords, "coords");
    auto const &c = s->s.coords();
    nufs::require(capacity >= c.size(), "output capacity too small: need " + std::to_string(c.size()) + " doubles");
    std::memcpy(coords, c.data(), c.size() * sizeof(double));
  });
}

nufs_status nufs_polar_max_angle(double K, double r, double D, double *out)
{
  return guarded([&] {
    need(out, "out");
    *out = nufs::polar_max_angle(K, r, D);
  });
}

nufs_status nufs_spiral_line_count(double K, double r, double D, int *out)
{
  return guarded([&] {
    need(out, "out");
    *out = nufs::spiral_line_count(K, r, D);
  });
}

nufs_status nufs_density(const nufs_scheme *s, const nufs_norm *norm, int grid_n, nufs_density_report *out)
{
  return guarded([&] {
    need(s, "scheme");
    need(out, "out");
    fill(nufs::measure_density(s->s, to_norm(norm), grid_n), out);
  });
}

nufs_status nufs_density_refined(const nufs_scheme *s, const nufs_norm *norm, int grid_n, double target_width,
                                 nufs_density_report *out)
{
  return guarded([&] {
    need(s, "scheme");
    need(out, "out");
    fill(nufs::measure_density_refined(s->s, to_norm(norm), grid_n, target_width), out);
  });
}

nufs_status nufs_weights_voronoi(const nufs_scheme *s, const nufs_norm *norm, int grid_n, nufs_weighted **out)
{
  return guarded([&] {
    need(s, "scheme");
    make(nufs_weighted{nufs::voronoi_weights_grid(s->s, to_norm(norm), grid_n)}, out);
  });
}

nufs_status nufs_weights_1d(const nufs_scheme *s, nufs_weighted **out)
{
  return guarded([&] {
    need(s, "scheme");
    make(nufs_weighted{nufs::voronoi_weights_1d(s->s)}, out);
  });
}

nufs_status nufs_weights_unit(const nufs_scheme *s, nufs_weighted **out)
{
  return guarded([&] {
    need(s, "scheme");
    make(nufs_weighted{nufs::unit_weights(s->s)}, out);
  });
}

nufs_status nufs_weights_from_values(const nufs_scheme *s, const double *weights, size_t count, nufs_weighted **out)
{
  return guarded([&] {
    need(s, "scheme");
    need(weights, "weights");
    std::vector<double> w(weights, weights + count);
    make(nufs_weighted{nufs::with_weights(s->s, std::move(w), nufs::lp_norm(2.0, s->s.dim()))}, out);
  });
}

void nufs_weighted_free(nufs_weighted *w) { delete w; }

size_t nufs_weighted_size(const nufs_weighted *w) { return w ? w->w.weights.size() : 0; }

nufs_status nufs_weighted_values(const nufs_weighted *w, double *weights, size_t capacity)
{
  return guarded([&] {
    need(w, "weighted scheme");
    need(weights, "weights");
    auto const &v = w->w.weights;
    nufs::require(capacity >= v.size(), "output capacity too small: need " + std::to_string(v.size()) + " doubles");
    std::memcpy(weights, v.data(), v.size() * sizeof(double));
  });
}

nufs_status nufs_weighted_quantization(const nufs_weighted *w, uint64_t *domain_cells, double *cell_measure,
                                       double *domain_measure, size_t *zero_weight_count)
{
  return guarded([&] {
    need(w, "weighted scheme");
    if (domain_cells) { *domain_cells = w->w.domain_cells; }
    if (cell_measure) { *cell_measure = w->w.cell_measure; }
    if (domain_measure) { *domain_measure = w->w.domain_measure; }
    if (zero_weight_count) { *zero_weight_count = w->w.zero_weight.size(); }
  });
}

nufs_status nufs_weighted_write(const nufs_weighted *w, const char *csv_path)
{
  return guarded([&] {
    need(w, "weighted scheme");
    need(csv_path, "path");
    nufs::write_weighted_csv(csv_path, w->w);
  });
}

nufs_status nufs_weighted_read(const char *weighted_csv, const nufs_scheme *s, nufs_weighted **out)
{
  return guarded([&] {
    need(weighted_csv, "path");
    need(s, "scheme");
    auto t = nufs::read_point_csv(weighted_csv);
    nufs::require(!t.weights.empty(), std::string(weighted_csv) + ": no weight column");
    nufs::require(t.dim == s->s.dim() && t.coords == s->s.coords(),
                  std::string(weighted_csv) + ": points do not match the scheme");
    make(nufs_weighted{nufs::with_weights(s->s, std::move(t.weights), nufs::lp_norm(2.0, t.dim))}, out);
  });
}

nufs_status nufs_frame_bounds_explicit(double delta, double m_E, double c_star, nufs_frame_report *out)
{
  return guarded([&] {
    need(out, "out");
    fill(nufs::explicit_frame_bounds(delta, m_E, c_star), out);
  });
}

nufs_status nufs_frame_bounds_grochenig(double delta, int dim, nufs_frame_report *out)
{
  return guarded([&] {
    need(out, "out");
    fill(nufs::grochenig_frame_bounds(delta, dim), out);
  });
}

nufs_status nufs_sharp_regime_upper_bound(double m_E, double c_circ, double *out)
{
  return guarded([&] {
    need(out, "out");
    *out = nufs::sharp_regime_upper_bound(m_E, c_circ);
  });
}

nufs_status nufs_reconstruction_constant_bound(double delta, double m_E, double c_star, double epsilon, double *out)
{
  return guarded([&] {
    need(out, "out");
    *out = nufs::reconstruction_constant_bound(delta, m_E, c_star, epsilon);
  });
}

nufs_status nufs_frame_ratio(const nufs_weighted *w, const nufs_space *space, double *C1, double *C2)
{
  return guarded([&] {
    need(w, "weighted scheme");
    need(C1, "C1");
    need(C2, "C2");
    auto const r = nufs::empirical_frame_ratio(w->w, to_space(space));
    *C1 = r.C1;
    *C2 = r.C2;
  });
}

nufs_status nufs_function_separable_trig(double a, double b, int dim, nufs_function **out)
{
  return guarded([&] { make(nufs_function{nufs::TestFunction::separable_trig(a, b, dim)}, out); });
}

nufs_status nufs_function_indicator(int dim, const double *lo, const double *hi, nufs_function **out)
{
  return guarded([&] {
    need(lo, "lo");
    need(hi, "hi");
    nufs::require(dim == 1 || dim == 2, "indicator: d must be 1 or 2");
    make(nufs_function{nufs::TestFunction::indicator_rect({lo, lo + dim}, {hi, hi + dim})}, out);
  });
}

nufs_status nufs_function_pixel_image(int M, int dim, const double *values, nufs_function **out)
{
  return guarded([&] {
    need(values, "values");
    nufs::require(M >= 1 && (dim == 1 || dim == 2), "pixel image: bad size");
    std::size_t const n = dim == 2 ? static_cast<std::size_t>(M) * M : static_cast<std::size_t>(M);
    make(nufs_function{nufs::TestFunction::pixel_image(M, std::vector<double>(values, values + n), dim)}, out);
  });
}

nufs_status nufs_function_from_pgm(const char *path, nufs_function **out)
{
  return guarded([&] {
    need(path, "path");
    auto const img = nufs::read_pgm16(path);
    nufs::require(img.width == img.height, std::string(path) + ": pixel images must be square");
    int const M = img.width;
    std::vector<double> values(img.pixels.size());
    for (int row = 0; row < M; ++row) {
      int const iy = M - 1 - row;
      for (int ix = 0; ix < M; ++ix) {
        values[static_cast<std::size_t>(iy) * M + ix] = img.pixels[static_cast<std::size_t>(row) * M + ix] / 65535.0;
      }
    }
    make(nufs_function{nufs::TestFunction::pixel_image(M, std::move(values), 2)}, out);
  });
}

void nufs_function_free(nufs_function *f) { delete f; }

nufs_status nufs_function_l2_norm(const nufs_function *f, double *out)
{
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = f->f.l2_norm();
  });
}

nufs_status nufs_sample(const nufs_function *f, const nufs_scheme *s, double *samples, size_t capacity)
{
  return guarded([&] {
    need(f, "function");
    need(s, "scheme");
    write_complex(nufs::sample_test_function(f->f, s->s), samples, capacity);
  });
}

nufs_status nufs_reconstruct(const nufs_weighted *w, const nufs_space *space, const double *samples,
                             size_t sample_count, nufs_method method, int max_iters, double tol, double *coeffs,
                             size_t capacity, nufs_solve_report *report)
{
  return guarded([&] {
    need(w, "weighted scheme");
    auto const sp = to_space(space);
    nufs::require(sample_count == w->w.scheme.size(), "sample count does not match the scheme");
    nufs::CVector const y = read_complex(samples, sample_count);
    if (method == NUFS_METHOD_GRIDDING) {
      write_complex(nufs::gridding_recon(y, w->w, sp), coeffs, capacity);
      if (report) { *report = nufs_solve_report{0, 0.0, 1}; }
      return;
    }
    nufs::require(method == NUFS_METHOD_CG, "unknown reconstruction method");
    auto const res = nufs::nugs_solve(y, w->w, sp, max_iters, tol);
    write_complex(res.coeffs, coeffs, capacity);
    if (report) {
      *report = nufs_solve_report{res.report.iterations, res.report.final_residual, res.report.converged ? 1 : 0};
    }
  });
}

nufs_status nufs_project(const nufs_space *space, const nufs_function *f, int quad_n, double *coeffs, size_t capacity)
{
  return guarded([&] {
    need(f, "function");
    write_complex(nufs::project(to_space(space), f->f, quad_n), coeffs, capacity);
  });
}

nufs_status nufs_l2_error(const nufs_space *space, const double *coeffs, const nufs_function *f, int quad_n,
                          int normalized, double *out)
{
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    auto const sp = to_space(space);
    auto const c = read_complex(coeffs, sp.size());
    *out = normalized ? nufs::l2_error_normalized(c, sp, f->f, quad_n) : nufs::l2_error(c, sp, f->f, quad_n);
  });
}

nufs_status nufs_condition_number(const nufs_weighted *w, const nufs_space *space, double *out)
{
  return guarded([&] {
    need(w, "weighted scheme");
    need(out, "out");
    *out = nufs::condition_number(nufs::assemble_design(w->w, to_space(space)));
  });
}

nufs_status nufs_residual(const nufs_space *space, const nufs_domain *Y, int quad_n, double *value,
                          double *lambda_min, int *quad_used)
{
  return guarded([&] {
    need(value, "value");
    auto const r = nufs::residual_RK(to_space(space), to_domain(Y), quad_n);
    *value = r.value;
    if (lambda_min) { *lambda_min = r.lambda_min; }
    if (quad_used) { *quad_used = r.quad_n; }
  });
}

nufs_status nufs_raster(const nufs_space *space, const double *coeffs, int n, double *values, size_t capacity)
{
  return guarded([&] {
    auto const sp = to_space(space);
    write_complex(nufs::evaluate_raster(read_complex(coeffs, sp.size()), sp, n), values, capacity);
  });
}

nufs_status nufs_write_coeffs(const nufs_space *space, const double *coeffs, const char *csv_path)
{
  return guarded([&] {
    need(csv_path, "path");
    auto const sp = to_space(space);
    nufs::write_coeffs_csv(csv_path, read_complex(coeffs, sp.size()), sp);
  });
}

nufs_status nufs_write_raster(const double *values, int n, int dim, const char *pgm_path, const char *csv_path)
{
  return guarded([&] {
    nufs::require(n >= 1 && (dim == 1 || dim == 2), "raster: bad size");
    std::size_t const count = dim == 2 ? static_cast<std::size_t>(n) * n : static_cast<std::size_t>(n);
    auto const v = read_complex(values, count);
    if (pgm_path) { nufs::write_pgm16(pgm_path, nufs::raster_to_pgm(v, n)); }
    if (csv_path) { nufs::write_raster_csv(csv_path, v, n); }
  });
}

nufs_status nufs_haar(int M, int dim, int inverse, const double *in, double *out)
{
  return guarded([&] {
    nufs::require(M >= 1 && (dim == 1 || dim == 2), "Haar: bad size");
    std::size_t const count = dim == 2 ? static_cast<std::size_t>(M) * M : static_cast<std::size_t>(M);
    auto const c = read_complex(in, count);
    auto const h = inverse ? nufs::haar_inverse(c, M, dim) : nufs::haar_forward(c, M, dim);
    write_complex(h, out, 2 * count);
  });
}

} // extern "C"
