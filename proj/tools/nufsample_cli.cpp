// nufsample command-line front end. Talks to the library through the C API only.
#include "nufsample/nufsample.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using ojson = nlohmann::ordered_json;

struct CliError
{
  int code;
  std::string message;
};

void check(nufs_status st)
{
  if (st != NUFS_OK) { throw CliError{static_cast<int>(st), nufs_last_error()}; }
}

[[noreturn]] void invalid(std::string const &msg) { throw CliError{2, msg}; }

struct SchemeDeleter
{
  void operator()(nufs_scheme *s) const { nufs_scheme_free(s); }
};
struct WeightedDeleter
{
  void operator()(nufs_weighted *w) const { nufs_weighted_free(w); }
};
struct FunctionDeleter
{
  void operator()(nufs_function *f) const { nufs_function_free(f); }
};
using SchemePtr = std::unique_ptr<nufs_scheme, SchemeDeleter>;
using WeightedPtr = std::unique_ptr<nufs_weighted, WeightedDeleter>;
using FunctionPtr = std::unique_ptr<nufs_function, FunctionDeleter>;

SchemePtr adopt(nufs_scheme *s) { return SchemePtr(s); }

// JSON has no infinity; unbounded values are written as the string "inf".
ojson number(double v)
{
  if (std::isfinite(v)) { return v; }
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

void write_json(std::string const &path, ojson const &j)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) { throw CliError{5, "cannot open '" + path + "' for writing"}; }
  out << j.dump(2) << '\n';
  if (!out) { throw CliError{5, "write to '" + path + "' failed"}; }
}

void summary(std::string const &line, std::string const &report)
{
  std::cout << line << '\n' << report << '\n';
}

double parse_p(std::string const &s)
{
  if (s == "inf" || s == "max") { return INFINITY; }
  char *end = nullptr;
  double const p = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !(p >= 1.0)) { invalid("norm must be a number >= 1 or 'inf', got '" + s + "'"); }
  return p;
}

ojson norm_json(double p) { return std::isfinite(p) ? ojson(p) : ojson("inf"); }

nufs_norm make_norm(std::string const &p, int dim)
{
  nufs_norm n{};
  check(nufs_norm_lp(parse_p(p), dim, &n));
  return n;
}

// "cube", "rect:a,b", "ball:p:R"
nufs_support parse_support(std::string const &spec, int dim)
{
  nufs_support E{};
  E.dim = dim;
  if (spec == "cube") {
    E.shape = NUFS_SUPPORT_RECTANGLE;
    for (int j = 0; j < dim; ++j) { E.half_widths[j] = 1.0; }
    return E;
  }
  if (spec.rfind("rect:", 0) == 0) {
    E.shape = NUFS_SUPPORT_RECTANGLE;
    std::istringstream ss(spec.substr(5));
    std::string tok;
    int j = 0;
    while (std::getline(ss, tok, ',')) {
      if (j >= dim) { invalid("support '" + spec + "' has more half widths than d"); }
      E.half_widths[j++] = std::atof(tok.c_str());
    }
    if (j != dim) { invalid("support '" + spec + "' needs " + std::to_string(dim) + " half widths"); }
    return E;
  }
  if (spec.rfind("ball:", 0) == 0) {
    E.shape = NUFS_SUPPORT_LP_BALL;
    auto const rest = spec.substr(5);
    auto const colon = rest.find(':');
    E.p = parse_p(rest.substr(0, colon));
    E.radius = colon == std::string::npos ? 1.0 : std::atof(rest.substr(colon + 1).c_str());
    return E;
  }
  invalid("unknown support set '" + spec + "' (use cube, rect:a,b or ball:p:R)");
}

nufs_space make_space(std::string const &kind, int M, int dim)
{
  nufs_space s{};
  if (kind == "pixel") {
    s.kind = NUFS_SPACE_PIXEL;
  } else if (kind == "trig") {
    s.kind = NUFS_SPACE_TRIG;
  } else {
    invalid("unknown reconstruction space '" + kind + "' (use pixel or trig)");
  }
  s.M = M;
  s.dim = dim;
  return s;
}

std::size_t space_size(nufs_space const &s)
{
  return s.dim == 2 ? static_cast<std::size_t>(s.M) * s.M : static_cast<std::size_t>(s.M);
}

ojson space_json(nufs_space const &s)
{
  return ojson{{"kind", s.kind == NUFS_SPACE_PIXEL ? "pixel" : "trig"}, {"M", s.M}, {"dim", s.dim}};
}

char const *domain_name(nufs_domain_kind k)
{
  return k == NUFS_DOMAIN_SQUARE ? "square" : k == NUFS_DOMAIN_BALL ? "ball" : "spiral_region";
}

ojson domain_json(nufs_domain const &Y)
{
  ojson j{{"kind", domain_name(Y.kind)}, {"dim", Y.dim}, {"K", Y.K}};
  if (Y.kind == NUFS_DOMAIN_SPIRAL) {
    j["r"] = Y.r;
    j["turns"] = Y.turns;
  }
  return j;
}

// Applies --config values to options the command line left unset (flags win). Every key must
// name a long option of the active subcommand.
void apply_config(CLI::App *sub, std::string const &path, std::string const &command)
{
  std::ifstream in(path);
  if (!in) { throw CliError{5, "cannot open config '" + path + "'"}; }
  ojson cfg;
  try {
    cfg = ojson::parse(in);
  } catch (ojson::exception const &e) {
    invalid("config '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) { invalid("config '" + path + "' must be a JSON object"); }
  for (auto const &[key, value] : cfg.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != command) {
        invalid("config '" + path + "' is for command " + value.dump() + ", not '" + command + "'");
      }
      continue;
    }
    CLI::Option *opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config" || key == "help") { invalid("config '" + path + "': unknown key '" + key + "'"); }
    if (opt->count() > 0) { continue; }
    std::vector<std::string> items;
    auto as_text = [](ojson const &v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      for (auto const &v : value) { items.push_back(as_text(v)); }
    } else if (value.is_boolean()) {
      if (!value.get<bool>()) { continue; }
      items.emplace_back("true");
    } else {
      items.push_back(as_text(value));
    }
    opt->clear();
    for (auto const &s : items) { opt->add_result(s); }
    try {
      opt->run_callback();
    } catch (CLI::Error const &e) {
      invalid("config '" + path + "': key '" + key + "': " + e.what());
    }
  }
}

// ---------------------------------------------------------------------------

struct SchemeGen
{
  std::string kind;
  double K = NAN, eps = NAN, eta = 0.0, r = NAN, D = NAN;
  int lines = 0;
  std::uint64_t seed = 0;
  std::string out = "scheme.csv";

  int run() const
  {
    if (!std::isfinite(K)) { invalid("scheme gen: --K is required"); }
    nufs_scheme *raw = nullptr;
    if (kind == "jittered" || kind == "jittered_alternating") {
      if (!std::isfinite(eps)) { invalid("scheme gen: --eps is required for " + kind); }
      check(kind == "jittered" ? nufs_scheme_jittered(K, eps, eta, seed, &raw)
                               : nufs_scheme_jittered_alternating(K, eps, eta, &raw));
    } else if (kind == "polar") {
      if (!std::isfinite(r)) { invalid("scheme gen: --r is required for polar"); }
      int n = lines;
      if (n <= 0) {
        if (!std::isfinite(D)) { invalid("scheme gen: polar needs --lines or --D"); }
        double theta = 0.0;
        check(nufs_polar_max_angle(K, r, D, &theta));
        n = static_cast<int>(std::floor(std::numbers::pi / theta)) + 1;
      }
      check(nufs_scheme_polar(K, r, n, &raw));
    } else if (kind == "spiral") {
      if (!std::isfinite(r) || !std::isfinite(D)) { invalid("scheme gen: spiral needs --r and --D"); }
      check(nufs_scheme_spiral(K, r, D, &raw));
    } else {
      invalid("scheme gen: unknown --kind '" + kind + "'");
    }
    SchemePtr s = adopt(raw);
    check(nufs_scheme_write(s.get(), out.c_str()));
    summary("scheme gen: " + kind + ", " + std::to_string(nufs_scheme_size(s.get())) + " points -> " + out,
            out + ".json");
    return 0;
  }
};

struct WeightOptions
{
  std::string weights_file;
  bool no_weights = false;
  std::string norm = "2";
  int grid_n = 2048;

  void add(CLI::App *app)
  {
    app->add_option("--weights", weights_file, "Weighted CSV written by 'weights' for this scheme");
    app->add_flag("--no-weights", no_weights, "Use mu = 1 for every sample");
    app->add_option("--norm", norm, "Voronoi norm p (1, 2, ..., inf)")->capture_default_str();
    app->add_option("--grid-n", grid_n, "Voronoi quantization grid per axis")->capture_default_str();
  }

  WeightedPtr build(nufs_scheme const *s) const
  {
    nufs_weighted *raw = nullptr;
    if (no_weights) {
      check(nufs_weights_unit(s, &raw));
    } else if (!weights_file.empty()) {
      check(nufs_weighted_read(weights_file.c_str(), s, &raw));
    } else {
      nufs_norm const n = make_norm(norm, nufs_scheme_dim(s));
      check(nufs_weights_voronoi(s, &n, grid_n, &raw));
    }
    return WeightedPtr(raw);
  }

  ojson describe() const
  {
    if (no_weights) { return "unit"; }
    if (!weights_file.empty()) { return ojson{{"file", weights_file}}; }
    return ojson{{"voronoi_norm", norm_json(parse_p(norm))}, {"grid_n", grid_n}};
  }
};

SchemePtr load_scheme(std::string const &path)
{
  if (path.empty()) { invalid("--scheme is required"); }
  nufs_scheme *raw = nullptr;
  check(nufs_scheme_read(path.c_str(), &raw));
  return adopt(raw);
}

struct Density
{
  std::string scheme;
  std::string norm = "2";
  std::string support = "cube";
  int grid_n = 1024;
  double refine = 0.0;
  std::string report = "density.json";

  int run() const
  {
    SchemePtr s = load_scheme(scheme);
    int const dim = nufs_scheme_dim(s.get());
    nufs_norm const n = make_norm(norm, dim);
    nufs_density_report rep{};
    if (refine > 0.0) {
      check(nufs_density_refined(s.get(), &n, grid_n, refine, &rep));
    } else {
      check(nufs_density(s.get(), &n, grid_n, &rep));
    }
    nufs_support const E = parse_support(support, dim);
    nufs_support_constants sc{};
    check(nufs_support_info(&E, &sc));
    double c_lower = 0.0, c_upper = 0.0;
    check(nufs_equivalence_constants(&n, &c_lower, &c_upper));
    double const explicit_threshold = std::log(2.0) / (2.0 * std::numbers::pi * sc.m_E * c_upper);
    auto verdict = [&](double threshold) {
      if (rep.delta_upper < threshold) { return "pass"; }
      if (rep.delta_lower >= threshold) { return "fail"; }
      return "inconclusive";
    };
    bool const polar_norm =
        std::isfinite(sc.polar.p) == std::isfinite(n.p) && (!std::isfinite(n.p) || sc.polar.p == n.p);
    nufs_domain Y{};
    check(nufs_scheme_domain(s.get(), &Y));
    ojson j{{"scheme", scheme},
            {"points", nufs_scheme_size(s.get())},
            {"domain", domain_json(Y)},
            {"norm", norm_json(n.p)},
            {"support", support},
            {"grid_n", rep.grid_n},
            {"refine_target", refine},
            {"refine_levels", rep.refine_levels},
            {"evaluated", rep.evaluated},
            {"delta_lower", rep.delta_lower},
            {"delta_upper", rep.delta_upper},
            {"m_E", sc.m_E},
            {"c_upper", c_upper},
            {"sharp_threshold", 0.25},
            {"sharp_verdict", verdict(0.25)},
            {"norm_is_polar_norm", polar_norm},
            {"explicit_threshold", explicit_threshold},
            {"explicit_verdict", verdict(explicit_threshold)}};
    write_json(report, j);
    char line[200];
    std::snprintf(line, sizeof line, "density: delta in [%.6g, %.6g], 1/4: %s, explicit: %s", rep.delta_lower,
                  rep.delta_upper, verdict(0.25), verdict(explicit_threshold));
    summary(line, report);
    return 0;
  }
};

struct Weights
{
  std::string scheme;
  std::string norm = "2";
  int grid_n = 2048;
  bool exact_1d = false;
  std::string out = "weights.csv";
  std::string report = "weights.json";

  int run() const
  {
    SchemePtr s = load_scheme(scheme);
    int const dim = nufs_scheme_dim(s.get());
    nufs_weighted *raw = nullptr;
    if (exact_1d) {
      check(nufs_weights_1d(s.get(), &raw));
    } else {
      nufs_norm const n = make_norm(norm, dim);
      check(nufs_weights_voronoi(s.get(), &n, grid_n, &raw));
    }
    WeightedPtr w(raw);
    check(nufs_weighted_write(w.get(), out.c_str()));
    std::uint64_t cells = 0;
    double cell_measure = 0.0, measure = 0.0;
    std::size_t zeros = 0;
    check(nufs_weighted_quantization(w.get(), &cells, &cell_measure, &measure, &zeros));
    std::vector<double> mu(nufs_weighted_size(w.get()));
    check(nufs_weighted_values(w.get(), mu.data(), mu.size()));
    double sum = 0.0;
    for (double v : mu) { sum += v; }
    ojson j{{"scheme", scheme},
            {"points", mu.size()},
            {"method", exact_1d ? "exact_1d" : "voronoi_grid"},
            {"norm", exact_1d ? ojson(2.0) : norm_json(parse_p(norm))},
            {"grid_n", exact_1d ? 0 : grid_n},
            {"weights_file", out},
            {"weight_sum", sum},
            {"domain_measure", measure},
            {"domain_cells", cells},
            {"cell_measure", cell_measure},
            {"zero_weight_count", zeros}};
    write_json(report, j);
    char line[200];
    std::snprintf(line, sizeof line, "weights: %zu points, sum %.17g, %zu empty cells -> %s", mu.size(), sum, zeros,
                  out.c_str());
    summary(line, report);
    return 0;
  }
};

struct FrameBounds
{
  double delta = NAN;
  int dim = 2;
  std::string norm = "2";
  std::string support = "cube";
  double epsilon = NAN;
  std::string report = "frame_bounds.json";

  int run() const
  {
    if (!std::isfinite(delta)) { invalid("frame-bounds: --delta is required"); }
    nufs_norm const n = make_norm(norm, dim);
    double c_lower = 0.0, c_upper = 0.0;
    check(nufs_equivalence_constants(&n, &c_lower, &c_upper));
    nufs_support const E = parse_support(support, dim);
    nufs_support_constants sc{};
    check(nufs_support_info(&E, &sc));
    nufs_frame_report ex{}, gr{};
    check(nufs_frame_bounds_explicit(delta, sc.m_E, c_upper, &ex));
    check(nufs_frame_bounds_grochenig(delta, dim, &gr));
    double sharp = 0.0;
    check(nufs_sharp_regime_upper_bound(sc.m_E, sc.c_circ, &sharp));
    auto rep_json = [](nufs_frame_report const &r) {
      return ojson{{"threshold", r.threshold},
                   {"admissible", r.admissible != 0},
                   {"sqrtA_lower", r.sqrtA_lower},
                   {"sqrtB_upper", r.sqrtB_upper},
                   {"B_upper", r.B_upper}};
    };
    ojson j{{"inputs", {{"delta", delta}, {"dim", dim}, {"norm", norm_json(n.p)}, {"support", support}}},
            {"m_E", sc.m_E},
            {"c_lower", c_lower},
            {"c_upper", c_upper},
            {"c_circ", sc.c_circ},
            {"explicit", rep_json(ex)},
            {"grochenig", rep_json(gr)},
            {"sharp_regime_B_upper", sharp}};
    if (std::isfinite(epsilon)) {
      double bound = 0.0;
      check(nufs_reconstruction_constant_bound(delta, sc.m_E, c_upper, epsilon, &bound));
      j["inputs"]["epsilon"] = epsilon;
      j["reconstruction_constant_bound"] = bound;
    }
    write_json(report, j);
    char line[200];
    std::snprintf(line, sizeof line, "frame-bounds: sqrtA >= %.4f, sqrtB <= %.4f, explicit %s, classical %s",
                  ex.sqrtA_lower, ex.sqrtB_upper, ex.admissible ? "admissible" : "inadmissible",
                  gr.admissible ? "admissible" : "inadmissible");
    summary(line, report);
    return 0;
  }
};

std::vector<double> read_samples_csv(std::string const &path, std::size_t expected)
{
  std::ifstream in(path);
  if (!in) { throw CliError{5, "cannot open '" + path + "'"}; }
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') { line.pop_back(); }
  if (line != "real,imag") { invalid(path + ": expected header 'real,imag'"); }
  std::vector<double> out;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") { continue; }
    char *end = nullptr;
    double const re = std::strtod(line.c_str(), &end);
    if (*end != ',') { invalid(path + ": malformed row '" + line + "'"); }
    char *end2 = nullptr;
    double const im = std::strtod(end + 1, &end2);
    if (end2 == end + 1 || !std::isfinite(re) || !std::isfinite(im)) { invalid(path + ": malformed row '" + line + "'"); }
    out.push_back(re);
    out.push_back(im);
  }
  if (out.size() != 2 * expected) {
    invalid(path + ": " + std::to_string(out.size() / 2) + " samples for " + std::to_string(expected) + " points");
  }
  return out;
}

struct TestFunctionOptions
{
  std::string kind;
  double a = 2.5, b = 1.5;
  std::vector<double> lo, hi;
  std::string image;

  void add(CLI::App *app)
  {
    app->add_option("--function", kind, "Test function: trig, indicator or pgm");
    app->add_option("--a", a, "trig: sin(a pi (x+1))")->capture_default_str();
    app->add_option("--b", b, "trig: cos(b pi (y+1))")->capture_default_str();
    app->add_option("--lo", lo, "indicator: lower corner");
    app->add_option("--hi", hi, "indicator: upper corner");
    app->add_option("--image", image, "pgm: 16-bit square PGM");
  }

  FunctionPtr build(int dim) const
  {
    nufs_function *raw = nullptr;
    if (kind == "trig") {
      check(nufs_function_separable_trig(a, b, dim, &raw));
    } else if (kind == "indicator") {
      if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim) {
        invalid("indicator needs --lo and --hi with d values each");
      }
      check(nufs_function_indicator(dim, lo.data(), hi.data(), &raw));
    } else if (kind == "pgm") {
      if (dim != 2) { invalid("pgm test functions are two-dimensional"); }
      check(nufs_function_from_pgm(image.c_str(), &raw));
    } else {
      invalid("unknown --function '" + kind + "' (use trig, indicator or pgm)");
    }
    return FunctionPtr(raw);
  }

  ojson describe() const
  {
    if (kind == "trig") { return ojson{{"kind", "separable_trig"}, {"a", a}, {"b", b}}; }
    if (kind == "indicator") { return ojson{{"kind", "indicator"}, {"lo", lo}, {"hi", hi}}; }
    return ojson{{"kind", "pgm"}, {"image", image}};
  }
};

struct Reconstruct
{
  std::string scheme;
  WeightOptions weights;
  TestFunctionOptions function;
  std::string samples_file;
  std::string space = "pixel";
  int M = 64;
  std::string method = "cg";
  int iters = 10;
  double tol = 1e-12;
  double noise = 0.0;
  std::uint64_t seed = 0;
  bool with_condition = false;
  int quad_n = 256;
  int raster_n = 256;
  std::string prefix = "recon";

  int run() const
  {
    SchemePtr s = load_scheme(scheme);
    int const dim = nufs_scheme_dim(s.get());
    std::size_t const n = nufs_scheme_size(s.get());
    nufs_space const sp = make_space(space, M, dim);
    WeightedPtr w = weights.build(s.get());

    FunctionPtr f;
    std::vector<double> y;
    if (!function.kind.empty()) {
      f = function.build(dim);
      y.resize(2 * n);
      check(nufs_sample(f.get(), s.get(), y.data(), y.size()));
    } else if (!samples_file.empty()) {
      y = read_samples_csv(samples_file, n);
    } else {
      invalid("reconstruct: give --function or --samples");
    }
    double noise_norm = 0.0;
    if (noise > 0.0) {
      // i.i.d. complex Gaussian sample noise, per-component standard deviation noise / sqrt 2.
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> g(0.0, noise / std::sqrt(2.0));
      std::vector<double> mu(n);
      check(nufs_weighted_values(w.get(), mu.data(), mu.size()));
      for (std::size_t i = 0; i < n; ++i) {
        double const er = g(rng), ei = g(rng);
        y[2 * i] += er;
        y[2 * i + 1] += ei;
        noise_norm += mu[i] * (er * er + ei * ei);
      }
      noise_norm = std::sqrt(noise_norm);
    }

    nufs_method const m = method == "cg" ? NUFS_METHOD_CG
                          : method == "gridding" ? NUFS_METHOD_GRIDDING
                                                 : (invalid("unknown --method '" + method + "'"), NUFS_METHOD_CG);
    std::vector<double> c(2 * space_size(sp));
    nufs_solve_report sr{};
    check(nufs_reconstruct(w.get(), &sp, y.data(), n, m, iters, tol, c.data(), c.size(), &sr));

    std::string const coeffs_path = prefix + "_coeffs.csv";
    std::string const pgm_path = prefix + "_raster.pgm";
    std::string const raster_csv = prefix + "_raster.csv";
    std::string const report = prefix + "_report.json";
    check(nufs_write_coeffs(&sp, c.data(), coeffs_path.c_str()));
    std::size_t const rcount = dim == 2 ? static_cast<std::size_t>(raster_n) * raster_n : raster_n;
    std::vector<double> raster(2 * rcount);
    check(nufs_raster(&sp, c.data(), raster_n, raster.data(), raster.size()));
    check(nufs_write_raster(raster.data(), raster_n, dim, pgm_path.c_str(), raster_csv.c_str()));

    ojson j{{"iterations", sr.iterations}, {"final_residual", sr.final_residual}};
    if (with_condition) {
      double kappa = 0.0;
      check(nufs_condition_number(w.get(), &sp, &kappa));
      j["condition_number"] = number(kappa);
    }
    double err = NAN, err_n = NAN;
    if (f) {
      check(nufs_l2_error(&sp, c.data(), f.get(), quad_n, 0, &err));
      check(nufs_l2_error(&sp, c.data(), f.get(), quad_n, 1, &err_n));
      j["l2_error"] = err;
      j["l2_error_normalized"] = err_n;
    }
    j["converged"] = sr.converged != 0;
    j["method"] = method;
    j["scheme"] = scheme;
    j["points"] = n;
    j["space"] = space_json(sp);
    j["weights"] = weights.describe();
    if (f) { j["function"] = function.describe(); }
    if (!samples_file.empty() && !f) { j["samples"] = samples_file; }
    j["noise"] = {{"sigma", noise}, {"seed", seed}, {"weighted_norm", noise_norm}};
    j["outputs"] = {{"coeffs", coeffs_path}, {"raster_pgm", pgm_path}, {"raster_csv", raster_csv}};
    write_json(report, j);
    char line[200];
    if (f) {
      std::snprintf(line, sizeof line, "reconstruct: %s, %d iterations, l2 error %.6g (normalized %.6g)",
                    method.c_str(), sr.iterations, err, err_n);
    } else {
      std::snprintf(line, sizeof line, "reconstruct: %s, %d iterations, residual %.3g", method.c_str(), sr.iterations,
                    sr.final_residual);
    }
    summary(line, report);
    return 0;
  }
};

struct Condition
{
  std::string scheme;
  WeightOptions weights;
  std::string space = "pixel";
  int M = 16;
  std::string report = "condition.json";

  int run() const
  {
    SchemePtr s = load_scheme(scheme);
    nufs_space const sp = make_space(space, M, nufs_scheme_dim(s.get()));
    WeightedPtr w = weights.build(s.get());
    double kappa = 0.0;
    check(nufs_condition_number(w.get(), &sp, &kappa));
    ojson j{{"scheme", scheme},
            {"rows", nufs_scheme_size(s.get())},
            {"cols", space_size(sp)},
            {"space", space_json(sp)},
            {"weights", weights.describe()},
            {"condition_number", number(kappa)}};
    write_json(report, j);
    char line[120];
    std::snprintf(line, sizeof line, "condition: kappa = %.6g", kappa);
    summary(line, report);
    return 0;
  }
};

struct Residual
{
  std::string space = "trig";
  int M = 8;
  int dim = 2;
  std::string domain = "square";
  double K = NAN;
  double r = 1.0;
  int turns = 0;
  int quad_n = 256;
  std::string report = "residual.json";

  int run() const
  {
    nufs_space const sp = make_space(space, M, dim);
    nufs_domain Y{};
    Y.dim = dim;
    if (domain == "square" || domain == "ball") {
      if (!std::isfinite(K)) { invalid("residual: --K is required"); }
      Y.kind = domain == "square" ? NUFS_DOMAIN_SQUARE : NUFS_DOMAIN_BALL;
      Y.K = K;
    } else if (domain == "spiral_region") {
      Y.kind = NUFS_DOMAIN_SPIRAL;
      Y.r = r;
      Y.turns = turns;
    } else {
      invalid("unknown --domain '" + domain + "'");
    }
    double value = 0.0, lmin = 0.0;
    int used = 0;
    check(nufs_residual(&sp, &Y, quad_n, &value, &lmin, &used));
    ojson j{{"space", space_json(sp)},
            {"domain", domain_json(Y)},
            {"quad_n", used},
            {"lambda_min", lmin},
            {"residual", value}};
    write_json(report, j);
    char line[120];
    std::snprintf(line, sizeof line, "residual: R_K = %.6g (quad_n %d)", value, used);
    summary(line, report);
    return 0;
  }
};

struct Table1
{
  double K = 8.0;
  double r = 0.2;
  std::vector<int> lines;
  double D = 1.0 / (4.0 * std::numbers::sqrt2);
  int steps = 4;
  int density_grid_n = 1024;
  int weights_grid_n = 2048;
  std::string space = "pixel";
  std::string out = "table1.csv";
  std::string report = "table1.json";

  int run() const
  {
    int const M = static_cast<int>(std::lround(2.75 * K));
    if (static_cast<double>(M) * M > 1e4) {
      throw CliError{3, "table1: dim(T) = " + std::to_string(M) + "^2 exceeds the 1e4 dense-SVD guard"};
    }
    std::vector<int> sweep = lines;
    if (sweep.empty()) {
      // Densest admissible count, then repeated halving.
      double theta = 0.0;
      check(nufs_polar_max_angle(K, r, D, &theta));
      int n = static_cast<int>(std::floor(std::numbers::pi / theta)) + 1;
      for (int k = 0; k < steps && n >= 1; ++k) {
        sweep.push_back(n);
        n = (n + 1) / 2;
      }
    }
    nufs_space const sp = make_space(space, M, 2);
    nufs_norm const l2 = make_norm("2", 2);
    std::ofstream csv(out, std::ios::binary | std::ios::trunc);
    if (!csv) { throw CliError{5, "cannot open '" + out + "' for writing"}; }
    csv << "n,delta_lower,delta_upper,kappa\n";
    ojson rows = ojson::array();
    char buf[160];
    for (int n : sweep) {
      nufs_scheme *raw = nullptr;
      check(nufs_scheme_polar(K, r, n, &raw));
      SchemePtr s = adopt(raw);
      nufs_density_report d{};
      check(nufs_density(s.get(), &l2, density_grid_n, &d));
      nufs_weighted *wraw = nullptr;
      check(nufs_weights_voronoi(s.get(), &l2, weights_grid_n, &wraw));
      WeightedPtr w(wraw);
      double kappa = 0.0;
      check(nufs_condition_number(w.get(), &sp, &kappa));
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", n, d.delta_lower, d.delta_upper, kappa);
      csv << buf;
      rows.push_back({{"n", n},
                      {"points", nufs_scheme_size(s.get())},
                      {"delta_lower", d.delta_lower},
                      {"delta_upper", d.delta_upper},
                      {"kappa", number(kappa)}});
    }
    csv.flush();
    if (!csv) { throw CliError{5, "write to '" + out + "' failed"}; }
    ojson j{{"K", K},
            {"r", r},
            {"space", space_json(sp)},
            {"density_grid_n", density_grid_n},
            {"weights_grid_n", weights_grid_n},
            {"table", out},
            {"rows", rows}};
    write_json(report, j);
    summary("table1: " + std::to_string(sweep.size()) + " rows -> " + out, report);
    return 0;
  }
};

int env_threads()
{
  char const *v = std::getenv("NUFSAMPLE_THREADS");
  if (v == nullptr || *v == '\0') { return 1; }
  char *end = nullptr;
  long const n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) { invalid(std::string("NUFSAMPLE_THREADS must be a positive integer, got '") + v + "'"); }
  return static_cast<int>(n);
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Nonuniform Fourier sampling: schemes, density, weights, frame bounds and reconstruction"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  int threads = 0;
  std::string config;
  app.add_option("--threads", threads, "Worker threads (default 1, or NUFSAMPLE_THREADS)");

  SchemeGen gen;
  Density dens;
  Weights wts;
  FrameBounds fb;
  Reconstruct rec;
  Condition cond;
  Residual res;
  Table1 t1;

  auto *scheme = app.add_subcommand("scheme", "Generate or inspect sampling schemes");
  scheme->require_subcommand(1);
  auto *sgen = scheme->add_subcommand("gen", "Generate a sampling scheme");
  sgen->add_option("--kind", gen.kind, "jittered, jittered_alternating, polar or spiral");
  sgen->add_option("--K", gen.K, "Bandwidth");
  sgen->add_option("--eps", gen.eps, "jittered: grid spacing");
  sgen->add_option("--eta", gen.eta, "jittered: jitter half width")->capture_default_str();
  sgen->add_option("--seed", gen.seed, "jittered: RNG seed")->capture_default_str();
  sgen->add_option("--r", gen.r, "polar/spiral: ring or turn separation");
  sgen->add_option("--lines", gen.lines, "polar: number of radial lines");
  sgen->add_option("--D", gen.D, "polar/spiral: target density");
  sgen->add_option("--out", gen.out, "Scheme CSV (sidecar at <out>.json)")->capture_default_str();

  auto *sden = scheme->add_subcommand("density", "Measure the density of a scheme");
  sden->add_option("--scheme", dens.scheme, "Scheme CSV");
  sden->add_option("--norm", dens.norm, "Norm p (1, 2, ..., inf)")->capture_default_str();
  sden->add_option("--support", dens.support, "Support set: cube, rect:a,b or ball:p:R")->capture_default_str();
  sden->add_option("--grid-n", dens.grid_n, "Grid cells per axis")->capture_default_str();
  sden->add_option("--refine", dens.refine, "Refine the bracket to this width (0 = off)")->capture_default_str();
  sden->add_option("--report", dens.report, "JSON report path")->capture_default_str();

  auto *swts = app.add_subcommand("weights", "Voronoi density-compensation weights");
  swts->add_option("--scheme", wts.scheme, "Scheme CSV");
  swts->add_option("--norm", wts.norm, "Voronoi norm p")->capture_default_str();
  swts->add_option("--grid-n", wts.grid_n, "Quantization grid per axis")->capture_default_str();
  swts->add_flag("--exact-1d", wts.exact_1d, "Exact midpoint weights (d = 1 only)");
  swts->add_option("--out", wts.out, "Weighted CSV")->capture_default_str();
  swts->add_option("--report", wts.report, "JSON report path")->capture_default_str();

  auto *sfb = app.add_subcommand("frame-bounds", "Explicit weighted-frame bounds");
  sfb->add_option("--delta", fb.delta, "Density delta");
  sfb->add_option("--dim", fb.dim, "Dimension d")->capture_default_str();
  sfb->add_option("--norm", fb.norm, "Density norm p")->capture_default_str();
  sfb->add_option("--support", fb.support, "Support set: cube, rect:a,b or ball:p:R")->capture_default_str();
  sfb->add_option("--epsilon", fb.epsilon, "Also bound the reconstruction constant for this epsilon");
  sfb->add_option("--report", fb.report, "JSON report path")->capture_default_str();

  auto *srec = app.add_subcommand("reconstruct", "Weighted least-squares (or gridding) reconstruction");
  srec->add_option("--scheme", rec.scheme, "Scheme CSV");
  rec.weights.add(srec);
  rec.function.add(srec);
  srec->add_option("--samples", rec.samples_file, "Sample CSV (real,imag) instead of a test function");
  srec->add_option("--space", rec.space, "pixel or trig")->capture_default_str();
  srec->add_option("--M", rec.M, "Basis functions per axis")->capture_default_str();
  srec->add_option("--method", rec.method, "cg or gridding")->capture_default_str();
  srec->add_option("--iters", rec.iters, "CG iterations")->capture_default_str();
  srec->add_option("--tol", rec.tol, "CG relative normal-equation residual")->capture_default_str();
  srec->add_option("--noise", rec.noise, "Complex Gaussian sample noise level")->capture_default_str();
  srec->add_option("--seed", rec.seed, "Noise seed")->capture_default_str();
  srec->add_flag("--condition", rec.with_condition, "Also report the condition number (dense)");
  srec->add_option("--quad-n", rec.quad_n, "Quadrature nodes per axis for the L2 error")->capture_default_str();
  srec->add_option("--raster-n", rec.raster_n, "Raster size per axis")->capture_default_str();
  srec->add_option("--prefix", rec.prefix, "Output path prefix")->capture_default_str();

  auto *scond = app.add_subcommand("condition", "Condition number of the weighted design matrix");
  scond->add_option("--scheme", cond.scheme, "Scheme CSV");
  cond.weights.add(scond);
  scond->add_option("--space", cond.space, "pixel or trig")->capture_default_str();
  scond->add_option("--M", cond.M, "Basis functions per axis")->capture_default_str();
  scond->add_option("--report", cond.report, "JSON report path")->capture_default_str();

  auto *sres = app.add_subcommand("residual", "K-residual of a reconstruction space");
  sres->add_option("--space", res.space, "pixel or trig")->capture_default_str();
  sres->add_option("--M", res.M, "Basis functions per axis")->capture_default_str();
  sres->add_option("--dim", res.dim, "Dimension d")->capture_default_str();
  sres->add_option("--domain", res.domain, "square, ball or spiral_region")->capture_default_str();
  sres->add_option("--K", res.K, "Bandwidth");
  sres->add_option("--r", res.r, "spiral_region: turn separation")->capture_default_str();
  sres->add_option("--turns", res.turns, "spiral_region: turns");
  sres->add_option("--quad-n", res.quad_n, "Quadrature nodes per axis")->capture_default_str();
  sres->add_option("--report", res.report, "JSON report path")->capture_default_str();

  auto *st1 = app.add_subcommand("table1", "Density and condition number along a polar line-count sweep");
  st1->add_option("--K", t1.K, "Bandwidth")->capture_default_str();
  st1->add_option("--r", t1.r, "Ring separation")->capture_default_str();
  st1->add_option("--lines", t1.lines, "Line counts (default: densest admissible, then halving)")->delimiter(',');
  st1->add_option("--D", t1.D, "Target l2 density for the densest count")->capture_default_str();
  st1->add_option("--steps", t1.steps, "Rows when --lines is not given")->capture_default_str();
  st1->add_option("--density-grid-n", t1.density_grid_n, "Density grid per axis")->capture_default_str();
  st1->add_option("--weights-grid-n", t1.weights_grid_n, "Voronoi grid per axis")->capture_default_str();
  st1->add_option("--space", t1.space, "pixel or trig")->capture_default_str();
  st1->add_option("--out", t1.out, "Table CSV")->capture_default_str();
  st1->add_option("--report", t1.report, "JSON report path")->capture_default_str();

  std::vector<std::pair<CLI::App *, std::string>> const commands = {
      {sgen, "scheme gen"}, {sden, "scheme density"}, {swts, "weights"}, {sfb, "frame-bounds"},
      {srec, "reconstruct"}, {scond, "condition"},    {sres, "residual"}, {st1, "table1"}};
  for (auto const &[sub, name] : commands) {
    sub->add_option("--config", config, "JSON config; command-line flags win");
  }

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int const rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    check(nufs_set_threads(threads > 0 ? threads : env_threads()));
    for (auto const &[sub, name] : commands) {
      if (!sub->parsed()) { continue; }
      if (!config.empty()) { apply_config(sub, config, name); }
      if (sub == sgen) { return gen.run(); }
      if (sub == sden) { return dens.run(); }
      if (sub == swts) { return wts.run(); }
      if (sub == sfb) { return fb.run(); }
      if (sub == srec) { return rec.run(); }
      if (sub == scond) { return cond.run(); }
      if (sub == sres) { return res.run(); }
      if (sub == st1) { return t1.run(); }
    }
    invalid("no command given");
  } catch (CliError const &e) {
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  }
}
