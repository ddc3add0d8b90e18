#include "nufsample/io.hpp"

#include "nufsample/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nufs {

using nlohmann::json;

namespace {

std::ofstream open_out(std::string const &path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) { throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing"); }
  return out;
}

void finish(std::ofstream &out, std::string const &path)
{
  out.flush();
  if (!out) { throw Error(ErrorKind::Io, "write to '" + path + "' failed"); }
}

std::vector<std::string> split_fields(std::string const &line)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) { out.push_back(field); }
  if (!line.empty() && line.back() == ',') { out.emplace_back(); }
  return out;
}

double parse_number(std::string const &text, std::string const &where)
{
  std::string t = text;
  while (!t.empty() && (t.back() == ' ' || t.back() == '\r')) { t.pop_back(); }
  std::size_t b = t.find_first_not_of(' ');
  if (b == std::string::npos) { fail(where + ": empty field"); }
  t = t.substr(b);
  char *end = nullptr;
  errno = 0;
  double const v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    fail(where + ": '" + text + "' is not a finite number");
  }
  return v;
}

json domain_to_json(DomainY const &Y)
{
  json j{{"kind", domain_kind_name(Y.kind)}, {"dim", Y.dim}, {"K", Y.K}};
  if (Y.kind == DomainY::Kind::SpiralRegion) {
    j["r"] = Y.r;
    j["turns"] = Y.turns;
  }
  return j;
}

DomainY domain_from_json(json const &j)
{
  std::string const kind = j.at("kind").get<std::string>();
  if (kind == "square") { return DomainY::square(j.at("K").get<double>(), j.value("dim", 2)); }
  if (kind == "ball") { return DomainY::ball(j.at("K").get<double>(), j.value("dim", 2)); }
  if (kind == "spiral_region") { return DomainY::spiral_region(j.at("r").get<double>(), j.at("turns").get<int>()); }
  fail("unknown domain kind '" + kind + "'");
}

} // namespace

std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(std::string const &path, std::string const &text)
{
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

std::string read_text(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw Error(ErrorKind::Io, "cannot open '" + path + "'"); }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_scheme_csv(std::string const &path, SamplingScheme const &s)
{
  auto out = open_out(path);
  out << (s.dim() == 2 ? "omega_x,omega_y\n" : "omega\n");
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    out << format_double(p[0]);
    if (s.dim() == 2) { out << ',' << format_double(p[1]); }
    out << '\n';
  }
  finish(out, path);
}

PointTable read_point_csv(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw Error(ErrorKind::Io, "cannot open '" + path + "'"); }
  std::string line;
  if (!std::getline(in, line)) { fail(path + ": empty scheme file"); }
  if (!line.empty() && line.back() == '\r') { line.pop_back(); }
  PointTable t;
  bool weighted = false;
  if (line == "omega_x,omega_y") {
    t.dim = 2;
  } else if (line == "omega") {
    t.dim = 1;
  } else if (line == "omega_x,omega_y,weight") {
    t.dim = 2;
    weighted = true;
  } else if (line == "omega,weight") {
    t.dim = 1;
    weighted = true;
  } else {
    fail(path + ": unrecognised header '" + line + "'");
  }
  std::size_t const ncols = static_cast<std::size_t>(t.dim) + (weighted ? 1 : 0);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') { line.pop_back(); }
    if (line.empty()) { continue; }
    auto fields = split_fields(line);
    std::string const where = path + ":" + std::to_string(lineno);
    if (fields.size() != ncols) { fail(where + ": expected " + std::to_string(ncols) + " fields"); }
    for (int a = 0; a < t.dim; ++a) { t.coords.push_back(parse_number(fields[a], where)); }
    if (weighted) { t.weights.push_back(parse_number(fields[t.dim], where)); }
  }
  if (t.coords.empty()) { fail(path + ": empty scheme file"); }
  return t;
}

std::string sidecar_path(std::string const &csv_path) { return csv_path + ".json"; }

void write_scheme_sidecar(std::string const &path, SamplingScheme const &s)
{
  json params = json::object();
  for (auto const &[k, v] : s.generator().params) { params[k] = v; }
  json j{{"kind", s.generator().kind},
         {"params", params},
         {"seed", s.generator().seed},
         {"domain", domain_to_json(s.domain())},
         {"count", s.size()}};
  write_text(path, j.dump(2) + "\n");
}

void read_scheme_sidecar(std::string const &path, GeneratorInfo &gen, DomainY &domain)
{
  json j;
  try {
    j = json::parse(read_text(path));
    gen.kind = j.value("kind", std::string("external"));
    gen.params.clear();
    if (j.contains("params")) {
      for (auto const &[k, v] : j.at("params").items()) { gen.params.emplace_back(k, v.get<double>()); }
    }
    gen.seed = j.value("seed", std::uint64_t{0});
    domain = domain_from_json(j.at("domain"));
  } catch (json::exception const &e) {
    fail(path + ": malformed sidecar (" + e.what() + ")");
  }
}

SamplingScheme read_scheme(std::string const &csv_path)
{
  PointTable t = read_point_csv(csv_path);
  GeneratorInfo gen;
  DomainY domain;
  read_scheme_sidecar(sidecar_path(csv_path), gen, domain);
  return SamplingScheme(t.dim, std::move(t.coords), domain, std::move(gen));
}

void write_weighted_csv(std::string const &path, WeightedScheme const &ws)
{
  SamplingScheme const &s = ws.scheme;
  auto out = open_out(path);
  out << (s.dim() == 2 ? "omega_x,omega_y,weight\n" : "omega,weight\n");
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    out << format_double(p[0]);
    if (s.dim() == 2) { out << ',' << format_double(p[1]); }
    out << ',' << format_double(ws.weights[i]) << '\n';
  }
  finish(out, path);
}

void write_coeffs_csv(std::string const &path, CVector const &c, ReconSpace const &space)
{
  require(static_cast<std::size_t>(c.size()) == space.size(), "coefficient length does not match the space");
  auto out = open_out(path);
  out << (space.dim == 2 ? "jx,jy,real,imag\n" : "jx,real,imag\n");
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    out << j % space.M;
    if (space.dim == 2) { out << ',' << j / space.M; }
    out << ',' << format_double(c(j).real()) << ',' << format_double(c(j).imag()) << '\n';
  }
  finish(out, path);
}

void write_pgm16(std::string const &path, Pgm16 const &img)
{
  require(img.width > 0 && img.height > 0, "PGM: empty image");
  require(img.pixels.size() == static_cast<std::size_t>(img.width) * img.height, "PGM: pixel count mismatch");
  auto out = open_out(path);
  out << "P5\n" << img.width << ' ' << img.height << "\n65535\n";
  for (std::uint16_t v : img.pixels) {
    char const bytes[2] = {static_cast<char>(v >> 8), static_cast<char>(v & 0xff)};
    out.write(bytes, 2);
  }
  finish(out, path);
}

Pgm16 read_pgm16(std::string const &path)
{
  std::string const data = read_text(path);
  std::istringstream in(data);
  std::string magic;
  in >> magic;
  if (magic != "P5") { fail(path + ": not a binary PGM"); }
  auto next_int = [&]() {
    in >> std::ws;
    while (in.peek() == '#') {
      std::string skip;
      std::getline(in, skip);
      in >> std::ws;
    }
    long v = -1;
    in >> v;
    if (!in || v <= 0) { fail(path + ": malformed PGM header"); }
    return v;
  };
  Pgm16 img;
  img.width = static_cast<int>(next_int());
  img.height = static_cast<int>(next_int());
  long const maxval = next_int();
  if (maxval < 256 || maxval > 65535) { fail(path + ": only 16-bit PGM is supported"); }
  in.get(); // single whitespace byte before the raster
  auto const offset = static_cast<std::size_t>(in.tellg());
  std::size_t const count = static_cast<std::size_t>(img.width) * img.height;
  if (data.size() < offset + 2 * count) { fail(path + ": truncated PGM raster"); }
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto const hi = static_cast<unsigned char>(data[offset + 2 * i]);
    auto const lo = static_cast<unsigned char>(data[offset + 2 * i + 1]);
    img.pixels[i] = static_cast<std::uint16_t>((hi << 8) | lo);
  }
  return img;
}

Pgm16 raster_to_pgm(CVector const &values, int n)
{
  require(n >= 1, "raster size must be positive");
  bool const two_d = static_cast<std::size_t>(values.size()) == static_cast<std::size_t>(n) * n && n > 1;
  require(two_d || values.size() == n, "raster length does not match n");
  Pgm16 img;
  img.width = n;
  img.height = two_d ? n : 1;
  double peak = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) { peak = std::max(peak, std::abs(values(i))); }
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int row = 0; row < img.height; ++row) {
    int const iy = img.height - 1 - row;
    for (int ix = 0; ix < n; ++ix) {
      double const m = std::abs(values(static_cast<Eigen::Index>(iy) * n + ix));
      double const scaled = peak > 0.0 ? std::round(65535.0 * m / peak) : 0.0;
      img.pixels[static_cast<std::size_t>(row) * n + ix] = static_cast<std::uint16_t>(scaled);
    }
  }
  return img;
}

void write_raster_csv(std::string const &path, CVector const &values, int n)
{
  require(n >= 1, "raster size must be positive");
  bool const two_d = static_cast<std::size_t>(values.size()) == static_cast<std::size_t>(n) * n && n > 1;
  require(two_d || values.size() == n, "raster length does not match n");
  auto out = open_out(path);
  out << (two_d ? "x,y,real,imag\n" : "x,real,imag\n");
  auto centre = [n](int i) { return -1.0 + (i + 0.5) * 2.0 / n; };
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    int const ix = static_cast<int>(k % n);
    out << format_double(centre(ix));
    if (two_d) { out << ',' << format_double(centre(static_cast<int>(k / n))); }
    out << ',' << format_double(values(k).real()) << ',' << format_double(values(k).imag()) << '\n';
  }
  finish(out, path);
}

} // namespace nufs
