#pragma once

#include "nufsample/nugs.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nufs {

/// Shortest-safe round-trip formatting (17 significant digits).
std::string format_double(double v);

/// Scheme CSV with header omega_x,omega_y (or omega for d = 1); LF line endings.
void write_scheme_csv(std::string const &path, SamplingScheme const &s);

/// Raw points from a scheme or weighted-scheme CSV; the header fixes d and whether a weight
/// column is present.
struct PointTable
{
  int dim = 0;
  std::vector<double> coords;
  std::vector<double> weights; // empty unless the file has a weight column
};

PointTable read_point_csv(std::string const &path);

/// JSON sidecar {kind, params, seed, domain} next to a scheme CSV (path + ".json").
std::string sidecar_path(std::string const &csv_path);
void write_scheme_sidecar(std::string const &path, SamplingScheme const &s);
void read_scheme_sidecar(std::string const &path, GeneratorInfo &gen, DomainY &domain);

/// Reads a scheme CSV and its sidecar (the sidecar supplies the domain).
SamplingScheme read_scheme(std::string const &csv_path);

void write_weighted_csv(std::string const &path, WeightedScheme const &ws);

/// Coefficient CSV: jx,jy,real,imag (jx,real,imag for d = 1).
void write_coeffs_csv(std::string const &path, CVector const &c, ReconSpace const &space);

/// Binary 16-bit PGM (P5, maxval 65535, big-endian samples), rows top to bottom.
struct Pgm16
{
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> pixels;
};

void write_pgm16(std::string const &path, Pgm16 const &img);
Pgm16 read_pgm16(std::string const &path);

/// Scales |values| of an n x n raster (index iy * n + ix) to the full 16-bit range.
/// The top image row is the largest y.
Pgm16 raster_to_pgm(CVector const &values, int n);

/// Raster CSV: x,y,real,imag per raster centre.
void write_raster_csv(std::string const &path, CVector const &values, int n);

/// Writes text to a file, replacing it.
void write_text(std::string const &path, std::string const &text);
std::string read_text(std::string const &path);

} // namespace nufs
