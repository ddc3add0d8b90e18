#pragma once

#include <limits>
#include <span>
#include <vector>

namespace nufs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// An l^p norm on R^d, optionally with per-axis scales: |x| = (sum |s_j x_j|^p)^(1/p).
/// p = kInfinity selects the max norm. Scales only arise as polar norms of rectangles.
struct NormSpec
{
  double p = 2.0;
  int dim = 2;
  std::vector<double> scales; // empty means all ones

  bool is_max() const { return p == kInfinity; }
  double scale(int j) const { return scales.empty() ? 1.0 : scales[j]; }
  double min_scale() const;
};

NormSpec lp_norm(double p, int dim);
NormSpec max_norm(int dim);

double norm_eval(std::span<double const> x, NormSpec const &n);

/// Hoelder conjugate exponent: 1/p + 1/q = 1.
double dual_exponent(double p);

/// The norm whose unit ball is the polar body of n's unit ball.
NormSpec dual(NormSpec const &n);

/// Sharp constants with lower*|x|_n <= |x|_2 <= upper*|x|_n.
struct EquivalenceConstants
{
  double lower = 1.0; // c_*
  double upper = 1.0; // c^*
};

EquivalenceConstants equivalence_constants(NormSpec const &n);

/// Compact convex symmetric support E. Only l^p balls and axis-aligned rectangles are admitted.
struct SupportSet
{
  enum class Shape
  {
    LpBall,
    Rectangle
  };

  Shape shape = Shape::Rectangle;
  int dim = 2;
  double p = 2.0;                  // LpBall
  double radius = 1.0;             // LpBall
  std::vector<double> half_widths; // Rectangle

  static SupportSet lp_ball(double p, double radius, int dim);
  static SupportSet rectangle(std::vector<double> half_widths);
  static SupportSet cube(int dim) { return rectangle(std::vector<double>(dim, 1.0)); }
};

/// |y|_{E polar} = max_{x in E} |x . y|.
NormSpec dual_norm(SupportSet const &E);

/// m_E = sup_{x in E} |x|_2.
double compute_mE(SupportSet const &E);

/// c°: the smallest constant with |y|_2 <= c° |y|_{E polar}.
double polar_constant(SupportSet const &E);

/// Sampling domain Y_K.
struct DomainY
{
  enum class Kind
  {
    Square,
    Ball,
    SpiralRegion
  };

  Kind kind = Kind::Square;
  int dim = 2;
  double K = 1.0;   // bandwidth; for SpiralRegion K = r * k
  double r = 0.0;   // SpiralRegion turn separation
  int turns = 0;    // SpiralRegion turn count k

  static DomainY square(double K, int dim = 2);
  static DomainY ball(double K, int dim = 2);
  static DomainY spiral_region(double r, int turns);

  /// Half width of the axis-aligned bounding box [-h, h]^d.
  double bounding_half_width() const { return K; }
};

bool domain_contains(DomainY const &Y, std::span<double const> point);

char const *domain_kind_name(DomainY::Kind kind);

} // namespace nufs
