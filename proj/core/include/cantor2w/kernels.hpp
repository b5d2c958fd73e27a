#pragma once

#include <optional>

#include "cantor2w/measures.hpp"
#include "cantor2w/planar.hpp"

namespace cantor2w {

/// Interval given by center and length (> 0).
struct Interval1D {
  double center;
  double length;

  static Interval1D from_bounds(double left, double right) {
    return {0.5 * (left + right), right - left};
  }
  double left() const { return center - 0.5 * length; }
  double right() const { return center + 0.5 * length; }
  Span span() const { return {left(), right()}; }
};

/// Axis-parallel square given by center and side (> 0).
struct Cube2D {
  Point2 center;
  double side;

  static Cube2D from_corner(double x0, double y0, double side) {
    return {{x0 + 0.5 * side, y0 + 0.5 * side}, side};
  }
  Box box() const {
    const double h = 0.5 * side;
    return {{center.x - h, center.x + h}, {center.y - h, center.y + h}};
  }
};

/// Either the inside or the outside of a box.
struct Restriction2D {
  Box box;
  bool complement = false;

  bool admits(Point2 p) const { return box.contains(p) != complement; }
};

struct QuadratureOptions {
  /// Subtrees of the Cantor measure collapse to their midpoint once
  /// length <= ratio * (distance + regularization).
  double ratio = 0.05;
};

enum class KernelKind {
  frac1d,
  riesz1d,
  frac2d,
  riesz2d,
  poisson_variant_reproducing,
  poisson_variant_standard,
  poisson2d_reproducing,
  poisson2d_standard,
};

struct KernelSpec {
  KernelKind kind = KernelKind::frac1d;
  double alpha = 0.0;
  double gamma = 0.0;
  int component = 1;  // riesz2d only
};

/// Throws invalid_parameters for alpha outside [0,2), negative gamma or a
/// riesz component outside {1,2}.
void validate(const KernelSpec& spec);

// --- one-dimensional smoothed kernels --------------------------------------
// integral of ((x-y)^2 + gamma^2)^((alpha-2)/2) dmu(y) and the signed Riesz
// analogue (x-y)((x-y)^2 + gamma^2)^((alpha-3)/2).  With gamma = 0 the point x
// must be off the support (singular_evaluation otherwise).

double frac1d(double x, const AtomicMeasure1D& mu, double alpha, double gamma);
double frac1d(double x, const CantorWeights& mu, double alpha, double gamma,
              QuadratureOptions options = {});
double frac1d(double x, const Measure1D& mu, double alpha, double gamma,
              QuadratureOptions options = {});

double riesz1d(double x, const AtomicMeasure1D& mu, double alpha, double gamma);
double riesz1d(double x, const CantorWeights& mu, double alpha, double gamma,
               QuadratureOptions options = {});
double riesz1d(double x, const Measure1D& mu, double alpha, double gamma,
               QuadratureOptions options = {});

// --- one-dimensional Poisson integrals ---------------------------------------

/// integral of (|I| / (|I| + |x - x_I|)^2)^(2-alpha) dmu(x).
double poisson_variant_reproducing(const Interval1D& interval, const Measure1D& mu, double alpha,
                                   std::optional<Span> restricted_to = std::nullopt,
                                   QuadratureOptions options = {});
/// integral of |I| / (|I| + |x - x_I|)^(3-alpha) dmu(x), optionally times 1_J.
double poisson_variant_standard(const Interval1D& interval, const Measure1D& mu, double alpha,
                                std::optional<Span> restricted_to = std::nullopt,
                                QuadratureOptions options = {});

// --- planar kernels ------------------------------------------------------------

double poisson2d_reproducing(const Cube2D& cube, const PlanarMeasure& mu, double alpha,
                             std::optional<Restriction2D> restricted_to = std::nullopt,
                             QuadratureOptions options = {});
double poisson2d_standard(const Cube2D& cube, const PlanarMeasure& mu, double alpha,
                          std::optional<Restriction2D> restricted_to = std::nullopt,
                          QuadratureOptions options = {});

/// integral of |x - y|^(alpha-2) dmu(y) over the plane.
double frac2d(Point2 x, const PlanarMeasure& mu, double alpha, QuadratureOptions options = {});
/// integral of (t_m - x_m) |x - t|^(alpha-3) dmu(t), m in {1,2}.
double riesz2d(int component, Point2 x, const PlanarMeasure& mu, double alpha,
               QuadratureOptions options = {});

/// Tree-restricted maximal function: the largest mu(I)/|I|^(2-alpha) over
/// tree intervals I of generation <= tree.depth() that contain x.  Returns 0
/// when x lies in no tree interval.
double maximal_alpha(double x, const Measure1D& mu, const CantorTree& tree);

}  // namespace cantor2w
