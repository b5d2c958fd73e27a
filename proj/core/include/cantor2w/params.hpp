#pragma once

#include <optional>

namespace cantor2w {

/// The global dial of the construction.  `alpha` is the fractional order, `b`
/// the removed middle fraction of the Cantor set.  Depths are truncation caps:
/// `depth_omega` for the atomization of the Cantor measure, `depth_sigma` for
/// the last generation of gap atoms.
struct ConstructionParams {
  double alpha = 0.0;
  double b = 1.0 / 3.0;
  int depth_omega = 14;
  int depth_sigma = 12;
  std::optional<double> riesz_c;

  /// Length ratio between consecutive generations, (1-b)/2.
  double ratio() const { return (1.0 - b) / 2.0; }
  /// Kernel homogeneity exponent 2-alpha.
  double homogeneity() const { return 2.0 - alpha; }
  double s0() const;
};

/// ((1-b)/2)^(2-alpha) must lie in [1/9, 1/3]; alpha in [0,2), b in [1/3,1).
/// Comparisons allow a relative slack of 1e-12 so that the closed-form boundary
/// choices (b = 1/3, b = 7/9) are not rejected by rounding.
bool admissible(double alpha, double b);

/// ((1-b)/2)^(alpha-2).  Throws Error(invalid_parameters) outside the window.
double derive_s0(double alpha, double b);

/// Smallest admissible b >= 1/3 for the given alpha.
double smallest_admissible_b(double alpha);

/// Throws Error(invalid_parameters) unless the params are admissible and the
/// depths are >= 1 (and riesz_c, when present, lies in (0,1)).
void validate(const ConstructionParams& params);

}  // namespace cantor2w
