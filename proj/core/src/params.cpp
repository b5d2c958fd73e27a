#include "cantor2w/params.hpp"

#include <cmath>
#include <sstream>

#include "cantor2w/error.hpp"

namespace cantor2w {

namespace {

constexpr double kSlack = 1e-12;

bool at_least(double value, double bound) { return value >= bound * (1.0 - kSlack); }
bool at_most(double value, double bound) { return value <= bound * (1.0 + kSlack); }

}  // namespace

double ConstructionParams::s0() const { return derive_s0(alpha, b); }

bool admissible(double alpha, double b) {
  if (!std::isfinite(alpha) || !std::isfinite(b)) return false;
  if (alpha < 0.0 || alpha >= 2.0) return false;
  if (!at_least(b, 1.0 / 3.0) || b >= 1.0) return false;
  const double scale = std::pow((1.0 - b) / 2.0, 2.0 - alpha);
  return at_least(scale, 1.0 / 9.0) && at_most(scale, 1.0 / 3.0);
}

double derive_s0(double alpha, double b) {
  if (!admissible(alpha, b)) {
    std::ostringstream os;
    os << "alpha=" << alpha << ", b=" << b
       << " violates 0<=alpha<2, 1/3<=b<1, 1/9<=((1-b)/2)^(2-alpha)<=1/3";
    throw Error(ErrorKind::invalid_parameters, os.str());
  }
  return std::pow((1.0 - b) / 2.0, alpha - 2.0);
}

double smallest_admissible_b(double alpha) {
  if (!(alpha >= 0.0 && alpha < 2.0)) {
    throw Error(ErrorKind::invalid_parameters, "alpha must lie in [0,2)");
  }
  // Largest ratio r <= 1/3 with r^(2-alpha) <= 1/3; the lower window bound is
  // then automatic because r^(2-alpha) is decreasing in b.
  const double r = std::min(1.0 / 3.0, std::pow(3.0, -1.0 / (2.0 - alpha)));
  return 1.0 - 2.0 * r;
}

void validate(const ConstructionParams& params) {
  derive_s0(params.alpha, params.b);
  if (params.depth_omega < 1 || params.depth_sigma < 1) {
    throw Error(ErrorKind::invalid_parameters, "depths must be >= 1");
  }
  if (params.riesz_c && !(*params.riesz_c > 0.0 && *params.riesz_c < 1.0)) {
    throw Error(ErrorKind::invalid_parameters, "riesz constant c must lie in (0,1)");
  }
}

}  // namespace cantor2w
