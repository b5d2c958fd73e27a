#include "cantor2w/power.hpp"

#include <cmath>

namespace cantor2w {

Power::Power(double exponent) : exponent_(exponent) {
  const double scaled = 4.0 * std::abs(exponent);
  if (scaled == std::floor(scaled) && scaled <= 256.0) {
    const int q = static_cast<int>(scaled);
    fast_ = true;
    negative_ = exponent < 0.0;
    whole_ = q / 4;
    quarters_ = q % 4;
  }
}

double Power::sqrt_of(double x) { return std::sqrt(x); }
double Power::quarter_root(double x) { return std::sqrt(std::sqrt(x)); }
double Power::slow(double x) const { return std::pow(x, exponent_); }

}  // namespace cantor2w
