#pragma once

namespace cantor2w {

/// x^e for x > 0.  Exponents that are multiples of 1/4 (every kernel exponent
/// for alpha on the half-integer grid) go through sqrt and repeated
/// multiplication, which is several times faster than std::pow.
class Power {
 public:
  explicit Power(double exponent);

  double exponent() const { return exponent_; }

  double operator()(double x) const {
    if (!fast_) return slow(x);
    double r = integer_power(x, whole_);
    switch (quarters_) {
      case 1: r *= quarter_root(x); break;
      case 2: r *= sqrt_of(x); break;
      case 3: r *= sqrt_of(x) * quarter_root(x); break;
      default: break;
    }
    return negative_ ? 1.0 / r : r;
  }

 private:
  static double integer_power(double x, int n) {
    double result = 1.0;
    while (n > 0) {
      if (n & 1) result *= x;
      x *= x;
      n >>= 1;
    }
    return result;
  }
  static double sqrt_of(double x);
  static double quarter_root(double x);
  double slow(double x) const;

  double exponent_;
  bool fast_ = false;
  bool negative_ = false;
  int whole_ = 0;
  int quarters_ = 0;
};

}  // namespace cantor2w
