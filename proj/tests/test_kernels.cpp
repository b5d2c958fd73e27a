#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "cantor2w/construction.hpp"
#include "cantor2w/error.hpp"
#include "cantor2w/kernels.hpp"
#include "cantor2w/planar.hpp"
#include "cantor2w/power.hpp"

using namespace cantor2w;

namespace {

AtomicMeasure1D unit_atom(double x) { return AtomicMeasure1D({{x, 1.0}}); }

PlanarMeasure single_row(double offset, double height, Measure1D base) {
  return PlanarMeasure({PlanarRow{offset, height, std::make_shared<const Measure1D>(std::move(base))}});
}

const Construction& thirds() {
  static const Construction c{ConstructionParams{}};
  return c;
}

// Every generation-`level` midpoint of the middle-thirds tree, summed directly.
double brute_frac(double x, int level) {
  const CantorTree tree(ConstructionParams{}, level);
  const double w = std::ldexp(1.0, -level);
  const double half = 0.5 * tree.length(level);
  double sum = 0.0;
  for (double l : tree.lefts(level)) {
    const double d = x - (l + half);
    sum += w / (d * d);
  }
  return sum;
}

}  // namespace

TEST(Power, MatchesStdPow) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_x(-20.0, 20.0);
  for (double e : {-3.0, -2.5, -1.75, -1.5, -1.25, -1.0, -0.75, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, -1.3, 0.7}) {
    const Power p(e);
    for (int i = 0; i < 200; ++i) {
      const double x = std::exp(log_x(rng));
      EXPECT_NEAR(p(x), std::pow(x, e), 1e-14 * std::pow(x, e)) << "x=" << x << " e=" << e;
    }
  }
}

TEST(Frac1d, SingleAtom) {
  EXPECT_DOUBLE_EQ(frac1d(1.0, unit_atom(0.0), 0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(frac1d(3.0, unit_atom(1.0), 0.0, 0.0), 0.25);
  EXPECT_NEAR(frac1d(0.0, unit_atom(3.0), 0.0, 4.0), 1.0 / 25.0, 1e-16);
  EXPECT_NEAR(frac1d(0.0, unit_atom(4.0), 1.0, 0.0), 0.25, 1e-16);
}

TEST(Frac1d, LowerBoundAtLeftmostGapCenters) {
  const Construction& c = thirds();
  for (int k = 1; k <= 10; ++k) {
    const double z = c.tree().gap(k, 0).center;
    EXPECT_GE(frac1d(z, c.omega(), 0.0, 0.0), 4.0 * std::pow(4.5, k)) << k;
  }
}

TEST(Frac1d, AtomizedQuadratureMatchesDeepBruteForce) {
  const double reference = brute_frac(0.5, 18);
  const double got = frac1d(0.5, thirds().omega(), 0.0, 0.0);
  EXPECT_LE(std::abs(got - reference) / reference, 5e-3);
}

TEST(Frac1d, AtomizationConverges) {
  // Full atomization (tiny ratio) at successive levels; differences shrink
  // geometrically away from the support.
  auto tree = std::make_shared<const CantorTree>(ConstructionParams{}, 16);
  const QuadratureOptions exact{1e-12};
  double previous = 0.0;
  double previous_step = 0.0;
  for (int m = 8; m <= 16; ++m) {
    const double v = frac1d(0.5, CantorWeights(tree, m), 0.0, 0.0, exact);
    if (m > 8) {
      const double step = std::abs(v - previous);
      if (m > 9) { EXPECT_LT(step, 0.5 * previous_step) << m; }
      previous_step = step;
    }
    previous = v;
  }
}

TEST(Frac1d, StrictlyDecreasingInGamma) {
  const Construction& c = thirds();
  const AtomicMeasure1D sigma = c.sigma(Placement::center());
  for (double x : {-0.3, 0.1, 0.5, 2.0}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double gamma = 0.01; gamma < 10.0; gamma *= 1.7) {
      const double v = frac1d(x, c.omega(), 0.5, gamma);
      EXPECT_LT(v, previous);
      previous = v;
    }
    previous = std::numeric_limits<double>::infinity();
    for (double gamma = 0.01; gamma < 10.0; gamma *= 1.7) {
      const double v = frac1d(x, sigma, 0.0, gamma);
      EXPECT_LT(v, previous);
      previous = v;
    }
  }
}

TEST(Frac1d, SingularOnSupportWithoutSmoothing) {
  const Construction& c = thirds();
  const AtomicMeasure1D sigma = c.sigma(Placement::center());
  try {
    frac1d(0.5, sigma, 0.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular_evaluation);
  }
  EXPECT_THROW(frac1d(0.0, c.omega(), 0.0, 0.0), Error);
  EXPECT_THROW(riesz1d(0.5, sigma, 0.0, 0.0), Error);
  EXPECT_NO_THROW(frac1d(0.5, sigma, 0.0, 0.1));
  EXPECT_THROW(frac1d(0.5, sigma, 0.0, -1.0), Error);
  EXPECT_THROW(frac1d(0.5, sigma, 2.0, 0.1), Error);
}

TEST(Riesz1d, SymmetricMeasureCancels) {
  const AtomicMeasure1D mu({{0.25, 1.0}, {0.75, 1.0}});
  EXPECT_EQ(riesz1d(0.5, mu, 0.0, 0.0), 0.0);
  EXPECT_EQ(riesz1d(0.5, mu, 1.0, 0.3), 0.0);
}

TEST(Riesz1d, SingleAtom) {
  EXPECT_DOUBLE_EQ(riesz1d(2.0, unit_atom(0.0), 0.0, 0.0), 0.25);
  EXPECT_DOUBLE_EQ(riesz1d(-2.0, unit_atom(0.0), 0.0, 0.0), -0.25);
}

TEST(Riesz1d, CantorMeasureIsOddAboutTheCenter) {
  const Construction& c = thirds();
  for (double d : {0.01, 0.1, 0.15, 0.7}) {  // 0.5 + d off the support
    EXPECT_NEAR(riesz1d(0.5 + d, c.omega(), 0.0, 0.0), -riesz1d(0.5 - d, c.omega(), 0.0, 0.0),
                1e-9 * std::abs(riesz1d(0.5 + d, c.omega(), 0.0, 0.0)));
  }
}

TEST(KernelSpec, Validation) {
  EXPECT_NO_THROW(validate(KernelSpec{KernelKind::riesz2d, 1.0, 0.0, 2}));
  EXPECT_THROW(validate(KernelSpec{KernelKind::riesz2d, 1.0, 0.0, 3}), Error);
  EXPECT_THROW(validate(KernelSpec{KernelKind::frac1d, 2.0, 0.0, 1}), Error);
  EXPECT_THROW(validate(KernelSpec{KernelKind::frac1d, 0.0, -0.5, 1}), Error);
}

TEST(Poisson1d, UnitAtomAtCenter) {
  for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
    for (double len : {0.01, 1.0, 7.0}) {
      const Interval1D interval{0.3, len};
      const Measure1D atom = unit_atom(0.3);
      const double expected = std::pow(len, -(2.0 - alpha));
      EXPECT_NEAR(poisson_variant_reproducing(interval, atom, alpha), expected, 1e-13 * expected);
      EXPECT_NEAR(poisson_variant_standard(interval, atom, alpha), expected, 1e-13 * expected);
    }
  }
}

TEST(Poisson1d, EmptyAndDisjointRestriction) {
  const Measure1D empty = AtomicMeasure1D{};
  EXPECT_EQ(poisson_variant_reproducing({0.5, 1.0}, empty, 0.0), 0.0);
  EXPECT_EQ(poisson_variant_standard({0.5, 1.0}, empty, 0.0), 0.0);
  const Measure1D omega = thirds().omega();
  const Measure1D sigma = thirds().sigma(Placement::center());
  EXPECT_EQ(poisson_variant_standard({0.5, 1.0}, omega, 0.0, Span{1.5, 2.0}), 0.0);
  EXPECT_EQ(poisson_variant_standard({0.5, 1.0}, sigma, 0.0, Span{0.34, 0.4}), 0.0);
  EXPECT_GT(poisson_variant_standard({0.5, 1.0}, sigma, 0.0, Span{0.4, 0.6}), 0.0);
}

TEST(Poisson1d, ReproducingBoundedByTotalMass) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Measure1D sigma = thirds().sigma(Placement::center());
  const Measure1D omega = thirds().omega();
  for (int i = 0; i < 300; ++i) {
    const Interval1D interval{-0.5 + 2.0 * unit(rng), std::exp(-8.0 + 9.0 * unit(rng))};
    for (double alpha : {0.0, 1.0}) {
      const double scale = std::pow(interval.length, -(2.0 - alpha));
      EXPECT_GE(poisson_variant_reproducing(interval, sigma, alpha), 0.0);
      EXPECT_LE(poisson_variant_reproducing(interval, sigma, alpha),
                total_mass(sigma) * scale * (1.0 + 1e-12));
      EXPECT_LE(poisson_variant_reproducing(interval, omega, alpha), scale * (1.0 + 1e-12));
    }
  }
}

TEST(Poisson1d, StandardOnTreeIntervalsScalesLikeGenerationMass) {
  // P(I_j^k, omega) against (s0/2)^k: bounded above and below uniformly in k.
  const Construction& c = thirds();
  const Measure1D omega = c.omega();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 1; k <= 10; ++k) {
    for (std::size_t j : {std::size_t{0}, (std::size_t{1} << k) - 1, std::size_t{1} << (k - 1)}) {
      const Interval1D interval = Interval1D::from_bounds(c.tree().left(k, j), c.tree().right(k, j));
      const double ratio = poisson_variant_standard(interval, omega, 0.0) / std::pow(4.5, k);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  EXPECT_GT(lo, 0.1);
  EXPECT_LT(hi / lo, 2.0);
}

TEST(Poisson1d, ReproducingOnTreeIntervalsAgainstLocalSigmaMass) {
  const Construction& c = thirds();
  const Measure1D sigma = c.sigma(Placement::center());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 0; k <= 10; ++k) {
    for (std::size_t j : {std::size_t{0}, (std::size_t{1} << k) - 1}) {
      const Span span{c.tree().left(k, j), c.tree().right(k, j)};
      const Interval1D interval = Interval1D::from_bounds(span.lo, span.hi);
      const double local = mass(sigma, span) / std::pow(interval.length, 2.0);
      const double ratio = poisson_variant_reproducing(interval, sigma, 0.0) / local;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  EXPECT_GE(lo, 1.0 / 16.0);  // the kernel is at least 2^-4 on I
  EXPECT_LT(hi, 16.0);
}

TEST(Poisson2d, UnitAtomAtCenter) {
  for (double alpha : {0.0, 0.5, 1.5}) {
    const PlanarMeasure mu = single_row(10.0, 0.25, unit_atom(0.5));
    const Cube2D cube{{10.5, 0.25}, 0.125};
    const double expected = std::pow(0.125, -(2.0 - alpha));
    EXPECT_NEAR(poisson2d_reproducing(cube, mu, alpha), expected, 1e-13 * expected);
    EXPECT_NEAR(poisson2d_standard(cube, mu, alpha), expected, 1e-13 * expected);
  }
  const PlanarMeasure empty;
  EXPECT_EQ(poisson2d_standard({{0.0, 0.0}, 1.0}, empty, 0.0), 0.0);
  EXPECT_EQ(poisson2d_reproducing({{0.0, 0.0}, 1.0}, empty, 0.0), 0.0);
}

TEST(Poisson2d, StandardScaling) {
  // P(lambda Q, atom at lambda d) = lambda^(alpha-2) P(Q, atom at d).
  for (double alpha : {0.0, 1.0, 1.5}) {
    const double d = 0.7;
    const PlanarMeasure near_atom = single_row(0.0, 0.3, unit_atom(0.2 + d));
    const double base = poisson2d_standard({{0.2, 0.3}, 0.4}, near_atom, alpha);
    EXPECT_NEAR(base, 0.4 / std::pow(0.4 + d, 3.0 - alpha), 1e-14);
    for (double lambda : {0.01, 3.0, 250.0}) {
      const PlanarMeasure scaled = single_row(0.0, lambda * 0.3, unit_atom(lambda * (0.2 + d)));
      const double got = poisson2d_standard({{lambda * 0.2, lambda * 0.3}, lambda * 0.4}, scaled, alpha);
      const double expected = std::pow(lambda, alpha - 2.0) * base;
      EXPECT_NEAR(got, expected, 1e-12 * expected) << lambda;
    }
  }
}

TEST(Poisson2d, CrossRowTermsMatchDirectSummation) {
  const Construction& c = thirds();
  const double heights[] = {0.9, 0.7, 0.5, 0.3};
  const PlanarPair pair = build_planar(c.tree_ptr(), 4, heights, Placement::center());
  const Cube2D cube = Cube2D::from_corner(0.0, 0.0, 1.0);
  const Restriction2D outside{cube.box(), true};
  const double got = poisson2d_standard(cube, pair.sigma, 0.0, outside);

  double direct = 0.0;
  double bound = 0.0;
  for (const PlanarRow& row : pair.sigma.rows()) {
    const auto& atoms = std::get<AtomicMeasure1D>(*row.base);
    double row_mass = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const Point2 p{row.offset + atoms.positions()[i], row.height};
      if (cube.box().contains(p)) continue;
      const double r = std::hypot(p.x - cube.center.x, p.y - cube.center.y);
      direct += atoms.masses()[i] * cube.side / std::pow(cube.side + r, 3.0);
      row_mass += atoms.masses()[i];
    }
    if (row.offset > 0.0) bound += row_mass * cube.side / std::pow(row.offset - cube.center.x, 3.0);
  }
  EXPECT_NEAR(got, direct, 1e-12 * direct);
  // Row 0 sits inside the cube; the other rows decay with the row gaps.
  EXPECT_LE(got, bound);
  EXPECT_LT(got, 0.1);
}

TEST(Planar2d, SingleAtomDistance) {
  const PlanarMeasure mu = single_row(0.0, 0.0, unit_atom(0.0));
  EXPECT_NEAR(frac2d({3.0, 4.0}, mu, 0.0), 1.0 / 25.0, 1e-16);
  EXPECT_NEAR(frac2d({0.0, 0.5}, mu, 0.0), 4.0, 1e-14);
  EXPECT_NEAR(frac2d({0.0, 4.0}, mu, 1.0), 0.25, 1e-16);
}

TEST(Planar2d, RieszSymmetricAtomsCancel) {
  const PlanarMeasure horizontal = single_row(0.0, 1.0, AtomicMeasure1D({{0.25, 1.0}, {0.75, 1.0}}));
  EXPECT_EQ(riesz2d(1, {0.5, 2.0}, horizontal, 0.0), 0.0);
  EXPECT_EQ(riesz2d(1, {0.5, 3.0}, horizontal, 0.5), 0.0);

  const auto base = std::make_shared<const Measure1D>(unit_atom(0.5));
  const PlanarMeasure vertical({PlanarRow{0.0, 1.0, base}, PlanarRow{0.0, 3.0, base}});
  EXPECT_EQ(riesz2d(2, {0.5, 2.0}, vertical, 0.0), 0.0);
  EXPECT_NE(riesz2d(1, {0.9, 2.0}, vertical, 0.0), 0.0);
  EXPECT_THROW(riesz2d(3, {0.5, 2.0}, vertical, 0.0), Error);
}

TEST(Planar2d, RieszPointsTowardTheMass) {
  const PlanarMeasure mu = single_row(0.0, 0.0, unit_atom(1.0));
  EXPECT_GT(riesz2d(1, {0.0, 0.0}, mu, 0.0), 0.0);
  EXPECT_NEAR(riesz2d(1, {0.0, 0.0}, mu, 0.0), 1.0, 1e-15);
  EXPECT_LT(riesz2d(2, {1.0, 2.0}, mu, 0.0), 0.0);
}

TEST(Planar2d, SingleRowReducesToSmoothedKernels) {
  const Construction& c = thirds();
  const Measure1D omega = c.omega();
  const Measure1D sigma = c.sigma(Placement::center());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(-0.5, 1.5);
  std::uniform_real_distribution<double> log_gamma(-6.0, 1.0);
  for (double alpha : {0.0, 0.5, 1.0, 1.5}) {
    const PlanarMeasure w = single_row(0.0, 0.0, omega);
    const PlanarMeasure s = single_row(0.0, 0.0, sigma);
    for (int i = 0; i < 100; ++i) {
      const double x1 = x(rng);
      const double gamma = std::exp(log_gamma(rng));
      EXPECT_EQ(frac2d({x1, gamma}, w, alpha), frac1d(x1, omega, alpha, gamma));
      EXPECT_EQ(frac2d({x1, gamma}, s, alpha), frac1d(x1, sigma, alpha, gamma));
      EXPECT_EQ(riesz2d(1, {x1, gamma}, w, alpha), -riesz1d(x1, omega, alpha, gamma));
      EXPECT_EQ(riesz2d(1, {x1, gamma}, s, alpha), -riesz1d(x1, sigma, alpha, gamma));
    }
  }
}

TEST(MaximalAlpha, LeftEndpointOfTheCantorMeasure) {
  auto tree = std::make_shared<const CantorTree>(ConstructionParams{}, 8);
  const Measure1D omega = CantorWeights(tree, 8);
  EXPECT_NEAR(maximal_alpha(0.0, omega, *tree), std::pow(4.5, 8), 1e-9 * std::pow(4.5, 8));
  const Measure1D empty = AtomicMeasure1D{};
  EXPECT_EQ(maximal_alpha(0.0, empty, *tree), 0.0);
  EXPECT_EQ(maximal_alpha(0.5, omega, *tree), 1.0);  // only the root contains a gap point
}

TEST(MaximalAlpha, RestrictedGapAtomsDecayLikeTwoOverS0) {
  const Construction& c = thirds();
  const AtomicMeasure1D sigma = c.sigma(Placement::center());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int l = 1; l <= 8; ++l) {
    const Span span{c.tree().left(l, 0), c.tree().right(l, 0)};
    const Measure1D local = sigma.restricted(span);
    const double x = c.tree().left(l + 2, 1);  // a Cantor point inside I
    const double ratio = maximal_alpha(x, local, c.tree()) / std::pow(2.0 / 9.0, l);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_GT(lo, 0.5);
  EXPECT_LT(hi / lo, 1.5);
}
