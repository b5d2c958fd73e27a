#include "cantor2w/a2.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cantor2w {

namespace {

/// Gap indices visited by the per-gap classes of generation k.
std::vector<std::size_t> sampled_indices(int generation) {
  constexpr std::size_t kMaxPerGeneration = 64;
  const std::size_t count = CantorTree::count(generation);
  std::vector<std::size_t> out;
  if (count <= kMaxPerGeneration) {
    for (std::size_t j = 0; j < count; ++j) out.push_back(j);
    return out;
  }
  for (std::size_t i = 0; i < kMaxPerGeneration; ++i) {
    out.push_back((i * (count - 1) + (kMaxPerGeneration - 1) / 2) / (kMaxPerGeneration - 1));
  }
  return out;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

double a2_variant_product(const Interval1D& interval, const Measure1D& sigma, const Measure1D& omega,
                          double alpha, QuadratureOptions options) {
  const double ps = poisson_variant_reproducing(interval, sigma, alpha, std::nullopt, options);
  if (ps == 0.0) return 0.0;
  return ps * poisson_variant_reproducing(interval, omega, alpha, std::nullopt, options);
}

std::vector<IntervalCandidate> a2_interval_family(const CantorTree& tree, int depth, std::uint64_t seed,
                                                  std::size_t n_random) {
  depth = std::min(depth, tree.depth());
  std::vector<IntervalCandidate> out;
  auto add = [&](Interval1D interval, const char* kind) { out.push_back({interval, kind}); };

  for (int k = 0; k <= depth; ++k) {
    for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
      add(Interval1D::from_bounds(tree.left(k, j), tree.right(k, j)), "tree");
    }
  }
  for (int k = 0; k <= depth; ++k) {
    for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
      const Gap gap = tree.gap(k, j);
      add(Interval1D::from_bounds(gap.a, gap.b), "gap");
    }
  }
  for (int k = 0; k <= depth; ++k) {
    const double parent = tree.length(k);
    const double child = tree.length(k + 1);
    for (std::size_t j : sampled_indices(k)) {
      const Gap gap = tree.gap(k, j);
      const double g = gap.b - gap.a;
      for (double f : {1e-6, 1e-3}) add({gap.center, f * g}, "atom");
      for (double f : {0.125, 0.5}) add({gap.center, f * g}, "centered");
      for (double f : {0.75, 1.0, 2.0, 4.0}) add({gap.center, f * parent}, "centered");
      for (double t : {g / 16.0, g / 4.0}) {
        add({gap.a, 2.0 * t}, "boundary");
        add({gap.b, 2.0 * t}, "boundary");
        add(Interval1D::from_bounds(gap.a, gap.a + t), "boundary");
        add(Interval1D::from_bounds(gap.b - t, gap.b), "boundary");
      }
      for (auto [u, v] : {std::pair{0.5, 0.5}, std::pair{0.1, 0.9}, std::pair{0.9, 0.1}}) {
        add(Interval1D::from_bounds(gap.a - u * child, gap.a + v * g), "straddle");
        add(Interval1D::from_bounds(gap.b - v * g, gap.b + u * child), "straddle");
      }
      for (double u : {0.1, 0.5}) {
        add(Interval1D::from_bounds(gap.a - u * child, gap.b + u * child), "straddle");
      }
    }
  }
  for (int p = 1; p <= 12; ++p) add({0.5, std::ldexp(1.0, p)}, "large");
  for (double d : {10.0, 100.0, 1000.0, 10000.0}) {
    for (double len : {0.1, 1.0, 10.0}) {
      add({0.5 - d, len}, "far");
      add({0.5 + d, len}, "far");
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> generation(0, depth);
  const double shortest = tree.length(depth + 1);
  for (std::size_t i = 0; i < n_random; ++i) {
    const double len = log_uniform(rng, shortest, 2.0);
    if (i % 2 == 0) {
      const int k = generation(rng);
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, CantorTree::count(k) - 1)(rng);
      const Gap gap = tree.gap(k, j);
      const double anchors[4] = {tree.left(k, j), gap.a, gap.b, tree.right(k, j)};
      const double anchor = anchors[std::uniform_int_distribution<int>(0, 3)(rng)];
      const bool rightward = unit(rng) < 0.5;
      add(rightward ? Interval1D::from_bounds(anchor, anchor + len)
                    : Interval1D::from_bounds(anchor - len, anchor),
          "random");
    } else {
      add({-0.25 + 1.5 * unit(rng), len}, "random");
    }
  }
  return out;
}

SupSearchResult<Interval1D> a2_variant_sup(const Measure1D& sigma, const Measure1D& omega, double alpha,
                                           std::span<const IntervalCandidate> family,
                                           QuadratureOptions options) {
  return sup_search<Interval1D>(
      family.size(), [&](std::size_t i) { return family[i].interval; },
      [&](std::size_t i) { return family[i].kind; },
      [&](std::size_t i) { return a2_variant_product(family[i].interval, sigma, omega, alpha, options); },
      "a2-variant-intervals");
}

double a2_2d(const Cube2D& cube, const PlanarMeasure& sigma, const PlanarMeasure& omega, double alpha,
             bool dual, QuadratureOptions options) {
  const PlanarMeasure& inside = dual ? sigma : omega;
  const PlanarMeasure& outside = dual ? omega : sigma;
  const Box box = cube.box();
  const double mass = inside.mass(box);
  if (mass == 0.0) return 0.0;
  const double poisson = poisson2d_reproducing(cube, outside, alpha, Restriction2D{box, true}, options);
  return poisson * mass / std::pow(cube.side, 2.0 - alpha);
}

int rows_spanned(const PlanarMeasure& measure, const Box& box) {
  return static_cast<int>(measure.rows_meeting(box).size());
}

std::vector<CubeCandidate> a2_cube_family(const PlanarMeasure& omega, const PlanarMeasure& sigma,
                                          const CantorTree& tree, int tree_depth, std::uint64_t seed,
                                          std::size_t n_random) {
  const auto o_rows = omega.rows();
  const auto s_rows = sigma.rows();
  const std::size_t n_rows = std::min(o_rows.size(), s_rows.size());
  std::vector<CubeCandidate> out;
  auto add = [&](double x0, double y0, double side, const char* kind) {
    const Cube2D cube = Cube2D::from_corner(x0, y0, side);
    out.push_back({cube, rows_spanned(omega, cube.box()), kind});
  };
  tree_depth = std::min(tree_depth, tree.depth());

  for (std::size_t n = 0; n < n_rows; ++n) {
    const double a = o_rows[n].offset;
    const double h = s_rows[n].height;
    // Boxes are closed, so a square ending at y = h*(1 - eps) holds the omega
    // row with the sigma row just outside, and one starting at eps*h the
    // reverse.
    const double eps = 1e-9 * h;
    auto placements = [&](double left, double side, const char* kind) {
      add(a + left, -0.5 * side, side, kind);
      add(a + left, -side, side, kind);
      add(a + left, h - 0.5 * side, side, kind);
      add(a + left, 0.0, side, kind);
      if (side > h) {
        add(a + left, h - eps - side, side, kind);
        add(a + left, eps, side, kind);
      }
    };
    for (int k = 0; k <= tree_depth; ++k) {
      for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
        placements(tree.left(k, j), tree.length(k), "row-tree");
      }
    }
    for (int k = 0; k < tree_depth; ++k) {
      for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
        const Gap gap = tree.gap(k, j);
        placements(gap.a, gap.b - gap.a, "row-gap");
      }
    }
    // Squares around the sigma atoms of the row: tiny centered ones and ones
    // with the atom on the top edge, as close to the omega row as possible.
    const auto* atoms = std::get_if<AtomicMeasure1D>(s_rows[n].base.get());
    for (int k = 0; atoms && k <= tree_depth; ++k) {
      for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
        const Gap gap = tree.gap(k, j);
        const double g = gap.b - gap.a;
        // Atom positions follow the row's placement; pick the one in this gap.
        const auto [first, last] = atoms->range(Span{gap.a, gap.b});
        if (first == last) continue;
        const double z = atoms->positions()[first];
        for (double f : {1e-3, 1e-1}) add(a + z - 0.5 * f * g, h - 0.5 * f * g, f * g, "atom");
        for (double f : {0.25, 0.5, 1.0 - 1e-6}) add(a + z - 0.5 * f * h, h - f * h, f * h, "atom-top");
      }
    }
  }
  for (std::size_t span = 2; span <= 3; ++span) {
    for (std::size_t n = 0; n + span <= n_rows; ++n) {
      const double a_first = o_rows[n].offset;
      const double a_last = o_rows[n + span - 1].offset;
      for (double u : {0.0, 0.5, 0.95}) {
        for (double w : {0.05, 0.5, 1.0}) {
          const double side = (a_last + w) - (a_first + u);
          const char* kind = span == 2 ? "two-rows" : "three-rows";
          add(a_first + u, -0.5 * side, side, kind);
          add(a_first + u, -0.01 * side, side, kind);
        }
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double shortest = tree.length(std::min(tree.depth(), 8));
  for (std::size_t i = 0; i < n_random && n_rows > 0; ++i) {
    const std::size_t pick = i % 10;
    std::size_t span = pick < 5 ? 1 : (pick < 8 ? 2 : 3);
    span = std::min(span, n_rows);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, n_rows - span)(rng);
    const double a = o_rows[n].offset;
    if (span == 1) {
      const double h = s_rows[n].height;
      const double side = log_uniform(rng, shortest, 1.0);
      const double left = a - 0.5 * side + unit(rng);
      const double y0 = -side + unit(rng) * (h + side);
      add(left, y0, side, "random-one-row");
    } else {
      const double left = a - 0.5 + 1.5 * unit(rng);
      const double right = o_rows[n + span - 1].offset + 1.5 * unit(rng);
      const double side = right - left;
      add(left, -side * unit(rng), side, span == 2 ? "random-two-rows" : "random-three-rows");
    }
  }
  return out;
}

SupSearchResult<Cube2D> a2_2d_sup(const PlanarMeasure& sigma, const PlanarMeasure& omega, double alpha,
                                  bool dual, std::span<const CubeCandidate> family,
                                  QuadratureOptions options) {
  return sup_search<Cube2D>(
      family.size(), [&](std::size_t i) { return family[i].cube; },
      [&](std::size_t i) { return family[i].kind; },
      [&](std::size_t i) { return a2_2d(family[i].cube, sigma, omega, alpha, dual, options); },
      dual ? "a2-dual-cubes" : "a2-cubes");
}

}  // namespace cantor2w
