#include "cantor2w/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cantor2w/error.hpp"
#include "cantor2w/parallel.hpp"
#include "cantor2w/power.hpp"

namespace cantor2w {

// ---------------------------------------------------------------------------
// Testing sums

DivergenceCurve testing_partial_sum(const Construction& construction, int max_generation,
                                    TestKind kind, Placement placement, QuadratureOptions options) {
  const ConstructionParams& params = construction.params();
  if (max_generation < 0 || max_generation > params.depth_sigma) {
    std::ostringstream os;
    os << "testing sum depth " << max_generation << " exceeds depth_sigma " << params.depth_sigma;
    throw Error(ErrorKind::depth_overflow, os.str());
  }
  const CantorTree& tree = construction.tree();
  const CantorWeights& omega = construction.omega();
  const double alpha = params.alpha;

  DivergenceCurve curve;
  double total = 0.0;
  for (int k = 0; k <= max_generation; ++k) {
    const std::size_t count = CantorTree::count(k);
    const auto values = parallel_map(count, [&](std::size_t j) {
      const double z = gap_atom_position(tree, k, j, placement);
      return kind == TestKind::frac ? frac1d(z, omega, alpha, 0.0, options)
                                    : riesz1d(z, omega, alpha, 0.0, options);
    });
    const double mass = gap_atom_mass(construction.s0(), k);
    double generation_sum = 0.0;
    for (double v : values) generation_sum += mass * v * v;
    total += generation_sum;
    curve.depths.push_back(k);
    curve.values.push_back(total);
    if (k > 0) curve.increments.push_back(generation_sum);
  }
  if (max_generation >= 2) {
    std::vector<double> xs(curve.depths.begin() + 1, curve.depths.end());
    std::vector<double> ys(curve.values.begin() + 1, curve.values.end());
    curve.fit = fit_line(xs, ys);
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Placement constant for the Riesz construction

double riesz_at_gap_point(const Construction& construction, int generation, std::size_t j, double c,
                          QuadratureOptions options) {
  const double z = gap_atom_position(construction.tree(), generation, j, Placement::riesz(c));
  return riesz1d(z, construction.omega(), construction.params().alpha, 0.0, options);
}

LemmaResult lemma_search_c(const Construction& construction, int k_max, std::span<const double> grid,
                           QuadratureOptions options) {
  const ConstructionParams& params = construction.params();
  if (k_max < 1 || k_max > params.depth_omega - 4) {
    std::ostringstream os;
    os << "k_max " << k_max << " must lie in [1, depth_omega - 4 = " << params.depth_omega - 4 << "]";
    throw Error(ErrorKind::depth_overflow, os.str());
  }
  if (grid.empty()) throw Error(ErrorKind::invalid_parameters, "empty grid for c");
  const double half_s0 = construction.s0() / 2.0;

  struct Profile {
    std::vector<double> left;
    std::vector<double> right;
  };
  const auto profiles = parallel_map(grid.size(), [&](std::size_t g) {
    const double c = grid[g];
    if (!(c > 0.0 && c < 1.0)) throw Error(ErrorKind::invalid_parameters, "grid points must lie in (0,1)");
    Profile p;
    for (int k = 1; k <= k_max; ++k) {
      const double scale = std::pow(half_s0, k);
      p.left.push_back(riesz_at_gap_point(construction, k, 0, c, options) / scale);
      p.right.push_back(riesz_at_gap_point(construction, k, CantorTree::count(k) - 1, c, options) / scale);
    }
    return p;
  });

  LemmaResult result;
  std::size_t best = grid.size();
  double best_spread = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const Profile& p = profiles[g];
    LemmaCandidate cand;
    cand.c = grid[g];
    cand.c1 = std::min(*std::min_element(p.left.begin(), p.left.end()),
                       *std::min_element(p.right.begin(), p.right.end()));
    cand.c2 = std::max(*std::max_element(p.left.begin(), p.left.end()),
                       *std::max_element(p.right.begin(), p.right.end()));
    cand.admissible = cand.c1 > 0.0;
    result.scanned.push_back(cand);
    if (cand.admissible && cand.c2 / cand.c1 < best_spread) {
      best_spread = cand.c2 / cand.c1;
      best = g;
    }
  }
  if (best == grid.size()) {
    throw Error(ErrorKind::no_admissible_c,
                "no grid point gives a positive lower constant; refine the grid towards 0 or lower k_max");
  }
  result.c = grid[best];
  result.c1 = result.scanned[best].c1;
  result.c2 = result.scanned[best].c2;
  result.left_ratios = profiles[best].left;
  result.right_ratios = profiles[best].right;
  return result;
}

// ---------------------------------------------------------------------------
// Smoothed testing functional and the height search

SmoothedTestingFunctional::SmoothedTestingFunctional(const AtomicMeasure1D& sigma,
                                                     const CantorWeights& omega, double alpha,
                                                     TestKind kind, QuadratureOptions options)
    : alpha_(alpha), kind_(kind) {
  const auto xs = sigma.positions();
  const auto ms = sigma.masses();
  struct Rule {
    std::vector<double> dx;
    std::vector<double> w;
  };
  const auto rules = parallel_map(xs.size(), [&](std::size_t i) {
    Rule rule;
    const double x = xs[i];
    omega.visit(x, 0.0, options.ratio, [&](double y, double w) {
      rule.dx.push_back(x - y);
      rule.w.push_back(w);
    });
    return rule;
  });
  atom_mass_.assign(ms.begin(), ms.end());
  node_offset_.reserve(xs.size() + 1);
  node_offset_.push_back(0);
  for (const Rule& rule : rules) {
    node_dx_.insert(node_dx_.end(), rule.dx.begin(), rule.dx.end());
    node_weight_.insert(node_weight_.end(), rule.w.begin(), rule.w.end());
    node_offset_.push_back(node_dx_.size());
  }
}

double SmoothedTestingFunctional::operator()(double gamma) const {
  const double g2 = gamma * gamma;
  const Power frac((alpha_ - 2.0) / 2.0);
  const Power riesz((alpha_ - 3.0) / 2.0);
  const std::size_t atoms = atom_mass_.size();
  // Fixed-size chunks keep the reduction order independent of the worker count.
  constexpr std::size_t chunk = 256;
  const std::size_t chunks = (atoms + chunk - 1) / chunk;
  const auto partial = parallel_map(chunks, [&](std::size_t c) {
    double sum = 0.0;
    const std::size_t end = std::min(atoms, (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) {
      double inner = 0.0;
      for (std::size_t n = node_offset_[i]; n < node_offset_[i + 1]; ++n) {
        const double dx = node_dx_[n];
        const double r2 = dx * dx + g2;
        inner += kind_ == TestKind::frac ? node_weight_[n] * frac(r2)
                                         : node_weight_[n] * (dx * riesz(r2));
      }
      sum += atom_mass_[i] * inner * inner;
    }
    return sum;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

GammaSearchResult gamma_search(const SmoothedTestingFunctional& functional, double n_target) {
  if (!(n_target > 0.0) || !std::isfinite(n_target)) {
    throw Error(ErrorKind::invalid_parameters, "target must be positive");
  }
  // Aim for the middle of [n, n(1 + 1e-6)] so that re-evaluations through other
  // code paths stay above n despite rounding.
  constexpr double kWindowLo = 1e-7;
  constexpr double kWindowHi = 9e-7;

  GammaSearchResult result;
  result.target = n_target;
  auto F = [&](double g) {
    ++result.evaluations;
    return functional(g);
  };
  const double at_zero = F(0.0);
  if (n_target > 0.9 * at_zero) {
    std::ostringstream os;
    os << "target " << n_target << " exceeds 0.9 * F(0+) = " << 0.9 * at_zero
       << " at the current truncation; raise depth_sigma";
    throw Error(ErrorKind::infeasible_target, os.str());
  }

  // Upper end: F(hi) < n.
  double hi = 1.0;
  double f_hi = F(hi);
  for (int i = 0; f_hi >= n_target && i < 200; ++i) {
    hi *= 4.0;
    f_hi = F(hi);
  }
  if (f_hi >= n_target) throw Error(ErrorKind::infeasible_target, "could not bracket from above");

  // Scan down a geometric grid until F crosses the target.
  double lo = hi / 2.0;
  double f_lo = F(lo);
  for (int i = 0; f_lo < n_target && i < 1100; ++i) {
    hi = lo;
    f_hi = f_lo;
    lo /= 2.0;
    f_lo = F(lo);
  }
  if (f_lo < n_target) {
    lo = 0.0;
    f_lo = at_zero;
  }

  auto inside = [&](double f) {
    const double rel = (f - n_target) / n_target;
    return rel >= kWindowLo && rel <= kWindowHi;
  };
  if (inside(f_lo) && lo > 0.0) {
    result.gamma = lo;
    result.value = f_lo;
    return result;
  }
  const double aim = n_target * (1.0 + 0.5 * (kWindowLo + kWindowHi));
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = F(mid);
    if (inside(f_mid)) {
      result.gamma = mid;
      result.value = f_mid;
      return result;
    }
    if (f_mid >= aim) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  // Bracket collapsed without meeting the window: report the closest end.
  const bool take_lo = std::abs(f_lo - n_target) <= std::abs(f_hi - n_target) && lo > 0.0;
  result.gamma = take_lo ? lo : hi;
  result.value = take_lo ? f_lo : f_hi;
  return result;
}

// ---------------------------------------------------------------------------
// Off-testing quotient

double offtest_quotient(const Cube2D& cube, TestKind kind, int component, const PlanarMeasure& sigma,
                        const PlanarMeasure& omega, double alpha, QuadratureOptions options) {
  if (kind == TestKind::riesz && component != 1 && component != 2) {
    throw Error(ErrorKind::invalid_parameters, "riesz component must be 1 or 2");
  }
  const Box box = cube.box();
  const double omega_mass = omega.mass(box);
  if (!(omega_mass > 0.0)) throw Error(ErrorKind::zero_omega_mass, "omega(Q) = 0");

  struct OmegaPiece {
    const PlanarRow* row;
    Span span;
  };
  std::vector<OmegaPiece> pieces;
  for (const PlanarRow& row : omega.rows()) {
    Span local;
    if (row_span(row, box, local)) pieces.push_back({&row, local});
  }
  const Power frac((alpha - 2.0) / 2.0);
  const Power riesz((alpha - 3.0) / 2.0);

  double total = 0.0;
  for (const PlanarRow& srow : sigma.rows()) {
    const auto* atoms = std::get_if<AtomicMeasure1D>(srow.base.get());
    if (!atoms) throw Error(ErrorKind::invalid_parameters, "sigma rows must be atomic");
    const auto xs = atoms->positions();
    const auto ms = atoms->masses();
    constexpr std::size_t chunk = 256;
    const std::size_t chunks = (xs.size() + chunk - 1) / chunk;
    const auto partial = parallel_map(chunks, [&](std::size_t c) {
      double sum = 0.0;
      const std::size_t end = std::min(xs.size(), (c + 1) * chunk);
      for (std::size_t i = c * chunk; i < end; ++i) {
        if (box.contains({srow.offset + xs[i], srow.height})) continue;
        double inner = 0.0;
        for (const OmegaPiece& piece : pieces) {
          // Offsets are integers, so the row-to-row shift is exact.
          const double center = (srow.offset - piece.row->offset) + xs[i];
          const double dy = srow.height - piece.row->height;
          auto add = [&](double y) {
            const double dx = center - y;
            const double r2 = dx * dx + dy * dy;
            if (kind == TestKind::frac) return frac(r2);
            const double toward = component == 1 ? -dx : -dy;
            return toward * riesz(r2);
          };
          if (const auto* w_atoms = std::get_if<AtomicMeasure1D>(piece.row->base.get())) {
            const auto [first, last] = w_atoms->range(piece.span);
            const auto ys = w_atoms->positions();
            const auto ws = w_atoms->masses();
            for (std::size_t n = first; n < last; ++n) inner += ws[n] * add(ys[n]);
          } else {
            std::get<CantorWeights>(*piece.row->base)
                .visit(center, 0.0, options.ratio, piece.span,
                       [&](double y, double w) { inner += w * add(y); });
          }
        }
        sum += ms[i] * inner * inner;
      }
      return sum;
    });
    double row_total = 0.0;
    for (double p : partial) row_total += p;
    total += row_total;
  }
  return total / omega_mass;
}

// ---------------------------------------------------------------------------
// Maximal function estimate

namespace {

struct MaximalWalk {
  const CantorTree& tree;
  const AtomicMeasure1D& sigma;
  int level;
  double exponent;
  double leaf_weight;
  double integral = 0.0;

  void descend(int k, std::size_t j, double running_max) {
    const double l = tree.left(k, j);
    const double len = tree.length(k);
    const double m = sigma.mass(Span{l, l + len});
    running_max = std::max(running_max, m / std::pow(len, exponent));
    if (k == level) {
      integral += leaf_weight * running_max * running_max;
      return;
    }
    descend(k + 1, 2 * j, running_max);
    descend(k + 1, 2 * j + 1, running_max);
  }
};

}  // namespace

MaximalIntegral maximal_square_integral(int generation, std::size_t j, const AtomicMeasure1D& sigma,
                                        const CantorWeights& omega) {
  const CantorTree& tree = omega.tree();
  if (generation < 0 || generation > omega.level() || j >= CantorTree::count(generation)) {
    throw Error(ErrorKind::invalid_parameters, "not a tree interval at or above the approximation level");
  }
  const Span node{tree.left(generation, j), tree.right(generation, j)};
  const AtomicMeasure1D local = sigma.restricted(node);
  MaximalWalk walk{tree, local, omega.level(), 2.0 - tree.params().alpha,
                   CantorWeights::node_mass(omega.level())};
  // Intervals strictly containing I see the same mass over a longer length,
  // so the supremum along the ancestors is attained at I itself.
  walk.descend(generation, j, 0.0);
  return {walk.integral, local.total_mass()};
}

}  // namespace cantor2w
