#include "cantor2w/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "cantor2w/a2.hpp"
#include "cantor2w/error.hpp"

namespace cantor2w {

const char* to_string(Direction direction) {
  return direction == Direction::forward ? "forward" : "dual";
}

// ---------------------------------------------------------------------------
// Partition checks

bool intersects(const Span& a, const Span& b) {
  const double lo = std::max(a.lo, b.lo);
  const double hi = std::min(a.hi, b.hi);
  if (lo < hi) return true;
  if (lo > hi) return false;
  return a.contains(lo) && b.contains(lo);
}

bool contains(const Span& outer, const Span& inner) {
  if (inner.lo < outer.lo || inner.hi > outer.hi) return false;
  return !(inner.hi == outer.hi && inner.upper_closed && !outer.upper_closed);
}

namespace {

[[noreturn]] void overlap_error(std::size_t a, std::size_t b) {
  std::ostringstream os;
  os << "pieces " << a << " and " << b << " overlap";
  throw Error(ErrorKind::overlapping_partition, os.str());
}

[[noreturn]] void outside_error(std::size_t a) {
  std::ostringstream os;
  os << "piece " << a << " is not contained in Q";
  throw Error(ErrorKind::overlapping_partition, os.str());
}

}  // namespace

void check_partition(const Span& q, std::span<const Span> pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!(pieces[i].lo < pieces[i].hi) || !contains(q, pieces[i])) outside_error(i);
    for (std::size_t k = 0; k < i; ++k) {
      if (intersects(pieces[k], pieces[i])) overlap_error(k, i);
    }
  }
}

void check_partition(const Box& q, std::span<const Box> pieces) {
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Box& p = pieces[i];
    if (!(p.x.lo < p.x.hi) || !(p.y.lo < p.y.hi) || !contains(q.x, p.x) || !contains(q.y, p.y)) {
      outside_error(i);
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (intersects(pieces[k].x, p.x) && intersects(pieces[k].y, p.y)) overlap_error(k, i);
    }
  }
}

// ---------------------------------------------------------------------------
// Energy sums

namespace {

double finish(EnergyEvaluation& out) {
  for (const EnergyTerm& t : out.terms) out.sum += t.value;
  out.value = out.normalizer > 0.0 ? out.sum / out.normalizer : 0.0;
  return out.value;
}

bool is_square(const Box& box) {
  const double sx = box.x.length();
  const double sy = box.y.length();
  // Halving far from the origin rounds each axis separately.
  const double coords = std::abs(box.x.lo) + std::abs(box.x.hi) + std::abs(box.y.lo) + std::abs(box.y.hi);
  return std::abs(sx - sy) <= 1e-9 * std::max(sx, sy) + 64.0 * std::numeric_limits<double>::epsilon() * coords;
}

}  // namespace

EnergyEvaluation energy_functional(const Span& q, std::span<const Span> partition, const Measure1D& sigma,
                                   const Measure1D& omega, double alpha, Direction direction,
                                   QuadratureOptions options) {
  check_partition(q, partition);
  const Measure1D& weight = direction == Direction::forward ? omega : sigma;
  const Measure1D& other = direction == Direction::forward ? sigma : omega;
  EnergyEvaluation out;
  out.normalizer = mass(other, q);
  out.terms.reserve(partition.size());
  for (const Span& piece : partition) {
    EnergyTerm term;
    term.piece = piece;
    const double center = 0.5 * (piece.lo + piece.hi);
    const double len = piece.length();
    const Moments m = moments(weight, piece, center);
    term.mass = m.mass;
    if (m.mass > 0.0) {
      term.centroid = {center + m.first / m.mass, 0.0};
      term.e2 = m.variance() / (len * len);
    }
    if (term.mass * term.e2 > 0.0) {
      term.poisson = poisson_variant_standard({center, len}, other, alpha, q, options);
      term.value = term.mass * term.e2 * term.poisson * term.poisson;
    }
    out.terms.push_back(term);
  }
  finish(out);
  return out;
}

EnergyEvaluation energy_functional(const Box& q, std::span<const Box> partition, const PlanarMeasure& sigma,
                                   const PlanarMeasure& omega, double alpha, Direction direction,
                                   QuadratureOptions options) {
  if (!is_square(q)) throw Error(ErrorKind::invalid_parameters, "Q must be a square");
  for (const Box& piece : partition) {
    if (!is_square(piece)) throw Error(ErrorKind::invalid_parameters, "partition pieces must be squares");
  }
  check_partition(q, partition);
  const PlanarMeasure& weight = direction == Direction::forward ? omega : sigma;
  const PlanarMeasure& other = direction == Direction::forward ? sigma : omega;
  EnergyEvaluation out;
  out.normalizer = other.mass(q);
  out.terms.reserve(partition.size());
  for (const Box& piece : partition) {
    EnergyTerm term;
    term.piece = piece;
    const Point2 center{0.5 * (piece.x.lo + piece.x.hi), 0.5 * (piece.y.lo + piece.y.hi)};
    const double side = piece.x.length();
    const Moments2 m = weight.moments(piece, center);
    term.mass = m.mass;
    if (m.mass > 0.0) {
      term.centroid = {center.x + m.first_x / m.mass, center.y + m.first_y / m.mass};
      term.e2 = m.variance() / (side * side);
    }
    if (term.mass * term.e2 > 0.0) {
      term.poisson = poisson2d_standard({center, side}, other, alpha, Restriction2D{q, false}, options);
      term.value = term.mass * term.e2 * term.poisson * term.poisson;
    }
    out.terms.push_back(term);
  }
  finish(out);
  return out;
}

// ---------------------------------------------------------------------------
// Families

namespace {

/// Consecutive pieces between sorted cut points; all half-open but the last,
/// which takes the closure of q.
std::vector<Span> pieces_from_cuts(const Span& q, std::vector<double> cuts) {
  cuts.push_back(q.lo);
  cuts.push_back(q.hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Span> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] < q.lo || cuts[i + 1] > q.hi) continue;
    const bool last = i + 2 == cuts.size();
    out.push_back({cuts[i], cuts[i + 1], last ? q.upper_closed : false});
  }
  return out;
}

void random_refinement(const Span& piece, int level, std::mt19937_64& rng, std::size_t cap,
                       std::vector<double>& cuts) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (level >= 7 || cuts.size() + 1 >= cap || unit(rng) >= 0.7) return;
  const double mid = 0.5 * (piece.lo + piece.hi);
  cuts.push_back(mid);
  random_refinement({piece.lo, mid, false}, level + 1, rng, cap, cuts);
  random_refinement({mid, piece.hi, piece.upper_closed}, level + 1, rng, cap, cuts);
}

std::vector<Span> random_binary(const Span& q, std::mt19937_64& rng) {
  std::vector<double> cuts;
  // Always split once so the partition is never trivial.
  const double mid = 0.5 * (q.lo + q.hi);
  cuts.push_back(mid);
  random_refinement({q.lo, mid, false}, 1, rng, 128, cuts);
  random_refinement({mid, q.hi, q.upper_closed}, 1, rng, 128, cuts);
  return pieces_from_cuts(q, std::move(cuts));
}

}  // namespace

std::vector<EnergySample1D> energy_family_1d(const CantorTree& tree, int depth, std::uint64_t seed,
                                             std::size_t n_random) {
  depth = std::min(depth, tree.depth());
  std::vector<EnergySample1D> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int top = std::min(5, depth);
  for (int k = 0; k <= top; ++k) {
    for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
      const Span q{tree.left(k, j), tree.right(k, j)};
      out.push_back({q, {q}, "tree-trivial"});
      for (int down : {1, 3, 5}) {
        const int g = k + down;
        if (g > tree.depth()) continue;
        std::vector<double> cuts;
        const std::size_t first = j << down;
        for (std::size_t i = first; i < first + (std::size_t{1} << down); ++i) {
          cuts.push_back(tree.left(g, i));
          cuts.push_back(tree.right(g, i));
        }
        out.push_back({q, pieces_from_cuts(q, std::move(cuts)), "tree-aligned"});
      }
      std::vector<double> cuts;
      for (int i = 1; i < 16; ++i) cuts.push_back(q.lo + q.length() * i / 16.0);
      out.push_back({q, pieces_from_cuts(q, std::move(cuts)), "dyadic"});
      out.push_back({q, random_binary(q, rng), "random-dyadic"});
    }
  }

  // Intervals centred on a gap that reach into both neighbours, and their
  // halves.  The value jumps each time the interval swallows a gap midpoint
  // or a tree endpoint of the right neighbour, so those are the reaches
  // tried.  The extremal values sit on this family.
  const int below = 6;
  for (int k = 0; k < top; ++k) {
    for (std::size_t j = 0; j < CantorTree::count(k); ++j) {
      const double c = tree.gap(k, j).center;
      std::vector<double> reaches;
      for (int g = k + 1; g <= std::min(k + below, tree.depth() - 1); ++g) {
        const std::size_t first = (2 * j + 1) << (g - k - 1);
        for (std::size_t i = first; i < first + (std::size_t{1} << (g - k - 1)); ++i) {
          reaches.push_back(tree.gap(g, i).center - c);
          reaches.push_back(tree.left(g, i) - c);
          reaches.push_back(tree.right(g, i) - c);
        }
      }
      std::sort(reaches.begin(), reaches.end());
      reaches.erase(std::unique(reaches.begin(), reaches.end()), reaches.end());
      for (double reach : reaches) {
        const double h = reach * (1.0 + 1e-9);
        out.push_back({Span{c - h, c + h}, {Span{c - h, c + h}}, "gap-centered"});
        out.push_back({Span{c - h, c}, {Span{c - h, c}}, "gap-half"});
        out.push_back({Span{c, c + h}, {Span{c, c + h}}, "gap-half"});
      }
    }
  }

  const double shortest = tree.length(std::min(depth, 10));
  for (std::size_t i = 0; i < n_random; ++i) {
    const double len = std::exp(std::log(shortest) + unit(rng) * (std::log(2.0) - std::log(shortest)));
    const double center = -0.25 + 1.5 * unit(rng);
    const Span q{center - 0.5 * len, center + 0.5 * len};
    switch (i % 3) {
      case 0:
        out.push_back({q, {q}, "random-trivial"});
        break;
      case 1: {
        const int n_cuts = std::uniform_int_distribution<int>(1, 31)(rng);
        std::vector<double> cuts;
        for (int c = 0; c < n_cuts; ++c) cuts.push_back(q.lo + unit(rng) * len);
        out.push_back({q, pieces_from_cuts(q, std::move(cuts)), "random-cuts"});
        break;
      }
      default:
        out.push_back({q, random_binary(q, rng), "random-dyadic"});
    }
  }
  return out;
}

namespace {

struct Quadtree {
  const PlanarMeasure& omega;
  const PlanarMeasure& sigma;
  std::mt19937_64& rng;
  int max_level;
  std::size_t cap;
  double split_probability;
  std::vector<Box> leaves;
  std::size_t pending = 0;  // leaves committed so far, including unvisited siblings

  bool massive(const Box& box) const { return omega.mass(box) > 0.0 || sigma.mass(box) > 0.0; }

  void build(const Box& cell, int level) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (!massive(cell)) return;
    const bool split = level < max_level && pending + 3 <= cap && unit(rng) < split_probability;
    if (!split) {
      leaves.push_back(cell);
      return;
    }
    pending += 3;
    const double mx = 0.5 * (cell.x.lo + cell.x.hi);
    const double my = 0.5 * (cell.y.lo + cell.y.hi);
    const Span xs[2] = {{cell.x.lo, mx, false}, {mx, cell.x.hi, cell.x.upper_closed}};
    const Span ys[2] = {{cell.y.lo, my, false}, {my, cell.y.hi, cell.y.upper_closed}};
    for (const Span& y : ys) {
      for (const Span& x : xs) build({x, y}, level + 1);
    }
  }
};

}  // namespace

std::vector<EnergySample2D> energy_family_2d(const PlanarMeasure& omega, const PlanarMeasure& sigma,
                                             const CantorTree& tree, std::uint64_t seed,
                                             std::size_t n_samples) {
  const auto o_rows = omega.rows();
  const auto s_rows = sigma.rows();
  const std::size_t n_rows = std::min(o_rows.size(), s_rows.size());
  std::vector<EnergySample2D> out;
  if (n_rows == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double finest = tree.length(std::min(tree.depth(), 8));

  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::size_t pick = i % 10;
    const std::size_t span = std::min<std::size_t>(pick < 5 ? 1 : (pick < 8 ? 2 : 3), n_rows);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, n_rows - span)(rng);
    const double a = o_rows[n].offset;
    double left = 0.0;
    double side = 0.0;
    double bottom = 0.0;
    if (span == 1) {
      // Both energies vanish unless Q meets both rows, so reach up to the
      // sigma row at height h and let the side range over [h, max(4h, 2)].
      const double h = s_rows[n].height;
      const double lo = std::max(h, finest);
      const double hi = std::max(4.0 * h, 2.0);
      side = std::exp(std::log(lo) + unit(rng) * (std::log(hi) - std::log(lo)));
      left = a + unit(rng) - 0.5 * side;
      bottom = (h - side) * unit(rng);
    } else {
      left = a - 0.25 + 1.25 * unit(rng);
      const double right = o_rows[n + span - 1].offset + 1.0 + 0.25 * unit(rng);
      side = right - left;
      bottom = -side * (0.25 + 0.5 * unit(rng));
    }
    const Box q{{left, left + side}, {bottom, bottom + side}};
    Quadtree tree_builder{omega, sigma, rng, 0, 128, 0.85, {}, 1};
    tree_builder.max_level = static_cast<int>(std::ceil(std::log2(side / finest))) + 2;
    if (pick == 9) {
      tree_builder.leaves.push_back(q);
    } else {
      tree_builder.build(q, 0);
    }
    const char* kind = span == 1 ? "one-row" : (span == 2 ? "two-rows" : "three-rows");
    out.push_back({q, std::move(tree_builder.leaves), rows_spanned(omega, q), kind});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Suprema

namespace {

bool centroid_inside(const EnergyTerm& term) {
  auto within = [](const Span& s, double c) {
    const double slack = 1e-12 * std::max({1.0, std::abs(s.lo), std::abs(s.hi)});
    return c >= s.lo - slack && c <= s.hi + slack;
  };
  if (const auto* s = std::get_if<Span>(&term.piece)) return within(*s, term.centroid.x);
  const Box& b = std::get<Box>(term.piece);
  return within(b.x, term.centroid.x) && within(b.y, term.centroid.y);
}

template <class Sample, class Evaluate>
EnergySupResult<Sample> run_energy_sup(std::span<const Sample> family, Evaluate&& evaluate,
                                       std::string name) {
  std::vector<double> max_e2(family.size(), 0.0);
  std::vector<char> inside(family.size(), 1);
  EnergySupResult<Sample> result;
  result.sup = sup_search<Sample>(
      family.size(), [&](std::size_t i) { return family[i]; },
      [&](std::size_t i) { return family[i].kind; },
      [&](std::size_t i) {
        const EnergyEvaluation e = evaluate(family[i]);
        for (const EnergyTerm& t : e.terms) {
          max_e2[i] = std::max(max_e2[i], t.e2);
          if (t.mass > 0.0 && !centroid_inside(t)) inside[i] = 0;
        }
        return e.value;
      },
      std::move(name));
  for (std::size_t i = 0; i < family.size(); ++i) {
    result.max_e2 = std::max(result.max_e2, max_e2[i]);
    result.centroids_inside = result.centroids_inside && inside[i];
  }
  return result;
}

}  // namespace

EnergySupResult<EnergySample1D> energy_sup(const Measure1D& sigma, const Measure1D& omega, double alpha,
                                           Direction direction, std::span<const EnergySample1D> family,
                                           QuadratureOptions options) {
  return run_energy_sup(
      family,
      [&](const EnergySample1D& s) {
        return energy_functional(s.q, s.pieces, sigma, omega, alpha, direction, options);
      },
      std::string("energy-1d-") + to_string(direction));
}

EnergySupResult<EnergySample2D> energy_sup(const PlanarMeasure& sigma, const PlanarMeasure& omega,
                                           double alpha, Direction direction,
                                           std::span<const EnergySample2D> family,
                                           QuadratureOptions options) {
  return run_energy_sup(
      family,
      [&](const EnergySample2D& s) {
        return energy_functional(s.q, s.pieces, sigma, omega, alpha, direction, options);
      },
      std::string("energy-2d-") + to_string(direction));
}

}  // namespace cantor2w
