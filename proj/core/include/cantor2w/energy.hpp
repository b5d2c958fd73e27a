#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cantor2w/kernels.hpp"
#include "cantor2w/sup_search.hpp"

namespace cantor2w {

/// forward: pieces weighted by omega, Poisson factor of sigma restricted to Q,
/// normalized by sigma(Q).  dual: the roles of sigma and omega exchanged.
enum class Direction { forward, dual };

const char* to_string(Direction direction);

/// One summand mass * E^2 * P^2 of an energy sum.  E^2 is the normalized
/// second moment (mean squared distance to the centroid over side^2) and P the
/// standard Poisson integral of the other measure restricted to Q.  P is only
/// evaluated when mass * E^2 > 0 and is left at 0 otherwise.
struct EnergyTerm {
  std::variant<Span, Box> piece;
  double mass = 0.0;
  double e2 = 0.0;
  Point2 centroid{0.0, 0.0};
  double poisson = 0.0;
  double value = 0.0;
};

struct EnergyEvaluation {
  double sum = 0.0;
  double normalizer = 0.0;  // sigma(Q) forward, omega(Q) dual
  double value = 0.0;       // sum / normalizer, 0 when the normalizer vanishes
  std::vector<EnergyTerm> terms;
};

/// Throws overlapping_partition unless the pieces are pairwise disjoint and
/// contained in q (shared endpoints count as overlap unless one side is open).
void check_partition(const Span& q, std::span<const Span> pieces);
void check_partition(const Box& q, std::span<const Box> pieces);

bool intersects(const Span& a, const Span& b);
bool contains(const Span& outer, const Span& inner);

/// Variant energy on the line with the 1D Poisson integral.
EnergyEvaluation energy_functional(const Span& q, std::span<const Span> partition, const Measure1D& sigma,
                                   const Measure1D& omega, double alpha, Direction direction,
                                   QuadratureOptions options = {});

/// Planar energy with the standard planar Poisson integral.  Q and the pieces
/// must be squares (x and y extents equal up to 1e-9 relative, plus rounding
/// at the size of the coordinates).
EnergyEvaluation energy_functional(const Box& q, std::span<const Box> partition, const PlanarMeasure& sigma,
                                   const PlanarMeasure& omega, double alpha, Direction direction,
                                   QuadratureOptions options = {});

struct EnergySample1D {
  Span q;
  std::vector<Span> pieces;
  std::string kind;
};

struct EnergySample2D {
  Box q;
  std::vector<Box> pieces;
  int rows_spanned = 0;
  std::string kind;
};

/// (Q, partition) pairs on the line.  Q runs over the tree intervals of
/// generation <= min(5, depth) with the trivial partition, tree-aligned
/// partitions (descendants and the gaps between them) 1, 3 and 5 generations
/// down, a uniform 16-piece partition and a random binary refinement;
/// intervals centred on the gaps of generation < min(5, depth) (and their
/// halves) whose reach just covers a gap midpoint or tree endpoint up to six
/// generations down, with the trivial partition; plus `n_random` seeded
/// random intervals with trivial, random-cut or random binary partitions.  Pieces are half-open except the last.
std::vector<EnergySample1D> energy_family_1d(const CantorTree& tree, int depth, std::uint64_t seed,
                                             std::size_t n_random);

/// Squares over one, two or three consecutive rows (about 5:3:2) that meet
/// both the omega row and the sigma row above it, each with a
/// seeded random quadtree that only splits cells carrying mass.  Leaves
/// without mass are dropped from the partition.
std::vector<EnergySample2D> energy_family_2d(const PlanarMeasure& omega, const PlanarMeasure& sigma,
                                             const CantorTree& tree, std::uint64_t seed,
                                             std::size_t n_samples);

template <class Sample>
struct EnergySupResult {
  SupSearchResult<Sample> sup;
  double max_e2 = 0.0;              // over every term of every sample
  bool centroids_inside = true;     // every massive piece contains its centroid
};

EnergySupResult<EnergySample1D> energy_sup(const Measure1D& sigma, const Measure1D& omega, double alpha,
                                           Direction direction, std::span<const EnergySample1D> family,
                                           QuadratureOptions options = {});
EnergySupResult<EnergySample2D> energy_sup(const PlanarMeasure& sigma, const PlanarMeasure& omega,
                                           double alpha, Direction direction,
                                           std::span<const EnergySample2D> family,
                                           QuadratureOptions options = {});

}  // namespace cantor2w
