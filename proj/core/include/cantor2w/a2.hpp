#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cantor2w/kernels.hpp"
#include "cantor2w/sup_search.hpp"

namespace cantor2w {

// --- one dimension ---------------------------------------------------------------

/// Reproducing-Poisson product P(I, sigma) * P(I, omega) on one interval.
double a2_variant_product(const Interval1D& interval, const Measure1D& sigma, const Measure1D& omega,
                          double alpha, QuadratureOptions options = {});

struct IntervalCandidate {
  Interval1D interval;
  std::string kind;
};

/// Candidate intervals for the one-dimensional supremum at tree depth `depth`:
///   tree      every tree interval of generation <= depth
///   gap       every gap of generation <= depth
///   atom      very short intervals centered on the gap atom, where the
///             product approaches its supremum over shrinking intervals
///   centered  intervals centered in a gap, from well inside it to several
///             times the parent length
///   boundary  intervals hugging a gap endpoint from either side
///   straddle  intervals reaching from inside a child across the gap
///   large     intervals centered on [0,1] of length 2..2^12
///   far       unit-scale intervals at distance 10..10^4 from [0,1]
///   random    `n_random` seeded draws, log-uniform length and anchored on
///             tree endpoints or uniform centers
/// Per-gap classes use every j up to 64 gaps per generation and an even
/// subsample (always including both ends) beyond that.
std::vector<IntervalCandidate> a2_interval_family(const CantorTree& tree, int depth, std::uint64_t seed,
                                                  std::size_t n_random);

SupSearchResult<Interval1D> a2_variant_sup(const Measure1D& sigma, const Measure1D& omega, double alpha,
                                           std::span<const IntervalCandidate> family,
                                           QuadratureOptions options = {});

// --- two dimensions ----------------------------------------------------------------

/// P(Q, 1_{Q^c} sigma) * omega(Q) / side^(2-alpha); with `dual` the roles of
/// sigma and omega are exchanged.
double a2_2d(const Cube2D& cube, const PlanarMeasure& sigma, const PlanarMeasure& omega, double alpha,
             bool dual, QuadratureOptions options = {});

struct CubeCandidate {
  Cube2D cube;
  int rows_spanned;  // rows whose unit segment the cube meets
  std::string kind;
};

/// Candidate squares over the planar layout of `omega` and `sigma` (same row
/// offsets): squares built on tree intervals and gaps of each row at several
/// heights (including ones that just miss one of the two rows), squares
/// around the sigma atoms of generation <= tree_depth, squares reaching
/// across two and three consecutive rows, and `n_random` seeded draws split
/// between one, two and three rows.
std::vector<CubeCandidate> a2_cube_family(const PlanarMeasure& omega, const PlanarMeasure& sigma,
                                          const CantorTree& tree, int tree_depth, std::uint64_t seed,
                                          std::size_t n_random);

SupSearchResult<Cube2D> a2_2d_sup(const PlanarMeasure& sigma, const PlanarMeasure& omega, double alpha,
                                  bool dual, std::span<const CubeCandidate> family,
                                  QuadratureOptions options = {});

/// Number of rows of `measure` whose unit segment meets the box.
int rows_spanned(const PlanarMeasure& measure, const Box& box);

}  // namespace cantor2w
