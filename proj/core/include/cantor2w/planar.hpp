#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cantor2w/measures.hpp"

namespace cantor2w {

struct Point2 {
  double x;
  double y;
};

/// Axis-parallel rectangle; each side follows the Span membership rules.
struct Box {
  Span x;
  Span y;

  bool contains(Point2 p) const { return x.contains(p.x) && y.contains(p.y); }
};

/// One copy of a 1D measure placed on [offset, offset+1] x {height}.
struct PlanarRow {
  double offset;
  double height;
  std::shared_ptr<const Measure1D> base;
};

struct Moments2 {
  double mass = 0.0;
  double first_x = 0.0;
  double first_y = 0.0;
  double second = 0.0;  // sum of squared Euclidean distances to the reference point

  /// Trace of the covariance (mean squared distance to the centroid).
  double variance() const;
};

class PlanarMeasure {
 public:
  PlanarMeasure() = default;
  explicit PlanarMeasure(std::vector<PlanarRow> rows);

  std::span<const PlanarRow> rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  double total_mass() const;
  double mass(const Box& box) const;
  Moments2 moments(const Box& box, Point2 about) const;
  /// Indices of rows whose horizontal unit segment meets the box.
  std::vector<std::size_t> rows_meeting(const Box& box) const;

 private:
  std::vector<PlanarRow> rows_;
};

/// Horizontal gap k_n = 4^ceil(2n * max(1/(2-alpha), 1)) between row n and n+1.
double row_separation(double alpha, int n);
/// Offsets a_0 = 0, a_{n+1} = a_n + 1 + k_n.
std::vector<double> row_offsets(double alpha, int n_rows);

struct PlanarPair {
  PlanarMeasure omega;
  PlanarMeasure sigma;
};

/// Cantor-measure rows at height 0 and gap-atom rows directly above them at
/// the given heights.  Truncation depths come from the tree's params.
/// Throws invalid_height for non-positive heights and invalid_parameters when
/// heights.size() != n_rows or n_rows < 1.
PlanarPair build_planar(const std::shared_ptr<const CantorTree>& tree, int n_rows,
                        std::span<const double> heights, Placement placement);

/// Row-local span of a box for a row, if the row height lies in the box.
bool row_span(const PlanarRow& row, const Box& box, Span& out);

}  // namespace cantor2w
