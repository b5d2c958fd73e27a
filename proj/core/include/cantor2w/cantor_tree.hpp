#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cantor2w/params.hpp"

namespace cantor2w {

/// Open gap (a, b) removed from the middle of a tree interval, with its center.
struct Gap {
  double a;
  double b;
  double center;
};

/// Middle-b Cantor construction on [0,1], generations 0..depth.
///
/// Interval indices are zero-based: generation k holds intervals j = 0..2^k-1
/// ordered left to right (j here is the usual 1-based index minus one).  The
/// children of (k, j) are (k+1, 2j) and (k+1, 2j+1); the gap of (k, j) sits
/// between them.  All intervals of a generation share the length ratio()^k.
class CantorTree {
 public:
  CantorTree(const ConstructionParams& params, int depth);

  const ConstructionParams& params() const { return params_; }
  int depth() const { return depth_; }
  double ratio() const { return ratio_; }

  static std::size_t count(int generation) { return std::size_t{1} << generation; }
  double length(int generation) const { return lengths_[static_cast<std::size_t>(generation)]; }

  double left(int generation, std::size_t j) const { return lefts_[offset(generation) + j]; }
  double right(int generation, std::size_t j) const { return left(generation, j) + length(generation); }
  double midpoint(int generation, std::size_t j) const {
    return left(generation, j) + 0.5 * length(generation);
  }
  std::span<const double> lefts(int generation) const {
    return {lefts_.data() + offset(generation), count(generation)};
  }

  Gap gap(int generation, std::size_t j) const;

  /// Index of the generation-k interval containing x, if any (closed intervals).
  std::optional<std::size_t> locate(int generation, double x) const;

 private:
  static std::size_t offset(int generation) { return count(generation) - 1; }

  ConstructionParams params_;
  int depth_;
  double ratio_;
  std::vector<double> lengths_;  // generations 0..depth+1
  std::vector<double> lefts_;    // generation-major, 2^(depth+1)-1 entries
};

}  // namespace cantor2w
