#pragma once

#include <memory>

#include "cantor2w/measures.hpp"

namespace cantor2w {

/// Validated params together with the tree and the Cantor measure built from
/// them.  The tree is deep enough for both truncation depths.
class Construction {
 public:
  explicit Construction(const ConstructionParams& params);

  const ConstructionParams& params() const { return params_; }
  double s0() const { return s0_; }
  const CantorTree& tree() const { return *tree_; }
  const std::shared_ptr<const CantorTree>& tree_ptr() const { return tree_; }
  const CantorWeights& omega() const { return omega_; }

  /// Gap atoms of generations 0..depth_sigma.
  AtomicMeasure1D sigma(Placement placement) const;
  /// Same alpha and b with other truncation depths.
  Construction with_depths(int depth_omega, int depth_sigma) const;

 private:
  ConstructionParams params_;
  double s0_;
  std::shared_ptr<const CantorTree> tree_;
  CantorWeights omega_;
};

}  // namespace cantor2w
