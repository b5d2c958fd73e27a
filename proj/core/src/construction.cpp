#include "cantor2w/construction.hpp"

#include <algorithm>

namespace cantor2w {

namespace {

std::shared_ptr<const CantorTree> make_tree(const ConstructionParams& params) {
  validate(params);
  return std::make_shared<const CantorTree>(params, std::max(params.depth_omega, params.depth_sigma));
}

}  // namespace

Construction::Construction(const ConstructionParams& params)
    : params_(params),
      s0_(params.s0()),
      tree_(make_tree(params)),
      omega_(tree_, params.depth_omega) {}

AtomicMeasure1D Construction::sigma(Placement placement) const {
  return sigma_atoms(*tree_, params_.depth_sigma, placement);
}

Construction Construction::with_depths(int depth_omega, int depth_sigma) const {
  ConstructionParams p = params_;
  p.depth_omega = depth_omega;
  p.depth_sigma = depth_sigma;
  return Construction(p);
}

}  // namespace cantor2w
