#include "cantor2w/cantor_tree.hpp"

#include <cmath>

#include "cantor2w/error.hpp"

namespace cantor2w {

CantorTree::CantorTree(const ConstructionParams& params, int depth)
    : params_(params), depth_(depth), ratio_(params.ratio()) {
  validate(params);
  if (depth < 0 || depth > 26) {
    throw Error(ErrorKind::invalid_parameters, "tree depth must lie in [0,26]");
  }
  lengths_.resize(static_cast<std::size_t>(depth) + 2);
  for (std::size_t k = 0; k < lengths_.size(); ++k) {
    lengths_[k] = std::pow(ratio_, static_cast<double>(k));
  }
  lefts_.resize(count(depth + 1) - 1);
  lefts_[0] = 0.0;
  for (int k = 0; k < depth; ++k) {
    // Right child starts after the left child and the gap: (1-r)*|I_k|.
    const double shift = length(k) - length(k + 1);
    const std::size_t parent = offset(k);
    const std::size_t child = offset(k + 1);
    for (std::size_t j = 0; j < count(k); ++j) {
      const double l = lefts_[parent + j];
      lefts_[child + 2 * j] = l;
      lefts_[child + 2 * j + 1] = l + shift;
    }
  }
}

Gap CantorTree::gap(int generation, std::size_t j) const {
  const double l = left(generation, j);
  const double len = length(generation);
  return Gap{l + length(generation + 1), l + (len - length(generation + 1)), l + 0.5 * len};
}

std::optional<std::size_t> CantorTree::locate(int generation, double x) const {
  if (x < 0.0 || x > 1.0 || generation > depth_) return std::nullopt;
  std::size_t j = 0;
  for (int k = 0; k < generation; ++k) {
    const double l = left(k, j);
    if (x <= l + length(k + 1)) {
      j = 2 * j;
    } else if (x >= l + (length(k) - length(k + 1))) {
      j = 2 * j + 1;
    } else {
      return std::nullopt;
    }
  }
  return j;
}

}  // namespace cantor2w
