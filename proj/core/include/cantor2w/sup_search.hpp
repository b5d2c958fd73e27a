#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "cantor2w/parallel.hpp"

namespace cantor2w {

/// Best candidate of a sampled supremum together with what was scanned.
template <class Witness>
struct SupSearchResult {
  Witness witness{};
  double value = 0.0;
  std::size_t candidates = 0;
  std::string family;
  std::map<std::string, double> class_max;  // largest value per candidate class
  int depth_omega = 0;
  int depth_sigma = 0;
};

/// Evaluates every candidate (in parallel) and keeps the largest value.  The
/// first scanned candidate wins ties.  `witness_of(i)` and `class_of(i)` describe
/// candidate i; `evaluate(i)` is the functional.
template <class Witness, class WitnessOf, class ClassOf, class Evaluate>
SupSearchResult<Witness> sup_search(std::size_t count, WitnessOf&& witness_of, ClassOf&& class_of,
                                    Evaluate&& evaluate, std::string family) {
  SupSearchResult<Witness> result;
  result.family = std::move(family);
  result.candidates = count;
  const auto values = parallel_map(count, evaluate);
  std::size_t best = count;
  for (std::size_t i = 0; i < count; ++i) {
    auto [it, inserted] = result.class_max.try_emplace(class_of(i), values[i]);
    if (!inserted && values[i] > it->second) it->second = values[i];
    if (best == count || values[i] > values[best]) best = i;
  }
  if (best < count) {
    result.witness = witness_of(best);
    result.value = values[best];
  }
  return result;
}

}  // namespace cantor2w
