#include "cantor2w/error.hpp"

namespace cantor2w {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameters: return "invalid-parameters";
    case ErrorKind::depth_overflow: return "depth-overflow";
    case ErrorKind::singular_evaluation: return "singular-evaluation";
    case ErrorKind::invalid_height: return "invalid-height";
    case ErrorKind::no_admissible_c: return "no-admissible-c";
    case ErrorKind::infeasible_target: return "infeasible-target";
    case ErrorKind::zero_omega_mass: return "zero-omega-mass";
    case ErrorKind::overlapping_partition: return "overlapping-partition";
    case ErrorKind::invalid_config: return "invalid-config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace cantor2w
