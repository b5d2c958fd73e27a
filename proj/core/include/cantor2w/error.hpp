#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor2w {

enum class ErrorKind {
  invalid_parameters,
  depth_overflow,
  singular_evaluation,
  invalid_height,
  no_admissible_c,
  infeasible_target,
  zero_omega_mass,
  overlapping_partition,
  invalid_config,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto exit codes and remediation hints.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cantor2w
