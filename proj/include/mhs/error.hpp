#pragma once

#include <stdexcept>
#include <string>

namespace mhs {

enum class ErrorKind {
  dimension_mismatch,
  backend_mismatch,
  invalid_input,
  not_integral,
  not_surjective,
  not_r_split,
  singular,
  internal_consistency,
  assumption_failure,
  no_pole_free_cycle,
  schema,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mhs
