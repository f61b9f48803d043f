#pragma once

#include <stdexcept>
#include <string>

namespace gtalloc {

enum class errc {
  invalid_argument,
  invalid_profile,
  dimension_mismatch,
  excluded_player,
  empty_game,
  restriction_degenerate,
  not_applicable,
  no_equilibrium,
  unsupported_arity,
  internal_consistency,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace gtalloc
