#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace schurloc {

enum class Errc {
  singular,
  no_convergence,
  index_out_of_range,
  size_mismatch,
  lambda_in_sigma_d,
  delta_singular,
  diagonal_resolvent_singular,
  window_mismatch,
  range_empty,
  parse_error,
  config_error,
  hermitian_check_failed,
  invalid_argument,
  io_error,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception carrying a machine-readable code. `block()` is set for errors
/// tied to one block index (e.g. a singular diagonal resolvent).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> block = std::nullopt)
      : std::runtime_error(what), code_(code), block_(block) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> block() const noexcept { return block_; }

 private:
  Errc code_;
  std::optional<std::size_t> block_;
};

}  // namespace schurloc
