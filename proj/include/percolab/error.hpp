#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace percolab {

/// Failure categories raised by the library. Every thrown `percolab::Error`
/// carries one of these so callers (and the CLI) can branch on the kind.
enum class Errc {
  invalid_spec,
  invalid_argument,
  resource_limit,
  vertex_out_of_range,
  same_vertex,
  graph_too_small,
  parse_error,
  non_simple,
  io_error,
  sampled_mode_unavailable,
  subset_too_small,
  stream_length_mismatch,
  invalid_epsilon,
  empty_set,
  precondition_violated,
  combination_overflow,
  assumptions_not_certified,
  u_small,
  slack_too_large,
  not_connected,
  size_mismatch,
  not_certified,
  rho_out_of_range,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace percolab
