#include "percolab/error.hpp"

namespace percolab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_spec: return "InvalidSpec";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::resource_limit: return "ResourceLimit";
    case Errc::vertex_out_of_range: return "VertexOutOfRange";
    case Errc::same_vertex: return "SameVertex";
    case Errc::graph_too_small: return "GraphTooSmall";
    case Errc::parse_error: return "ParseError";
    case Errc::non_simple: return "NonSimple";
    case Errc::io_error: return "IoError";
    case Errc::sampled_mode_unavailable: return "SampledModeUnavailable";
    case Errc::subset_too_small: return "SubsetTooSmall";
    case Errc::stream_length_mismatch: return "StreamLengthMismatch";
    case Errc::invalid_epsilon: return "InvalidEpsilon";
    case Errc::empty_set: return "EmptySet";
    case Errc::precondition_violated: return "PreconditionViolated";
    case Errc::combination_overflow: return "CombinationOverflow";
    case Errc::assumptions_not_certified: return "AssumptionsNotCertified";
    case Errc::u_small: return "USmall";
    case Errc::slack_too_large: return "SlackTooLarge";
    case Errc::not_connected: return "NotConnected";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::not_certified: return "NotCertified";
    case Errc::rho_out_of_range: return "RhoOutOfRange";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace percolab
