#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swipekit {

enum class Errc {
  invalid_dimension,
  degenerate_gesture,
  degenerate_target,
  shape_mismatch,
  empty_roi,
  invalid_image,
  transport_failure,
  auth_failure,
  oversized_payload,
  malformed_request,
  unparseable_json,
  empty_command,
  malformed_document,
  kind_mismatch,
  out_of_bounds,
  device_unreachable,
  decode_failure,
  dump_failure,
  unsupported,
  sink_failure,
  schema_mismatch,
  config_error,
};

std::string_view errc_name(Errc code);

// Single exception type carrying a stable error code. Callers that need to
// branch on the failure kind match on code() rather than the message text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace swipekit
