#include "swipekit/errors.hpp"

namespace swipekit {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_dimension: return "invalid-dimension";
    case Errc::degenerate_gesture: return "degenerate-gesture";
    case Errc::degenerate_target: return "degenerate-target";
    case Errc::shape_mismatch: return "shape-mismatch";
    case Errc::empty_roi: return "empty-roi";
    case Errc::invalid_image: return "invalid-image";
    case Errc::transport_failure: return "transport-failure";
    case Errc::auth_failure: return "auth-failure";
    case Errc::oversized_payload: return "oversized-payload";
    case Errc::malformed_request: return "malformed-request";
    case Errc::unparseable_json: return "unparseable-json";
    case Errc::empty_command: return "empty-command";
    case Errc::malformed_document: return "malformed-document";
    case Errc::kind_mismatch: return "kind-mismatch";
    case Errc::out_of_bounds: return "out-of-bounds";
    case Errc::device_unreachable: return "device-unreachable";
    case Errc::decode_failure: return "decode-failure";
    case Errc::dump_failure: return "dump-failure";
    case Errc::unsupported: return "unsupported";
    case Errc::sink_failure: return "sink-failure";
    case Errc::schema_mismatch: return "schema-mismatch";
    case Errc::config_error: return "config-error";
  }
  return "unknown";
}

}  // namespace swipekit
