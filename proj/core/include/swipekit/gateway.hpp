#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace swipekit {

using HeaderMap = std::map<std::string, std::string>;

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Minimal HTTP POST seam so tests can substitute canned transports for the
// remote model and parser services.
class Transport {
 public:
  virtual ~Transport() = default;
  // Throws Errc::transport_failure on connection-level failures.
  virtual HttpResponse post(const std::string& path, const std::string& body,
                            const HeaderMap& headers) = 0;
};

// cpp-httplib-backed transport. base_url is scheme://host[:port][/prefix].
std::unique_ptr<Transport> make_http_transport(const std::string& base_url,
                                               int timeout_seconds = 60);

struct VisionEndpoint {
  std::string url;        // base, e.g. http://127.0.0.1:8000/v1
  std::string model;
  std::string auth_token;  // sent as a bearer token when non-empty
  int max_retries = 2;     // transient failures only
  int retry_backoff_ms = 100;
};

// Ordered images plus one prompt; the request a chat-style vision service
// consumes.
struct VisionRequest {
  std::vector<std::vector<std::uint8_t>> images;  // encoded PNG bytes, order preserved
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 1024;
};

struct VisionResponse {
  std::string text;
  std::string model_id;
  double latency_ms = 0.0;
};

// Byte-stable serialization of the outbound chat payload (golden-tested).
// Images become data-URI parts, in order, followed by the text part.
std::string build_chat_body(const VisionRequest& req, const std::string& model);

// Issues the request through the transport, retrying transient failures
// (connection errors, 5xx) up to endpoint.max_retries with exponential
// backoff. Malformed-request responses (4xx) are never retried.
// Throws Errc::transport_failure / auth_failure / oversized_payload /
// malformed_request / unparseable_json.
VisionResponse chat_vision(Transport& transport, const VisionRequest& req,
                           const VisionEndpoint& endpoint);

std::string base64_encode(const std::uint8_t* data, std::size_t size);

}  // namespace swipekit
