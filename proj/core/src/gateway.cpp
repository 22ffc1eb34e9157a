#include "swipekit/gateway.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "swipekit/errors.hpp"

namespace swipekit {

namespace {

class HttplibTransport final : public Transport {
 public:
  HttplibTransport(std::string base_url, int timeout_seconds) {
    // Split scheme://authority from an optional path prefix.
    auto scheme_end = base_url.find("://");
    std::size_t path_start =
        scheme_end == std::string::npos ? base_url.find('/') : base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
      origin_ = base_url;
    } else {
      origin_ = base_url.substr(0, path_start);
      prefix_ = base_url.substr(path_start);
      while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
    }
    client_ = std::make_unique<httplib::Client>(origin_);
    client_->set_connection_timeout(timeout_seconds, 0);
    client_->set_read_timeout(timeout_seconds, 0);
    client_->set_write_timeout(timeout_seconds, 0);
  }

  HttpResponse post(const std::string& path, const std::string& body,
                    const HeaderMap& headers) override {
    httplib::Headers hdrs(headers.begin(), headers.end());
    auto res = client_->Post((prefix_ + path).c_str(), hdrs, body, "application/json");
    if (!res) {
      throw Error(Errc::transport_failure,
                  "POST " + origin_ + prefix_ + path + ": " + httplib::to_string(res.error()));
    }
    return HttpResponse{res->status, res->body};
  }

 private:
  std::string origin_;
  std::string prefix_;
  std::unique_ptr<httplib::Client> client_;
};

constexpr char kB64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace

std::unique_ptr<Transport> make_http_transport(const std::string& base_url, int timeout_seconds) {
  return std::make_unique<HttplibTransport>(base_url, timeout_seconds);
}

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
  std::string out;
  out.reserve((size + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= size; i += 3) {
    std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out.push_back(kB64Alphabet[v & 63]);
  }
  if (i + 1 == size) {
    std::uint32_t v = data[i] << 16;
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out += "==";
  } else if (i + 2 == size) {
    std::uint32_t v = (data[i] << 16) | (data[i + 1] << 8);
    out.push_back(kB64Alphabet[(v >> 18) & 63]);
    out.push_back(kB64Alphabet[(v >> 12) & 63]);
    out.push_back(kB64Alphabet[(v >> 6) & 63]);
    out += "=";
  }
  return out;
}

std::string build_chat_body(const VisionRequest& req, const std::string& model) {
  if (req.images.empty()) {
    throw Error(Errc::malformed_request, "vision request needs at least one image");
  }
  if (req.prompt.empty()) {
    throw Error(Errc::malformed_request, "vision request needs a non-empty prompt");
  }
  nlohmann::ordered_json content = nlohmann::ordered_json::array();
  for (const auto& png : req.images) {
    content.push_back({{"type", "image_url"},
                       {"image_url",
                        {{"url", "data:image/png;base64," +
                                     base64_encode(png.data(), png.size())}}}});
  }
  content.push_back({{"type", "text"}, {"text", req.prompt}});

  nlohmann::ordered_json body;
  body["model"] = model;
  body["messages"] = nlohmann::ordered_json::array(
      {{{"role", "user"}, {"content", std::move(content)}}});
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_tokens;
  return body.dump();
}

VisionResponse chat_vision(Transport& transport, const VisionRequest& req,
                           const VisionEndpoint& endpoint) {
  const std::string body = build_chat_body(req, endpoint.model);
  HeaderMap headers;
  if (!endpoint.auth_token.empty()) {
    headers["Authorization"] = "Bearer " + endpoint.auth_token;
  }

  HttpResponse res;
  int attempt = 0;
  for (;;) {
    try {
      const auto t0 = std::chrono::steady_clock::now();
      res = transport.post("/chat/completions", body, headers);
      if (res.status >= 500) {
        throw Error(Errc::transport_failure, "server error " + std::to_string(res.status));
      }
      const auto t1 = std::chrono::steady_clock::now();
      if (res.status == 401 || res.status == 403) {
        throw Error(Errc::auth_failure, "endpoint rejected credentials");
      }
      if (res.status == 413) {
        throw Error(Errc::oversized_payload, "request body too large");
      }
      if (res.status >= 400) {  // malformed requests are never retried
        throw Error(Errc::malformed_request,
                    "endpoint returned " + std::to_string(res.status) + ": " + res.body);
      }
      nlohmann::json j = nlohmann::json::parse(res.body, nullptr, false);
      if (j.is_discarded() || !j.contains("choices") || j["choices"].empty()) {
        throw Error(Errc::unparseable_json, "response missing choices");
      }
      VisionResponse out;
      out.text = j["choices"][0].value("message", nlohmann::json::object())
                     .value("content", std::string{});
      out.model_id = j.value("model", endpoint.model);
      out.latency_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::transport_failure || attempt >= endpoint.max_retries) {
        throw;
      }
      std::this_thread::sleep_for(
          std::chrono::milliseconds(endpoint.retry_backoff_ms << attempt));
      ++attempt;
    }
  }
}

}  // namespace swipekit
