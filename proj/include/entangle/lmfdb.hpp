#ifndef ENTANGLE_LMFDB_HPP
#define ENTANGLE_LMFDB_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace entangle {

/* Optional networked spot-check: resolve curves by a-invariants against the
 * public LMFDB REST API. Responses are cached on disk; offline mode never
 * touches the network. The transport is injected so tests run against
 * recorded fixtures. */

struct CurveLookup {
    std::array<long, 5> ainvs{};  // [a1, a2, a3, a4, a6]
    std::optional<std::string> label;        // Cremona label, e.g. "100a3"
    std::optional<std::string> lmfdb_label;  // e.g. "100.a2"
    std::optional<std::vector<std::string>> galois_images;
    long fetched_at = 0;  // unix seconds at fetch time; preserved by the cache
    bool from_cache = false;
};

class Transport {
  public:
    struct Response {
        int status = 0;
        std::string body;
    };
    virtual ~Transport() = default;
    // nullopt on connection-level failure
    virtual std::optional<Response> get(const std::string& host, const std::string& path) = 0;
};

// Real HTTPS transport against www.lmfdb.org.
std::shared_ptr<Transport> make_http_transport();

class LmfdbClient {
  public:
    LmfdbClient(std::shared_ptr<Transport> transport, std::string cache_dir, bool offline);

    // Cache first; offline mode is cache-only. Network failures retry with
    // backoff and then soft-fail (label empty). Found curves are cached
    // atomically.
    CurveLookup lookup_by_ainvs(const std::array<long, 5>& ainvs);

  private:
    std::shared_ptr<Transport> transport_;
    std::string cache_dir_;
    bool offline_;
    long last_request_ms_ = 0;  // rate limit: at most one request per second

    void throttle();
};

std::string lookup_to_json(const CurveLookup& lookup);
CurveLookup lookup_from_json(const std::string& text);

}  // namespace entangle

#endif
