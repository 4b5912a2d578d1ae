#include "entangle/lmfdb.hpp"

#ifdef ENTANGLE_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace entangle {

namespace {

std::string ainvs_key(const std::array<long, 5>& ainvs) {
    std::ostringstream os;
    for (size_t i = 0; i < ainvs.size(); ++i) os << (i ? "_" : "") << ainvs[i];
    return os.str();
}

std::string ainvs_query(const std::array<long, 5>& ainvs) {
    // list-valued column query: ainvs=[a1,a2,a3,a4,a6], url-encoded
    std::ostringstream os;
    os << "%5B";
    for (size_t i = 0; i < ainvs.size(); ++i) os << (i ? "%2C" : "") << ainvs[i];
    os << "%5D";
    return os.str();
}

long now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

nlohmann::json lookup_to_json_obj(const CurveLookup& lk) {
    nlohmann::json j;
    j["ainvs"] = lk.ainvs;
    j["label"] = lk.label ? nlohmann::json(*lk.label) : nlohmann::json(nullptr);
    j["lmfdb_label"] = lk.lmfdb_label ? nlohmann::json(*lk.lmfdb_label) : nlohmann::json(nullptr);
    if (lk.galois_images)
        j["galois_images"] = *lk.galois_images;
    else
        j["galois_images"] = nullptr;
    j["fetched_at"] = lk.fetched_at;
    return j;
}

CurveLookup lookup_from_json_obj(const nlohmann::json& j) {
    CurveLookup lk;
    for (size_t i = 0; i < 5; ++i) lk.ainvs[i] = j.at("ainvs").at(i).get<long>();
    if (j.contains("label") && !j.at("label").is_null())
        lk.label = j.at("label").get<std::string>();
    if (j.contains("lmfdb_label") && !j.at("lmfdb_label").is_null())
        lk.lmfdb_label = j.at("lmfdb_label").get<std::string>();
    if (j.contains("galois_images") && !j.at("galois_images").is_null())
        lk.galois_images = j.at("galois_images").get<std::vector<std::string>>();
    lk.fetched_at = j.value("fetched_at", 0L);
    return lk;
}

}  // namespace

std::string lookup_to_json(const CurveLookup& lookup) { return lookup_to_json_obj(lookup).dump(); }

CurveLookup lookup_from_json(const std::string& text) {
    return lookup_from_json_obj(nlohmann::json::parse(text));
}

namespace {

class HttpTransport : public Transport {
  public:
    std::optional<Response> get(const std::string& host, const std::string& path) override {
#ifdef ENTANGLE_HAVE_OPENSSL
        httplib::SSLClient client(host);
#else
        httplib::Client client(host);
#endif
        client.set_connection_timeout(10);
        client.set_read_timeout(30);
        auto res = client.Get(path.c_str());
        if (!res) return std::nullopt;
        return Response{res->status, res->body};
    }
};

}  // namespace

std::shared_ptr<Transport> make_http_transport() { return std::make_shared<HttpTransport>(); }

LmfdbClient::LmfdbClient(std::shared_ptr<Transport> transport, std::string cache_dir, bool offline)
    : transport_(std::move(transport)), cache_dir_(std::move(cache_dir)), offline_(offline) {}

void LmfdbClient::throttle() {
    const long now = now_ms();
    if (last_request_ms_ != 0 && now - last_request_ms_ < 1000)
        std::this_thread::sleep_for(std::chrono::milliseconds(1000 - (now - last_request_ms_)));
    last_request_ms_ = now_ms();
}

CurveLookup LmfdbClient::lookup_by_ainvs(const std::array<long, 5>& ainvs) {
    const auto dir = std::filesystem::path(cache_dir_) / "lmfdb";
    const auto file = dir / (ainvs_key(ainvs) + ".json");
    if (std::filesystem::exists(file)) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        CurveLookup lk = lookup_from_json(buf.str());
        lk.from_cache = true;
        return lk;
    }

    CurveLookup lk;
    lk.ainvs = ainvs;
    if (offline_) return lk;  // cache-only: zero network operations

    const std::string path = "/api/ec_curvedata/?_format=json&ainvs=" + ainvs_query(ainvs);
    std::optional<Transport::Response> res;
    for (int attempt = 0; attempt < 3; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(500 << attempt));
        throttle();
        res = transport_->get("www.lmfdb.org", path);
        if (res && res->status == 200) break;
    }
    if (!res || res->status != 200) return lk;  // soft-fail

    try {
        nlohmann::json j = nlohmann::json::parse(res->body);
        const auto& data = j.at("data");
        if (data.empty()) return lk;  // not in the database
        const auto& row = data.at(0);
        if (row.contains("Clabel") && row.at("Clabel").is_string())
            lk.label = row.at("Clabel").get<std::string>();
        for (const char* key : {"lmfdb_label", "label"})
            if (row.contains(key) && row.at(key).is_string()) {
                lk.lmfdb_label = row.at(key).get<std::string>();
                break;
            }
        for (const char* key : {"galois_images", "modp_images"})
            if (row.contains(key) && row.at(key).is_array()) {
                lk.galois_images = row.at(key).get<std::vector<std::string>>();
                break;
            }
    } catch (const std::exception&) {
        return lk;  // malformed payload: treat as not found
    }
    lk.fetched_at = static_cast<long>(std::time(nullptr));

    std::filesystem::create_directories(dir);
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << lookup_to_json(lk) << '\n';
    }
    std::filesystem::rename(tmp, file);
    return lk;
}

}  // namespace entangle
