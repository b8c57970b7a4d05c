#include <sstream>

#include "addrx/textnorm.hpp"
#include "addrx/validate.hpp"

#include <httplib.h>
#include <json.hpp>

namespace addrx {

const char* to_string(GeocodeResult::Status status) {
    switch (status) {
        case GeocodeResult::Status::Matched: return "matched";
        case GeocodeResult::Status::Ambiguous: return "ambiguous";
        case GeocodeResult::Status::NotFound: return "not_found";
        case GeocodeResult::Status::Unavailable: return "unavailable";
    }
    return "unavailable";
}

GeocodeResult OfflineGeocoder::geocode(const AddressComponents& normalized) const {
    if (!normalized.zip || !normalized.city)
        return {GeocodeResult::Status::NotFound, std::nullopt, std::nullopt};
    auto it = gazetteer_.geo_points.find({*normalized.zip, fold_text(*normalized.city)});
    if (it == gazetteer_.geo_points.end())
        return {GeocodeResult::Status::NotFound, std::nullopt, std::nullopt};
    return {GeocodeResult::Status::Matched, it->second.lat, it->second.lon};
}

std::string geocode_query(const AddressComponents& normalized) {
    std::ostringstream q;
    if (normalized.street) {
        q << *normalized.street;
        if (normalized.house_number)
            q << " " << *normalized.house_number;
        q << ", ";
    }
    if (normalized.zip)
        q << *normalized.zip << " ";
    if (normalized.city)
        q << *normalized.city;
    return q.str();
}

RemoteGeocoder::RemoteGeocoder(std::string base_url, int timeout_ms)
    : base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {}

GeocodeResult RemoteGeocoder::geocode(const AddressComponents& normalized) const {
    try {
        httplib::Client client(base_url_);
        client.set_connection_timeout(0, timeout_ms_ * 1000);
        client.set_read_timeout(0, timeout_ms_ * 1000);
        client.set_write_timeout(0, timeout_ms_ * 1000);

        httplib::Params params{{"q", geocode_query(normalized)}};
        auto res = client.Get("/geocode", params, httplib::Headers{});
        if (!res || res->status != 200)
            return {GeocodeResult::Status::Unavailable, std::nullopt, std::nullopt};

        const auto body = nlohmann::json::parse(res->body, nullptr, false);
        if (body.is_discarded() || !body.is_object() || !body.contains("status"))
            return {GeocodeResult::Status::Unavailable, std::nullopt, std::nullopt};
        const std::string status = body["status"].get<std::string>();
        if (status == "matched" && body.contains("lat") && body.contains("lon"))
            return {GeocodeResult::Status::Matched, body["lat"].get<double>(),
                    body["lon"].get<double>()};
        if (status == "ambiguous")
            return {GeocodeResult::Status::Ambiguous, std::nullopt, std::nullopt};
        if (status == "not_found")
            return {GeocodeResult::Status::NotFound, std::nullopt, std::nullopt};
        return {GeocodeResult::Status::Unavailable, std::nullopt, std::nullopt};
    } catch (const std::exception&) {
        return {GeocodeResult::Status::Unavailable, std::nullopt, std::nullopt};
    }
}

}  // namespace addrx
