#pragma once

#include <optional>
#include <string>

#include "addrx/classify.hpp"
#include "addrx/compose.hpp"
#include "addrx/gazetteer.hpp"

namespace addrx {

struct ValidationReport {
    bool zip_valid = false;
    CityMatch zip_city;
    bool complete = false;
    double final_confidence = 0.0;
};

// Re-runs the reasoning checks on a labeled address. The confidence is only
// ever degraded: x1.0 when all checks pass, x0.5 on a ZIP/city mismatch,
// x0.0 on an invalid ZIP.
ValidationReport revalidate(const LabeledAddress& l, const Gazetteer& g, size_t max_edits);

// Canonical city form, expanded street suffix, collapsed whitespace,
// country defaulted to "Deutschland". Idempotent; ZIP is never touched.
AddressComponents normalize_address(const AddressComponents& c, const Gazetteer& g,
                                    size_t max_edits = 1);

struct GeocodeResult {
    enum class Status { Matched, Ambiguous, NotFound, Unavailable };
    Status status = Status::NotFound;
    std::optional<double> lat;
    std::optional<double> lon;
};

const char* to_string(GeocodeResult::Status status);

class GeocodeBackend {
  public:
    virtual ~GeocodeBackend() = default;
    // Never throws; transport failures map to Unavailable.
    virtual GeocodeResult geocode(const AddressComponents& normalized) const = 0;
};

// Pure lookup against the gazetteer's (zip, city) -> lat/lon table.
class OfflineGeocoder : public GeocodeBackend {
  public:
    explicit OfflineGeocoder(const Gazetteer& g) : gazetteer_(g) {}
    GeocodeResult geocode(const AddressComponents& normalized) const override;

  private:
    const Gazetteer& gazetteer_;
};

// Single GET per address: <base_url>/geocode?q=<free-text query>; the reply is
// {"status": "matched"|"ambiguous"|"not_found", "lat": .., "lon": ..}.
class RemoteGeocoder : public GeocodeBackend {
  public:
    RemoteGeocoder(std::string base_url, int timeout_ms);
    GeocodeResult geocode(const AddressComponents& normalized) const override;

  private:
    std::string base_url_;
    int timeout_ms_;
};

// Free-text query for the remote protocol, e.g. "Musterstraße 12, 04109 Leipzig".
std::string geocode_query(const AddressComponents& normalized);

}  // namespace addrx
