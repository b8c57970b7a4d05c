#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace addrx {

struct GeoPoint {
    double lat = 0;
    double lon = 0;
};

class GazetteerError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Immutable reference data: ZIP->cities registry plus auxiliary lexicons.
// All lookups are read-only and safe for concurrent use.
struct Gazetteer {
    // ZIP (exactly 5 digits) -> canonical city names.
    std::map<std::string, std::set<std::string>> zip_to_cities;
    // folded form -> canonical form, across all registered cities
    std::unordered_map<std::string, std::string> city_index;
    std::set<std::string> org_keywords;    // folded
    std::set<std::string> honorifics;      // folded
    std::set<std::string> first_names;     // folded
    std::vector<std::string> street_suffixes;  // folded, file order
    std::map<std::pair<std::string, std::string>, GeoPoint> geo_points;  // (zip, folded city)
};

// Loads zip_city.tsv, first_names.txt, org_keywords.txt, honorifics.txt and
// street_suffixes.txt from the directory. Throws GazetteerError with file and
// line number on malformed rows.
Gazetteer load_gazetteer(const std::string& directory);

// True iff token is exactly 5 digits and registered.
bool is_valid_zip(const Gazetteer& g, const std::string& token);

bool is_zip_shaped(const std::string& token);  // exactly 5 decimal digits

// Damerau-Levenshtein distance (substitution, insertion, deletion, adjacent
// transposition, unit costs) over Unicode scalar values after case folding.
size_t edit_distance(const std::string& a, const std::string& b);
size_t edit_distance(const std::u32string& a, const std::u32string& b);

struct CityMatch {
    enum class Kind { Exact, Fuzzy, Mismatch, UnknownZip };
    Kind kind = Kind::UnknownZip;
    size_t distance = 0;                      // meaningful for Fuzzy only
    std::optional<std::string> matched_city;  // canonical form, Exact/Fuzzy only
};

const char* to_string(CityMatch::Kind kind);

CityMatch zip_city_match(const Gazetteer& g, const std::string& zip,
                         const std::string& city, size_t max_edits);

}  // namespace addrx
