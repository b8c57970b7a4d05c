#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "addrx/gazetteer.hpp"

namespace addrx {

// Enumeration order is the tie-break order for candidates sharing a span start.
enum class ComponentKind { Zip, City, StreetHouse, POBox, PersonName, OrgName, CountryLine };

const char* to_string(ComponentKind kind);

struct ComponentCandidate {
    ComponentKind kind;
    size_t start = 0;  // byte offsets into the line text, [start, end)
    size_t end = 0;
    std::string surface;  // equals text.substr(start, end - start)
    double confidence = 1.0;
    std::optional<std::string> note;  // e.g. "invalid-zip", "fuzzy:1"
};

enum class LineClass { ZipCityLine, StreetLine, AddresseeLine, POBoxLine, CountryLineClass, OtherLine };

const char* to_string(LineClass cls);

// Token- and line-level detection of address components via regular patterns
// and the gazetteer reference lists.
std::vector<ComponentCandidate> detect_components(const std::string& text,
                                                  const Gazetteer& g, size_t max_edits);

// Line-level rollup; priority ZipCity > POBox > Street > Country > Addressee > Other.
LineClass classify_line(const std::string& text,
                        const std::vector<ComponentCandidate>& components);

// House-number pattern: digits, optional single letter, optional "-digits" range.
bool is_house_number(const std::string& token);

}  // namespace addrx
