#include "addrx/ingest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace addrx {

using nlohmann::json;

const char* to_string(IngestError::Kind kind) {
    switch (kind) {
        case IngestError::Kind::Syntax: return "syntax";
        case IngestError::Kind::Schema: return "schema";
        case IngestError::Kind::Geometry: return "geometry";
        case IngestError::Kind::DuplicateId: return "duplicate-id";
    }
    return "syntax";
}

IngestException::IngestException(IngestError err)
    : std::runtime_error(std::string(to_string(err.kind)) + " at " + err.location +
                         ": " + err.message),
      err_(std::move(err)) {}

namespace {

[[noreturn]] void fail(IngestError::Kind kind, const std::string& location,
                       const std::string& message) {
    throw IngestException({kind, location, message});
}

const json& require(const json& obj, const char* key, const std::string& location) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(IngestError::Kind::Schema, location, std::string("missing field \"") + key + "\"");
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& location) {
    const json& v = require(obj, key, location);
    if (!v.is_number())
        fail(IngestError::Kind::Schema, location + "." + key, "expected a number");
    return v.get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& location) {
    const json& v = require(obj, key, location);
    if (!v.is_string())
        fail(IngestError::Kind::Schema, location + "." + key, "expected a string");
    return v.get<std::string>();
}

BoundingBox parse_bbox(const json& v, const std::string& location) {
    if (!v.is_array() || v.size() != 4 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number() || !v[3].is_number())
        fail(IngestError::Kind::Schema, location, "bbox must be [x0,y0,x1,y1]");
    BoundingBox b{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                  v[3].get<double>()};
    if (!b.valid())
        fail(IngestError::Kind::Geometry, location,
             "bbox must satisfy x0 < x1, y0 < y1, coordinates >= 0");
    return b;
}

TextLine parse_line(const json& v, const std::string& location) {
    if (!v.is_object())
        fail(IngestError::Kind::Schema, location, "line must be an object");
    TextLine line;
    line.id = require_string(v, "id", location);
    if (line.id.empty())
        fail(IngestError::Kind::Schema, location + ".id", "line id must be non-empty");
    line.text = require_string(v, "text", location);
    line.bbox = parse_bbox(require(v, "bbox", location), location + ".bbox");
    if (auto it = v.find("confidence"); it != v.end()) {
        if (!it->is_number())
            fail(IngestError::Kind::Schema, location + ".confidence", "expected a number");
        line.ocr_confidence = it->get<double>();
        if (line.ocr_confidence < 0.0 || line.ocr_confidence > 1.0)
            fail(IngestError::Kind::Schema, location + ".confidence",
                 "confidence must be in [0,1]");
    }
    return line;
}

Page parse_page(const json& v, const std::string& location) {
    if (!v.is_object())
        fail(IngestError::Kind::Schema, location, "page must be an object");
    Page page;
    page.page_number = static_cast<int>(require_number(v, "page_number", location));
    if (page.page_number < 1)
        fail(IngestError::Kind::Schema, location + ".page_number", "must be >= 1");
    page.width_px = require_number(v, "width_px", location);
    page.height_px = require_number(v, "height_px", location);
    if (page.width_px <= 0 || page.height_px <= 0)
        fail(IngestError::Kind::Schema, location, "page dimensions must be positive");
    if (auto it = v.find("dpi"); it != v.end()) {
        if (!it->is_number_integer() || it->get<int>() <= 0)
            fail(IngestError::Kind::Schema, location + ".dpi", "dpi must be a positive integer");
        page.dpi = it->get<int>();
    }
    const json& lines = require(v, "lines", location);
    if (!lines.is_array())
        fail(IngestError::Kind::Schema, location + ".lines", "expected an array");
    std::set<std::string> seen;
    for (size_t i = 0; i < lines.size(); ++i) {
        const std::string lloc = location + ".lines[" + std::to_string(i) + "]";
        TextLine line = parse_line(lines[i], lloc);
        if (line.bbox.x1 > page.width_px || line.bbox.y1 > page.height_px)
            fail(IngestError::Kind::Geometry, lloc + ".bbox", "bbox outside page bounds");
        if (!seen.insert(line.id).second)
            fail(IngestError::Kind::DuplicateId, lloc + ".id",
                 "duplicate line id \"" + line.id + "\"");
        page.lines.push_back(std::move(line));
    }
    return page;
}

}  // namespace

Document parse_document(std::istream& in) {
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(IngestError::Kind::Syntax, "$", e.what());
    }
    if (!root.is_object())
        fail(IngestError::Kind::Schema, "$", "top level must be an object");
    Document doc;
    doc.document_id = require_string(root, "document_id", "$");
    const json& pages = require(root, "pages", "$");
    if (!pages.is_array())
        fail(IngestError::Kind::Schema, "pages", "expected an array");
    int prev_number = 0;
    for (size_t i = 0; i < pages.size(); ++i) {
        const std::string loc = "pages[" + std::to_string(i) + "]";
        Page page = parse_page(pages[i], loc);
        if (page.page_number <= prev_number)
            fail(IngestError::Kind::Schema, "pages",
                 "page_numbers must be strictly increasing");
        prev_number = page.page_number;
        doc.pages.push_back(std::move(page));
    }
    return doc;
}

Document parse_document(const std::string& bytes) {
    std::istringstream in(bytes);
    return parse_document(in);
}

Document parse_document_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(IngestError::Kind::Syntax, "$", "cannot open file: " + path);
    return parse_document(in);
}

std::vector<IngestError> validate_document(const Document& d) {
    std::vector<IngestError> errors;
    int prev_number = 0;
    for (size_t p = 0; p < d.pages.size(); ++p) {
        const Page& page = d.pages[p];
        const std::string ploc = "pages[" + std::to_string(p) + "]";
        if (page.page_number <= prev_number)
            errors.push_back({IngestError::Kind::Schema, "pages",
                              "page_numbers must be strictly increasing"});
        prev_number = page.page_number;
        if (page.width_px <= 0 || page.height_px <= 0)
            errors.push_back({IngestError::Kind::Schema, ploc,
                              "page dimensions must be positive"});
        std::set<std::string> seen;
        for (size_t l = 0; l < page.lines.size(); ++l) {
            const TextLine& line = page.lines[l];
            const std::string lloc = ploc + ".lines[" + std::to_string(l) + "]";
            if (line.id.empty())
                errors.push_back({IngestError::Kind::Schema, lloc + ".id", "empty line id"});
            else if (!seen.insert(line.id).second)
                errors.push_back({IngestError::Kind::DuplicateId, lloc + ".id",
                                  "duplicate line id \"" + line.id + "\""});
            if (!line.bbox.valid())
                errors.push_back({IngestError::Kind::Geometry, lloc + ".bbox",
                                  "invalid bbox"});
            else if (line.bbox.x1 > page.width_px || line.bbox.y1 > page.height_px)
                errors.push_back({IngestError::Kind::Geometry, lloc + ".bbox",
                                  "bbox outside page bounds"});
        }
    }
    return errors;
}

std::string serialize_document(const Document& d) {
    json root;
    root["document_id"] = d.document_id;
    root["pages"] = json::array();
    for (const Page& page : d.pages) {
        json jp;
        jp["page_number"] = page.page_number;
        jp["width_px"] = static_cast<long long>(page.width_px);
        jp["height_px"] = static_cast<long long>(page.height_px);
        jp["dpi"] = page.dpi;
        jp["lines"] = json::array();
        for (const TextLine& line : page.lines) {
            json jl;
            jl["id"] = line.id;
            jl["text"] = line.text;
            jl["bbox"] = {static_cast<long long>(line.bbox.x0),
                          static_cast<long long>(line.bbox.y0),
                          static_cast<long long>(line.bbox.x1),
                          static_cast<long long>(line.bbox.y1)};
            jl["confidence"] = line.ocr_confidence;
            jp["lines"].push_back(std::move(jl));
        }
        root["pages"].push_back(std::move(jp));
    }
    return root.dump(2) + "\n";
}

}  // namespace addrx
