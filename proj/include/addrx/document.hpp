#pragma once

#include <string>
#include <vector>

#include "addrx/geometry.hpp"

namespace addrx {

enum class AddressLabel { Sender, Receiver, Other };

const char* to_string(AddressLabel label);

struct TextLine {
    std::string id;       // unique within its page
    std::string text;     // UTF-8, may be empty
    BoundingBox bbox;
    double ocr_confidence = 1.0;
};

struct Page {
    int page_number = 1;
    double width_px = 0;
    double height_px = 0;
    int dpi = 300;
    std::vector<TextLine> lines;
};

struct Document {
    std::string document_id;
    std::vector<Page> pages;
};

// Each coordinate divided by the corresponding page dimension.
// Throws std::invalid_argument when the box lies outside the page.
NormalizedRect normalize_bbox(const BoundingBox& b, const Page& page);

}  // namespace addrx
