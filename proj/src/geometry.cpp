#include "addrx/geometry.hpp"

#include <algorithm>

#include "addrx/document.hpp"

namespace addrx {

BoundingBox bbox_union(const std::vector<BoundingBox>& boxes) {
    if (boxes.empty())
        throw std::invalid_argument("bbox_union: empty box list");
    BoundingBox out = boxes.front();
    for (const auto& b : boxes) {
        out.x0 = std::min(out.x0, b.x0);
        out.y0 = std::min(out.y0, b.y0);
        out.x1 = std::max(out.x1, b.x1);
        out.y1 = std::max(out.y1, b.y1);
    }
    return out;
}

double zone_overlap(const NormalizedRect& r, const NormalizedRect& zone) {
    const double ix0 = std::max(r.x0, zone.x0);
    const double iy0 = std::max(r.y0, zone.y0);
    const double ix1 = std::min(r.x1, zone.x1);
    const double iy1 = std::min(r.y1, zone.y1);
    if (ix0 >= ix1 || iy0 >= iy1)
        return 0.0;
    return (ix1 - ix0) * (iy1 - iy0) / r.area();
}

NormalizedRect normalize_bbox(const BoundingBox& b, const Page& page) {
    if (page.width_px <= 0 || page.height_px <= 0)
        throw std::invalid_argument("normalize_bbox: degenerate page dimensions");
    if (b.x0 < 0 || b.y0 < 0 || b.x1 > page.width_px || b.y1 > page.height_px)
        throw std::invalid_argument("normalize_bbox: box outside page bounds");
    return {b.x0 / page.width_px, b.y0 / page.height_px,
            b.x1 / page.width_px, b.y1 / page.height_px};
}

const char* to_string(AddressLabel label) {
    switch (label) {
        case AddressLabel::Sender: return "sender";
        case AddressLabel::Receiver: return "receiver";
        case AddressLabel::Other: return "other";
    }
    return "other";
}

}  // namespace addrx
