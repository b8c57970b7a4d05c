#pragma once

#include <stdexcept>
#include <vector>

namespace addrx {

// Pixel coordinates, origin top-left. Stored as doubles so that
// normalization and overlap ratios do not accumulate rounding drift.
struct BoundingBox {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    bool valid() const { return x0 < x1 && y0 < y1 && x0 >= 0 && y0 >= 0; }
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }

    bool operator==(const BoundingBox&) const = default;
};

// Coordinates as fractions of page width/height, in [0,1].
struct NormalizedRect {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    bool valid() const { return x0 < x1 && y0 < y1; }
    double area() const { return (x1 - x0) * (y1 - y0); }

    bool operator==(const NormalizedRect&) const = default;
};

// Minimal box containing all inputs. Throws on an empty list.
BoundingBox bbox_union(const std::vector<BoundingBox>& boxes);

// Fraction of r's area covered by zone; 0 when disjoint.
double zone_overlap(const NormalizedRect& r, const NormalizedRect& zone);

}  // namespace addrx
