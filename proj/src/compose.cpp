#include "addrx/compose.hpp"

#include <algorithm>
#include <cmath>

#include "addrx/textnorm.hpp"

namespace addrx {

namespace {

double median_line_height(const Page& page) {
    std::vector<double> heights;
    heights.reserve(page.lines.size());
    for (const auto& line : page.lines)
        heights.push_back(line.bbox.height());
    std::sort(heights.begin(), heights.end());
    const size_t n = heights.size();
    if (n == 0)
        return 0;
    return (n % 2 == 1) ? heights[n / 2] : 0.5 * (heights[n / 2 - 1] + heights[n / 2]);
}

bool x_overlap(const BoundingBox& a, const BoundingBox& b) {
    return std::max(a.x0, b.x0) < std::min(a.x1, b.x1);
}

void split_oversized(const Page& page, std::vector<size_t> block, size_t max_lines,
                     std::vector<std::vector<size_t>>& out) {
    if (block.size() <= max_lines) {
        out.push_back(std::move(block));
        return;
    }
    size_t cut = 1;
    double widest = -1e30;
    for (size_t k = 0; k + 1 < block.size(); ++k) {
        const double gap = page.lines[block[k + 1]].bbox.y0 - page.lines[block[k]].bbox.y1;
        if (gap > widest) {
            widest = gap;
            cut = k + 1;
        }
    }
    std::vector<size_t> upper(block.begin(), block.begin() + cut);
    std::vector<size_t> lower(block.begin() + cut, block.end());
    split_oversized(page, std::move(upper), max_lines, out);
    split_oversized(page, std::move(lower), max_lines, out);
}

struct ClassifiedLine {
    LineClass cls;
    std::vector<ComponentCandidate> components;
};

std::string surface_after_first_token(const std::string& surface) {
    const size_t sp = surface.find_first_of(" \t");
    if (sp == std::string::npos)
        return "";
    return collapse_whitespace(trim(surface.substr(sp)));
}

}  // namespace

std::vector<std::vector<size_t>> group_blocks(const Page& page, const ComposeConfig& cfg) {
    if (page.lines.empty())
        return {};
    std::vector<size_t> order(page.lines.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const auto& la = page.lines[a].bbox;
        const auto& lb = page.lines[b].bbox;
        if (la.y0 != lb.y0)
            return la.y0 < lb.y0;
        return la.x0 < lb.x0;
    });
    const double gap_limit = cfg.gap_factor * median_line_height(page);

    // Greedy assignment: a line joins the open block whose bottom line is
    // vertically close and horizontally overlapping; columns stay separate.
    std::vector<std::vector<size_t>> blocks;
    for (size_t idx : order) {
        const BoundingBox& box = page.lines[idx].bbox;
        int best_block = -1;
        double best_gap = 1e30;
        for (size_t b = 0; b < blocks.size(); ++b) {
            const BoundingBox& last = page.lines[blocks[b].back()].bbox;
            const double gap = box.y0 - last.y1;
            if (gap <= gap_limit && x_overlap(box, last) && gap < best_gap) {
                best_gap = gap;
                best_block = static_cast<int>(b);
            }
        }
        if (best_block >= 0)
            blocks[static_cast<size_t>(best_block)].push_back(idx);
        else
            blocks.push_back({idx});
    }

    std::vector<std::vector<size_t>> out;
    for (auto& block : blocks)
        split_oversized(page, std::move(block), cfg.max_block_lines, out);
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        const auto& la = page.lines[a.front()].bbox;
        const auto& lb = page.lines[b.front()].bbox;
        if (la.y0 != lb.y0)
            return la.y0 < lb.y0;
        return la.x0 < lb.x0;
    });
    return out;
}

double score_candidate(double s_zip, double s_city, double s_street,
                       double s_addressee, CityMatch::Kind zip_city,
                       const ComposeConfig& cfg) {
    double plausibility = 0.0;
    if (zip_city == CityMatch::Kind::Exact || zip_city == CityMatch::Kind::Fuzzy)
        plausibility = cfg.bonus_match;
    else if (zip_city == CityMatch::Kind::Mismatch)
        plausibility = cfg.penalty_mismatch;
    const double raw = cfg.w_zip * s_zip + cfg.w_city * s_city + cfg.w_street * s_street +
                       cfg.w_addressee * s_addressee + plausibility;
    return std::clamp(raw, 0.0, 1.0);
}

std::vector<AddressCandidate> compose_addresses(const std::vector<TextLine>& block,
                                                const Gazetteer& g,
                                                const ComposeConfig& cfg) {
    std::vector<ClassifiedLine> lines;
    lines.reserve(block.size());
    for (const TextLine& line : block) {
        ClassifiedLine cl;
        cl.components = detect_components(line.text, g, cfg.max_edits);
        cl.cls = classify_line(line.text, cl.components);
        lines.push_back(std::move(cl));
    }

    std::vector<AddressCandidate> out;
    for (size_t a = 0; a < block.size(); ++a) {
        if (lines[a].cls != LineClass::ZipCityLine)
            continue;
        const ComponentCandidate* zip = nullptr;
        const ComponentCandidate* city = nullptr;
        for (const auto& c : lines[a].components) {
            if (c.kind == ComponentKind::Zip && c.confidence > 0 && !zip)
                zip = &c;
            if (c.kind == ComponentKind::City &&
                (!city || c.confidence > city->confidence))
                city = &c;
        }
        if (!zip || !city)
            continue;

        AddressCandidate cand;
        cand.components.zip = zip->surface;
        cand.components.city = city->surface;
        cand.zip_city = zip_city_match(g, zip->surface, city->surface, cfg.max_edits);

        // Search upward, at most 3 lines above the anchor.
        const size_t window_top = a >= 3 ? a - 3 : 0;
        size_t top_used = a, bottom_used = a;
        std::optional<size_t> street_idx;
        for (size_t i = a; i-- > window_top;) {
            if (lines[i].cls == LineClass::StreetLine ||
                lines[i].cls == LineClass::POBoxLine) {
                street_idx = i;
                break;
            }
        }
        if (street_idx) {
            top_used = *street_idx;
            for (const auto& c : lines[*street_idx].components) {
                if (c.kind == ComponentKind::StreetHouse &&
                    lines[*street_idx].cls == LineClass::StreetLine) {
                    const size_t sp = c.surface.find_last_of(" \t");
                    if (sp != std::string::npos) {
                        cand.components.street = collapse_whitespace(c.surface.substr(0, sp));
                        cand.components.house_number = c.surface.substr(sp + 1);
                    } else {
                        cand.components.street = c.surface;
                    }
                    break;
                }
                if (c.kind == ComponentKind::POBox) {
                    cand.components.po_box = surface_after_first_token(c.surface);
                    break;
                }
            }
        }
        const size_t addr_search_from = street_idx ? *street_idx : a;
        for (size_t i = addr_search_from; i-- > window_top;) {
            if (lines[i].cls == LineClass::AddresseeLine) {
                cand.components.addressee = collapse_whitespace(trim(block[i].text));
                top_used = i;
                break;
            }
        }
        if (a + 1 < block.size() && lines[a + 1].cls == LineClass::CountryLineClass) {
            cand.components.country = collapse_whitespace(trim(block[a + 1].text));
            bottom_used = a + 1;
        }

        const double s_zip = zip->confidence;
        const double s_city = city->confidence;
        const double s_street =
            (cand.components.street || cand.components.po_box) ? 1.0 : 0.0;
        const double s_addressee = cand.components.addressee ? 1.0 : 0.0;
        cand.confidence =
            score_candidate(s_zip, s_city, s_street, s_addressee, cand.zip_city.kind, cfg);
        if (cand.confidence < cfg.accept_threshold)
            continue;

        std::vector<BoundingBox> boxes;
        for (size_t i = top_used; i <= bottom_used; ++i) {
            cand.line_ids.push_back(block[i].id);
            boxes.push_back(block[i].bbox);
        }
        cand.bbox = bbox_union(boxes);
        out.push_back(std::move(cand));
    }
    return out;
}

std::vector<AddressCandidate> compose_page(const Page& page, const Gazetteer& g,
                                           const ComposeConfig& cfg) {
    std::vector<AddressCandidate> out;
    for (const auto& block_indices : group_blocks(page, cfg)) {
        std::vector<TextLine> block;
        block.reserve(block_indices.size());
        for (size_t idx : block_indices)
            block.push_back(page.lines[idx]);
        auto candidates = compose_addresses(block, g, cfg);
        out.insert(out.end(), std::make_move_iterator(candidates.begin()),
                   std::make_move_iterator(candidates.end()));
    }
    std::sort(out.begin(), out.end(), [](const AddressCandidate& a, const AddressCandidate& b) {
        if (a.bbox.y0 != b.bbox.y0)
            return a.bbox.y0 < b.bbox.y0;
        return a.bbox.x0 < b.bbox.x0;
    });
    return out;
}

}  // namespace addrx
