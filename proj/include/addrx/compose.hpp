#pragma once

#include <optional>
#include <string>
#include <vector>

#include "addrx/detect.hpp"
#include "addrx/document.hpp"
#include "addrx/gazetteer.hpp"

namespace addrx {

struct AddressComponents {
    std::optional<std::string> addressee;
    std::optional<std::string> street;
    std::optional<std::string> house_number;
    std::optional<std::string> po_box;
    std::optional<std::string> zip;
    std::optional<std::string> city;
    std::optional<std::string> country;
};

struct AddressCandidate {
    AddressComponents components;
    std::vector<std::string> line_ids;  // contiguous, top-to-bottom
    BoundingBox bbox;                   // union of member line boxes
    double confidence = 0.0;
    CityMatch zip_city;
};

struct ComposeConfig {
    double w_zip = 0.30;
    double w_city = 0.20;
    double w_street = 0.25;
    double w_addressee = 0.15;
    double bonus_match = 0.10;
    double penalty_mismatch = -0.20;
    double accept_threshold = 0.50;
    double gap_factor = 1.8;  // multiples of the page's median line height
    size_t max_block_lines = 8;
    size_t max_edits = 1;
};

// Partition page lines into vertically coherent blocks. Each block is an
// ordered list of indices into page.lines, top to bottom.
std::vector<std::vector<size_t>> group_blocks(const Page& page, const ComposeConfig& cfg);

// Compose address candidates from one block. The ZIP+city line anchors each
// candidate; street, addressee and country lines are attached around it.
std::vector<AddressCandidate> compose_addresses(const std::vector<TextLine>& block,
                                                const Gazetteer& g,
                                                const ComposeConfig& cfg);

// Weighted component sum plus a registry plausibility term, clipped to [0,1].
double score_candidate(double s_zip, double s_city, double s_street,
                       double s_addressee, CityMatch::Kind zip_city,
                       const ComposeConfig& cfg);

// Full per-page composition: blocks, candidates, deterministic order by
// (anchor y0, anchor x0).
std::vector<AddressCandidate> compose_page(const Page& page, const Gazetteer& g,
                                           const ComposeConfig& cfg);

}  // namespace addrx
