#pragma once

#include <utility>
#include <vector>

#include "addrx/compose.hpp"
#include "addrx/document.hpp"

namespace addrx {

// Deterministic layout priors standing in for a learned region detector.
// Defaults approximate the DIN 5008 address window on an A4 letter.
struct LayoutZones {
    NormalizedRect receiver_zone{0.03, 0.12, 0.55, 0.35};
    NormalizedRect sender_zone{0.03, 0.08, 0.55, 0.16};
    NormalizedRect letterhead_zone{0.45, 0.00, 1.00, 0.12};
    double alpha = 0.6;  // weight of the zone overlap
    double beta = 0.4;   // weight of the textual confidence
    double label_threshold = 0.35;
};

struct LabeledAddress {
    AddressCandidate candidate;
    AddressLabel label = AddressLabel::Other;
    double label_score = 0.0;
};

// Fused (sender_score, receiver_score) for one candidate.
std::pair<double, double> label_scores(const AddressCandidate& c, const Page& page,
                                       const LayoutZones& z);

// Pluggable detector seam: anything producing per-candidate (sender, receiver)
// scores can replace the layout prior without touching assign_labels.
using LabelScorer = std::pair<double, double> (*)(const AddressCandidate&, const Page&,
                                                  const LayoutZones&);

// At most one Sender and one Receiver per page; everything else is Other.
std::vector<LabeledAddress> assign_labels(const std::vector<AddressCandidate>& candidates,
                                          const Page& page, const LayoutZones& z,
                                          LabelScorer scorer = &label_scores);

}  // namespace addrx
