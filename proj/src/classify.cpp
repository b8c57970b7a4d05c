#include "addrx/classify.hpp"

#include <algorithm>

namespace addrx {

std::pair<double, double> label_scores(const AddressCandidate& c, const Page& page,
                                       const LayoutZones& z) {
    const NormalizedRect r = normalize_bbox(c.bbox, page);
    const double receiver =
        z.alpha * zone_overlap(r, z.receiver_zone) + z.beta * c.confidence;
    const double sender =
        z.alpha * std::max(zone_overlap(r, z.sender_zone),
                           zone_overlap(r, z.letterhead_zone)) +
        z.beta * c.confidence;
    return {sender, receiver};
}

namespace {

// Tie-break: higher confidence, then upper-left position.
bool better(const AddressCandidate& a, double score_a, const AddressCandidate& b,
            double score_b) {
    if (score_a != score_b)
        return score_a > score_b;
    if (a.confidence != b.confidence)
        return a.confidence > b.confidence;
    if (a.bbox.y0 != b.bbox.y0)
        return a.bbox.y0 < b.bbox.y0;
    return a.bbox.x0 < b.bbox.x0;
}

}  // namespace

std::vector<LabeledAddress> assign_labels(const std::vector<AddressCandidate>& candidates,
                                          const Page& page, const LayoutZones& z,
                                          LabelScorer scorer) {
    const size_t n = candidates.size();
    std::vector<double> sender_scores(n), receiver_scores(n);
    for (size_t i = 0; i < n; ++i) {
        const auto [s, r] = scorer(candidates[i], page, z);
        sender_scores[i] = s;
        receiver_scores[i] = r;
    }

    int receiver = -1;
    for (size_t i = 0; i < n; ++i) {
        if (receiver_scores[i] < z.label_threshold)
            continue;
        if (receiver < 0 || better(candidates[i], receiver_scores[i],
                                   candidates[static_cast<size_t>(receiver)],
                                   receiver_scores[static_cast<size_t>(receiver)]))
            receiver = static_cast<int>(i);
    }
    int sender = -1;
    for (size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) == receiver || sender_scores[i] < z.label_threshold)
            continue;
        if (sender < 0 || better(candidates[i], sender_scores[i],
                                 candidates[static_cast<size_t>(sender)],
                                 sender_scores[static_cast<size_t>(sender)]))
            sender = static_cast<int>(i);
    }

    std::vector<LabeledAddress> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        LabeledAddress la;
        la.candidate = candidates[i];
        if (static_cast<int>(i) == receiver) {
            la.label = AddressLabel::Receiver;
            la.label_score = receiver_scores[i];
        } else if (static_cast<int>(i) == sender) {
            la.label = AddressLabel::Sender;
            la.label_score = sender_scores[i];
        } else {
            la.label = AddressLabel::Other;
            la.label_score = std::max(sender_scores[i], receiver_scores[i]);
        }
        out.push_back(std::move(la));
    }
    return out;
}

}  // namespace addrx
