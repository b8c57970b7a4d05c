#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "addrx/compose.hpp"
#include "addrx/document.hpp"

namespace addrx {

struct GroundTruthAddress {
    AddressLabel label = AddressLabel::Other;
    AddressComponents components;  // zip and city mandatory
    std::optional<BoundingBox> bbox;
};

struct ClassCounts {
    long tp = 0;
    long fp = 0;
    long fn = 0;

    ClassCounts& operator+=(const ClassCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

// 2*tp / (2*tp + fp + fn); 0 on an empty denominator.
double f1(const ClassCounts& c);

// True iff the normalized region text contains the ground-truth ZIP and city,
// plus street and house number when the ground truth carries them.
bool matches_truth(const std::string& pred_text, const GroundTruthAddress& gt);

// A prediction as read back from an extraction output file.
struct PredictedRegion {
    AddressLabel label = AddressLabel::Other;
    double confidence = 0.0;
    BoundingBox bbox;
    std::string text;  // concatenated raw + normalized component values
};

// Per-class counts indexed by AddressLabel (Sender, Receiver, Other).
using PageCounts = std::array<ClassCounts, 3>;

// Greedy confidence-ordered matching with per-ground-truth consumption.
// Predictions matching a ground truth of a different class count neither as
// TP nor FP; the ground truth becomes FN.
PageCounts count_page(std::vector<PredictedRegion> preds,
                      const std::vector<GroundTruthAddress>& gts);

struct EvalReport {
    ClassCounts sender, receiver, other;
    ClassCounts all;  // summed counts, not averaged F1
    size_t documents = 0;
    size_t pages = 0;
};

class EvalError : public std::runtime_error {
  public:
    enum class Kind { Schema, UnknownDocument };
    EvalError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

using PageKey = std::pair<std::string, int>;  // (document_id, page_number)

struct EvalCorpus {
    std::map<PageKey, std::vector<PredictedRegion>> predictions;
    std::map<PageKey, std::vector<GroundTruthAddress>> truth;
};

// Parse one prediction (extraction output) / ground-truth file into the corpus.
void load_predictions_file(const std::string& path, EvalCorpus& corpus);
void load_truth_file(const std::string& path, EvalCorpus& corpus);

// Throws EvalError{UnknownDocument} when a prediction references a page absent
// from the truth; truth pages without predictions count all their entries FN.
EvalReport evaluate_corpus(const EvalCorpus& corpus);

std::string render_report_table(const EvalReport& report);
std::string render_report_json(const EvalReport& report);

}  // namespace addrx
