#include "addrx/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "addrx/textnorm.hpp"

namespace addrx {

using nlohmann::json;

double f1(const ClassCounts& c) {
    const double denom = 2.0 * c.tp + c.fp + c.fn;
    if (denom == 0)
        return 0.0;
    return 2.0 * c.tp / denom;
}

bool matches_truth(const std::string& pred_text, const GroundTruthAddress& gt) {
    const std::string text = fold_text(pred_text);
    auto contains = [&](const std::optional<std::string>& part) {
        return !part || text.find(fold_text(*part)) != std::string::npos;
    };
    if (!gt.components.zip || !gt.components.city)
        return false;
    return contains(gt.components.zip) && contains(gt.components.city) &&
           contains(gt.components.street) && contains(gt.components.house_number);
}

PageCounts count_page(std::vector<PredictedRegion> preds,
                      const std::vector<GroundTruthAddress>& gts) {
    std::sort(preds.begin(), preds.end(),
              [](const PredictedRegion& a, const PredictedRegion& b) {
                  if (a.confidence != b.confidence)
                      return a.confidence > b.confidence;
                  if (a.bbox.y0 != b.bbox.y0)
                      return a.bbox.y0 < b.bbox.y0;
                  return a.bbox.x0 < b.bbox.x0;
              });

    PageCounts counts{};
    std::vector<bool> consumed(gts.size(), false);
    for (const PredictedRegion& pred : preds) {
        const size_t label = static_cast<size_t>(pred.label);
        int same_class = -1, other_class = -1;
        bool matches_any = false;
        for (size_t i = 0; i < gts.size(); ++i) {
            if (!matches_truth(pred.text, gts[i]))
                continue;
            matches_any = true;
            if (consumed[i])
                continue;
            if (gts[i].label == pred.label) {
                if (same_class < 0)
                    same_class = static_cast<int>(i);
            } else if (other_class < 0) {
                other_class = static_cast<int>(i);
            }
        }
        if (same_class >= 0) {
            consumed[static_cast<size_t>(same_class)] = true;
            counts[label].tp += 1;
        } else if (other_class >= 0) {
            // Wrong address type assigned: the ground truth turns FN below,
            // the prediction is not an FP (it does contain address data).
            consumed[static_cast<size_t>(other_class)] = true;
            counts[static_cast<size_t>(gts[static_cast<size_t>(other_class)].label)].fn += 1;
        } else if (!matches_any) {
            counts[label].fp += 1;
        }
    }
    for (size_t i = 0; i < gts.size(); ++i) {
        if (!consumed[i])
            counts[static_cast<size_t>(gts[i].label)].fn += 1;
    }
    return counts;
}

namespace {

AddressLabel parse_label(const std::string& s, const std::string& context) {
    if (s == "sender")
        return AddressLabel::Sender;
    if (s == "receiver")
        return AddressLabel::Receiver;
    if (s == "other")
        return AddressLabel::Other;
    throw EvalError(EvalError::Kind::Schema, context + ": unknown label \"" + s + "\"");
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw EvalError(EvalError::Kind::Schema, "cannot open file: " + path);
    const json root = json::parse(in, nullptr, false);
    if (root.is_discarded() || !root.is_object())
        throw EvalError(EvalError::Kind::Schema, path + ": malformed document");
    return root;
}

BoundingBox parse_bbox4(const json& v, const std::string& context) {
    if (!v.is_array() || v.size() != 4)
        throw EvalError(EvalError::Kind::Schema, context + ": bbox must be [x0,y0,x1,y1]");
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
}

std::optional<std::string> opt_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    return it->get<std::string>();
}

}  // namespace

void load_predictions_file(const std::string& path, EvalCorpus& corpus) {
    const json root = parse_json_file(path);
    try {
        const std::string doc_id = root.at("document_id").get<std::string>();
        for (const json& jp : root.at("pages")) {
            const int page_number = jp.at("page_number").get<int>();
            auto& preds = corpus.predictions[{doc_id, page_number}];
            for (const json& ja : jp.at("addresses")) {
                PredictedRegion pred;
                pred.label = parse_label(ja.at("label").get<std::string>(), path);
                pred.confidence = ja.at("confidence").get<double>();
                pred.bbox = parse_bbox4(ja.at("bbox"), path);
                // Region text for matching: every raw and normalized value.
                std::string text;
                for (const char* section : {"components", "normalized"}) {
                    if (!ja.contains(section))
                        continue;
                    for (const auto& [key, value] : ja.at(section).items()) {
                        (void)key;
                        if (value.is_string()) {
                            text += value.get<std::string>();
                            text += " ";
                        }
                    }
                }
                pred.text = text;
                preds.push_back(std::move(pred));
            }
        }
    } catch (const json::exception& e) {
        throw EvalError(EvalError::Kind::Schema, path + ": " + e.what());
    }
}

void load_truth_file(const std::string& path, EvalCorpus& corpus) {
    const json root = parse_json_file(path);
    try {
        const std::string doc_id = root.at("document_id").get<std::string>();
        for (const json& jp : root.at("pages")) {
            const int page_number = jp.at("page_number").get<int>();
            auto& gts = corpus.truth[{doc_id, page_number}];
            for (const json& ja : jp.at("addresses")) {
                GroundTruthAddress gt;
                gt.label = parse_label(ja.at("label").get<std::string>(), path);
                const json& jc = ja.at("components");
                gt.components.zip = jc.at("zip").get<std::string>();
                gt.components.city = jc.at("city").get<std::string>();
                gt.components.street = opt_string(jc, "street");
                gt.components.house_number = opt_string(jc, "house_number");
                gt.components.addressee = opt_string(jc, "addressee");
                if (ja.contains("bbox"))
                    gt.bbox = parse_bbox4(ja.at("bbox"), path);
                gts.push_back(std::move(gt));
            }
        }
    } catch (const json::exception& e) {
        throw EvalError(EvalError::Kind::Schema, path + ": " + e.what());
    }
}

EvalReport evaluate_corpus(const EvalCorpus& corpus) {
    std::vector<std::string> unknown;
    for (const auto& [key, preds] : corpus.predictions) {
        (void)preds;
        if (!corpus.truth.count(key))
            unknown.push_back(key.first + "#" + std::to_string(key.second));
    }
    if (!unknown.empty()) {
        std::string msg = "predictions reference pages absent from ground truth:";
        for (const auto& id : unknown)
            msg += " " + id;
        throw EvalError(EvalError::Kind::UnknownDocument, msg);
    }

    EvalReport report;
    std::set<std::string> documents;
    std::array<ClassCounts, 3> totals{};
    // Pages are independent; counts merge associatively.
    std::vector<std::pair<PageKey, PageCounts>> page_results(corpus.truth.size());
    std::vector<const std::pair<const PageKey, std::vector<GroundTruthAddress>>*> pages;
    pages.reserve(corpus.truth.size());
    for (const auto& entry : corpus.truth)
        pages.push_back(&entry);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(pages.size()); ++i) {
        const auto& [key, gts] = *pages[static_cast<size_t>(i)];
        std::vector<PredictedRegion> preds;
        if (auto it = corpus.predictions.find(key); it != corpus.predictions.end())
            preds = it->second;
        page_results[static_cast<size_t>(i)] = {key, count_page(std::move(preds), gts)};
    }
    for (const auto& [key, counts] : page_results) {
        documents.insert(key.first);
        for (size_t c = 0; c < 3; ++c)
            totals[c] += counts[c];
    }
    report.sender = totals[static_cast<size_t>(AddressLabel::Sender)];
    report.receiver = totals[static_cast<size_t>(AddressLabel::Receiver)];
    report.other = totals[static_cast<size_t>(AddressLabel::Other)];
    report.all += report.sender;
    report.all += report.receiver;
    report.all += report.other;
    report.documents = documents.size();
    report.pages = corpus.truth.size();
    return report;
}

std::string render_report_table(const EvalReport& report) {
    std::ostringstream out;
    auto row = [&](const char* name, const ClassCounts& c) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%-10s %6ld %6ld %6ld  %8.4f\n", name, c.tp, c.fp,
                      c.fn, f1(c));
        out << buf;
    };
    char header[96];
    std::snprintf(header, sizeof(header), "%-10s %6s %6s %6s  %8s\n", "", "TP", "FP", "FN",
                  "F1");
    out << header;
    row("Sender", report.sender);
    row("Receiver", report.receiver);
    row("Other", report.other);
    row("All", report.all);
    return out.str();
}

std::string render_report_json(const EvalReport& report) {
    json root;
    auto to_json = [](const ClassCounts& c) {
        return json{{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"f1", f1(c)}};
    };
    root["classes"] = {{"sender", to_json(report.sender)},
                       {"receiver", to_json(report.receiver)},
                       {"other", to_json(report.other)},
                       {"all", to_json(report.all)}};
    root["corpus"] = {{"documents", report.documents}, {"pages", report.pages}};
    return root.dump(2) + "\n";
}

}  // namespace addrx
