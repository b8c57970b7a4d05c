#include "addrx/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <thread>

#include <json.hpp>

#include "addrx/evaluate.hpp"
#include "addrx/ingest.hpp"

namespace addrx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json components_json(const AddressComponents& c) {
    json out = json::object();
    auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v)
            out[key] = *v;
    };
    put("addressee", c.addressee);
    put("street", c.street);
    put("house_number", c.house_number);
    put("po_box", c.po_box);
    put("zip", c.zip);
    put("city", c.city);
    put("country", c.country);
    return out;
}

json bbox_json(const BoundingBox& b) {
    return {static_cast<long long>(b.x0), static_cast<long long>(b.y0),
            static_cast<long long>(b.x1), static_cast<long long>(b.y1)};
}

struct ProcessedAddress {
    const LabeledAddress* labeled;
    ValidationReport report;
    AddressComponents normalized;
    std::string geocode_status;
    std::optional<double> lat, lon;
};

}  // namespace

std::string process_document(const Document& doc, const Gazetteer& g,
                             const PipelineConfig& cfg, const GeocodeBackend& backend) {
    ComposeConfig compose_cfg = cfg.compose;
    compose_cfg.max_edits = cfg.max_edits;

    json pages = json::array();
    std::vector<std::vector<LabeledAddress>> page_labels(doc.pages.size());
    for (size_t p = 0; p < doc.pages.size(); ++p) {
        const Page& page = doc.pages[p];
        const auto candidates = compose_page(page, g, compose_cfg);
        page_labels[p] = assign_labels(candidates, page, cfg.zones);
    }

    // Validate + normalize, then geocode with bounded concurrency.
    std::vector<std::vector<ProcessedAddress>> processed(doc.pages.size());
    std::vector<ProcessedAddress*> geocode_queue;
    for (size_t p = 0; p < doc.pages.size(); ++p) {
        processed[p].reserve(page_labels[p].size());
        for (const LabeledAddress& la : page_labels[p]) {
            ProcessedAddress pa;
            pa.labeled = &la;
            pa.report = revalidate(la, g, cfg.max_edits);
            pa.normalized = normalize_address(la.candidate.components, g, cfg.max_edits);
            pa.geocode_status = "skipped";
            processed[p].push_back(std::move(pa));
        }
        for (auto& pa : processed[p]) {
            if (pa.report.zip_valid)
                geocode_queue.push_back(&pa);
        }
    }
    const size_t limit = std::max(1, cfg.geocode_concurrency);
    for (size_t base = 0; base < geocode_queue.size(); base += limit) {
        const size_t chunk = std::min(limit, geocode_queue.size() - base);
        std::vector<std::future<GeocodeResult>> futures;
        futures.reserve(chunk);
        for (size_t k = 0; k < chunk; ++k) {
            ProcessedAddress* pa = geocode_queue[base + k];
            futures.push_back(std::async(std::launch::async, [&backend, pa] {
                return backend.geocode(pa->normalized);
            }));
        }
        for (size_t k = 0; k < chunk; ++k) {
            const GeocodeResult res = futures[k].get();
            ProcessedAddress* pa = geocode_queue[base + k];
            pa->geocode_status = to_string(res.status);
            pa->lat = res.lat;
            pa->lon = res.lon;
        }
    }

    for (size_t p = 0; p < doc.pages.size(); ++p) {
        json addresses = json::array();
        for (const ProcessedAddress& pa : processed[p]) {
            const LabeledAddress& la = *pa.labeled;
            json ja;
            ja["label"] = to_string(la.label);
            ja["confidence"] = la.candidate.confidence;
            ja["bbox"] = bbox_json(la.candidate.bbox);
            ja["line_ids"] = la.candidate.line_ids;
            ja["components"] = components_json(la.candidate.components);
            ja["normalized"] = components_json(pa.normalized);
            json validation;
            validation["zip_valid"] = pa.report.zip_valid;
            validation["zip_city"] = to_string(pa.report.zip_city.kind);
            validation["complete"] = pa.report.complete;
            validation["final_confidence"] = pa.report.final_confidence;
            validation["geocode"] = pa.geocode_status;
            if (pa.lat && pa.lon) {
                validation["lat"] = *pa.lat;
                validation["lon"] = *pa.lon;
            }
            ja["validation"] = std::move(validation);
            addresses.push_back(std::move(ja));
        }
        pages.push_back(
            {{"page_number", doc.pages[p].page_number}, {"addresses", std::move(addresses)}});
    }

    json root;
    root["document_id"] = doc.document_id;
    root["pages"] = std::move(pages);
    return root.dump(2) + "\n";
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    const fs::path p(pattern);
    const std::string name = p.filename().string();
    if (name.find('*') == std::string::npos && name.find('?') == std::string::npos)
        return {pattern};
    const fs::path dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
    auto matches = [&](const std::string& file) {
        // Simple iterative glob over '*' and '?'.
        size_t fi = 0, pi = 0, star = std::string::npos, star_fi = 0;
        while (fi < file.size()) {
            if (pi < name.size() && (name[pi] == '?' || name[pi] == file[fi])) {
                ++fi;
                ++pi;
            } else if (pi < name.size() && name[pi] == '*') {
                star = pi++;
                star_fi = fi;
            } else if (star != std::string::npos) {
                pi = star + 1;
                fi = ++star_fi;
            } else {
                return false;
            }
        }
        while (pi < name.size() && name[pi] == '*')
            ++pi;
        return pi == name.size();
    };
    std::vector<std::string> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && matches(entry.path().filename().string()))
            out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<std::string> expand_all(const std::vector<std::string>& patterns) {
    std::vector<std::string> out;
    for (const auto& pattern : patterns) {
        auto files = expand_glob(pattern);
        out.insert(out.end(), files.begin(), files.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

int run_extract(const std::vector<std::string>& inputs, const PipelineConfig& cfg,
                const std::string& output_dir) {
    const std::vector<std::string> files = expand_all(inputs);
    if (files.empty()) {
        std::cerr << "extract: no input files\n";
        return kExitUsage;
    }
    Gazetteer g;
    try {
        g = load_gazetteer(cfg.gazetteer_dir);
    } catch (const GazetteerError& e) {
        std::cerr << "extract: gazetteer: " << e.what() << "\n";
        return kExitGazetteerError;
    }

    std::vector<Document> docs(files.size());
    std::string parse_failure;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(files.size()); ++i) {
        try {
            docs[static_cast<size_t>(i)] = parse_document_file(files[static_cast<size_t>(i)]);
        } catch (const IngestException& e) {
#pragma omp critical
            parse_failure = files[static_cast<size_t>(i)] + ": " + e.what();
        }
    }
    if (!parse_failure.empty()) {
        std::cerr << "extract: " << parse_failure << "\n";
        return kExitParseError;
    }

    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.document_id < b.document_id; });

    std::unique_ptr<GeocodeBackend> backend;
    if (cfg.geocode_remote)
        backend = std::make_unique<RemoteGeocoder>(cfg.geocode_url, cfg.geocode_timeout_ms);
    else
        backend = std::make_unique<OfflineGeocoder>(g);

    const int threads = cfg.parallelism > 0
                            ? cfg.parallelism
                            : static_cast<int>(std::thread::hardware_concurrency());
    std::vector<std::string> outputs(docs.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
    for (long i = 0; i < static_cast<long>(docs.size()); ++i)
        outputs[static_cast<size_t>(i)] =
            process_document(docs[static_cast<size_t>(i)], g, cfg, *backend);

    std::error_code ec;
    fs::create_directories(output_dir, ec);
    std::vector<std::string> written;
    for (size_t i = 0; i < docs.size(); ++i) {
        const std::string path = output_dir + "/" + docs[i].document_id + ".addr.json";
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << outputs[i])) {
            for (const auto& w : written)
                fs::remove(w, ec);
            std::cerr << "extract: cannot write " << path << "\n";
            return kExitOutputError;
        }
        written.push_back(path);
    }
    return kExitOk;
}

int run_eval(const std::vector<std::string>& pred_files,
             const std::vector<std::string>& truth_files, const std::string& report_path) {
    EvalCorpus corpus;
    try {
        for (const auto& path : expand_all(pred_files))
            load_predictions_file(path, corpus);
        for (const auto& path : expand_all(truth_files))
            load_truth_file(path, corpus);
        const EvalReport report = evaluate_corpus(corpus);
        const std::string table = render_report_table(report);
        std::cout << table;
        if (!report_path.empty()) {
            std::ofstream out(report_path, std::ios::binary);
            if (!out)
                return kExitOutputError;
            out << render_report_json(report);
            std::ofstream table_out(report_path + ".txt", std::ios::binary);
            table_out << table;
        }
        return kExitOk;
    } catch (const EvalError& e) {
        std::cerr << "eval: " << e.what() << "\n";
        return e.kind() == EvalError::Kind::UnknownDocument ? kExitUnknownDocument
                                                            : kExitParseError;
    }
}

int run_gen(long count, std::uint64_t seed, double noise_p, double line_drop,
            const std::string& out_dir, const Gazetteer& g) {
    if (count < 1 || noise_p < 0 || noise_p > 1 || line_drop < 0 || line_drop > 1) {
        std::cerr << "gen: invalid parameters\n";
        return kExitUsage;
    }
    NoiseModel noise;
    noise.seed = seed;
    noise.char_sub_prob = noise_p;
    noise.line_drop_prob = line_drop;
    try {
        generate_corpus(static_cast<size_t>(count), g, noise, out_dir);
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "gen: " << e.what() << "\n";
        return kExitOutputError;
    }
}

}  // namespace addrx
