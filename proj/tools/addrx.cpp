#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addrx/runner.hpp"

namespace {

using addrx::PipelineConfig;
using nlohmann::json;

void read_rect(const json& v, addrx::NormalizedRect& rect) {
    if (v.is_array() && v.size() == 4) {
        rect = {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                v[3].get<double>()};
    }
}

// Config file values sit between built-in defaults and command-line flags.
bool apply_config_file(const std::string& path, PipelineConfig& cfg) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "addrx: cannot open config file: " << path << "\n";
        return false;
    }
    const json root = json::parse(in, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        std::cerr << "addrx: malformed config file: " << path << "\n";
        return false;
    }
    if (root.contains("gazetteer_dir"))
        cfg.gazetteer_dir = root["gazetteer_dir"].get<std::string>();
    if (root.contains("max_edits"))
        cfg.max_edits = root["max_edits"].get<size_t>();
    if (root.contains("parallelism"))
        cfg.parallelism = root["parallelism"].get<int>();
    if (root.contains("compose")) {
        const json& c = root["compose"];
        auto get = [&](const char* key, double& field) {
            if (c.contains(key))
                field = c[key].get<double>();
        };
        get("w_zip", cfg.compose.w_zip);
        get("w_city", cfg.compose.w_city);
        get("w_street", cfg.compose.w_street);
        get("w_addressee", cfg.compose.w_addressee);
        get("bonus_match", cfg.compose.bonus_match);
        get("penalty_mismatch", cfg.compose.penalty_mismatch);
        get("accept_threshold", cfg.compose.accept_threshold);
        get("gap_factor", cfg.compose.gap_factor);
        if (c.contains("max_block_lines"))
            cfg.compose.max_block_lines = c["max_block_lines"].get<size_t>();
    }
    if (root.contains("zones")) {
        const json& z = root["zones"];
        if (z.contains("receiver_zone"))
            read_rect(z["receiver_zone"], cfg.zones.receiver_zone);
        if (z.contains("sender_zone"))
            read_rect(z["sender_zone"], cfg.zones.sender_zone);
        if (z.contains("letterhead_zone"))
            read_rect(z["letterhead_zone"], cfg.zones.letterhead_zone);
        if (z.contains("alpha"))
            cfg.zones.alpha = z["alpha"].get<double>();
        if (z.contains("beta"))
            cfg.zones.beta = z["beta"].get<double>();
        if (z.contains("label_threshold"))
            cfg.zones.label_threshold = z["label_threshold"].get<double>();
    }
    if (root.contains("geocode")) {
        const json& gc = root["geocode"];
        if (gc.contains("backend"))
            cfg.geocode_remote = gc["backend"].get<std::string>() == "remote";
        if (gc.contains("url"))
            cfg.geocode_url = gc["url"].get<std::string>();
        if (gc.contains("timeout_ms"))
            cfg.geocode_timeout_ms = gc["timeout_ms"].get<int>();
        if (gc.contains("concurrency"))
            cfg.geocode_concurrency = gc["concurrency"].get<int>();
    }
    return true;
}

std::string gazetteer_fallback() {
    const char* env = std::getenv("ADDRX_GAZETTEER_DIR");
    return env ? env : "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"German postal address extraction from OCR line output"};
    app.require_subcommand(1);

    // extract
    auto* extract = app.add_subcommand("extract", "Run the extraction pipeline");
    std::vector<std::string> inputs;
    std::string gazetteer_dir, config_file, output_dir, geocode_mode, geocode_url;
    size_t fuzzy_max_edits = 1;
    int timeout_ms = 2000, parallelism = 0;
    extract->add_option("--input", inputs, "OCR-lines input files (glob)")->required();
    extract->add_option("--gazetteer", gazetteer_dir, "Gazetteer directory");
    extract->add_option("--config", config_file, "Pipeline config file (JSON)");
    extract->add_option("--output", output_dir, "Output directory")->required();
    auto* edits_opt = extract->add_option("--fuzzy-max-edits", fuzzy_max_edits,
                                          "Max edit distance for city matching");
    auto* mode_opt = extract->add_option("--geocode", geocode_mode, "offline or remote");
    auto* url_opt = extract->add_option("--geocode-url", geocode_url, "Remote geocoder URL");
    auto* timeout_opt = extract->add_option("--timeout-ms", timeout_ms, "Geocoder timeout");
    auto* par_opt = extract->add_option("--parallelism", parallelism, "Worker count");

    // eval
    auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
    std::vector<std::string> pred_files, truth_files;
    std::string report_path;
    eval->add_option("--pred", pred_files, "Prediction files (glob)")->required();
    eval->add_option("--truth", truth_files, "Ground truth files (glob)")->required();
    eval->add_option("--report", report_path, "Report output file");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic letter corpus");
    long count = 0;
    std::uint64_t seed = 0;
    double noise_p = 0.0, line_drop = 0.0;
    std::string gen_out, gen_gazetteer;
    gen->add_option("--count", count, "Number of letters")->required();
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("--noise-p", noise_p, "Character substitution probability");
    gen->add_option("--line-drop", line_drop, "Line drop probability");
    gen->add_option("--out", gen_out, "Output directory")->required();
    gen->add_option("--gazetteer", gen_gazetteer, "Gazetteer directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return addrx::kExitUsage;
    }

    if (extract->parsed()) {
        PipelineConfig cfg;
        if (!config_file.empty() && !apply_config_file(config_file, cfg))
            return addrx::kExitUsage;
        if (!gazetteer_dir.empty())
            cfg.gazetteer_dir = gazetteer_dir;
        if (cfg.gazetteer_dir.empty())
            cfg.gazetteer_dir = gazetteer_fallback();
        if (cfg.gazetteer_dir.empty()) {
            std::cerr << "addrx extract: no gazetteer directory (use --gazetteer, the "
                         "config file, or ADDRX_GAZETTEER_DIR)\n"
                      << extract->help();
            return addrx::kExitUsage;
        }
        if (edits_opt->count())
            cfg.max_edits = fuzzy_max_edits;
        if (mode_opt->count()) {
            if (geocode_mode != "offline" && geocode_mode != "remote") {
                std::cerr << "addrx extract: --geocode must be offline or remote\n";
                return addrx::kExitUsage;
            }
            cfg.geocode_remote = geocode_mode == "remote";
        }
        if (url_opt->count())
            cfg.geocode_url = geocode_url;
        if (timeout_opt->count())
            cfg.geocode_timeout_ms = timeout_ms;
        if (par_opt->count())
            cfg.parallelism = parallelism;
        if (cfg.geocode_remote && cfg.geocode_url.empty()) {
            std::cerr << "addrx extract: --geocode remote requires --geocode-url\n";
            return addrx::kExitUsage;
        }
        return addrx::run_extract(inputs, cfg, output_dir);
    }

    if (eval->parsed())
        return addrx::run_eval(pred_files, truth_files, report_path);

    if (gen->parsed()) {
        if (gen_gazetteer.empty())
            gen_gazetteer = gazetteer_fallback();
        if (gen_gazetteer.empty()) {
            std::cerr << "addrx gen: no gazetteer directory (use --gazetteer or "
                         "ADDRX_GAZETTEER_DIR)\n";
            return addrx::kExitUsage;
        }
        addrx::Gazetteer g;
        try {
            g = addrx::load_gazetteer(gen_gazetteer);
        } catch (const addrx::GazetteerError& e) {
            std::cerr << "addrx gen: " << e.what() << "\n";
            return addrx::kExitGazetteerError;
        }
        return addrx::run_gen(count, seed, noise_p, line_drop, gen_out, g);
    }
    return addrx::kExitUsage;
}
