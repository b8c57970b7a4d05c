#pragma once

#include <string>
#include <vector>

#include "addrx/classify.hpp"
#include "addrx/compose.hpp"
#include "addrx/document.hpp"
#include "addrx/gazetteer.hpp"
#include "addrx/synthgen.hpp"
#include "addrx/validate.hpp"

namespace addrx {

// Stable exit codes: 0 ok, 1 usage, 2 input parse error, 3 gazetteer load
// error, 4 unknown document ids, 5 output dir not writable.
enum ExitCode {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParseError = 2,
    kExitGazetteerError = 3,
    kExitUnknownDocument = 4,
    kExitOutputError = 5,
};

struct PipelineConfig {
    std::string gazetteer_dir;
    size_t max_edits = 1;
    ComposeConfig compose;
    LayoutZones zones;
    bool geocode_remote = false;
    std::string geocode_url;
    int geocode_timeout_ms = 2000;
    int geocode_concurrency = 4;
    int parallelism = 0;  // 0 = number of processors
};

// Full per-document pipeline: compose, label, validate, normalize, geocode.
// Returns the extraction output document as a JSON string.
std::string process_document(const Document& doc, const Gazetteer& g,
                             const PipelineConfig& cfg, const GeocodeBackend& backend);

// Expand a shell-style glob ('*', '?') in the filename part; a plain path
// passes through. Results sorted.
std::vector<std::string> expand_glob(const std::string& pattern);

int run_extract(const std::vector<std::string>& inputs, const PipelineConfig& cfg,
                const std::string& output_dir);

int run_eval(const std::vector<std::string>& pred_files,
             const std::vector<std::string>& truth_files, const std::string& report_path);

int run_gen(long count, std::uint64_t seed, double noise_p, double line_drop,
            const std::string& out_dir, const Gazetteer& g);

}  // namespace addrx
