#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "addrx/gazetteer.hpp"

namespace addrx {

// OCR noise applied to generated letters. Randomness is keyed on
// (seed, document, line, char) so output is reproducible under parallel
// generation.
struct NoiseModel {
    double char_sub_prob = 0.0;
    double line_drop_prob = 0.0;
    std::uint64_t seed = 0;
};

struct GeneratedCorpus {
    std::vector<std::string> ocr_files;
    std::vector<std::string> truth_files;
    std::string manifest_file;
};

// Per-character substitution preferring OCR confusion partners (0/O, 1/l,
// 5/S, 8/B, rn->m), falling back to a random character of the same category.
std::string apply_noise(const std::string& text, const NoiseModel& noise,
                        std::uint64_t doc_index, std::uint64_t line_index);

// Writes n paired OCR-lines and ground-truth files plus a manifest (written
// last; its presence signals completeness). Output bytes are a pure function
// of (seed, n, gazetteer).
GeneratedCorpus generate_corpus(std::size_t n, const Gazetteer& g,
                                const NoiseModel& noise, const std::string& out_dir);

}  // namespace addrx
