#include "addrx/synthgen.hpp"

#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "addrx/document.hpp"
#include "addrx/ingest.hpp"
#include "addrx/textnorm.hpp"

namespace addrx {

namespace {

constexpr double kPageWidth = 2480;   // A4 at 300 dpi
constexpr double kPageHeight = 3508;
constexpr double kLineHeight = 40;
constexpr double kLinePitch = 48;
constexpr double kCharWidth = 19;

constexpr std::uint64_t kSaltContent = 0x5143e1a7c0ffee01ULL;
constexpr std::uint64_t kSaltChar = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kSaltDrop = 0x2545f4914f6cdd1dULL;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t position_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                           std::uint64_t c, std::uint64_t salt) {
    std::uint64_t h = seed ^ salt;
    h = splitmix64(h ^ (a * 0xd6e8feb86659fd93ULL));
    h = splitmix64(h ^ (b * 0xca01f9dd4cdd172fULL));
    h = splitmix64(h ^ (c * 0x4cf5ad432745937fULL));
    return h;
}

double to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);
}

// Counter-based generator for sampling letter content; independent of
// generation order across letters.
class ContentRng {
  public:
    ContentRng(std::uint64_t seed, std::uint64_t doc) : seed_(seed), doc_(doc) {}
    std::uint64_t next() { return position_key(seed_, doc_, counter_++, 0, kSaltContent); }
    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(next() % n); }
    double unit() { return to_unit(next()); }

  private:
    std::uint64_t seed_, doc_;
    std::uint64_t counter_ = 0;
};

const std::array<const char*, 20> kStreetBases = {
    "Haupt",   "Garten",  "Bahnhof", "Schul",   "Berg",   "Wald",  "Ring",
    "Linden",  "Birken",  "Eichen",  "Mühlen",  "Kirch",  "Feld",  "Wiesen",
    "Rosen",   "Tulpen",  "Ahorn",   "Buchen",  "Markt",  "Park"};

const std::array<const char*, 4> kAttachedSuffixes = {"straße", "weg", "ring", "gasse"};
const std::array<const char*, 3> kDetachedSuffixes = {"Allee", "Platz", "Damm"};

const std::array<const char*, 16> kLastNames = {
    "Mustermann", "Schmidt", "Meier",  "Schulze", "Fischer", "Weber",
    "Wagner",     "Becker",  "Hoffmann", "Koch",  "Richter", "Klein",
    "Wolf",       "Neumann", "Schwarz", "Krause"};

const std::array<const char*, 5> kOrgForms = {"GmbH", "AG", "KG", "e.V.", "Stiftung"};

const std::array<const char*, 6> kBodyLines = {
    "Sehr geehrte Damen und Herren,",
    "vielen Dank für Ihre Nachricht vom letzten Monat.",
    "wir bestätigen hiermit den Eingang Ihrer Unterlagen.",
    "die gewünschten Dokumente senden wir Ihnen anbei zu.",
    "für Rückfragen stehen wir Ihnen gerne zur Verfügung.",
    "Mit freundlichen Grüßen"};

std::string capitalized(const std::string& s) {
    const std::u32string u = utf8_decode(s);
    if (u.empty())
        return s;
    std::u32string out = u;
    if (out[0] >= U'a' && out[0] <= U'z')
        out[0] = out[0] - 0x20;
    return utf8_encode(out);
}

struct SampledAddress {
    std::string addressee;
    std::string street;       // empty when po_box is used
    std::string house_number;
    std::string po_box;
    std::string zip;
    std::string city;
    bool with_country = false;
};

struct RegistryRow {
    std::string zip;
    std::string city;
};

SampledAddress sample_address(ContentRng& rng, const std::vector<RegistryRow>& registry,
                              const std::vector<std::string>& first_names, bool person,
                              bool allow_po_box) {
    SampledAddress a;
    const RegistryRow& row = registry[rng.pick(registry.size())];
    a.zip = row.zip;
    a.city = row.city;
    if (person) {
        const char* honorific = (rng.pick(2) == 0) ? "Herr" : "Frau";
        a.addressee = std::string(honorific) + " " +
                      capitalized(first_names[rng.pick(first_names.size())]) + " " +
                      kLastNames[rng.pick(kLastNames.size())];
    } else {
        a.addressee = std::string(kLastNames[rng.pick(kLastNames.size())]) + " " +
                      kOrgForms[rng.pick(kOrgForms.size())];
    }
    if (allow_po_box && rng.unit() < 0.2) {
        a.po_box = std::to_string(10 + rng.pick(90)) + " " +
                   std::to_string(10 + rng.pick(90)) + " " + std::to_string(10 + rng.pick(90));
    } else {
        if (rng.unit() < 0.7) {
            a.street = std::string(kStreetBases[rng.pick(kStreetBases.size())]) +
                       kAttachedSuffixes[rng.pick(kAttachedSuffixes.size())];
        } else {
            a.street = capitalized(kStreetBases[rng.pick(kStreetBases.size())]) + "er " +
                       kDetachedSuffixes[rng.pick(kDetachedSuffixes.size())];
        }
        a.house_number = std::to_string(1 + rng.pick(149));
        if (rng.unit() < 0.1)
            a.house_number += static_cast<char>('a' + rng.pick(3));
    }
    a.with_country = rng.unit() < 0.3;
    return a;
}

std::vector<std::string> address_lines(const SampledAddress& a) {
    std::vector<std::string> lines;
    lines.push_back(a.addressee);
    if (!a.po_box.empty())
        lines.push_back("Postfach " + a.po_box);
    else
        lines.push_back(a.street + " " + a.house_number);
    lines.push_back(a.zip + " " + a.city);
    if (a.with_country)
        lines.push_back("Deutschland");
    return lines;
}

struct Slot {
    double x0n;  // fraction of page width
    double y0n;  // fraction of page height
};

void render_block(Page& page, const std::vector<std::string>& lines, const Slot& slot,
                  int& line_counter) {
    double y = slot.y0n * kPageHeight;
    for (const std::string& text : lines) {
        TextLine line;
        line.id = "l" + std::to_string(++line_counter);
        line.text = text;
        const double x0 = slot.x0n * kPageWidth;
        const double width = static_cast<double>(utf8_decode(text).size()) * kCharWidth;
        line.bbox = {x0, y, std::min(x0 + width, kPageWidth), y + kLineHeight};
        page.lines.push_back(std::move(line));
        y += kLinePitch;
    }
}

nlohmann::json truth_address(const SampledAddress& a, AddressLabel label,
                             const BoundingBox& bbox) {
    nlohmann::json out;
    out["label"] = to_string(label);
    nlohmann::json components;
    components["zip"] = a.zip;
    components["city"] = a.city;
    if (!a.street.empty()) {
        components["street"] = a.street;
        components["house_number"] = a.house_number;
    }
    components["addressee"] = a.addressee;
    out["components"] = std::move(components);
    out["bbox"] = {static_cast<long long>(bbox.x0), static_cast<long long>(bbox.y0),
                   static_cast<long long>(bbox.x1), static_cast<long long>(bbox.y1)};
    return out;
}

BoundingBox block_bbox(const Page& page, size_t first_line, size_t count) {
    std::vector<BoundingBox> boxes;
    for (size_t i = first_line; i < first_line + count; ++i)
        boxes.push_back(page.lines[i].bbox);
    return bbox_union(boxes);
}

char confusion_partner(char c) {
    switch (c) {
        case '0': return 'O';
        case 'O': return '0';
        case '1': return 'l';
        case 'l': return '1';
        case '5': return 'S';
        case 'S': return '5';
        case '8': return 'B';
        case 'B': return '8';
        default: return 0;
    }
}

}  // namespace

std::string apply_noise(const std::string& text, const NoiseModel& noise,
                        std::uint64_t doc_index, std::uint64_t line_index) {
    if (noise.char_sub_prob <= 0.0)
        return text;
    const std::u32string in = utf8_decode(text);
    std::u32string out;
    out.reserve(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const std::uint64_t h = position_key(noise.seed, doc_index, line_index, i, kSaltChar);
        if (to_unit(h) >= noise.char_sub_prob) {
            out.push_back(in[i]);
            continue;
        }
        const char32_t c = in[i];
        if (c == U'r' && i + 1 < in.size() && in[i + 1] == U'n') {
            out.push_back(U'm');
            ++i;
            continue;
        }
        if (c < 0x80) {
            if (const char partner = confusion_partner(static_cast<char>(c))) {
                out.push_back(static_cast<char32_t>(partner));
                continue;
            }
        }
        // Random same-category replacement, never the original character.
        const std::uint64_t pick = splitmix64(h);
        if (is_digit(c)) {
            char32_t repl = U'0' + static_cast<char32_t>(pick % 9);
            if (repl >= c)
                ++repl;
            out.push_back(repl);
        } else if (is_letter(c)) {
            const bool upper = is_upper(c);
            const char32_t base = upper ? U'A' : U'a';
            char32_t repl = base + static_cast<char32_t>(pick % 25);
            if (repl >= c)
                ++repl;
            if (repl > base + 25)
                repl = base;
            out.push_back(repl);
        } else {
            out.push_back(c);
        }
    }
    return utf8_encode(out);
}

GeneratedCorpus generate_corpus(std::size_t n, const Gazetteer& g,
                                const NoiseModel& noise, const std::string& out_dir) {
    if (n < 1)
        throw std::invalid_argument("generate_corpus: n must be >= 1");
    if (g.zip_to_cities.empty())
        throw std::invalid_argument("generate_corpus: empty gazetteer");
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::vector<RegistryRow> registry;
    for (const auto& [zip, cities] : g.zip_to_cities)
        for (const auto& city : cities)
            registry.push_back({zip, city});
    std::vector<std::string> first_names(g.first_names.begin(), g.first_names.end());

    GeneratedCorpus result;
    result.ocr_files.resize(n);
    result.truth_files.resize(n);
    std::vector<std::string> failures(n);

#pragma omp parallel for schedule(dynamic)
    for (long doc_i = 0; doc_i < static_cast<long>(n); ++doc_i) {
        const std::uint64_t doc = static_cast<std::uint64_t>(doc_i);
        try {
            ContentRng rng(noise.seed, doc);
            const int variant = static_cast<int>(doc % 3);

            char idbuf[32];
            std::snprintf(idbuf, sizeof(idbuf), "letter-%06llu",
                          static_cast<unsigned long long>(doc));
            const std::string doc_id = idbuf;

            Page page;
            page.page_number = 1;
            page.width_px = kPageWidth;
            page.height_px = kPageHeight;
            int line_counter = 0;
            nlohmann::json truth_addresses = nlohmann::json::array();

            auto emit_address = [&](const SampledAddress& a, AddressLabel label,
                                    const Slot& slot) {
                const size_t first_line = page.lines.size();
                const auto lines = address_lines(a);
                render_block(page, lines, slot, line_counter);
                truth_addresses.push_back(
                    truth_address(a, label, block_bbox(page, first_line, lines.size())));
            };

            {
                // Every letter carries a sender; the variants move it between
                // the right letterhead and the left sender strip.
                static constexpr Slot kSenderSlots[3] = {
                    {0.58, 0.020}, {0.06, 0.085}, {0.60, 0.045}};
                SampledAddress sender =
                    sample_address(rng, registry, first_names, false, false);
                sender.with_country = false;
                emit_address(sender, AddressLabel::Sender, kSenderSlots[variant]);
            }

            SampledAddress receiver = sample_address(rng, registry, first_names,
                                                     rng.unit() < 0.6, true);
            emit_address(receiver, AddressLabel::Receiver, {0.08, 0.160});

            // Body text between the address areas.
            {
                Slot body{0.08, 0.46};
                const size_t body_count = 3 + rng.pick(3);
                std::vector<std::string> body_lines;
                for (size_t k = 0; k < body_count; ++k)
                    body_lines.push_back(kBodyLines[(rng.pick(kBodyLines.size()))]);
                render_block(page, body_lines, body, line_counter);
            }

            if (variant != 1) {
                SampledAddress other =
                    sample_address(rng, registry, first_names, false, false);
                other.with_country = false;
                emit_address(other, AddressLabel::Other, {0.08, 0.880});
            }

            // Noise is injected into line text only; boxes stay clean.
            Page noisy = page;
            noisy.lines.clear();
            for (size_t li = 0; li < page.lines.size(); ++li) {
                const std::uint64_t drop_key =
                    position_key(noise.seed, doc, li, 0, kSaltDrop);
                if (noise.line_drop_prob > 0.0 && to_unit(drop_key) < noise.line_drop_prob)
                    continue;
                TextLine line = page.lines[li];
                line.text = apply_noise(line.text, noise, doc, li);
                noisy.lines.push_back(std::move(line));
            }

            Document ocr_doc;
            ocr_doc.document_id = doc_id;
            ocr_doc.pages.push_back(std::move(noisy));

            nlohmann::json truth;
            truth["document_id"] = doc_id;
            truth["pages"] = nlohmann::json::array();
            truth["pages"].push_back(
                {{"page_number", 1}, {"addresses", std::move(truth_addresses)}});

            const std::string ocr_path = out_dir + "/" + doc_id + ".ocr.json";
            const std::string truth_path = out_dir + "/" + doc_id + ".truth.json";
            {
                std::ofstream out(ocr_path, std::ios::binary);
                if (!out)
                    throw std::runtime_error("cannot write " + ocr_path);
                out << serialize_document(ocr_doc);
            }
            {
                std::ofstream out(truth_path, std::ios::binary);
                if (!out)
                    throw std::runtime_error("cannot write " + truth_path);
                out << truth.dump(2) << "\n";
            }
            result.ocr_files[static_cast<size_t>(doc_i)] = ocr_path;
            result.truth_files[static_cast<size_t>(doc_i)] = truth_path;
        } catch (const std::exception& e) {
            failures[static_cast<size_t>(doc_i)] = e.what();
        }
    }

    for (const std::string& failure : failures)
        if (!failure.empty())
            throw std::runtime_error(failure);

    nlohmann::json manifest = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        manifest.push_back({{"ocr_file", fs::path(result.ocr_files[i]).filename().string()},
                            {"truth_file", fs::path(result.truth_files[i]).filename().string()},
                            {"seed", noise.seed},
                            {"noise_p", noise.char_sub_prob},
                            {"line_drop", noise.line_drop_prob}});
    }
    result.manifest_file = out_dir + "/manifest.json";
    std::ofstream out(result.manifest_file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + result.manifest_file);
    out << manifest.dump(2) << "\n";
    return result;
}

}  // namespace addrx
