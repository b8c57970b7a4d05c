#include "addrx/validate.hpp"

#include <cctype>

#include "addrx/textnorm.hpp"

namespace addrx {

ValidationReport revalidate(const LabeledAddress& l, const Gazetteer& g, size_t max_edits) {
    const AddressComponents& c = l.candidate.components;
    ValidationReport report;
    report.zip_valid = c.zip && is_valid_zip(g, *c.zip);
    if (c.zip && c.city)
        report.zip_city = zip_city_match(g, *c.zip, *c.city, max_edits);
    else
        report.zip_city = {CityMatch::Kind::UnknownZip, 0, std::nullopt};
    report.complete = c.zip.has_value() && c.city.has_value() &&
                      (!c.street || c.house_number.has_value());

    double multiplier = 1.0;
    if (!report.zip_valid)
        multiplier = 0.0;
    else if (report.zip_city.kind == CityMatch::Kind::Mismatch ||
             report.zip_city.kind == CityMatch::Kind::UnknownZip)
        multiplier = 0.5;
    report.final_confidence = l.candidate.confidence * multiplier;
    return report;
}

namespace {

// Abbreviated or ss-spelled suffixes and their canonical expansions. The
// match is on the case-folded tail; "straße" itself folds to "strasse" only
// under fold_text, so the check here uses plain case folding.
struct SuffixRule {
    const char* folded_tail;
    const char* expansion;
};

const SuffixRule kSuffixRules[] = {
    {"str.", "straße"},
    {"strasse", "straße"},
};

std::string expand_street_suffix(const std::string& street) {
    const std::string folded = case_fold_utf8(street);
    for (const SuffixRule& rule : kSuffixRules) {
        const std::string tail(rule.folded_tail);
        if (folded.size() < tail.size() ||
            folded.compare(folded.size() - tail.size(), tail.size(), tail) != 0)
            continue;
        // Folding is length-preserving for these ASCII tails, so byte
        // positions line up with the original string.
        const size_t cut = street.size() - tail.size();
        std::string expansion = rule.expansion;
        if (std::isupper(static_cast<unsigned char>(street[cut])))
            expansion[0] = 'S';
        return street.substr(0, cut) + expansion;
    }
    return street;
}

std::optional<std::string> tidy(const std::optional<std::string>& field) {
    if (!field)
        return std::nullopt;
    return collapse_whitespace(trim(*field));
}

}  // namespace

AddressComponents normalize_address(const AddressComponents& c, const Gazetteer& g,
                                    size_t max_edits) {
    AddressComponents out;
    out.addressee = tidy(c.addressee);
    out.house_number = tidy(c.house_number);
    out.po_box = tidy(c.po_box);
    out.zip = c.zip;  // never altered
    out.country = tidy(c.country);
    if (!out.country)
        out.country = "Deutschland";

    if (auto street = tidy(c.street))
        out.street = expand_street_suffix(*street);

    if (auto city = tidy(c.city)) {
        if (c.zip) {
            const CityMatch m = zip_city_match(g, *c.zip, *city, max_edits);
            if (m.matched_city)
                city = *m.matched_city;
        } else {
            auto it = g.city_index.find(fold_text(*city));
            if (it != g.city_index.end())
                city = it->second;
        }
        out.city = city;
    }
    return out;
}

}  // namespace addrx
