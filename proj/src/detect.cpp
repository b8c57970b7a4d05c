#include "addrx/detect.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "addrx/textnorm.hpp"

namespace addrx {

namespace {

const std::array<const char*, 2> kCountryNames = {"deutschland", "germany"};

struct Token {
    size_t begin = 0;       // byte offsets of the raw token
    size_t end = 0;
    size_t core_begin = 0;  // after stripping edge punctuation
    size_t core_end = 0;
    std::string core;
    std::string folded;     // fold_text(core)
};

bool is_edge_punct(char c) {
    return c == ',' || c == ';' || c == ':' || c == '(' || c == ')' || c == '"' ||
           c == '\'';
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i >= n)
            break;
        size_t j = i;
        while (j < n && !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        Token t;
        t.begin = i;
        t.end = j;
        t.core_begin = i;
        t.core_end = j;
        while (t.core_begin < t.core_end && is_edge_punct(text[t.core_begin]))
            ++t.core_begin;
        while (t.core_end > t.core_begin && is_edge_punct(text[t.core_end - 1]))
            --t.core_end;
        t.core = text.substr(t.core_begin, t.core_end - t.core_begin);
        t.folded = fold_text(t.core);
        if (t.core_end > t.core_begin)
            tokens.push_back(std::move(t));
        i = j;
    }
    return tokens;
}

bool starts_uppercase(const std::string& token) {
    const std::u32string u = utf8_decode(token);
    return !u.empty() && is_upper(u[0]);
}

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool letter_dominated(const std::string& s) {
    const std::u32string u = utf8_decode(s);
    size_t letters = 0;
    for (char32_t c : u)
        if (is_letter(c))
            ++letters;
    return !u.empty() && letters * 2 > u.size();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

ComponentCandidate make_candidate(const std::string& text, ComponentKind kind,
                                  size_t start, size_t end, double confidence,
                                  std::optional<std::string> note = std::nullopt) {
    return {kind, start, end, text.substr(start, end - start), confidence, std::move(note)};
}

}  // namespace

const char* to_string(ComponentKind kind) {
    switch (kind) {
        case ComponentKind::Zip: return "zip";
        case ComponentKind::City: return "city";
        case ComponentKind::StreetHouse: return "street_house";
        case ComponentKind::POBox: return "po_box";
        case ComponentKind::PersonName: return "person_name";
        case ComponentKind::OrgName: return "org_name";
        case ComponentKind::CountryLine: return "country_line";
    }
    return "zip";
}

const char* to_string(LineClass cls) {
    switch (cls) {
        case LineClass::ZipCityLine: return "zip_city";
        case LineClass::StreetLine: return "street";
        case LineClass::AddresseeLine: return "addressee";
        case LineClass::POBoxLine: return "po_box";
        case LineClass::CountryLineClass: return "country";
        case LineClass::OtherLine: return "other";
    }
    return "other";
}

bool is_house_number(const std::string& token) {
    size_t i = 0;
    const size_t n = token.size();
    size_t digits = 0;
    while (i < n && std::isdigit(static_cast<unsigned char>(token[i]))) {
        ++i;
        ++digits;
    }
    if (digits == 0 || digits > 4)
        return false;
    if (i < n && std::isalpha(static_cast<unsigned char>(token[i])))
        ++i;
    if (i < n && token[i] == '-') {
        ++i;
        size_t range_digits = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(token[i]))) {
            ++i;
            ++range_digits;
        }
        if (range_digits == 0)
            return false;
    }
    return i == n;
}

std::vector<ComponentCandidate> detect_components(const std::string& text,
                                                  const Gazetteer& g, size_t max_edits) {
    std::vector<ComponentCandidate> out;
    const std::vector<Token> tokens = tokenize(text);

    // ZIP codes: tokens of exactly 5 digits, validated against the registry.
    for (const Token& t : tokens) {
        if (t.core.size() == 5 && all_digits(t.core)) {
            if (g.zip_to_cities.count(t.core))
                out.push_back(make_candidate(text, ComponentKind::Zip, t.core_begin,
                                             t.core_end, 1.0));
            else
                out.push_back(make_candidate(text, ComponentKind::Zip, t.core_begin,
                                             t.core_end, 0.0, "invalid-zip"));
        }
    }

    // Cities: longest exact n-gram match first, then single-token fuzzy lookup.
    for (size_t i = 0; i < tokens.size();) {
        bool matched = false;
        const size_t max_n = std::min<size_t>(3, tokens.size() - i);
        for (size_t n = max_n; n >= 1 && !matched; --n) {
            std::string folded = tokens[i].folded;
            for (size_t k = 1; k < n; ++k)
                folded += " " + tokens[i + k].folded;
            if (g.city_index.count(folded)) {
                out.push_back(make_candidate(text, ComponentKind::City,
                                             tokens[i].core_begin,
                                             tokens[i + n - 1].core_end, 1.0));
                i += n;
                matched = true;
            }
        }
        if (matched)
            continue;
        const Token& t = tokens[i];
        if (max_edits > 0 && t.folded.size() >= 4 && letter_dominated(t.core)) {
            size_t best = max_edits + 1;
            for (const auto& [folded_city, canonical] : g.city_index) {
                const size_t len_a = t.folded.size(), len_b = folded_city.size();
                if ((len_a > len_b ? len_a - len_b : len_b - len_a) > max_edits)
                    continue;
                best = std::min(best, edit_distance(t.folded, folded_city));
                if (best == 1)
                    break;
            }
            if (best >= 1 && best <= max_edits)
                out.push_back(make_candidate(text, ComponentKind::City, t.core_begin,
                                             t.core_end, 1.0 - 0.25 * best,
                                             "fuzzy:" + std::to_string(best)));
        }
        ++i;
    }

    // Streets: suffix-bearing token followed by a house-number pattern.
    for (size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.folded.size() < 3 || !letter_dominated(t.core))
            continue;
        bool has_suffix = false;
        for (const std::string& suffix : g.street_suffixes) {
            if (ends_with(t.folded, suffix)) {
                has_suffix = true;
                break;
            }
        }
        if (!has_suffix)
            continue;
        for (size_t j = i + 1; j < tokens.size() && j <= i + 2; ++j) {
            if (!is_house_number(tokens[j].core))
                continue;
            // Pull in up to two preceding capitalized name tokens
            // ("Alte Berliner Straße 5").
            size_t first = i;
            while (first > 0 && i - first < 2 && starts_uppercase(tokens[first - 1].core) &&
                   letter_dominated(tokens[first - 1].core) &&
                   !g.honorifics.count(tokens[first - 1].folded))
                --first;
            out.push_back(make_candidate(text, ComponentKind::StreetHouse,
                                         tokens[first].core_begin, tokens[j].core_end, 1.0));
            i = j;
            break;
        }
    }

    // Post-office boxes: "Postfach" followed by digit groups.
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
        if (tokens[i].folded != "postfach" || !all_digits(tokens[i + 1].core))
            continue;
        size_t last = i + 1;
        if (last + 1 < tokens.size() && all_digits(tokens[last + 1].core))
            ++last;
        out.push_back(make_candidate(text, ComponentKind::POBox, tokens[i].core_begin,
                                     tokens[last].core_end, 1.0));
        i = last;
    }

    // Person names: honorific + capitalized token, or first name + capitalized token.
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
        const bool honorific = g.honorifics.count(tokens[i].folded) > 0;
        const bool first_name =
            g.first_names.count(tokens[i].folded) > 0 && starts_uppercase(tokens[i].core);
        if (!honorific && !first_name)
            continue;
        if (!starts_uppercase(tokens[i + 1].core) || !letter_dominated(tokens[i + 1].core))
            continue;
        size_t last = i + 1;
        if (last + 1 < tokens.size() && starts_uppercase(tokens[last + 1].core) &&
            letter_dominated(tokens[last + 1].core))
            ++last;
        out.push_back(make_candidate(text, ComponentKind::PersonName,
                                     tokens[i].core_begin, tokens[last].core_end, 1.0));
        i = last;
    }

    // Organizations: any legal-form keyword marks the whole line as an org name.
    for (const Token& t : tokens) {
        if (g.org_keywords.count(t.folded)) {
            out.push_back(make_candidate(text, ComponentKind::OrgName,
                                         tokens.front().begin, tokens.back().end, 1.0));
            break;
        }
    }

    // Country line: the whole trimmed line is a country name.
    if (!tokens.empty()) {
        const std::string whole = fold_text(text);
        for (const char* country : kCountryNames) {
            if (whole == country) {
                out.push_back(make_candidate(text, ComponentKind::CountryLine,
                                             tokens.front().begin, tokens.back().end, 1.0));
                break;
            }
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const ComponentCandidate& a, const ComponentCandidate& b) {
                         if (a.start != b.start)
                             return a.start < b.start;
                         return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                     });
    return out;
}

LineClass classify_line(const std::string& /*text*/,
                        const std::vector<ComponentCandidate>& components) {
    bool valid_zip = false, city = false, po_box = false, street = false;
    bool country = false, addressee = false;
    for (const auto& c : components) {
        switch (c.kind) {
            case ComponentKind::Zip: valid_zip |= c.confidence > 0; break;
            case ComponentKind::City: city = true; break;
            case ComponentKind::StreetHouse: street = true; break;
            case ComponentKind::POBox: po_box = true; break;
            case ComponentKind::PersonName:
            case ComponentKind::OrgName: addressee = true; break;
            case ComponentKind::CountryLine: country = true; break;
        }
    }
    if (valid_zip && city)
        return LineClass::ZipCityLine;
    if (po_box)
        return LineClass::POBoxLine;
    if (street)
        return LineClass::StreetLine;
    if (country)
        return LineClass::CountryLineClass;
    if (addressee)
        return LineClass::AddresseeLine;
    return LineClass::OtherLine;
}

}  // namespace addrx
