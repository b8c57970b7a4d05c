#include "addrx/gazetteer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "addrx/textnorm.hpp"

namespace addrx {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> cols;
    std::string cur;
    for (char ch : line) {
        if (ch == '\t') {
            cols.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cols.push_back(cur);
    return cols;
}

[[noreturn]] void load_fail(const std::string& file, size_t line_no, const std::string& msg) {
    throw GazetteerError(file + ":" + std::to_string(line_no) + ": " + msg);
}

// Calls fn(line, line_no) for every non-comment, non-blank line.
template <typename Fn>
void for_each_row(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in)
        throw GazetteerError("missing gazetteer file: " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        fn(line, line_no);
    }
}

void load_word_list(const std::string& path, std::set<std::string>& out) {
    for_each_row(path, [&](const std::string& line, size_t) {
        const std::string entry = fold_text(line);
        if (!entry.empty())
            out.insert(entry);
    });
}

}  // namespace

Gazetteer load_gazetteer(const std::string& directory) {
    Gazetteer g;
    const std::string zip_file = directory + "/zip_city.tsv";
    for_each_row(zip_file, [&](const std::string& line, size_t line_no) {
        const auto cols = split_tabs(line);
        if (cols.size() != 2 && cols.size() != 4)
            load_fail(zip_file, line_no, "expected 2 or 4 tab-separated columns");
        const std::string& zip = cols[0];
        if (!is_zip_shaped(zip))
            load_fail(zip_file, line_no, "ZIP must be exactly 5 digits: \"" + zip + "\"");
        const std::string city = collapse_whitespace(trim(cols[1]));
        if (city.empty())
            load_fail(zip_file, line_no, "empty city name");
        g.zip_to_cities[zip].insert(city);
        g.city_index.emplace(fold_text(city), city);
        if (cols.size() == 4) {
            try {
                g.geo_points[{zip, fold_text(city)}] = {std::stod(cols[2]), std::stod(cols[3])};
            } catch (const std::exception&) {
                load_fail(zip_file, line_no, "malformed lat/lon");
            }
        }
    });
    if (g.zip_to_cities.empty())
        throw GazetteerError(zip_file + ": no rows");
    load_word_list(directory + "/first_names.txt", g.first_names);
    load_word_list(directory + "/org_keywords.txt", g.org_keywords);
    load_word_list(directory + "/honorifics.txt", g.honorifics);
    for_each_row(directory + "/street_suffixes.txt", [&](const std::string& line, size_t) {
        const std::string entry = fold_text(line);
        if (!entry.empty())
            g.street_suffixes.push_back(entry);
    });
    if (g.first_names.empty() || g.org_keywords.empty() || g.honorifics.empty() ||
        g.street_suffixes.empty())
        throw GazetteerError(directory + ": a reference list loaded empty");
    return g;
}

bool is_zip_shaped(const std::string& token) {
    if (token.size() != 5)
        return false;
    return std::all_of(token.begin(), token.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

bool is_valid_zip(const Gazetteer& g, const std::string& token) {
    return is_zip_shaped(token) && g.zip_to_cities.count(token) > 0;
}

size_t edit_distance(const std::u32string& a_in, const std::u32string& b_in) {
    const std::u32string a = case_fold(a_in);
    const std::u32string b = case_fold(b_in);
    const size_t m = a.size(), n = b.size();
    if (m == 0) return n;
    if (n == 0) return m;
    // Three rolling rows of the optimal-string-alignment matrix.
    std::vector<size_t> prev2(n + 1), prev(n + 1), cur(n + 1);
    for (size_t j = 0; j <= n; ++j)
        prev[j] = j;
    for (size_t i = 1; i <= m; ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= n; ++j) {
            const size_t sub_cost = (a[i - 1] == b[j - 1]) ? 0 : 1;
            size_t best = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + sub_cost});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
                best = std::min(best, prev2[j - 2] + 1);
            cur[j] = best;
        }
        std::swap(prev2, prev);
        std::swap(prev, cur);
    }
    return prev[n];
}

size_t edit_distance(const std::string& a, const std::string& b) {
    return edit_distance(utf8_decode(a), utf8_decode(b));
}

const char* to_string(CityMatch::Kind kind) {
    switch (kind) {
        case CityMatch::Kind::Exact: return "exact";
        case CityMatch::Kind::Fuzzy: return "fuzzy";
        case CityMatch::Kind::Mismatch: return "mismatch";
        case CityMatch::Kind::UnknownZip: return "unknown_zip";
    }
    return "unknown_zip";
}

CityMatch zip_city_match(const Gazetteer& g, const std::string& zip,
                         const std::string& city, size_t max_edits) {
    auto it = g.zip_to_cities.find(zip);
    if (!is_zip_shaped(zip) || it == g.zip_to_cities.end())
        return {CityMatch::Kind::UnknownZip, 0, std::nullopt};
    const std::string folded = fold_text(city);
    size_t best_distance = max_edits + 1;
    std::optional<std::string> best_city;
    // Set iteration is lexicographic, which settles distance ties.
    for (const std::string& registered : it->second) {
        const std::string reg_folded = fold_text(registered);
        if (reg_folded == folded)
            return {CityMatch::Kind::Exact, 0, registered};
        const size_t d = edit_distance(folded, reg_folded);
        if (d >= 1 && d <= max_edits && d < best_distance) {
            best_distance = d;
            best_city = registered;
        }
    }
    if (best_city)
        return {CityMatch::Kind::Fuzzy, best_distance, best_city};
    return {CityMatch::Kind::Mismatch, 0, std::nullopt};
}

}  // namespace addrx
