#include <doctest.h>

#include <map>
#include <random>

#include "addrx/gazetteer.hpp"
#include "addrx/textnorm.hpp"
#include "testutil.hpp"

using namespace addrx;
using addrx::test::TempDir;
using addrx::test::fixture_gazetteer;
using addrx::test::write_file;

namespace {

// Independent oracle: top-down memoized recursion over the full edit matrix
// (substitution, insertion, deletion, adjacent transposition, unit costs).
size_t oracle_distance_impl(const std::u32string& a, const std::u32string& b, size_t i,
                            size_t j, std::map<std::pair<size_t, size_t>, size_t>& memo) {
    if (i == 0)
        return j;
    if (j == 0)
        return i;
    const auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    size_t best = oracle_distance_impl(a, b, i - 1, j, memo) + 1;
    best = std::min(best, oracle_distance_impl(a, b, i, j - 1, memo) + 1);
    best = std::min(best, oracle_distance_impl(a, b, i - 1, j - 1, memo) +
                              (a[i - 1] == b[j - 1] ? 0 : 1));
    if (i >= 2 && j >= 2 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
        best = std::min(best, oracle_distance_impl(a, b, i - 2, j - 2, memo) + 1);
    memo[key] = best;
    return best;
}

size_t oracle_distance(const std::string& a, const std::string& b) {
    const std::u32string ua = case_fold(utf8_decode(a));
    const std::u32string ub = case_fold(utf8_decode(b));
    std::map<std::pair<size_t, size_t>, size_t> memo;
    return oracle_distance_impl(ua, ub, ua.size(), ub.size(), memo);
}

std::string random_string(std::mt19937_64& rng, size_t max_len) {
    static const std::string alphabet = "abcdefgh";
    std::string s;
    const size_t len = rng() % (max_len + 1);
    for (size_t i = 0; i < len; ++i)
        s.push_back(alphabet[rng() % alphabet.size()]);
    return s;
}

void write_standard_lists(const TempDir& dir) {
    write_file(dir.path() / "first_names.txt", "Anna\nMax\n");
    write_file(dir.path() / "org_keywords.txt", "GmbH\nAG\n");
    write_file(dir.path() / "honorifics.txt", "Herr\nFrau\n");
    write_file(dir.path() / "street_suffixes.txt", "straße\nstr.\n");
}

}  // namespace

TEST_CASE("load single-row fixture") {
    TempDir dir("gaz1");
    write_file(dir.path() / "zip_city.tsv", "04109\tLeipzig\n");
    write_standard_lists(dir);
    const Gazetteer g = load_gazetteer(dir.str());
    REQUIRE(g.zip_to_cities.count("04109"));
    CHECK(g.zip_to_cities.at("04109") == std::set<std::string>{"Leipzig"});
}

TEST_CASE("4-digit ZIP is a load error with line number") {
    TempDir dir("gaz2");
    write_file(dir.path() / "zip_city.tsv", "4109\tLeipzig\n");
    write_standard_lists(dir);
    try {
        load_gazetteer(dir.str());
        FAIL("expected GazetteerError");
    } catch (const GazetteerError& e) {
        CHECK(std::string(e.what()).find(":1:") != std::string::npos);
    }
}

TEST_CASE("duplicate rows deduplicate after trim") {
    TempDir dir("gaz3");
    write_file(dir.path() / "zip_city.tsv", "04109\tLeipzig\n04109\tLeipzig \n");
    write_standard_lists(dir);
    const Gazetteer g = load_gazetteer(dir.str());
    CHECK(g.zip_to_cities.at("04109").size() == 1);
}

TEST_CASE("missing file is a load error") {
    TempDir dir("gaz4");
    write_file(dir.path() / "zip_city.tsv", "04109\tLeipzig\n");
    CHECK_THROWS_AS(load_gazetteer(dir.str()), GazetteerError);
}

TEST_CASE("is_valid_zip") {
    const Gazetteer& g = fixture_gazetteer();
    CHECK(is_valid_zip(g, "04109"));
    CHECK_FALSE(is_valid_zip(g, "99999"));
    CHECK_FALSE(is_valid_zip(g, "0410"));
    CHECK_FALSE(is_valid_zip(g, "041090"));
    CHECK_FALSE(is_valid_zip(g, "0410a"));
}

TEST_CASE("edit_distance examples") {
    CHECK(edit_distance("Leipzig", "Leipzig") == 0);
    CHECK(edit_distance("Leipz1g", "Leipzig") == 1);
    CHECK(edit_distance("kitten", "sitting") == oracle_distance("kitten", "sitting"));
    CHECK(edit_distance("kitten", "sitting") == 3);
    CHECK(edit_distance("Lepizig", "Leipzig") == 1);  // adjacent transposition
    CHECK(edit_distance("LEIPZIG", "leipzig") == 0);  // case folded
    CHECK(edit_distance("", "abc") == 3);
}

TEST_CASE("edit_distance agrees with the DP oracle and is a metric") {
    std::mt19937_64 rng(424242);
    for (int iter = 0; iter < 10000; ++iter) {
        const std::string a = random_string(rng, 12);
        const std::string b = random_string(rng, 12);
        const size_t d = edit_distance(a, b);
        CHECK(d == oracle_distance(a, b));
        CHECK(edit_distance(a, a) == 0);
        CHECK(edit_distance(b, a) == d);
    }
    // triangle inequality on random triples
    for (int iter = 0; iter < 10000; ++iter) {
        const std::string a = random_string(rng, 10);
        const std::string b = random_string(rng, 10);
        const std::string c = random_string(rng, 10);
        CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
    }
}

TEST_CASE("zip_city_match examples") {
    const Gazetteer& g = fixture_gazetteer();

    const CityMatch exact = zip_city_match(g, "04109", "Leipzig", 1);
    CHECK(exact.kind == CityMatch::Kind::Exact);
    CHECK(exact.matched_city == "Leipzig");

    const CityMatch fuzzy = zip_city_match(g, "04109", "Leipz1g", 1);
    CHECK(fuzzy.kind == CityMatch::Kind::Fuzzy);
    CHECK(fuzzy.distance == 1);
    CHECK(fuzzy.matched_city == "Leipzig");

    // brute-force: min distance from "Dresden" to any city registered for
    // 04109 (only "Leipzig") exceeds 1
    CHECK(edit_distance("dresden", "leipzig") > 1);
    CHECK(zip_city_match(g, "04109", "Dresden", 1).kind == CityMatch::Kind::Mismatch);

    CHECK(zip_city_match(g, "99999", "Leipzig", 1).kind == CityMatch::Kind::UnknownZip);
}

TEST_CASE("zip_city_match with max_edits=0 never returns Fuzzy") {
    const Gazetteer& g = fixture_gazetteer();
    std::mt19937_64 rng(99);
    std::vector<std::string> zips;
    for (const auto& [zip, cities] : g.zip_to_cities)
        zips.push_back(zip);
    for (int iter = 0; iter < 500; ++iter) {
        const std::string& zip = zips[rng() % zips.size()];
        std::string city = *g.zip_to_cities.at(zip).begin();
        if (rng() % 2 && !city.empty())
            city[rng() % city.size()] = 'q';  // perturb
        const CityMatch m = zip_city_match(g, zip, city, 0);
        CHECK(m.kind != CityMatch::Kind::Fuzzy);
    }
}

TEST_CASE("city comparison folds case, whitespace and sharp s") {
    const Gazetteer& g = fixture_gazetteer();
    CHECK(zip_city_match(g, "04109", "LEIPZIG", 0).kind == CityMatch::Kind::Exact);
    CHECK(zip_city_match(g, "04109", "  Leipzig  ", 0).kind == CityMatch::Kind::Exact);
    // Gießen-style ß folding: "Fürth" with ASCII u is one edit away
    CHECK(zip_city_match(g, "90762", "Furth", 1).kind == CityMatch::Kind::Fuzzy);
    CHECK(zip_city_match(g, "60306", "Frankfurt am  Main", 0).kind ==
          CityMatch::Kind::Exact);
}
