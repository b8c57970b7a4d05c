#include <doctest.h>

#include <random>
#include <set>

#include "addrx/compose.hpp"
#include "testutil.hpp"

using namespace addrx;
using addrx::test::fixture_gazetteer;

namespace {

Page make_page(std::vector<TextLine> lines, double w = 2480, double h = 3508) {
    Page p;
    p.page_number = 1;
    p.width_px = w;
    p.height_px = h;
    p.lines = std::move(lines);
    return p;
}

TextLine line_at(const std::string& id, const std::string& text, double x, double y,
                 double width = 400, double height = 40) {
    return {id, text, {x, y, x + width, y + height}, 1.0};
}

std::vector<TextLine> stack(const std::vector<std::string>& texts, double x = 100,
                            double y0 = 500, double pitch = 45) {
    std::vector<TextLine> lines;
    for (size_t i = 0; i < texts.size(); ++i)
        lines.push_back(line_at("l" + std::to_string(i + 1), texts[i], x, y0 + pitch * i));
    return lines;
}

}  // namespace

TEST_CASE("group_blocks: stacked lines join, big gaps split") {
    ComposeConfig cfg;
    // 3 lines, 40px tall, 5px gaps
    auto page = make_page(stack({"a", "b", "c"}, 100, 500, 45));
    auto blocks = group_blocks(page, cfg);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].size() == 3);

    // two stacks 500px apart on a page of 40px lines (threshold 1.8*40 = 72)
    auto lines = stack({"a", "b"}, 100, 500, 45);
    auto lower = stack({"c", "d"}, 100, 1100, 45);
    lower[0].id = "l3";
    lower[1].id = "l4";
    lines.insert(lines.end(), lower.begin(), lower.end());
    blocks = group_blocks(make_page(lines), cfg);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].size() == 2);
    CHECK(blocks[1].size() == 2);
}

TEST_CASE("group_blocks: side-by-side columns stay separate") {
    ComposeConfig cfg;
    std::vector<TextLine> lines;
    for (int i = 0; i < 3; ++i) {
        lines.push_back(line_at("L" + std::to_string(i), "left", 100, 500 + 45 * i, 300));
        lines.push_back(line_at("R" + std::to_string(i), "right", 900, 500 + 45 * i, 300));
    }
    const auto blocks = group_blocks(make_page(lines), cfg);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].size() == 3);
    CHECK(blocks[1].size() == 3);
}

TEST_CASE("group_blocks: oversized blocks split at the widest gap") {
    ComposeConfig cfg;
    cfg.max_block_lines = 3;
    std::vector<std::string> texts;
    for (int i = 0; i < 6; ++i)
        texts.push_back("line " + std::to_string(i));
    auto lines = stack(texts, 100, 500, 45);
    lines[3].bbox.y0 += 20;  // widest internal gap between 2 and 3
    lines[3].bbox.y1 += 20;
    const auto blocks = group_blocks(make_page(lines), cfg);
    for (const auto& b : blocks)
        CHECK(b.size() <= cfg.max_block_lines);
}

TEST_CASE("group_blocks partitions the page") {
    ComposeConfig cfg;
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<TextLine> lines;
        const size_t n = rng() % 20;
        for (size_t i = 0; i < n; ++i)
            lines.push_back(line_at("l" + std::to_string(i), "text",
                                    static_cast<double>(rng() % 2000),
                                    static_cast<double>(rng() % 3400),
                                    100 + static_cast<double>(rng() % 400)));
        const Page page = make_page(lines);
        const auto blocks = group_blocks(page, cfg);
        std::set<size_t> seen;
        size_t total = 0;
        for (const auto& b : blocks) {
            total += b.size();
            for (size_t idx : b) {
                CHECK(seen.insert(idx).second);  // no line in two blocks
                CHECK(idx < page.lines.size());
            }
        }
        CHECK(total == page.lines.size());
    }
}

TEST_CASE("score_candidate formula") {
    ComposeConfig cfg;
    CHECK(score_candidate(1, 1, 1, 1, CityMatch::Kind::Exact, cfg) == doctest::Approx(1.0));
    CHECK(score_candidate(1, 1, 0, 0, CityMatch::Kind::Exact, cfg) == doctest::Approx(0.60));
    CHECK(score_candidate(1, 1, 1, 1, CityMatch::Kind::Mismatch, cfg) ==
          doctest::Approx(0.70));
}

TEST_CASE("score monotonicity") {
    ComposeConfig cfg;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int iter = 0; iter < 1000; ++iter) {
        const double z = unit(rng), c = unit(rng);
        // adding a missing component never lowers the score
        CHECK(score_candidate(z, c, 1, 0, CityMatch::Kind::Exact, cfg) >=
              score_candidate(z, c, 0, 0, CityMatch::Kind::Exact, cfg));
        CHECK(score_candidate(z, c, 0, 1, CityMatch::Kind::Exact, cfg) >=
              score_candidate(z, c, 0, 0, CityMatch::Kind::Exact, cfg));
        // Exact -> Mismatch drops the raw score by exactly 0.30 (before clipping)
        const double exact = score_candidate(z, c, 0, 0, CityMatch::Kind::Exact, cfg);
        const double mismatch = score_candidate(z, c, 0, 0, CityMatch::Kind::Mismatch, cfg);
        if (exact < 1.0 && mismatch > 0.0)
            CHECK(exact - mismatch ==
                  doctest::Approx(cfg.bonus_match - cfg.penalty_mismatch));
    }
}

TEST_CASE("compose full block") {
    ComposeConfig cfg;
    const auto block = stack({"Muster GmbH", "Musterstraße 12", "04109 Leipzig"});
    const auto cands = compose_addresses(block, fixture_gazetteer(), cfg);
    REQUIRE(cands.size() == 1);
    const AddressCandidate& c = cands[0];
    CHECK(c.components.addressee == "Muster GmbH");
    CHECK(c.components.street == "Musterstraße");
    CHECK(c.components.house_number == "12");
    CHECK(c.components.zip == "04109");
    CHECK(c.components.city == "Leipzig");
    CHECK(c.zip_city.kind == CityMatch::Kind::Exact);
    CHECK(c.confidence == doctest::Approx(1.0));
    CHECK(c.line_ids == std::vector<std::string>{"l1", "l2", "l3"});
    CHECK(c.bbox == bbox_union({block[0].bbox, block[1].bbox, block[2].bbox}));
}

TEST_CASE("compose zip+city alone") {
    ComposeConfig cfg;
    const auto cands =
        compose_addresses(stack({"04109 Leipzig"}), fixture_gazetteer(), cfg);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].confidence == doctest::Approx(0.60));
    CHECK_FALSE(cands[0].components.street.has_value());
    CHECK_FALSE(cands[0].components.addressee.has_value());
}

TEST_CASE("invalid zip yields no candidate") {
    ComposeConfig cfg;
    const auto cands = compose_addresses(
        stack({"Muster GmbH", "Musterstraße 12", "12345 Nirgendstadt"}),
        fixture_gazetteer(), cfg);
    CHECK(cands.empty());
}

TEST_CASE("po box composition and country attachment") {
    ComposeConfig cfg;
    const auto cands = compose_addresses(
        stack({"Muster GmbH", "Postfach 10 23", "04109 Leipzig", "Deutschland"}),
        fixture_gazetteer(), cfg);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].components.po_box == "10 23");
    CHECK_FALSE(cands[0].components.street.has_value());  // mutually exclusive
    CHECK(cands[0].components.country == "Deutschland");
    CHECK(cands[0].line_ids.size() == 4);
}

TEST_CASE("every accepted candidate carries zip and city") {
    ComposeConfig cfg;
    std::mt19937_64 rng(31);
    const std::vector<std::string> pool = {
        "Muster GmbH",      "Musterstraße 12", "04109 Leipzig", "Deutschland",
        "12345 Nirgendstadt", "Rechnung 443",  "Herr Max Meier", "Postfach 44",
        "01067 Dresden",    "Hauptstr. 9"};
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<std::string> texts;
        const size_t n = 1 + rng() % 6;
        for (size_t i = 0; i < n; ++i)
            texts.push_back(pool[rng() % pool.size()]);
        for (const auto& c :
             compose_addresses(stack(texts), fixture_gazetteer(), cfg)) {
            CHECK(c.components.zip.has_value());
            CHECK(c.components.city.has_value());
            CHECK(c.confidence >= cfg.accept_threshold);
            CHECK(c.confidence <= 1.0);
            CHECK_FALSE(c.line_ids.empty());
        }
    }
}
