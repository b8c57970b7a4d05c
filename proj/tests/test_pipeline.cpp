#include <doctest.h>

#include <filesystem>

#include <json.hpp>

#include "addrx/runner.hpp"
#include "testutil.hpp"

using namespace addrx;
using addrx::test::TempDir;
using addrx::test::fixture_gazetteer;
using addrx::test::gazetteer_data_dir;
using addrx::test::read_file;
using addrx::test::write_file;

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// A small letter: letterhead sender top-right, receiver in the address
// window, a bank address in the footer.
const char* kFixtureLetter = R"({
  "document_id": "letter-fixture",
  "pages": [ { "page_number": 1, "width_px": 2480, "height_px": 3508, "lines": [
    { "id": "s1", "text": "Muster GmbH",       "bbox": [1500,  60, 1720, 100] },
    { "id": "s2", "text": "Gartenweg 3",       "bbox": [1500, 108, 1710, 148] },
    { "id": "s3", "text": "10115 Berlin",      "bbox": [1500, 156, 1730, 196] },
    { "id": "r1", "text": "Frau Anna Schmidt", "bbox": [ 200, 600,  540, 640] },
    { "id": "r2", "text": "Hauptstraße 5",     "bbox": [ 200, 648,  450, 688] },
    { "id": "r3", "text": "04109 Leipzig",     "bbox": [ 200, 696,  450, 736] },
    { "id": "b1", "text": "Sehr geehrte Frau Schmidt,", "bbox": [200, 1600, 690, 1640] },
    { "id": "f1", "text": "Musterbank AG",     "bbox": [ 200, 3100,  460, 3140] },
    { "id": "f2", "text": "01067 Dresden",     "bbox": [ 200, 3148,  450, 3188] }
  ] } ]
})";

PipelineConfig base_config() {
    PipelineConfig cfg;
    cfg.gazetteer_dir = gazetteer_data_dir();
    cfg.parallelism = 1;
    return cfg;
}

std::map<std::string, std::string> output_files(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& entry : fs::directory_iterator(dir))
        out[entry.path().filename().string()] = read_file(entry.path());
    return out;
}

}  // namespace

TEST_CASE("extract labels the fixture letter sender/receiver/other") {
    TempDir in("pipe-in"), out("pipe-out");
    write_file(in.path() / "letter.json", kFixtureLetter);
    REQUIRE(run_extract({(in.path() / "letter.json").string()}, base_config(),
                        out.str()) == kExitOk);

    const json result = json::parse(read_file(out.path() / "letter-fixture.addr.json"));
    CHECK(result.at("document_id") == "letter-fixture");
    const json& addresses = result.at("pages").at(0).at("addresses");
    REQUIRE(addresses.size() == 3);

    std::map<std::string, json> by_label;
    for (const json& a : addresses)
        by_label[a.at("label").get<std::string>()] = a;
    REQUIRE(by_label.count("sender"));
    REQUIRE(by_label.count("receiver"));
    REQUIRE(by_label.count("other"));

    const json& receiver = by_label["receiver"];
    CHECK(receiver.at("components").at("zip") == "04109");
    CHECK(receiver.at("components").at("city") == "Leipzig");
    CHECK(receiver.at("components").at("street") == "Hauptstraße");
    CHECK(receiver.at("components").at("house_number") == "5");
    CHECK(receiver.at("components").at("addressee") == "Frau Anna Schmidt");
    CHECK(receiver.at("normalized").at("country") == "Deutschland");
    CHECK(receiver.at("validation").at("zip_valid") == true);
    CHECK(receiver.at("validation").at("zip_city") == "exact");
    CHECK(receiver.at("validation").at("geocode") == "matched");
    CHECK(receiver.at("validation").at("lat").get<double>() == doctest::Approx(51.339));

    const json& sender = by_label["sender"];
    CHECK(sender.at("components").at("zip") == "10115");
    CHECK(sender.at("components").at("addressee") == "Muster GmbH");

    const json& other = by_label["other"];
    CHECK(other.at("components").at("zip") == "01067");
}

TEST_CASE("extract output is independent of the parallelism level") {
    TempDir corpus("pipe-corpus"), out1("pipe-p1"), out8("pipe-p8");
    REQUIRE(run_gen(8, 42, 0.02, 0.0, corpus.str(), fixture_gazetteer()) == kExitOk);

    PipelineConfig cfg = base_config();
    cfg.parallelism = 1;
    REQUIRE(run_extract({corpus.str() + "/*.ocr.json"}, cfg, out1.str()) == kExitOk);
    cfg.parallelism = 8;
    REQUIRE(run_extract({corpus.str() + "/*.ocr.json"}, cfg, out8.str()) == kExitOk);

    const auto files1 = output_files(out1.path());
    const auto files8 = output_files(out8.path());
    REQUIRE(files1.size() == 8);
    CHECK(files1 == files8);
}

TEST_CASE("one corrupt input fails the whole batch with no partial outputs") {
    TempDir in("pipe-bad"), out("pipe-bad-out");
    write_file(in.path() / "a.json", kFixtureLetter);
    write_file(in.path() / "b.json", "{broken");
    std::string good = kFixtureLetter;
    const size_t pos = good.find("letter-fixture");
    good.replace(pos, 14, "letter-other12");
    write_file(in.path() / "c.json", good);

    CHECK(run_extract({in.str() + "/*.json"}, base_config(), out.str()) ==
          kExitParseError);
    CHECK(output_files(out.path()).empty());
}

TEST_CASE("missing gazetteer directory is exit code 3") {
    TempDir in("pipe-nogaz"), out("pipe-nogaz-out");
    write_file(in.path() / "letter.json", kFixtureLetter);
    PipelineConfig cfg = base_config();
    cfg.gazetteer_dir = (in.path() / "no-such-dir").string();
    CHECK(run_extract({(in.path() / "letter.json").string()}, cfg, out.str()) ==
          kExitGazetteerError);
}

TEST_CASE("eval over a generated corpus closes the loop") {
    TempDir corpus("pipe-loop"), out("pipe-loop-out");
    REQUIRE(run_gen(6, 7, 0.0, 0.0, corpus.str(), fixture_gazetteer()) == kExitOk);
    REQUIRE(run_extract({corpus.str() + "/*.ocr.json"}, base_config(), out.str()) ==
            kExitOk);
    const std::string report_path = (out.path() / "report.json").string();
    REQUIRE(run_eval({out.str() + "/*.addr.json"}, {corpus.str() + "/*.truth.json"},
                     report_path) == kExitOk);
    const json report = json::parse(read_file(report_path));
    CHECK(report.at("corpus").at("pages").get<int>() == 6);
    CHECK(report.at("classes").at("receiver").at("fp").get<int>() == 0);
    CHECK(fs::exists(report_path + ".txt"));
}

TEST_CASE("predictions for an unknown document are exit code 4") {
    TempDir dir("pipe-unknown");
    write_file(dir.path() / "pred.json", R"({
      "document_id": "ghost", "pages": [ { "page_number": 1, "addresses": [ {
        "label": "receiver", "confidence": 0.9, "bbox": [0,0,10,10],
        "components": { "zip": "04109", "city": "Leipzig" } } ] } ] })");
    write_file(dir.path() / "truth.json", R"({
      "document_id": "doc1", "pages": [ { "page_number": 1, "addresses": [ {
        "label": "receiver",
        "components": { "zip": "04109", "city": "Leipzig" } } ] } ] })");
    CHECK(run_eval({(dir.path() / "pred.json").string()},
                   {(dir.path() / "truth.json").string()},
                   "") == kExitUnknownDocument);
}

TEST_CASE("gen rejects invalid parameters") {
    TempDir dir("pipe-gen");
    CHECK(run_gen(0, 1, 0.0, 0.0, dir.str(), fixture_gazetteer()) == kExitUsage);
    CHECK(run_gen(1, 1, 1.5, 0.0, dir.str(), fixture_gazetteer()) == kExitUsage);
    CHECK(run_gen(1, 1, 0.0, -0.1, dir.str(), fixture_gazetteer()) == kExitUsage);
}

TEST_CASE("expand_glob") {
    TempDir dir("pipe-glob");
    write_file(dir.path() / "a1.json", "{}");
    write_file(dir.path() / "a2.json", "{}");
    write_file(dir.path() / "b.txt", "x");
    const auto matched = expand_glob(dir.str() + "/a*.json");
    REQUIRE(matched.size() == 2);
    CHECK(fs::path(matched[0]).filename() == "a1.json");
    CHECK(fs::path(matched[1]).filename() == "a2.json");
    // a literal path passes through even when absent
    CHECK(expand_glob(dir.str() + "/missing.json").size() == 1);
    CHECK(expand_glob(dir.str() + "/?.txt") == std::vector<std::string>{
                                                   (dir.path() / "b.txt").string()});
}
