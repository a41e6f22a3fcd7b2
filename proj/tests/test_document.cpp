#include <doctest.h>

#include "ipb/document.hpp"
#include "ipb/report_json.hpp"
#include "test_support.hpp"

using namespace ipb;
using ipb::testing::code_of;

namespace {

const char* ex43_json = R"({"atoms": ["w1","w2","w3"],
  "gambles": {"X": [-1, 1, 2]},
  "lower": {"X": 0.75},
  "upper": {}})";

} // namespace

TEST_SUITE_BEGIN("document");

TEST_CASE("parsing the worked example document") {
    const AssessmentDocument doc = parse_document(ex43_json);
    CHECK(doc.atoms.size() == 3);
    CHECK(doc.gambles.size() == 1);
    CHECK(doc.lower.size() == 1);
    CHECK(doc.upper.empty());
    REQUIRE(doc.find_gamble("X") != nullptr);
    CHECK((*doc.find_gamble("X"))[0] == -1.0);

    const Assessment a = doc.to_assessment();
    CHECK(a.size() == 1);
    CHECK(a.at("X").lower == 0.75);
}

TEST_CASE("schema violations") {
    CHECK(code_of([] { parse_document("{nope"); }) == Errc::parse_error);
    CHECK(code_of([] { parse_document("[1,2]"); }) == Errc::schema_error);
    CHECK(code_of([] {
              parse_document(R"({"atoms":["a"],"gambles":{},"lower":{},"extra":1})");
          }) == Errc::schema_error);
    CHECK(code_of([] { parse_document(R"({"atoms":["a"],"gambles":{}})"); }) ==
          Errc::schema_error);
    CHECK(code_of([] {
              parse_document(R"({"atoms":["a","b"],"gambles":{"X":[1]},"lower":{}})");
          }) == Errc::dimension_error);
    CHECK(code_of([] {
              parse_document(R"({"atoms":["a"],"gambles":{"X":[1]},"lower":{"Y":0}})");
          }) == Errc::schema_error);
    CHECK(code_of([] {
              parse_document(R"({"atoms":["a"],"gambles":{"2X":[1]},"lower":{}})");
          }) == Errc::schema_error);
    CHECK(code_of([] {
              parse_document(R"({"atoms":["a","a"],"gambles":{},"lower":{}})");
          }) == Errc::out_of_range);
}

TEST_CASE("assessed uppers become conjugate lower entries") {
    const AssessmentDocument doc = parse_document(
        R"({"atoms":["w1","w2","w3"],"gambles":{"X":[-1,1,2]},"lower":{},"upper":{"X":2.0}})");
    const Assessment a = doc.to_assessment();
    REQUIRE(a.find("-X") != nullptr);
    CHECK(a.at("-X").lower == -2.0);
    CHECK(a.at("-X").gamble[0] == 1.0);
    CHECK(a.at("-X").gamble[2] == -2.0);
}

TEST_CASE("serialize-parse round trip is the identity") {
    const AssessmentDocument doc = parse_document(
        R"({"atoms":["w1","w2"],
            "gambles":{"X":[0.1, 0.30000000000000004],"Y":[-2.5, 3]},
            "lower":{"X": 0.123456789012345678, "Y": -1},
            "upper":{"Y": 2.9}})");
    const std::string text = serialize_document(doc);
    const AssessmentDocument again = parse_document(text);
    CHECK(again == doc);
    CHECK(serialize_document(again) == text);
}

TEST_CASE("report numbers round trip bit-faithfully") {
    Json j;
    j["a"] = 0.1;
    j["b"] = 1.0 / 3.0;
    j["c"] = 123456789.123456789;
    j["d"] = 5; // integer stays integral
    const std::string text = json_to_string(j);
    const Json back = Json::parse(text);
    CHECK(back["a"].get<double>() == 0.1);
    CHECK(back["b"].get<double>() == 1.0 / 3.0);
    CHECK(back["c"].get<double>() == 123456789.123456789);
    CHECK(back["d"].get<int>() == 5);
    // 17 significant digits are actually printed
    CHECK(text.find("0.10000000000000001") != std::string::npos);
}

TEST_SUITE_END();
