#include <doctest.h>

#include "sl2flow/hall.hpp"
#include "sl2flow/json_io.hpp"

#include <stdexcept>

using namespace sl2flow;

TEST_SUITE("json") {

TEST_CASE("series round trip preserves every term exactly") {
    auto s = main_series_hall(5);
    auto j = series_to_json(s);
    CHECK(j.at("truncation_degree").get<int>() == 5);
    REQUIRE(!j.at("terms").empty());
    // terms come out in (length, lex) order: the single length-1 word first
    CHECK(j.at("terms")[0].at("word").get<std::string>() == "b");
    CHECK(j.at("terms")[0].at("num").get<std::string>() == "1");
    CHECK(j.at("terms")[0].at("den").get<std::string>() == "1");

    auto back = series_from_json(j);
    CHECK(back == s);

    // also via text: parse(dump) round trip
    auto again = series_from_json(Json::parse(j.dump()));
    CHECK(again == s);
}

TEST_CASE("series parsing is strict") {
    CHECK_THROWS_AS(series_from_json(Json::parse("[]")), std::invalid_argument);
    CHECK_THROWS_AS(series_from_json(Json::parse(R"({"terms": []})")), std::invalid_argument);

    // beyond the stated truncation
    auto beyond = Json::parse(
        R"({"truncation_degree": 1, "terms": [{"word": "ab", "num": "1", "den": "1"}]})");
    CHECK_THROWS_AS(series_from_json(beyond), std::invalid_argument);

    auto dup = Json::parse(
        R"({"truncation_degree": 2,
            "terms": [{"word": "ab", "num": "1", "den": "1"},
                      {"word": "ab", "num": "2", "den": "1"}]})");
    CHECK_THROWS_AS(series_from_json(dup), std::invalid_argument);

    auto badword = Json::parse(
        R"({"truncation_degree": 2, "terms": [{"word": "xy", "num": "1", "den": "1"}]})");
    CHECK_THROWS_AS(series_from_json(badword), std::invalid_argument);

    auto badden = Json::parse(
        R"({"truncation_degree": 2, "terms": [{"word": "ab", "num": "1", "den": "0"}]})");
    CHECK_THROWS(series_from_json(badden));
}

TEST_CASE("rational coefficients survive the trip") {
    NcSeries s(3);
    s.add_term(Word::parse("abc"), Rational(-7, 3));
    s.add_term(Word::parse("a"), Rational(5));
    auto back = series_from_json(series_to_json(s));
    CHECK(back.coefficient(Word::parse("abc")) == Rational(-7, 3));
    CHECK(back.coefficient(Word::parse("a")) == Rational(5));
    CHECK(back == s);
}

TEST_CASE("controls round trip all three channel kinds") {
    PiecewiseConstant pc{{0.25, 0.5}, {1.0, -0.5, 0.25}};
    Polynomial po{{0.1, -0.2, 0.3}};
    Sampled sa{0.25, {0.0, 1.0, 0.5, 0.75, 0.0}};
    ControlSpec cs(1.0, pc, po, sa);

    auto j = controls_to_json(cs);
    CHECK(j.at("T").get<double>() == doctest::Approx(1.0));
    CHECK(j.at("channels").at("a").at("kind") == "piecewise_constant");
    CHECK(j.at("channels").at("b").at("kind") == "polynomial");
    CHECK(j.at("channels").at("c").at("kind") == "sampled");

    auto back = controls_from_json(j);
    CHECK(back.horizon() == doctest::Approx(1.0));
    for (double t : {0.0, 0.2, 0.4, 0.9}) {
        CHECK(back.eval(Letter::A, t) == doctest::Approx(cs.eval(Letter::A, t)));
        CHECK(back.eval(Letter::B, t) == doctest::Approx(cs.eval(Letter::B, t)));
        CHECK(back.eval(Letter::C, t) == doctest::Approx(cs.eval(Letter::C, t)));
    }
}

TEST_CASE("controls parsing validates structure and legality") {
    CHECK_THROWS_AS(controls_from_json(Json::parse(R"({"T": 1.0})")), std::invalid_argument);

    auto missing = Json::parse(R"({"T": 1.0, "channels": {"a": {"kind": "polynomial",
        "coeffs": [1.0]}, "b": {"kind": "polynomial", "coeffs": [1.0]}}})");
    CHECK_THROWS_AS(controls_from_json(missing), std::invalid_argument);

    auto unknown = Json::parse(R"({"T": 1.0, "channels": {
        "a": {"kind": "spline", "coeffs": [1.0]},
        "b": {"kind": "polynomial", "coeffs": [1.0]},
        "c": {"kind": "polynomial", "coeffs": [1.0]}}})");
    CHECK_THROWS_AS(controls_from_json(unknown), std::invalid_argument);

    // structurally fine but illegal: decreasing breakpoints
    auto illegal = Json::parse(R"({"T": 1.0, "channels": {
        "a": {"kind": "piecewise_constant", "breakpoints": [0.6, 0.4], "values": [1, 2, 3]},
        "b": {"kind": "polynomial", "coeffs": [1.0]},
        "c": {"kind": "polynomial", "coeffs": [1.0]}}})");
    CHECK_THROWS_AS(controls_from_json(illegal), std::invalid_argument);
}

TEST_CASE("verification reports serialize their checks") {
    VerifyConfig cfg;
    cfg.degree = 4;
    cfg.steps = 200;
    cfg.draws = 0;
    cfg.controls = ControlSpec::constant(0.2, 0.1, -0.1, 0.05);
    auto report = run_verification(cfg);
    auto j = report_to_json(report);
    CHECK(j.at("degree").get<int>() == 4);
    CHECK(j.at("checks").is_array());
    CHECK(j.at("checks").size() == report.checks.size());
    CHECK(j.contains("convention"));
    CHECK(j.contains("pass"));
    for (const auto& c : j.at("checks")) {
        CHECK(c.contains("name"));
        CHECK(c.contains("max_error"));
        CHECK(c.contains("tolerance"));
        CHECK(c.contains("pass"));
    }
}

}  // TEST_SUITE
