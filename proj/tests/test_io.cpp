#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "prodspec/error.hpp"
#include "prodspec/io.hpp"

using namespace prodspec;

TEST_SUITE("io") {
  TEST_CASE("numbers keep 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    CHECK(format_number(1.0 / 0.0) == "inf");
    Json j;
    j["x"] = 0.1;
    j["v"] = Json::array({1, 2.5});
    j["s"] = "a\"b";
    j["inf"] = -1.0 / 0.0;
    CHECK(dump_json(j, -1) == "{\"x\":0.10000000000000001,\"v\":[1,2.5],\"s\":\"a\\\"b\",\"inf\":\"-inf\"}");
    // Round trip through the parser is exact.
    const Json back = Json::parse(dump_json(Json{{"y", 0.1 + 0.2}}));
    CHECK(back["y"].get<double>() == 0.1 + 0.2);
  }

  TEST_CASE("CSV layout") {
    std::ostringstream os;
    CsvWriter csv(os, Json{{"a", 1}}, {"E", "L"});
    csv.cell(0.5).cell(std::int64_t{3});
    csv.end_row();
    CHECK(os.str() == "# prodspec-csv v1\n# config: {\"a\":1}\nE,L\n0.5,3\n");
    csv.cell(1.0);
    CHECK_THROWS(csv.end_row());
  }

  TEST_CASE("model documents") {
    const Substitution tm = substitution_from_json(Json::parse(R"({"rules": {"a": "ab", "b": "ba"}})"));
    CHECK(tm.alphabet().format(tm.apply(Word{0}, 2)) == "abba");
    CHECK_THROWS_AS(substitution_from_json(Json::parse(R"({"rule": {}})")), ValidationError);

    const CodingSequence c = coding_from_json(Json::parse(R"({"coding": [["a", 2], ["b", 3], [0, 2]]})"));
    CHECK(c.depth() == 3);
    CHECK(c.alternating());
    CHECK(c.at(2).n == 3);
    CHECK_FALSE(coding_from_json(Json::parse(R"({"coding": [[0, 2], [0, 2]]})")).alternating());

    const SFunction s = sfunction_from_json(Json::parse(R"({"type": "constant-length", "ell": 2, "h": 1})"));
    CHECK(s(2) == 2);
    const SFunction od = sfunction_from_json(Json::parse(R"({"type": "odometer", "coding": [[0, 2], [1, 2], [0, 3]]})"));
    CHECK(od(8) == 4);
    CHECK(od(9) == 3);
    CHECK_THROWS_AS(sfunction_from_json(Json::parse(R"({"type": "nope"})")), ValidationError);

    const TrigPolyTuple f = trig_tuple_from_json(
        Json::parse(R"({"p": 2, "lambda": 5, "components": [[{"m": 1, "re": 1, "im": 0}], [{"m": -1, "re": 1, "im": 0}, {"m": 0, "re": 0.5}]]})"));
    CHECK(f.p() == 2);
    CHECK(f.lambda == 5.0);
    CHECK(eval_sampling(f, 0.0, 1) == doctest::Approx(5.0 * 2.5));
    CHECK_THROWS_AS(trig_tuple_from_json(Json::parse(R"({"p": 3, "components": [[{"m": 1, "re": 1}]]})")), ValidationError);

    const IntervalUnion u = intervals_from_json(Json::parse("[[0, 1], [2, 3]]"));
    CHECK(u.measure() == 2.0);
    CHECK(to_json(u) == Json::parse("[[0.0, 1.0], [2.0, 3.0]]"));
  }

  TEST_CASE("malformed files") {
    const std::string path = "prodspec_io_bad.json";
    {
      std::ofstream f(path);
      f << "{ not json";
    }
    CHECK_THROWS_AS(read_json_file(path), ValidationError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("/nonexistent/prodspec.json"), ValidationError);
  }
}
