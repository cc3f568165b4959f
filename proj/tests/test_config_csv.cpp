#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsagg/config.hpp"
#include "tsagg/csv.hpp"

using namespace tsagg;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/tsagg_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
  void write(const std::string& text) const {
    std::ofstream out(path, std::ios::binary);
    out << text;
  }
};

}  // namespace

TEST_CASE("config parses pairs, comments, and sections") {
  auto cfg = KeyValueConfig::parse(
      "# header comment\n"
      "model = align1\n"
      "\n"
      "length=100\n"
      "sampler.n_iter = 500\n"
      "ratio = -2.5\n"
      "model = align2\n");  // later key wins
  CHECK(cfg.get_string("model") == "align2");
  CHECK(cfg.get_u64("length") == 100);
  CHECK(cfg.get_u64("sampler.n_iter") == 500);
  CHECK(cfg.get_double("ratio") == doctest::Approx(-2.5));
  CHECK(cfg.has("ratio"));
  CHECK(!cfg.has("missing"));
  CHECK(cfg.get_string_or("missing", "fallback") == "fallback");
  CHECK(cfg.get_double_or("missing", 1.5) == 1.5);
  CHECK(cfg.get_u64_or("missing", 7) == 7);
}

TEST_CASE("config lists") {
  auto cfg = KeyValueConfig::parse("models = align1, align2 ,align3\nns = 100,1000\n");
  CHECK(cfg.get_list("models") ==
        std::vector<std::string>{"align1", "align2", "align3"});
  CHECK(cfg.get_double_list("ns") == std::vector<double>{100.0, 1000.0});
}

TEST_CASE("config errors carry context") {
  CHECK_THROWS_WITH_AS(KeyValueConfig::parse("novalue\n"),
                       doctest::Contains("line 1"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(KeyValueConfig::parse("a=1\n = 2\n"),
                       doctest::Contains("line 2"), std::invalid_argument);

  auto cfg = KeyValueConfig::parse("x = abc\nn = -4\n");
  CHECK_THROWS_WITH_AS(cfg.get_double("x"), doctest::Contains("x"),
                       std::invalid_argument);
  CHECK_THROWS_AS(cfg.get_u64("n"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(cfg.get_string("gone"), doctest::Contains("gone"),
                       std::invalid_argument);
}

TEST_CASE("unknown keys are rejected when asked") {
  auto cfg = KeyValueConfig::parse("model = align1\ntypo_key = 3\n");
  CHECK_THROWS_WITH_AS(cfg.require_known_keys({"model", "length"}),
                       doctest::Contains("typo_key"), std::invalid_argument);
  CHECK_NOTHROW(cfg.require_known_keys({"model", "typo_key"}));
}

TEST_CASE("config loads from a file") {
  TempFile f("cfg");
  f.write("alpha = 3\n");
  auto cfg = KeyValueConfig::load(f.path);
  CHECK(cfg.get_u64("alpha") == 3);
  CHECK_THROWS_WITH_AS(KeyValueConfig::load("/tmp/definitely_missing_tsagg.cfg"),
                       doctest::Contains("cannot open"), std::invalid_argument);
}

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 1.7976931348623157e308, 0.0,
                   -0.0, 42.0, 0.16499999999999998}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(42.0) == "42");
  CHECK(format_double(-1.5) == "-1.5");
}

TEST_CASE("series CSV round-trip") {
  TempFile f("series.csv");
  TimeSeries s({0.1, -2.0, 1.0 / 3.0, 5e-17});
  write_series_csv(f.path, s);

  std::ifstream in(f.path, std::ios::binary);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(text.substr(0, 12) == "index,value\n");
  CHECK(text.find("\r") == std::string::npos);
  CHECK(text.find("1,0.1\n") != std::string::npos);  // 1-based index

  auto back = read_series_csv(f.path);
  CHECK(back.values() == s.values());
}

TEST_CASE("series CSV tolerates CRLF") {
  TempFile f("crlf.csv");
  f.write("index,value\r\n1,2.5\r\n2,-1\r\n");
  auto s = read_series_csv(f.path);
  CHECK(s.values() == std::vector<double>{2.5, -1.0});
}

TEST_CASE("series CSV rejects malformed input") {
  TempFile f("bad.csv");
  f.write("time,value\n1,2.5\n");
  CHECK_THROWS_WITH_AS(read_series_csv(f.path), doctest::Contains("header"),
                       std::invalid_argument);

  f.write("index,value\n1,not_a_number\n");
  CHECK_THROWS_WITH_AS(read_series_csv(f.path), doctest::Contains("line 2"),
                       std::invalid_argument);

  f.write("index,value\n");
  CHECK_THROWS_AS(read_series_csv(f.path), std::invalid_argument);

  CHECK_THROWS_AS(read_series_csv("/tmp/definitely_missing_tsagg.csv"),
                  std::invalid_argument);
}
