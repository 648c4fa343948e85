#include <catch2/catch_amalgamated.hpp>
#include <qfound/report.hpp>

#include <cmath>
#include <stdexcept>

using namespace qfound;

TEST_CASE("format_value pins the textual form of key values", "[report]") {
  REQUIRE(format_value(-1.0) == "-1");
  REQUIRE(format_value(0.0) == "0");
  REQUIRE(format_value(0.5) == "0.5");
  REQUIRE(format_value(1.0 / 3.0) == "0.33333333333333331");
  REQUIRE(format_value(-2.8284271247461903) == "-2.8284271247461903");
  // reduced precision for display
  REQUIRE(format_value(1.0 / 3.0, 3) == "0.333");
  // out-of-range digit requests clamp instead of failing
  REQUIRE(format_value(0.5, 0) == "0.5");
  REQUIRE(format_value(1.0 / 3.0, 99) == "0.33333333333333331");
}

TEST_CASE("seventeen digits round-trip any double", "[report]") {
  for (double v : {0.1, -1.0 / 7.0, 2.0 * std::sqrt(2.0), 1e-15, 123456.789}) {
    REQUIRE(std::stod(format_value(v)) == v);
  }
}

TEST_CASE("add validates and add_check folds", "[report]") {
  command_result r{"demo"};
  REQUIRE(r.pass);
  r.add("x", 1.5, "Eq 1.1");
  REQUIRE_THROWS_AS(r.add("bad", std::nan(""), "Eq 1.2"), std::invalid_argument);
  r.add_check("ok", true, "Eq 1.3");
  REQUIRE(r.pass);
  r.add_check("not_ok", false, "Eq 1.4");
  REQUIRE_FALSE(r.pass);
  REQUIRE(r.rows.size() == 3);
  REQUIRE(r.rows[1].value == 1.0);
  REQUIRE(r.rows[2].value == 0.0);
  // one failed check keeps the flag down
  r.add_check("ok_again", true, "Eq 1.5");
  REQUIRE_FALSE(r.pass);
}

TEST_CASE("csv emission", "[report]") {
  command_result r{"demo"};
  r.add("alpha", -1.0, "Eq 4.11");
  r.add("beta", 0.5, "Sec 4");
  const std::string expected =
      "name,value,paper_anchor\n"
      "alpha,-1,Eq 4.11\n"
      "beta,0.5,Sec 4\n";
  REQUIRE(emit_csv(r) == expected);
}

TEST_CASE("table emission", "[report]") {
  command_result r{"demo"};
  r.add("alpha", -1.0, "Eq 4.11");
  r.add("longer_name", 0.25, "Sec 4");
  const std::string expected =
      "# demo\n"
      "name         value  anchor\n"
      "alpha        -1     Eq 4.11\n"
      "longer_name  0.25   Sec 4\n"
      "pass\n";
  REQUIRE(emit_table(r) == expected);

  r.add_check("failing", false, "Eq 1.1");
  const std::string t = emit_table(r);
  REQUIRE(t.find("FAIL\n") != std::string::npos);
  REQUIRE(t.find("pass\n") == std::string::npos);

  // display digits shorten table values without touching the csv form
  command_result p{"demo"};
  p.add("third", 1.0 / 3.0, "Eq 1.2");
  REQUIRE(emit_table(p, 3).find("0.33333333333333331") == std::string::npos);
  REQUIRE(emit_table(p, 3).find("0.333") != std::string::npos);
  REQUIRE(emit_csv(p).find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("json round-trip", "[report]") {
  command_result r{"demo"};
  r.add("alpha", -2.8284271247461903, "Eq 3.7");
  r.add("beta", 1.0 / 3.0, "Eq 3.1");
  r.add_check("gamma", false, "Sec 4");
  const auto back = parse_result_json(emit_json(r));
  REQUIRE(back == r);
  REQUIRE_FALSE(back.pass);

  // field order is stable for byte-identical reruns
  const std::string j = emit_json(r);
  REQUIRE(j.find("\"command\"") < j.find("\"rows\""));
  REQUIRE(j.find("\"rows\"") < j.find("\"pass\""));
  REQUIRE(j.find("\"name\"") < j.find("\"value\""));
  REQUIRE(j.find("\"value\"") < j.find("\"paper_anchor\""));
}
