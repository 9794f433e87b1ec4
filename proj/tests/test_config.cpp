#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

#include "kpp/config.hpp"
#include "kpp/errors.hpp"

using namespace kpp;

TEST_CASE("parse_config handles comments, blanks, and whitespace") {
  const RunConfig c = parse_config(
      "# header comment\n"
      "alpha = 1.5\n"
      "\n"
      "flow= cosine:amplitude=6 # trailing comment\n"
      "  n =128  \n");
  CHECK(c.entries.size() == 3);
  CHECK(c.entries.at("alpha") == "1.5");
  CHECK(c.entries.at("flow") == "cosine:amplitude=6");
  CHECK(c.entries.at("n") == "128");
}

TEST_CASE("parse_config reports the offending line") {
  try {
    parse_config("alpha = 1\nnot a pair\n");
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("= value\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("a = 1\na = 2\n"), ValidationError);
}

TEST_CASE("emit/parse round trip") {
  RunConfig c;
  c.entries = {{"alpha", "1"}, {"flow", "cosine:amplitude=6:mode=2"}, {"n", "256"}};
  CHECK(parse_config(emit_config(c)) == c);
  CHECK(parse_config(emit_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("check_known_keys names the stray key") {
  RunConfig c;
  c.entries = {{"alpha", "1"}, {"bogus", "2"}};
  try {
    check_known_keys(c, {"alpha", "beta"});
    FAIL("expected throw");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK_NOTHROW(check_known_keys(c, {"alpha", "bogus"}));
}

TEST_CASE("load_config_file") {
  const std::string path = "/tmp/kpp_config_test.cfg";
  {
    std::ofstream out(path);
    out << "alpha = 2\nn = 64\n";
  }
  const RunConfig c = load_config_file(path);
  CHECK(c.entries.at("alpha") == "2");
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config_file("/tmp/kpp_missing_config.cfg"), ValidationError);
}

TEST_CASE("parse_flow_spec builds the advertised profiles") {
  const CrossSection cs = make_grid(BoundaryKind::CirclePeriodic, 1.0, 64);
  CHECK(flow_max(parse_flow_spec("zero", cs)) == 0.0);

  const ShearFlow cosine = parse_flow_spec("cosine:amplitude=6", cs);
  CHECK(flow_max(cosine) == doctest::Approx(6.0).epsilon(1e-14));
  const ShearFlow mode2 = parse_flow_spec("cosine:amplitude=2:mode=2", cs);
  CHECK(mode2.mode == 2);

  const std::string path = "/tmp/kpp_pwl_test.csv";
  {
    std::ofstream out(path);
    out << "0 -1\n0.5 2\n1 -1\n";
  }
  const ShearFlow pwl = parse_flow_spec("pwl:file=" + path, cs);
  CHECK(flow_max(pwl) == doctest::Approx(1.5).epsilon(1e-12));
  std::remove(path.c_str());

  CHECK_THROWS_AS(parse_flow_spec("vortex", cs), ValidationError);
  CHECK_THROWS_AS(parse_flow_spec("cosine:amplitude=abc", cs), ValidationError);
  CHECK_THROWS_AS(parse_flow_spec("cosine", cs), ValidationError);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.25) == "-2.25");
  for (double v : {0.1, 1.0 / 3.0, 6.123233995736766e-17, 1e300}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}
