#include <doctest.h>

#include <string>

#include "cld/errors.hpp"
#include "cld/suite.hpp"

using namespace cld;

TEST_CASE("module invariants hold") {
  SuiteConfig c;
  for (const auto& id : suite_check_ids())
    if (id.rfind("criterion.", 0) != 0) c.only.push_back(id);
  const SuiteReport r = run_suite(c);
  for (const auto& k : r.checks) {
    INFO(k.id << ": " << k.detail);
    CHECK(k.pass);
  }
  CHECK(r.failed == 0);
}

TEST_CASE("a broken product phase is caught by the associativity check") {
  SuiteConfig c;
  c.inject_phase_bug = true;
  c.only = {"criterion.1", "criterion.2"};
  const SuiteReport r = run_suite(c);
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].pass);  // the relation alone cannot see it
  CHECK_FALSE(r.checks[1].pass);
  CHECK(r.checks[1].measured > 1e-3);
}

TEST_CASE("smoke mode echoes the configuration only") {
  SuiteConfig c;
  c.smoke = true;
  c.cutoff = 12;
  const SuiteReport r = run_suite(c);
  CHECK(r.checks.empty());
  const SuiteConfig back = config_from_json(config_to_json(r.config));
  CHECK(back.cutoff == 12);
}

TEST_CASE("config JSON: missing keys keep defaults, bad input is a parse error") {
  const SuiteConfig c = config_from_json(R"({"samples": 5, "tolerances": {"trace": 1e-3}})");
  CHECK(c.samples == 5);
  CHECK(c.tol.trace == 1e-3);
  CHECK(c.tol.algebra == SuiteConfig{}.tol.algebra);
  CHECK(c.index_cutoff == 24);
  CHECK_THROWS_AS(config_from_json("[1, 2]"), Error);
  CHECK_THROWS_AS(config_from_json(R"({"samples": "many"})"), Error);
}

TEST_CASE("same seed, same report") {
  SuiteConfig c;
  c.only = {"criterion.2", "cocycles.leibniz"};
  const SuiteReport a = run_suite(c), b = run_suite(c);
  for (std::size_t k = 0; k < a.checks.size(); ++k) CHECK(a.checks[k].measured == b.checks[k].measured);
}
