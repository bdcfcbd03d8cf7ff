// Talks to the shared library only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "cldeform.h"

namespace {

std::string take(char* s) {
  std::string out(s);
  cld_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("product of u and v through the C API") {
  cld_element *u = nullptr, *v = nullptr, *uv = nullptr;
  REQUIRE(cld_element_monomial(1, 0, 1, 0, &u) == CLD_OK);
  REQUIRE(cld_element_monomial(0, 1, 1, 0, &v) == CLD_OK);
  REQUIRE(cld_product(u, v, 0.25, &uv) == CLD_OK);
  cld_element* expect = nullptr;
  const double c = std::sqrt(0.5);
  REQUIRE(cld_element_monomial(1, 1, c, c, &expect) == CLD_OK);
  double d = 1;
  REQUIRE(cld_distance(uv, expect, &d) == CLD_OK);
  CHECK(d < 1e-15);
  cld_element_free(u);
  cld_element_free(v);
  cld_element_free(uv);
  cld_element_free(expect);
}

TEST_CASE("JSON round trip and error reporting") {
  const char* text = R"({"cutoff": 2, "terms": [{"m": 1, "n": -2, "re": 0.5, "im": 1.5}]})";
  cld_element* a = nullptr;
  REQUIRE(cld_element_from_json(text, &a) == CLD_OK);
  CHECK(cld_element_dim(a) == 1);
  char* s = nullptr;
  REQUIRE(cld_element_to_json(a, &s) == CLD_OK);
  cld_element* b = nullptr;
  REQUIRE(cld_element_from_json(take(s).c_str(), &b) == CLD_OK);
  double d = 1;
  REQUIRE(cld_distance(a, b, &d) == CLD_OK);
  CHECK(d == 0.0);
  double re = 0, im = 0;
  REQUIRE(cld_trace(a, &re, &im) == CLD_OK);
  CHECK(re == 0.0);
  cld_element_free(a);
  cld_element_free(b);

  cld_element* bad = nullptr;
  CHECK(cld_element_from_json("{oops", &bad) == CLD_PARSE_ERROR);
  CHECK(bad == nullptr);
  CHECK(std::strlen(cld_last_error()) > 0);
  CHECK(cld_product(nullptr, nullptr, 0.1, &bad) == CLD_INVALID_ARGUMENT);
  CHECK(cld_element_read_file("/nonexistent/x.json", &bad) == CLD_IO_ERROR);
}

TEST_CASE("tau pairing of a Powers-Rieffel projection") {
  cld_element* p = nullptr;
  REQUIRE(cld_powers_rieffel(0.3, 48, &p) == CLD_OK);
  int ok = 0;
  double idem = 1, adj = 1;
  REQUIRE(cld_verify_projection(p, 0.3, 1e-6, &idem, &adj, &ok) == CLD_OK);
  CHECK(ok == 1);
  cld_pairing_context* ctx = nullptr;
  REQUIRE(cld_pairing_context_new(nullptr, &ctx) == CLD_OK);
  char* rep = nullptr;
  REQUIRE(cld_pair(ctx, p, "tau", 0.3, &rep) == CLD_OK);
  const std::string r = take(rep);
  CHECK(r.find("\"cocycle\"") != std::string::npos);
  CHECK(cld_pair(ctx, p, "i7:tau", 0.3, &rep) == CLD_PARSE_ERROR);
  // wrong theta: not a projection there
  CHECK(cld_pair(ctx, p, "tau", 0.6, &rep) == CLD_NOT_PROJECTION);
  cld_pairing_context_free(ctx);
  cld_element_free(p);
}

TEST_CASE("bad pairing options are rejected") {
  cld_pairing_options o;
  cld_pairing_options_default(&o);
  o.margin = o.cutoff;
  cld_pairing_context* ctx = nullptr;
  CHECK(cld_pairing_context_new(&o, &ctx) == CLD_INVALID_ARGUMENT);
  CHECK(ctx == nullptr);
}

TEST_CASE("suite through the C API: smoke echo and a small run") {
  char* rep = nullptr;
  int all = 0;
  REQUIRE(cld_run_suite(R"({"smoke": true})", &rep, &all) == CLD_OK);
  const std::string smoke = take(rep);
  CHECK(smoke.find("\"checks\": []") != std::string::npos);
  CHECK(all == 1);
  REQUIRE(cld_run_suite(R"({"only": ["criterion.1", "criterion.2"]})", &rep, &all) == CLD_OK);
  cld_string_free(rep);
  CHECK(all == 1);
  CHECK(cld_run_suite(R"({"only": ["no.such.check"]})", &rep, &all) == CLD_INVALID_ARGUMENT);
  CHECK(cld_run_suite(R"({"tolerances": {"algebra": -1}})", &rep, &all) == CLD_INVALID_ARGUMENT);
}
