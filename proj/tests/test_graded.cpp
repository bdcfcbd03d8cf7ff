#include <doctest.h>

#include <cmath>
#include <random>

#include "cld/errors.hpp"
#include "cld/graded.hpp"
#include "cld/io.hpp"

using namespace cld;

namespace {

// Brute-force convolution with the phase written out, independent of deformed_product.
GradedElement naive_product(const GradedElement& a, const GradedElement& b, double theta) {
  GradedElement out;
  for (const auto& [w, c] : a.terms)
    for (const auto& [v, d] : b.terms) {
      const double ang = pi * theta * (double(w.m) * v.n - double(v.m) * w.n);
      out.add(w + v, c * d * cplx(std::cos(ang), std::sin(ang)));
    }
  return out;
}

GradedElement random_element(std::mt19937_64& g, int r, int terms) {
  std::uniform_int_distribution<int> u(-r, r);
  std::normal_distribution<double> n;
  GradedElement a;
  for (int k = 0; k < terms; ++k) a.add({u(g), u(g)}, {n(g), n(g)});
  a.cutoff = r;
  return a;
}

}  // namespace

TEST_CASE("u v at theta = 1/4 is a single term at (1,1) with phase e^{i pi/4}") {
  const GradedElement u = GradedElement::monomial({1, 0}), v = GradedElement::monomial({0, 1});
  const GradedElement uv = deformed_product(u, v, 0.25);
  REQUIRE(uv.terms.size() == 1);
  const cplx c = uv.coeff({1, 1});
  CHECK(std::abs(c - std::polar(1.0, pi / 4)) < 1e-15);
}

TEST_CASE("product matches the brute-force convolution") {
  std::mt19937_64 g(11);
  for (int k = 0; k < 50; ++k) {
    const double theta = std::uniform_real_distribution<double>(-1, 1)(g);
    const GradedElement a = random_element(g, 4, 8), b = random_element(g, 4, 8);
    CHECK(distance(deformed_product(a, b, theta), naive_product(a, b, theta)) < 1e-13);
  }
}

TEST_CASE("theta = 0 is commutative and theta = 1 gives back the commutation sign") {
  std::mt19937_64 g(5);
  const GradedElement a = random_element(g, 3, 6), b = random_element(g, 3, 6);
  CHECK(distance(deformed_product(a, b, 0.0), deformed_product(b, a, 0.0)) < 1e-14);
  // e^{pi i (m n' - m' n)} = (-1)^{m n' - m' n}
  const GradedElement u = GradedElement::monomial({1, 0}), v = GradedElement::monomial({0, 1});
  CHECK(std::abs(deformed_product(u, v, 1.0).coeff({1, 1}) + 1.0) < 1e-15);
}

TEST_CASE("star is conjugate-linear, involutive, reflects weights") {
  GradedElement a = GradedElement::monomial({2, -1}, {1.0, 2.0});
  const GradedElement s = star(a);
  CHECK(s.coeff({-2, 1}) == cplx(1.0, -2.0));
  CHECK(distance(star(s), a) == 0.0);
}

TEST_CASE("to_cl intertwines the two presentations") {
  std::mt19937_64 g(3);
  for (int k = 0; k < 20; ++k) {
    const double theta = std::uniform_real_distribution<double>(0, 1)(g);
    const GradedElement a = random_element(g, 3, 5), b = random_element(g, 3, 5);
    CHECK(distance(to_cl(deformed_product(a, b, theta), theta),
                   cl_product(to_cl(a, theta), to_cl(b, theta), theta)) < 1e-13);
    CHECK(distance(from_cl(to_cl(a, theta), theta), a) < 1e-15);
  }
}

TEST_CASE("derivations are derivations of the deformed product") {
  std::mt19937_64 g(8);
  const double theta = 0.37;
  const GradedElement a = random_element(g, 3, 5), b = random_element(g, 3, 5);
  for (int j : {1, 2}) {
    const GradedElement lhs = derive(deformed_product(a, b, theta), j);
    const GradedElement rhs =
        deformed_product(derive(a, j), b, theta) + deformed_product(a, derive(b, j), theta);
    CHECK(distance(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("rotation is an automorphism") {
  std::mt19937_64 g(9);
  const double theta = 0.61, t1 = 0.2, t2 = 0.73;
  const GradedElement a = random_element(g, 3, 5), b = random_element(g, 3, 5);
  CHECK(distance(rotate(deformed_product(a, b, theta), t1, t2),
                 deformed_product(rotate(a, t1, t2), rotate(b, t1, t2), theta)) < 1e-13);
}

TEST_CASE("quadrature over the rotation grid recovers each component") {
  std::mt19937_64 g(4);
  const GradedElement a = random_element(g, 3, 10);
  const RotationGrid grid = sample_rotations(a, 8);
  for (const auto& [w, c] : a.terms) {
    const QuadratureResult q = component_by_integration(grid, w);
    CHECK_FALSE(q.aliased);
    CHECK(std::abs(q.value.coeff(w) - c) < 1e-13);
  }
  // grid of 4 cannot tell weights 3 and -1 apart
  CHECK(component_by_integration(sample_rotations(a, 4), {3, 0}).aliased);
}

TEST_CASE("Fejer coefficients: triangle weights") {
  // standard: (1 - |m|/(k+1)) (1 - |n|/(k+1)) inside the box
  CHECK(fejer_coefficient(3, {0, 0}) == doctest::Approx(1.0));
  CHECK(fejer_coefficient(3, {1, 2}) == doctest::Approx(0.75 * 0.5));
  CHECK(fejer_coefficient(3, {4, 0}) == 0.0);
}

TEST_CASE("JSON round trip is the identity") {
  std::mt19937_64 g(2);
  const GradedElement a = random_element(g, 5, 12);
  const GradedElement b = element_from_json(element_to_json(a));
  CHECK(distance(a, b) == 0.0);
  CHECK(b.cutoff == a.cutoff);
  MatrixGradedElement m(2);
  m.at(0, 1) = a;
  m.at(1, 0) = star(a);
  CHECK(distance(matrix_from_json(matrix_to_json(m)), m) == 0.0);
}

TEST_CASE("malformed JSON reports a parse error") {
  CHECK_THROWS_AS(element_from_json("{\"terms\": 3}"), Error);
  try {
    element_from_json("not json");
  } catch (const Error& e) {
    CHECK(e.status() == Status::parse_error);
  }
}

TEST_CASE("products beyond the cap are dropped and counted") {
  const GradedElement u = GradedElement::monomial({3, 0});
  ProductStats st;
  const GradedElement p = deformed_product(u, u, 0.1, 4, &st);
  CHECK(p.empty());
  CHECK(st.dropped_terms == 1);
  CHECK(st.dropped_mass == doctest::Approx(1.0));
}
