#include <doctest.h>

#include <cmath>
#include <random>

#include "cld/crossed.hpp"

using namespace cld;

namespace {

CrossedElement generator(int n, int l, Weight w, cplx c = 1.0, int K = 8) {
  CrossedElement x;
  x.K = x.L = K;
  x.add(n, l, GradedElement::monomial(w, c));
  return x;
}

}  // namespace

TEST_CASE("crossed product of generators: frequency matching and the w-phase") {
  // (z^l a)(w^{n'} z^{l'} b) is nonzero only when l + n' = l' + p_a
  const double theta = 0.3;
  const CrossedElement x = generator(0, 1, {2, 1}), y = generator(1, 0, {0, 0});
  // l + n' = 2, l' + p_a = 2: survives with phase e^{-2 pi i theta q_a n'}
  const CrossedElement xy = crossed_multiply(x, y, theta);
  REQUIRE(xy.terms.size() == 1);
  const auto& [key, val] = *xy.terms.begin();
  CHECK(key == std::make_pair(1, 2));
  CHECK(std::abs(val.coeff({2, 1}) - std::polar(1.0, -2 * pi * theta * 1 * 1)) < 1e-15);
  // mismatched frequencies give zero
  CHECK(crossed_multiply(generator(0, 0, {2, 1}), generator(0, 0, {0, 0}), theta).terms.empty());
}

TEST_CASE("crossed product is associative") {
  std::mt19937_64 g(5);
  std::uniform_int_distribution<int> s(-2, 2);
  std::normal_distribution<double> nd;
  auto rnd = [&] {
    CrossedElement x;
    x.K = x.L = 12;
    for (int k = 0; k < 4; ++k) x.add(s(g), s(g), GradedElement::monomial({s(g), s(g)}, {nd(g), nd(g)}));
    return x;
  };
  for (int k = 0; k < 20; ++k) {
    const CrossedElement a = rnd(), b = rnd(), c = rnd();
    const double t = 0.37;
    CHECK(distance(crossed_multiply(crossed_multiply(a, b, t), c, t),
                   crossed_multiply(a, crossed_multiply(b, c, t), t)) < 1e-12);
  }
}

TEST_CASE("kernel_map of a generator: one entry at (n - l, p - l)") {
  const double theta = 1.0 / 3.0;
  const MatrixOverDeformed m = kernel_map(2, -1, GradedElement::monomial({1, 2}, 3.0), theta, 8);
  REQUIRE(m.entries.size() == 1);
  const auto& [rc, a] = *m.entries.begin();
  CHECK(rc == std::make_pair(3, 2));
  CHECK(std::abs(a.coeff({1, 2}) - 3.0 * std::polar(1.0, 2 * pi * theta * (-1) * 2)) < 1e-14);
}

TEST_CASE("kernel_map is multiplicative and inverse_kernel_map undoes it") {
  std::mt19937_64 g(9);
  std::uniform_int_distribution<int> s(-2, 2);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 30; ++k) {
    const double t = 0.7;
    CrossedElement x, y;
    x.K = x.L = y.K = y.L = 8;
    for (int j = 0; j < 3; ++j) {
      x.add(s(g), s(g), GradedElement::monomial({s(g), s(g)}, {nd(g), nd(g)}));
      y.add(s(g), s(g), GradedElement::monomial({s(g), s(g)}, {nd(g), nd(g)}));
    }
    const MatrixOverDeformed lhs = kernel_map(crossed_multiply(x, y, t), t, 32);
    const MatrixOverDeformed rhs = matrix_multiply(kernel_map(x, t, 32), kernel_map(y, t, 32), t);
    CHECK(distance(lhs, rhs) < 1e-12);
    CHECK(distance(inverse_kernel_map(kernel_map(x, t, 32), t, 8, 8), x) < 1e-14);
  }
}

TEST_CASE("unit of the crossed product") {
  const CrossedElement x = generator(1, 0, {1, -1}, 2.0, 8);
  const CrossedElement one = crossed_unit(8, 8);
  CHECK(distance(crossed_multiply(one, x, 0.4), x) < 1e-15);
  CHECK(distance(crossed_multiply(x, one, 0.4), x) < 1e-15);
}

TEST_CASE("U0 conjugation lands in column p - l") {
  for (int l : {-1, 0, 2}) {
    const U0Report r = u0_conjugation_check(1, -1, l, 0.25, 8, 3);
    CHECK(r.pass);
    CHECK(r.conjugation_defect < 1e-12);
    CHECK_FALSE(r.literal_column_agrees);
  }
}

TEST_CASE("bimodule structure and the corrected inner product") {
  const BimoduleReport r = bimodule_check(0.3, 30, 11);
  CHECK(r.pass);
  CHECK(r.left_adjointness < 1e-12);
  // the inner product without the exp(2 pi i theta k (n - n')) factor breaks adjointness
  CHECK(r.literal_inner_defect > 1e-3);
}

TEST_CASE("conjugating by the outer generator rotates by theta and lowers the frequency") {
  // w (z^l a) w^{-1} = e^{2 pi i theta q} z^{l-1} a for a of weight (p, q)
  const double theta = 0.3;
  const int K = 10;
  CrossedElement w, winv;
  w.K = w.L = winv.K = winv.L = K;
  for (int l = -K; l <= K; ++l) {
    w.add(1, l, GradedElement::unit());
    winv.add(-1, l, GradedElement::unit());
  }
  const int l = 2;
  const CrossedElement f = generator(0, l, {1, 2}, 1.0, K);
  const CrossedElement c = crossed_multiply(crossed_multiply(w, f, theta), winv, theta);
  REQUIRE(c.terms.size() == 1);
  CHECK(c.terms.begin()->first == std::make_pair(0, l - 1));
  CHECK(std::abs(c.terms.begin()->second.coeff({1, 2}) - std::polar(1.0, 2 * pi * theta * 2)) <
        1e-14);
}
