#include <doctest.h>

#include <cmath>
#include <random>

#include "cld/cocycles.hpp"
#include "cld/errors.hpp"
#include "cld/projections.hpp"

using namespace cld;

namespace {

GradedElement mono(int m, int n, cplx c = 1.0) {
  GradedElement a = GradedElement::monomial({m, n}, c);
  a.cutoff = std::max(std::abs(m), std::abs(n));
  return a;
}

cplx e(double x) { return std::polar(1.0, 2 * pi * x); }

}  // namespace

TEST_CASE("cochain specs parse into insertion lists") {
  const CyclicCochain c = parse_cochain("i1:i2:tau");
  CHECK(c.base == CochainBase::trace);
  CHECK(c.insertions == std::vector<int>{2, 1});
  CHECK(c.degree() == 2);
  const CyclicCochain d = parse_cochain("i2 ch2");
  CHECK(d.base == CochainBase::chern);
  CHECK(d.degree() == 3);
  CHECK_THROWS_AS(parse_cochain("i3:tau"), Error);
  CHECK_THROWS_AS(parse_cochain("ch5"), Error);
  CHECK_THROWS_AS(parse_cochain(""), Error);
}

TEST_CASE("tau picks the weight-zero coefficient") {
  GradedElement a = mono(0, 0, {2.0, 1.0}) + mono(1, -1, 7.0);
  CHECK(trace_tau(a) == cplx(2.0, 1.0));
}

TEST_CASE("i1 i2 tau on monomials: hand-computed value") {
  // a0 = u^*, a1 = u, a2 = v v^* = 1 style triples with weights summing to zero.
  // For weights w0, w1, w2 with w0 + w1 + w2 = 0 the closed form is
  // (2 pi i)^2 (m1 n2 - n1 m2) * phase(w0, w1) * phase(w0 + w1, w2).
  const double theta = 0.3;
  const CyclicCochain ii = contract(contract(trace_cochain(theta), 2), 1);
  const Weight w1{1, 2}, w2{-3, 1}, w0{2, -3};
  const cplx ph = phase_factor(theta, w0, w1) * phase_factor(theta, w0 + w1, w2);
  const cplx expect = std::pow(cplx(0, 2 * pi), 2) * double(w1.m * w2.n - w1.n * w2.m) * ph;
  const cplx got = evaluate(ii, std::vector<GradedElement>{mono(w0.m, w0.n), mono(w1.m, w1.n),
                                                           mono(w2.m, w2.n)});
  CHECK(std::abs(got - expect) < 1e-10);
  // total weight nonzero: vanishes
  CHECK(std::abs(evaluate(ii, std::vector<GradedElement>{mono(1, 0), mono(1, 0), mono(0, 1)})) ==
        0.0);
}

TEST_CASE("deformed_cocycle_eval on u, v: the tau pairing is twisted by e(theta)") {
  // tau(u *_theta u^*) is 1 for every theta
  const CyclicCochain tau = trace_cochain();
  for (double t : {0.0, 0.2, 0.7})
    CHECK(std::abs(deformed_cocycle_eval(tau, t, std::vector<GradedElement>{deformed_product(
                                                     mono(1, 0), mono(-1, 0), t)}) -
                   1.0) < 1e-14);
  CHECK(std::abs(e(0.25) - cplx(0, 1)) < 1e-15);
}

TEST_CASE("Hochschild coboundary of tau vanishes") {
  std::mt19937_64 g(3);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 10; ++k) {
    const double t = 0.1 * k;
    CyclicCochain tau = trace_cochain(t);
    GradedElement a, b;
    for (int j = 0; j < 5; ++j) {
      a.add({j - 2, 1 - j}, {nd(g), nd(g)});
      b.add({2 - j, j - 1}, {nd(g), nd(g)});
    }
    const std::vector<MatrixGradedElement> args{MatrixGradedElement::scalar(a),
                                                MatrixGradedElement::scalar(b)};
    CHECK(std::abs(hochschild_coboundary(tau, args)) < 1e-12);
  }
}

TEST_CASE("radial extrapolation removes an exact 1/R^2 tail") {
  PairingOptions opt;
  opt.N = 30;
  opt.margin = 4;
  std::vector<cplx> sums(31);
  for (int R = 1; R <= 30; ++R) sums[static_cast<std::size_t>(R)] = 2.5 - 4.5 / (double(R) * R);
  const RadialEstimate est = radial_estimate(sums, opt);
  CHECK(est.radius == 26);
  CHECK(est.value.real() == doctest::Approx(2.5).epsilon(1e-12));
  opt.extrapolate = false;
  CHECK(radial_estimate(sums, opt).value.real() == doctest::Approx(2.5 - 4.5 / 676.0));
}

TEST_CASE("tau pairing with the Powers-Rieffel projection equals theta") {
  // the bump integrates to theta exactly since psi(s) + psi(1 - s) = 1
  PairingOptions po;
  for (double t : {0.2, 0.5, 0.8}) {
    const MatrixGradedElement p = powers_rieffel(default_profile(t, 64));
    const PairingReport r = k0_pairing(trace_cochain(), p, t, po);
    CHECK(r.value.real() == doctest::Approx(t).epsilon(1e-9));
    CHECK(std::abs(r.value.imag()) < 1e-12);
  }
}

TEST_CASE("pairings refuse non-projections") {
  PairingOptions po;
  MatrixGradedElement x = MatrixGradedElement::scalar(0.5 * GradedElement::unit());
  CHECK_THROWS_AS(k0_pairing(trace_cochain(), x, 0.3, po), Error);
}

TEST_CASE("Bott projection: rank one, first Chern number one in absolute value") {
  const MatrixGradedElement b = bott_projection(16);
  CHECK(std::abs(matrix_trace_tau(b) - 1.0) < 1e-9);
  PairingOptions po;
  const PairingReport r = k0_pairing(contract(contract(trace_cochain(), 2), 1), b, 0.0, po);
  CHECK(std::abs(std::abs(r.normalized.real()) - 1.0) < 1e-4);
  CHECK(std::abs(r.normalized.imag()) < 1e-8);
}

TEST_CASE("index oracle: trivial projection has index zero, Bott has index one") {
  IndexOptions io;
  io.N = 8;
  const IndexReport one = fredholm_index_oracle(MatrixGradedElement::identity(1), 0.3, io);
  CHECK(one.index == 0);
  io.N = 10;
  const IndexReport b = fredholm_index_oracle(bott_projection(16), 0.0, io);
  CHECK(std::abs(b.index) == 1);
  CHECK(b.reliable);
}
