#include <doctest.h>

#include <cmath>
#include <random>

#include "cld/errors.hpp"
#include "cld/spectral.hpp"

using namespace cld;

namespace {

GradedElement random_element(std::mt19937_64& g, int r, int terms) {
  std::uniform_int_distribution<int> u(-r, r);
  std::normal_distribution<double> n;
  GradedElement a;
  for (int k = 0; k < terms; ++k) a.add({u(g), u(g)}, {n(g), n(g)});
  a.cutoff = r;
  return a;
}

}  // namespace

TEST_CASE("represent: a monomial shifts basis vectors on both spinor slots") {
  const Truncation tr = build_truncation(3);
  const cplx c(0.5, -2.0);
  const SparseOp T = represent(GradedElement::monomial({1, -2}, c), tr.hilb).mat;
  const TruncatedHilbert& h = tr.hilb;
  for (int s = 0; s < 2; ++s) {
    CHECK(T.coeff(h.index({1, 0}, s), h.index({0, 2}, s)) == c);
    CHECK(T.coeff(h.index({-2, 1}, s), h.index({-3, 3}, s)) == c);
  }
  // exactly one entry per column whose target stays inside the window
  long expected = 0;
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      if (h.contains({m + 1, n - 2})) expected += 2;
  CHECK(T.nonZeros() == expected);
}

TEST_CASE("deform_operator multiplies entries by the symmetric phase") {
  const Truncation tr = build_truncation(4);
  std::mt19937_64 g(1);
  const TruncatedOperator T = represent(random_element(g, 2, 6), tr.hilb);
  const double theta = 0.3;
  const SparseOp D = deform_operator(T, theta).mat;
  const TruncatedHilbert& h = tr.hilb;
  double worst = 0;
  for (Eigen::Index col = 0; col < T.mat.outerSize(); ++col)
    for (SparseOp::InnerIterator it(T.mat, col); it; ++it) {
      const Weight r = h.weight(it.row()), c = h.weight(col), w = r - c;
      const double ang = pi * theta * (double(w.m) * c.n - double(c.m) * w.n);
      worst = std::max(worst, std::abs(D.coeff(it.row(), col) - it.value() * std::polar(1.0, ang)));
    }
  CHECK(worst < 1e-15);
}

TEST_CASE("Dirac operator: D^2 = |D|^2 and F^2 = 1") {
  const Truncation tr = build_truncation(5);
  const SparseOp D2 = tr.dirac.D * tr.dirac.D;
  double worst = 0;
  for (Eigen::Index k = 0; k < D2.rows(); ++k) {
    const double a = tr.dirac.absD[k];
    worst = std::max(worst, std::abs(D2.coeff(k, k) - a * a));
  }
  CHECK(worst < 1e-10);
  const SparseOp F2 = tr.dirac.F * tr.dirac.F;
  CHECK(max_abs_entry(SparseOp(F2 - identity_op(tr.hilb))) < 1e-14);
  CHECK(tr.dirac.kernel.size() == 2);
}

TEST_CASE("D is odd: it anticommutes with the grading") {
  const Truncation tr = build_truncation(4);
  const Eigen::VectorXcd gamma = tr.dirac.gamma.cast<cplx>();
  SparseOp G(gamma.size(), gamma.size());
  for (Eigen::Index k = 0; k < gamma.size(); ++k) G.insert(k, k) = gamma[k];
  CHECK(max_abs_entry(SparseOp(G * tr.dirac.D + tr.dirac.D * G)) == 0.0);
}

TEST_CASE("operator norm of a monomial is the modulus of its coefficient") {
  const Truncation tr = build_truncation(6);
  const SparseOp T = represent(GradedElement::monomial({2, 1}, {3.0, 4.0}), tr.hilb).mat;
  CHECK(operator_norm(T) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("zeta_partial: diagonal oracle and deformation invariance") {
  const Truncation tr = build_truncation(3);
  const TruncatedOperator I = represent(GradedElement::unit(), tr.hilb);
  // sum over nonzero weights of 2 |2 pi k|^{-s}
  cplx oracle{};
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n)
      if (m || n) oracle += 2.0 * std::pow(2.0 * pi * std::hypot(m, n), -3.0);
  CHECK(std::abs(zeta_partial(I, 3.0, tr.dirac) - oracle) < 1e-14);
  std::mt19937_64 g(6);
  const TruncatedOperator T = represent(random_element(g, 3, 8), tr.hilb);
  CHECK(zeta_partial(deform_operator(T, 0.41), {4.0, 1.0}, tr.dirac) ==
        zeta_partial(T, {4.0, 1.0}, tr.dirac));
}

TEST_CASE("torus unitaries implement the rotation") {
  const Truncation tr = build_truncation(6);
  std::mt19937_64 g(2);
  const GradedElement a = random_element(g, 2, 5);
  const Eigen::VectorXcd U = torus_unitary(tr.hilb, 0.3, 0.8);
  const SparseOp lhs = conjugate_by_diagonal(represent(a, tr.hilb).mat, U);
  const SparseOp rhs = represent(rotate(a, 0.3, 0.8), tr.hilb).mat;
  CHECK(max_abs_entry(SparseOp(lhs - rhs)) < 1e-13);
}

TEST_CASE("decay: a single weight sits exactly on the bound") {
  const Truncation tr = build_truncation(10);
  GradedElement a = GradedElement::monomial({2, 1}, 1.5);
  a.cutoff = 2;
  const DecayReport d = verify_decay(represent(a, tr.hilb), 4);
  CHECK(d.components == 1);
  CHECK(d.worst_ratio_sq == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.bound_holds);
}

TEST_CASE("invalid truncation is rejected") {
  CHECK_THROWS_AS(build_truncation(0), Error);
}
