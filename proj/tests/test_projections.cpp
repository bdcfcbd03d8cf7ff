#include <doctest.h>

#include <cmath>

#include "cld/errors.hpp"
#include "cld/projections.hpp"

using namespace cld;

TEST_CASE("transition: endpoints, symmetry, flatness") {
  for (int k : {1, 2, 4}) {
    CHECK(transition(0.0, k) == 0.0);
    CHECK(transition(1.0, k) == doctest::Approx(1.0));
    for (double s : {0.1, 0.3, 0.45})
      CHECK(transition(s, k) + transition(1 - s, k) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // k = 4 is flat to order 15: psi(h) = O(h^16)
  CHECK(transition(1e-2, 4) < 1e-20);
}

TEST_CASE("profile: f^2 = g (1 - g) on the overlap and g + g(x + theta) = 1 there") {
  const BumpProfile p = default_profile(1.0 / 3.0, 64);
  for (double x = p.theta; x < p.theta + p.width; x += 0.01) {
    const double g = profile_g(p, x), f = profile_f(p, x);
    CHECK(f * f == doctest::Approx(g * (1 - g)).epsilon(1e-12));
    CHECK(profile_g(p, x - p.theta) + g == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Powers-Rieffel element is a projection") {
  for (double t : {0.25, 1.0 / 3.0, 0.7}) {
    const MatrixGradedElement p = powers_rieffel(default_profile(t, 64));
    const ProjectionReport r = verify_projection(p, t, 1e-6);
    CHECK(r.pass);
    CHECK(r.adjoint_defect < 1e-14);
  }
}

TEST_CASE("Powers-Rieffel: bad parameters") {
  BumpProfile p = default_profile(0.3, 64);
  p.width = 0.5;
  CHECK_THROWS_AS(powers_rieffel(p), Error);
  CHECK_THROWS_AS(powers_rieffel(default_profile(1.2, 64)), Error);
}

TEST_CASE("Bott element is a projection only for the commutative product") {
  const MatrixGradedElement b = bott_projection(16);
  CHECK(verify_projection(b, 0.0, 1e-6).pass);
  CHECK_FALSE(verify_projection(b, 0.3, 1e-6).pass);
}

TEST_CASE("spectral_sharpen of the identity keeps the whole window") {
  const SpectralRange r = spectral_sharpen(MatrixGradedElement::identity(1), 0.3, 4);
  CHECK(r.basis.cols() == 81);
  CHECK(r.mid_spectrum == 0);
  const SpectralRange c = spectral_sharpen(MatrixGradedElement::identity(1), 0.3, 4, true);
  CHECK(c.basis.cols() == 0);
}
