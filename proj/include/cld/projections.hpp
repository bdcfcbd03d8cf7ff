#pragma once
#include <Eigen/Dense>

#include "cld/graded.hpp"

namespace cld {

// Transitions are k-fold iterated raised cosines psi(s) = (1 - cos(pi s))/2, which are
// flat to order 2^k - 1 at both ends.
struct BumpProfile {
  double theta = 0.25;
  double width = 0.25;   // transition width, at most min(theta, 1 - theta)
  int smoothness = 4;    // k
  int M = 64;            // Fourier cutoff
  int samples = 8192;    // DFT grid
};

BumpProfile default_profile(double theta, int M = 64);
double transition(double s, int k);
double profile_g(const BumpProfile& prof, double x);
double profile_f(const BumpProfile& prof, double x);

// p = f(u) v + g(u) + v* f(u) with v f(u) v* = f(x - theta); exactly self-adjoint.
MatrixGradedElement powers_rieffel(const BumpProfile& prof);

// (1 + n.sigma)/2 with n = d/|d|, d = (sin k1, sin k2, mass + cos k1 + cos k2).
MatrixGradedElement bott_projection(int M, double mass = 1.0, int grid = 0);

struct ProjectionReport {
  double idempotency_defect = 0.0;  // |p *_theta p - p|_inf
  double adjoint_defect = 0.0;      // |p - p*|_inf
  double tol = 0.0;
  bool pass = false;
};
ProjectionReport verify_projection(const MatrixGradedElement& p, double theta, double tol);

// Functional-calculus rounding: the spectral projection above 1/2 of the
// (hermitized) image of p^(theta) on one spinor component of the window |m|,|n| <= N.
// With complement set, the projection below 1/2 instead.
struct SpectralRange {
  int N = 0;
  int amp = 1;
  bool complement = false;
  Eigen::MatrixXcd basis;    // orthonormal columns spanning the range
  Eigen::VectorXd spectrum;  // computed eigenvalues: above 0.25 (below 0.75 for the complement)
  int mid_spectrum = 0;      // eigenvalues in (0.25, 0.75), mostly from the window edge
};
SpectralRange spectral_sharpen(const MatrixGradedElement& p, double theta, int N,
                               bool complement = false);

}  // namespace cld
