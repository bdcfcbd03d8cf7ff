#pragma once
#include <string>
#include <vector>

#include "cld/graded.hpp"
#include "cld/spectral.hpp"

namespace cld {

enum class CochainBase { trace, chern };

// Structural cochain: base functional plus derivation contractions.
// insertions[0] is applied first, so contract(contract(tau, 2), 1) is i_{d1} i_{d2} tau
// and has insertions {2, 1}.
struct CyclicCochain {
  CochainBase base = CochainBase::trace;
  int base_degree = 0;  // 0 for tau, n for ch_D
  std::vector<int> insertions;
  double theta = 0.0;
  int amp = 1;

  int degree() const { return base_degree + static_cast<int>(insertions.size()); }
  std::string name() const;
};

CyclicCochain trace_cochain(double theta = 0.0, int amp = 1);
CyclicCochain chern_cochain(int n, int amp = 1);
CyclicCochain contract(const CyclicCochain& phi, int delta);

// "tau", "ch2", "i1:i2:tau", "i1 i2 ch2"; leftmost contraction is applied last.
CyclicCochain parse_cochain(const std::string& spec);

cplx trace_tau(const GradedElement& a);

// Evaluation in the algebra, products taken with phi.theta.
cplx evaluate(const CyclicCochain& phi, const std::vector<MatrixGradedElement>& args);
cplx evaluate(const CyclicCochain& phi, const std::vector<GradedElement>& args);

// Operator-side evaluation on a truncation. Trace bases use the vacuum state at
// slot (0,0,+) summed over the amplification; Chern bases use the graded trace
// over slots of radius <= interior. Derivations act as [h_j, .].
// Chern bases are expanded on forms; normal_order instead rewrites every form into
// a0 da1 ... dan first, which is slower and serves as a cross-check.
cplx evaluate_operators(const CyclicCochain& phi, const std::vector<SparseOp>& args,
                        const Truncation& tr, int interior, bool normal_order = false);
// Cumulative graded traces S(R), R = 0..N, of a Chern-based cochain.
std::vector<cplx> operator_radial_sums(const CyclicCochain& phi, const std::vector<SparseOp>& args,
                                       const Truncation& tr);

// Weight-tuple formula for phi^(theta); arguments are given in the symmetric
// presentation and mapped to the asymmetric one in which the formula is stated.
cplx deformed_cocycle_eval(const CyclicCochain& phi, double theta,
                           const std::vector<GradedElement>& args);
cplx deformed_cocycle_eval(const CyclicCochain& phi, double theta,
                           const std::vector<MatrixGradedElement>& args);

// phi(args) + theta * (i_{d1} i_{d2} phi)(args2), both evaluated with phi.theta products.
cplx combined_cocycle_eval(const CyclicCochain& phi, double theta,
                           const std::vector<MatrixGradedElement>& args,
                           const std::vector<MatrixGradedElement>& args2);

// Tr_s(gamma f0 [F,f1] ... [F,fn]) over slots of radius <= interior.
cplx chern_cocycle_eval(int n, const Truncation& tr, const std::vector<SparseOp>& args,
                        int interior);

// Cumulative graded traces S(R), R = 0..N, of the same expression.
std::vector<cplx> chern_radial_sums(int n, const Truncation& tr, const std::vector<SparseOp>& args);

// b phi (a0, ..., a_{n+1})
cplx hochschild_coboundary(const CyclicCochain& phi, const std::vector<MatrixGradedElement>& args);

struct Normalization {
  cplx trace_degree2 = cplx(0.0, -1.0 / (2.0 * pi));  // 1 / (2 pi i)
  cplx chern_degree2 = 0.0;                             // set by calibration
  bool calibrated = false;
  double calibration_raw = 0.0;
  int calibration_index = 0;
};

struct PairingOptions {
  int N = 36;             // truncation for operator-side cochains
  int margin = 6;         // interior radius R = N - margin
  bool extrapolate = true;  // remove the A / R^2 tail of the radial graded trace
  int extrapolation_gap = 4;  // second radius R - gap
  double projection_tol = 1e-6;
  Normalization norm;
};

struct PairingReport {
  std::string cocycle;
  double theta = 0.0;
  cplx value;
  cplx normalized;
  double integer_distance = 0.0;
  cplx raw;        // operator side: graded trace at radius R before extrapolation
  int radius = 0;  // 0 for algebraic evaluation
};

// Graded trace at R = N - margin, optionally Richardson-extrapolated in R.
struct RadialEstimate {
  cplx value;
  cplx raw;
  int radius = 0;
};
RadialEstimate radial_estimate(const std::vector<cplx>& sums, const PairingOptions& opt);

cplx normalization_for(const CyclicCochain& phi, const Normalization& norm);

PairingReport k0_pairing(const CyclicCochain& phi, const MatrixGradedElement& p, double theta,
                         const PairingOptions& opt);
PairingReport combined_pairing(const CyclicCochain& phi, const MatrixGradedElement& p,
                               double theta, const PairingOptions& opt);

struct IndexOptions {
  int N = 24;
  double threshold = 0.5;
  double unreliable_low = 0.25;
  double unreliable_high = 0.75;
  double interior_fraction = 0.5;  // radius fraction used to localize kernel vectors
};

struct IndexReport {
  int index = 0;
  int kernel = 0;
  int cokernel = 0;
  int range_rank = 0;
  bool complement = false;  // kernel / cokernel refer to (1-P) Phi (1-P) when set
  bool reliable = true;
  std::vector<double> small_singular_values;  // below unreliable_high, ascending
  std::vector<double> kernel_weights;         // interior weight of each right vector
  std::vector<double> cokernel_weights;       // interior weight of each left vector
};

IndexReport fredholm_index_oracle(const MatrixGradedElement& p, double theta,
                                  const IndexOptions& opt = {});

// Calibrates the degree-2 Chern constant against the index oracle on the Bott projection.
Normalization calibrate_chern(const MatrixGradedElement& bott, const PairingOptions& opt,
                              const IndexOptions& iopt);

}  // namespace cld
