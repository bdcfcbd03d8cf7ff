#pragma once
#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <vector>

#include "cld/graded.hpp"

namespace cld {

using SparseOp = Eigen::SparseMatrix<cplx>;
using DenseOp = Eigen::MatrixXcd;

// Lattice window |m|,|n| <= N, two spinor slots, optional amplification by C^amp.
// Slot order: ((site * 2) + s) * amp + i with site = (m+N)(2N+1) + (n+N), s = 0 for +.
struct TruncatedHilbert {
  int N = 1;
  int amp = 1;

  int side() const { return 2 * N + 1; }
  Eigen::Index sites() const { return Eigen::Index(side()) * side(); }
  Eigen::Index dim() const { return 2 * sites() * amp; }
  bool contains(Weight w) const { return radius(w) <= N; }
  Eigen::Index index(Weight w, int s, int i = 0) const {
    const Eigen::Index site = Eigen::Index(w.m + N) * side() + (w.n + N);
    return (site * 2 + s) * amp + i;
  }
  struct Slot {
    Weight w;
    int s;
    int i;
  };
  Slot slot(Eigen::Index k) const {
    const int i = int(k % amp);
    const Eigen::Index r = k / amp;
    const int s = int(r % 2);
    const Eigen::Index site = r / 2;
    return {{int(site / side()) - N, int(site % side()) - N}, s, i};
  }
  Weight weight(Eigen::Index k) const { return slot(k).w; }
};

struct TruncatedOperator {
  TruncatedHilbert hilb;
  SparseOp mat;
  std::optional<Weight> homogeneous;
  std::size_t dropped = 0;  // (term, column) pairs that left the window in represent()
};

struct DiracTruncation {
  SparseOp D;
  Eigen::VectorXd absD;   // |D| diagonal
  SparseOp F;             // D|D|^{-1}, +1 on ker D
  Eigen::VectorXd gamma;  // +1 / -1 by spinor slot
  std::vector<Eigen::Index> kernel;
};

struct GeneratorPair {
  Eigen::VectorXcd h1;  // 2 pi i m
  Eigen::VectorXcd h2;  // 2 pi i n
};

struct Truncation {
  TruncatedHilbert hilb;
  DiracTruncation dirac;
  GeneratorPair gens;
};

Truncation build_truncation(int N, int amp = 1);

TruncatedOperator represent(const GradedElement& a, const TruncatedHilbert& hilb);
TruncatedOperator represent(const MatrixGradedElement& a, const TruncatedHilbert& hilb);
TruncatedOperator deform_operator(const TruncatedOperator& T, double theta);

// Diagonal U_t and Ad_{U_t}.
Eigen::VectorXcd torus_unitary(const TruncatedHilbert& hilb, double t1, double t2);
SparseOp conjugate_by_diagonal(const SparseOp& T, const Eigen::VectorXcd& u);
TruncatedOperator weight_component(const TruncatedOperator& T, Weight w);

SparseOp identity_op(const TruncatedHilbert& hilb);
SparseOp commutator(const SparseOp& A, const SparseOp& B);
SparseOp diag_commutator(const Eigen::VectorXcd& d, const SparseOp& A);  // [diag(d), A]
SparseOp keep_columns(const SparseOp& A, const TruncatedHilbert& hilb, int R);

// max |A_ij - B_ij| over columns j with weight radius <= R
double window_distance(const SparseOp& A, const SparseOp& B, const TruncatedHilbert& hilb, int R);
double max_abs_entry(const SparseOp& A);

struct NormResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};
NormResult power_norm(const SparseOp& T, double tol = 1e-13, int max_iter = 100000);
double operator_norm(const SparseOp& T, double tol = 1e-13, int max_iter = 100000);
double operator_norm(const DenseOp& T, double tol = 1e-13, int max_iter = 100000);

double seminorm_nu(const GradedElement& a, int k, Weight alpha, const Truncation& tr);

struct DecayReport {
  double C = 0.0;             // |Delta^2 T| / (16 pi^4)
  double worst_ratio_sq = 0;  // max |T_w| |w|^4 / C
  double worst_ratio_lin = 0; // max |T_w| |w|^2 / C
  Weight worst_sq;
  Weight worst_lin;
  int components = 0;
  bool bound_holds = false;  // worst_ratio_sq <= 1
};
DecayReport verify_decay(const TruncatedOperator& T, int window);

cplx zeta_partial(const TruncatedOperator& T, cplx s, const DiracTruncation& dirac);

}  // namespace cld
