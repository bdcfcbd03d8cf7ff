#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cld/graded.hpp"

namespace cld {

// Finite sums of w^k z^l a, acting on l2(Z) (x) H by
//   z^l a : d_k (x) xi -> d_k (x) a xi   when l + k = m(a xi), else 0
//   w     : d_k (x) xi -> exp(2 pi i theta n(xi)) d_{k+1} (x) xi
// Key (k, l) = (outer power, circle frequency). Coefficients are undeformed.
struct CrossedElement {
  std::map<std::pair<int, int>, GradedElement> terms;
  int K = 8;
  int L = 8;

  void add(int k, int l, const GradedElement& a);
};

struct CrossedStats {
  std::size_t dropped_terms = 0;
  double dropped_mass = 0.0;
};

// sum_{|l| <= L} z^l 1, neutral on elements whose shifted frequencies stay within L
CrossedElement crossed_unit(int K, int L);

CrossedElement crossed_multiply(const CrossedElement& x, const CrossedElement& y, double theta,
                                CrossedStats* stats = nullptr);
double distance(const CrossedElement& x, const CrossedElement& y);

// Matrices over A_theta, entries stored in the asymmetric presentation
// (products via cl_product; from_cl converts an entry to the symmetric one).
struct MatrixOverDeformed {
  std::map<std::pair<int, int>, GradedElement> entries;  // (row, column)
  int window = 8;
  std::size_t dropped = 0;

  void add(int row, int col, const GradedElement& a);
};

MatrixOverDeformed kernel_map(int n, int l, const GradedElement& a, double theta, int window = 8);
MatrixOverDeformed kernel_map(const CrossedElement& x, double theta, int window = 8);
CrossedElement inverse_kernel_map(const MatrixOverDeformed& x, double theta, int K = 8, int L = 8);
MatrixOverDeformed matrix_multiply(const MatrixOverDeformed& x, const MatrixOverDeformed& y,
                                   double theta);
double distance(const MatrixOverDeformed& x, const MatrixOverDeformed& y);

// Adjoint inside the asymmetric presentation.
GradedElement cl_star(const GradedElement& a, double theta);

struct U0Report {
  double conjugation_defect = 0.0;   // U0* (z^l a) U0 vs exp(2 pi i theta q l) e_{-l,p-l} (x) a^(theta)
  double symmetric_route_defect = 0.0;  // same, with a^(theta) built from the symmetric deformation
  double shift_defect = 0.0;         // U0* w U0 vs shift (x) 1
  double dirac_defect = 0.0;         // U0* (1 (x) D) U0 vs 1 (x) D
  bool literal_column_agrees = false;  // whether e_{-l,-(l+p)} also matches
  int vectors = 0;
  std::string first_mismatch;
  bool pass = false;
};
U0Report u0_conjugation_check(int p, int q, int l, double theta, int K, int N = 4);

// Vectors of E0 = l2(Z) (x) A: k -> element of A.
using BimoduleVector = std::map<int, GradedElement>;

BimoduleVector left_act(const CrossedElement& x, const BimoduleVector& v, double theta);
BimoduleVector right_act(const BimoduleVector& v, const GradedElement& s, double theta);
// Inner product induced by the free right module on the d_k (x) 1; the literal
// variant omits the exp(2 pi i theta k (n - n')) factor.
GradedElement inner_product(const BimoduleVector& x, const BimoduleVector& y, double theta,
                            bool literal = false);
double distance(const BimoduleVector& x, const BimoduleVector& y);

struct BimoduleReport {
  double right_unit = 0.0;
  double right_associativity = 0.0;
  double bimodule_commutation = 0.0;
  double left_representation = 0.0;   // left action of x*y vs x after y
  double inner_right_linear = 0.0;    // <x, y s> = <x, y> s
  double inner_left_conjugate = 0.0;  // <x s, y> = s* <x, y>
  double inner_hermitian = 0.0;       // <x, y>* = <y, x>
  double left_adjointness = 0.0;      // <a x, y> = <x, a* y>, <w x, y> = <x, w^-1 y>
  double diagonal_example = 0.0;      // <d0 a, d0 a> = a* a for weight (0, n)
  double literal_inner_defect = 0.0;  // worst failure of the literal formula
  int samples = 0;
  bool pass = false;
};
BimoduleReport bimodule_check(double theta, int samples, unsigned seed = 7, double tol = 1e-12);

}  // namespace cld
