#pragma once
#include <algorithm>
#include <compare>
#include <complex>
#include <cstddef>
#include <map>
#include <vector>

namespace cld {

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

struct Weight {
  int m = 0;
  int n = 0;
  auto operator<=>(const Weight&) const = default;
  Weight operator+(Weight o) const { return {m + o.m, n + o.n}; }
  Weight operator-(Weight o) const { return {m - o.m, n - o.n}; }
  Weight operator-() const { return {-m, -n}; }
};

inline int radius(Weight w) { return std::max(w.m < 0 ? -w.m : w.m, w.n < 0 ? -w.n : w.n); }

// exp(pi i theta (m n' - m' n)) for w = (m,n), w2 = (m',n').
cplx phase_factor(double theta, Weight w, Weight w2);

// The asymmetric convention exp(2 pi i theta m n'). Matrices over the deformed
// algebra and the crossed-product side live in this presentation.
cplx cl_phase(double theta, Weight w, Weight w2);

// Finitely supported coefficient array. cutoff bounds the support radius.
struct GradedElement {
  std::map<Weight, cplx> terms;
  int cutoff = 0;

  static GradedElement unit() { return monomial({0, 0}, 1.0); }
  static GradedElement monomial(Weight w, cplx c = 1.0);

  cplx coeff(Weight w) const;
  void add(Weight w, cplx c);
  bool empty() const { return terms.empty(); }
  bool homogeneous() const { return terms.size() == 1; }
  Weight weight() const;  // requires homogeneous()
  int support_radius() const;
  double max_abs() const;
  void prune(double tol = 0.0);

  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  GradedElement& operator*=(cplx s);
};

GradedElement operator+(GradedElement a, const GradedElement& b);
GradedElement operator-(GradedElement a, const GradedElement& b);
GradedElement operator*(cplx s, GradedElement a);

// max_w |a_w - b_w|
double distance(const GradedElement& a, const GradedElement& b);

GradedElement star(const GradedElement& a);
bool is_self_adjoint(const GradedElement& a, double tol = 0.0);

// Hard cap on the support radius of products. Terms beyond it are dropped and
// accounted for in ProductStats.
struct ProductStats {
  std::size_t dropped_terms = 0;
  double dropped_mass = 0.0;  // sum of |coefficient| over dropped terms
};

inline constexpr int default_cutoff_cap = 512;

GradedElement deformed_product(const GradedElement& a, const GradedElement& b, double theta,
                               int cap = default_cutoff_cap, ProductStats* stats = nullptr);

// Same support arithmetic with exp(2 pi i theta m n') phases.
GradedElement cl_product(const GradedElement& a, const GradedElement& b, double theta,
                         int cap = default_cutoff_cap, ProductStats* stats = nullptr);

// to_cl: a_w -> exp(pi i theta m n) a_w, an isomorphism from the symmetric
// presentation onto the asymmetric one: to_cl(a *_theta b) = cl_product(to_cl(a), to_cl(b)).
GradedElement to_cl(const GradedElement& a, double theta);
GradedElement from_cl(const GradedElement& a, double theta);

// sigma_t(a)_w = exp(2 pi i (m t1 + n t2)) a_w
GradedElement rotate(const GradedElement& a, double t1, double t2);

// Derivations delta_1, delta_2: a_w -> 2 pi i m a_w (resp. n).
GradedElement derive(const GradedElement& a, int which);

GradedElement component_projection(const GradedElement& a, Weight w);

// Samples of sigma_t(a) on the uniform grid t = (j/M, k/M), row-major in (j,k).
struct RotationGrid {
  int M = 0;
  int cutoff = 0;
  std::vector<GradedElement> samples;
};
RotationGrid sample_rotations(const GradedElement& a, int M);

struct QuadratureResult {
  GradedElement value;
  bool aliased = false;
};
QuadratureResult component_by_integration(const RotationGrid& grid, Weight w);

enum class FejerNorm { standard, literal };
double fejer_coefficient(int k, Weight w, FejerNorm norm = FejerNorm::standard);
GradedElement fejer_smooth(const GradedElement& a, int k, FejerNorm norm = FejerNorm::standard);

// d x d array of elements, row-major.
struct MatrixGradedElement {
  int dim = 1;
  std::vector<GradedElement> entries;

  MatrixGradedElement() : entries(1) {}
  explicit MatrixGradedElement(int d);
  static MatrixGradedElement identity(int d);
  static MatrixGradedElement scalar(const GradedElement& a);

  GradedElement& at(int i, int j) { return entries[static_cast<std::size_t>(i * dim + j)]; }
  const GradedElement& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i * dim + j)];
  }
  int cutoff() const;
};

MatrixGradedElement matrix_product(const MatrixGradedElement& a, const MatrixGradedElement& b,
                                   double theta, int cap = default_cutoff_cap);
MatrixGradedElement matrix_cl_product(const MatrixGradedElement& a, const MatrixGradedElement& b,
                                      double theta, int cap = default_cutoff_cap);
MatrixGradedElement matrix_star(const MatrixGradedElement& a);
MatrixGradedElement operator-(const MatrixGradedElement& a, const MatrixGradedElement& b);
MatrixGradedElement operator+(const MatrixGradedElement& a, const MatrixGradedElement& b);
MatrixGradedElement operator*(cplx s, const MatrixGradedElement& a);
double distance(const MatrixGradedElement& a, const MatrixGradedElement& b);
cplx matrix_trace_tau(const MatrixGradedElement& a);

}  // namespace cld
