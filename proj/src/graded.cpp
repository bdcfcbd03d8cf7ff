#include "cld/graded.hpp"

#include <cmath>
#include <cstdlib>

#include "cld/errors.hpp"

namespace cld {

namespace {

// polar(1, 0) is exactly (1, 0), so zero exponents never perturb a coefficient.
cplx unit_phase(double angle) { return std::polar(1.0, angle); }

template <class Phase>
GradedElement convolve(const GradedElement& a, const GradedElement& b, int cap,
                       ProductStats* stats, Phase phase) {
  GradedElement out;
  out.cutoff = std::min(a.cutoff + b.cutoff, cap);
  if (a.empty() || b.empty()) return out;
  const int reach = std::min(a.support_radius() + b.support_radius(), cap);
  const int side = 2 * reach + 1;
  std::vector<cplx> acc(static_cast<std::size_t>(side) * side);
  std::vector<char> hit(acc.size(), 0);
  ProductStats local;
  for (const auto& [wa, ca] : a.terms) {
    for (const auto& [wb, cb] : b.terms) {
      const Weight w = wa + wb;
      const cplx c = phase(wa, wb) * ca * cb;
      if (radius(w) > reach) {
        ++local.dropped_terms;
        local.dropped_mass += std::abs(c);
        continue;
      }
      const std::size_t idx = static_cast<std::size_t>((w.m + reach) * side + (w.n + reach));
      acc[idx] += c;
      hit[idx] = 1;
    }
  }
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i * side + j);
      if (hit[idx]) out.terms.emplace_hint(out.terms.end(), Weight{i - reach, j - reach}, acc[idx]);
    }
  if (stats) {
    stats->dropped_terms += local.dropped_terms;
    stats->dropped_mass += local.dropped_mass;
  }
  return out;
}

}  // namespace

cplx phase_factor(double theta, Weight w, Weight w2) {
  const long k = static_cast<long>(w.m) * w2.n - static_cast<long>(w2.m) * w.n;
  return unit_phase(pi * theta * static_cast<double>(k));
}

cplx cl_phase(double theta, Weight w, Weight w2) {
  const long k = static_cast<long>(w.m) * w2.n;
  return unit_phase(2.0 * pi * theta * static_cast<double>(k));
}

GradedElement GradedElement::monomial(Weight w, cplx c) {
  GradedElement e;
  e.terms[w] = c;
  e.cutoff = radius(w);
  return e;
}

cplx GradedElement::coeff(Weight w) const {
  auto it = terms.find(w);
  return it == terms.end() ? cplx{} : it->second;
}

void GradedElement::add(Weight w, cplx c) {
  terms[w] += c;
  cutoff = std::max(cutoff, radius(w));
}

Weight GradedElement::weight() const {
  if (terms.size() != 1) fail(Status::invalid_argument, "element is not homogeneous");
  return terms.begin()->first;
}

int GradedElement::support_radius() const {
  int r = 0;
  for (const auto& t : terms) r = std::max(r, radius(t.first));
  return r;
}

double GradedElement::max_abs() const {
  double r = 0;
  for (const auto& t : terms) r = std::max(r, std::abs(t.second));
  return r;
}

void GradedElement::prune(double tol) {
  std::erase_if(terms, [tol](const auto& t) { return std::abs(t.second) <= tol; });
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  for (const auto& [w, c] : o.terms) terms[w] += c;
  cutoff = std::max(cutoff, o.cutoff);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) {
  for (const auto& [w, c] : o.terms) terms[w] -= c;
  cutoff = std::max(cutoff, o.cutoff);
  return *this;
}

GradedElement& GradedElement::operator*=(cplx s) {
  for (auto& t : terms) t.second *= s;
  return *this;
}

GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
GradedElement operator*(cplx s, GradedElement a) { return a *= s; }

double distance(const GradedElement& a, const GradedElement& b) {
  double d = 0;
  for (const auto& [w, c] : a.terms) d = std::max(d, std::abs(c - b.coeff(w)));
  for (const auto& [w, c] : b.terms)
    if (!a.terms.count(w)) d = std::max(d, std::abs(c));
  return d;
}

GradedElement star(const GradedElement& a) {
  GradedElement out;
  out.cutoff = a.cutoff;
  for (const auto& [w, c] : a.terms) out.terms[-w] = std::conj(c);
  return out;
}

bool is_self_adjoint(const GradedElement& a, double tol) { return distance(a, star(a)) <= tol; }

GradedElement deformed_product(const GradedElement& a, const GradedElement& b, double theta,
                               int cap, ProductStats* stats) {
  if (theta == 0.0)
    return convolve(a, b, cap, stats, [](Weight, Weight) { return cplx{1.0, 0.0}; });
  return convolve(a, b, cap, stats,
                  [theta](Weight w, Weight w2) { return phase_factor(theta, w, w2); });
}

GradedElement cl_product(const GradedElement& a, const GradedElement& b, double theta, int cap,
                         ProductStats* stats) {
  return convolve(a, b, cap, stats, [theta](Weight w, Weight w2) { return cl_phase(theta, w, w2); });
}

GradedElement to_cl(const GradedElement& a, double theta) {
  GradedElement out = a;
  for (auto& [w, c] : out.terms) c *= unit_phase(pi * theta * w.m * w.n);
  return out;
}

GradedElement from_cl(const GradedElement& a, double theta) {
  GradedElement out = a;
  for (auto& [w, c] : out.terms) c *= unit_phase(-pi * theta * w.m * w.n);
  return out;
}

GradedElement rotate(const GradedElement& a, double t1, double t2) {
  GradedElement out = a;
  for (auto& [w, c] : out.terms) c *= unit_phase(2.0 * pi * (w.m * t1 + w.n * t2));
  return out;
}

GradedElement derive(const GradedElement& a, int which) {
  if (which != 1 && which != 2) fail(Status::invalid_argument, "derivation index must be 1 or 2");
  GradedElement out = a;
  for (auto& [w, c] : out.terms) c *= cplx(0.0, 2.0 * pi * (which == 1 ? w.m : w.n));
  return out;
}

GradedElement component_projection(const GradedElement& a, Weight w) {
  GradedElement out;
  out.cutoff = a.cutoff;
  auto it = a.terms.find(w);
  if (it != a.terms.end()) out.terms[w] = it->second;
  return out;
}

RotationGrid sample_rotations(const GradedElement& a, int M) {
  if (M < 1) fail(Status::invalid_argument, "grid size must be positive");
  RotationGrid g;
  g.M = M;
  g.cutoff = std::max(a.cutoff, a.support_radius());
  g.samples.reserve(static_cast<std::size_t>(M) * M);
  for (int j = 0; j < M; ++j)
    for (int k = 0; k < M; ++k) g.samples.push_back(rotate(a, double(j) / M, double(k) / M));
  return g;
}

QuadratureResult component_by_integration(const RotationGrid& grid, Weight w) {
  QuadratureResult r;
  const int M = grid.M;
  r.aliased = M <= 2 * grid.cutoff;
  r.value.cutoff = grid.cutoff;
  const double norm = 1.0 / (double(M) * M);
  for (int j = 0; j < M; ++j)
    for (int k = 0; k < M; ++k) {
      // reduce the exponent mod M so the character is evaluated at a small angle
      const long e = ((static_cast<long>(w.m) * j + static_cast<long>(w.n) * k) % M + M) % M;
      const cplx chi = unit_phase(-2.0 * pi * double(e) / M);
      for (const auto& [v, c] : grid.samples[static_cast<std::size_t>(j * M + k)].terms)
        r.value.terms[v] += norm * chi * c;
    }
  return r;
}

double fejer_coefficient(int k, Weight w, FejerNorm norm) {
  if (k < 1) fail(Status::invalid_argument, "Fejer order must be >= 1");
  if (std::abs(w.m) > k || std::abs(w.n) > k) return 0.0;
  if (norm == FejerNorm::standard)
    return (1.0 - std::abs(w.m) / double(k + 1)) * (1.0 - std::abs(w.n) / double(k + 1));
  // |([m,k+m] x [n,k+n]) ∩ [0,k]^2 ∩ Z^2| / k^2, counted point by point
  long count = 0;
  for (int x = w.m; x <= k + w.m; ++x)
    for (int y = w.n; y <= k + w.n; ++y)
      if (x >= 0 && x <= k && y >= 0 && y <= k) ++count;
  return double(count) / (double(k) * k);
}

GradedElement fejer_smooth(const GradedElement& a, int k, FejerNorm norm) {
  if (k < 1) fail(Status::invalid_argument, "Fejer order must be >= 1");
  GradedElement out;
  out.cutoff = std::min(a.cutoff, k);
  for (const auto& [w, c] : a.terms) {
    const double f = fejer_coefficient(k, w, norm);
    if (f != 0.0) out.terms[w] = f * c;
  }
  return out;
}

MatrixGradedElement::MatrixGradedElement(int d) : dim(d) {
  if (d < 1) fail(Status::invalid_argument, "matrix dimension must be >= 1");
  entries.resize(static_cast<std::size_t>(d) * d);
}

MatrixGradedElement MatrixGradedElement::identity(int d) {
  MatrixGradedElement m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = GradedElement::unit();
  return m;
}

MatrixGradedElement MatrixGradedElement::scalar(const GradedElement& a) {
  MatrixGradedElement m(1);
  m.at(0, 0) = a;
  return m;
}

int MatrixGradedElement::cutoff() const {
  int c = 0;
  for (const auto& e : entries) c = std::max(c, e.cutoff);
  return c;
}

namespace {

template <class Prod>
MatrixGradedElement matmul(const MatrixGradedElement& a, const MatrixGradedElement& b, Prod prod) {
  if (a.dim != b.dim) fail(Status::invalid_argument, "matrix dimensions differ");
  MatrixGradedElement out(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      GradedElement& e = out.at(i, j);
      for (int k = 0; k < a.dim; ++k) e += prod(a.at(i, k), b.at(k, j));
    }
  return out;
}

}  // namespace

MatrixGradedElement matrix_product(const MatrixGradedElement& a, const MatrixGradedElement& b,
                                   double theta, int cap) {
  return matmul(a, b, [&](const GradedElement& x, const GradedElement& y) {
    return deformed_product(x, y, theta, cap);
  });
}

MatrixGradedElement matrix_cl_product(const MatrixGradedElement& a, const MatrixGradedElement& b,
                                      double theta, int cap) {
  return matmul(a, b, [&](const GradedElement& x, const GradedElement& y) {
    return cl_product(x, y, theta, cap);
  });
}

MatrixGradedElement matrix_star(const MatrixGradedElement& a) {
  MatrixGradedElement out(a.dim);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) out.at(i, j) = star(a.at(j, i));
  return out;
}

MatrixGradedElement operator+(const MatrixGradedElement& a, const MatrixGradedElement& b) {
  if (a.dim != b.dim) fail(Status::invalid_argument, "matrix dimensions differ");
  MatrixGradedElement out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
  return out;
}

MatrixGradedElement operator-(const MatrixGradedElement& a, const MatrixGradedElement& b) {
  if (a.dim != b.dim) fail(Status::invalid_argument, "matrix dimensions differ");
  MatrixGradedElement out = a;
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] -= b.entries[i];
  return out;
}

MatrixGradedElement operator*(cplx s, const MatrixGradedElement& a) {
  MatrixGradedElement out = a;
  for (auto& e : out.entries) e *= s;
  return out;
}

double distance(const MatrixGradedElement& a, const MatrixGradedElement& b) {
  if (a.dim != b.dim) fail(Status::invalid_argument, "matrix dimensions differ");
  double d = 0;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    d = std::max(d, distance(a.entries[i], b.entries[i]));
  return d;
}

cplx matrix_trace_tau(const MatrixGradedElement& a) {
  cplx t{};
  for (int i = 0; i < a.dim; ++i) t += a.at(i, i).coeff({0, 0});
  return t;
}

}  // namespace cld
