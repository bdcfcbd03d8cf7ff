#include "cld/projections.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cld/errors.hpp"
#include "cld/linalg.hpp"

namespace cld {

BumpProfile default_profile(double theta, int M) {
  BumpProfile p;
  p.theta = theta;
  p.width = std::min(theta, 1.0 - theta);
  p.M = M;
  return p;
}

double transition(double s, int k) {
  s = std::clamp(s, 0.0, 1.0);
  for (int i = 0; i < k; ++i) s = 0.5 * (1.0 - std::cos(pi * s));
  return s;
}

double profile_g(const BumpProfile& prof, double x) {
  x -= std::floor(x);
  const double w = prof.width, th = prof.theta;
  if (x < w) return transition(x / w, prof.smoothness);
  if (x < th) return 1.0;
  if (x < th + w) return 1.0 - transition((x - th) / w, prof.smoothness);
  return 0.0;
}

double profile_f(const BumpProfile& prof, double x) {
  x -= std::floor(x);
  const double th = prof.theta;
  if (x < th || x >= th + prof.width) return 0.0;
  const double g = profile_g(prof, x);
  return std::sqrt(std::max(0.0, g * (1.0 - g)));
}

namespace {

void check_profile(const BumpProfile& p) {
  if (!(p.theta > 0.0 && p.theta < 1.0))
    fail(Status::invalid_argument, "theta must lie in (0,1), got " + std::to_string(p.theta));
  if (!(p.width > 0.0) || p.width > std::min(p.theta, 1.0 - p.theta) * (1.0 + 1e-12))
    fail(Status::invalid_argument, "transition width " + std::to_string(p.width) +
                                       " incompatible with theta " + std::to_string(p.theta));
  if (p.smoothness < 1 || p.M < 1 || p.samples < 2 * p.M + 1)
    fail(Status::invalid_argument, "profile needs k >= 1, M >= 1 and samples > 2M");
}

// c_m = (1/L) sum_j f(j/L) exp(-2 pi i m j / L), |m| <= M
template <class Fn>
std::vector<cplx> dft(Fn f, int M, int L) {
  std::vector<double> vals(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) vals[static_cast<std::size_t>(j)] = f(double(j) / L);
  std::vector<cplx> out(static_cast<std::size_t>(2 * M + 1));
  for (int m = -M; m <= M; ++m) {
    cplx s{};
    for (int j = 0; j < L; ++j) {
      const long e = ((static_cast<long>(m) * j) % L + L) % L;
      s += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * pi * double(e) / L);
    }
    out[static_cast<std::size_t>(m + M)] = s / double(L);
  }
  return out;
}

}  // namespace

MatrixGradedElement powers_rieffel(const BumpProfile& prof) {
  check_profile(prof);
  const int M = prof.M;
  const auto g = dft([&](double x) { return profile_g(prof, x); }, M, prof.samples);
  const auto f = dft([&](double x) { return profile_f(prof, x); }, M, prof.samples);
  GradedElement p;
  p.cutoff = M;
  for (int m = -M; m <= M; ++m) {
    // g is real, so its coefficients are conjugate-symmetric; average to make p = p* exact
    const cplx gm = 0.5 * (g[static_cast<std::size_t>(m + M)] + std::conj(g[static_cast<std::size_t>(M - m)]));
    p.terms[{m, 0}] += gm;
    // u^m v = exp(pi i theta m) e_{(m,1)}
    const cplx c = f[static_cast<std::size_t>(m + M)] * std::polar(1.0, pi * prof.theta * m);
    p.terms[{m, 1}] += c;
    p.terms[{-m, -1}] += std::conj(c);
  }
  return MatrixGradedElement::scalar(p);
}

MatrixGradedElement bott_projection(int M, double mass, int grid) {
  if (M < 4) fail(Status::invalid_argument, "Bott projection needs M >= 4");
  const int L = grid > 0 ? grid : std::max(256, 8 * M);
  if (L < 2 * M + 1) fail(Status::invalid_argument, "grid too coarse for the cutoff");
  // fiber projection sampled on the grid, entries (0,0), (1,0), (1,1); (0,1) follows by symmetry
  std::vector<cplx> s00(static_cast<std::size_t>(L) * L), s10(s00.size()), s11(s00.size());
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      const double k1 = 2.0 * pi * a / L, k2 = 2.0 * pi * b / L;
      double d1 = std::sin(k1), d2 = std::sin(k2), d3 = mass + std::cos(k1) + std::cos(k2);
      const double len = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
      if (len < 1e-12) fail(Status::invalid_argument, "Bott symbol vanishes; change the mass");
      d1 /= len;
      d2 /= len;
      d3 /= len;
      const std::size_t k = static_cast<std::size_t>(a) * L + b;
      s00[k] = 0.5 * (1.0 + d3);
      s11[k] = 0.5 * (1.0 - d3);
      s10[k] = 0.5 * cplx(d1, d2);
    }
  std::vector<cplx> tw(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) tw[static_cast<std::size_t>(j)] = std::polar(1.0, -2.0 * pi * j / L);
  auto coeffs = [&](const std::vector<cplx>& s) {
    // separable DFT: first over the second variable, then the first
    const int W = 2 * M + 1;
    std::vector<cplx> half(static_cast<std::size_t>(L) * W);
    for (int a = 0; a < L; ++a)
      for (int n = -M; n <= M; ++n) {
        cplx acc{};
        for (int b = 0; b < L; ++b)
          acc += s[static_cast<std::size_t>(a) * L + b] *
                 tw[static_cast<std::size_t>(((static_cast<long>(n) * b) % L + L) % L)];
        half[static_cast<std::size_t>(a) * W + (n + M)] = acc;
      }
    GradedElement e;
    e.cutoff = M;
    for (int m = -M; m <= M; ++m)
      for (int n = -M; n <= M; ++n) {
        cplx acc{};
        for (int a = 0; a < L; ++a)
          acc += half[static_cast<std::size_t>(a) * W + (n + M)] *
                 tw[static_cast<std::size_t>(((static_cast<long>(m) * a) % L + L) % L)];
        e.terms[{m, n}] = acc / (double(L) * L);
      }
    return e;
  };
  MatrixGradedElement p(2);
  const GradedElement e00 = coeffs(s00), e11 = coeffs(s11), e10 = coeffs(s10);
  p.at(0, 0) = 0.5 * (e00 + star(e00));
  p.at(1, 1) = 0.5 * (e11 + star(e11));
  p.at(1, 0) = e10;
  p.at(0, 1) = star(e10);
  return p;
}

ProjectionReport verify_projection(const MatrixGradedElement& p, double theta, double tol) {
  if (!(tol > 0)) fail(Status::invalid_argument, "tolerance must be positive");
  ProjectionReport r;
  r.tol = tol;
  r.idempotency_defect = distance(matrix_product(p, p, theta), p);
  r.adjoint_defect = distance(p, matrix_star(p));
  r.pass = r.idempotency_defect <= tol && r.adjoint_defect <= tol;
  return r;
}

SpectralRange spectral_sharpen(const MatrixGradedElement& p, double theta, int N, bool complement) {
  if (N < 1) fail(Status::invalid_argument, "N must be >= 1");
  const int d = p.dim, side = 2 * N + 1;
  const Eigen::Index n = Eigen::Index(side) * side * d;
  auto idx = [&](Weight w, int i) { return (Eigen::Index(w.m + N) * side + (w.n + N)) * d + i; };
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (const auto& [w, c] : p.at(i, j).terms)
        for (int m = -N; m <= N; ++m)
          for (int k = -N; k <= N; ++k) {
            const Weight to{m + w.m, k + w.n};
            if (radius(to) > N) continue;
            A(idx(to, i), idx({m, k}, j)) += c * phase_factor(theta, w, {m, k});
          }
  const double inf = std::numeric_limits<double>::infinity();
  const HermitianEigen eig = complement ? hermitian_eigen(A, -inf, 0.75) : hermitian_eigen(A, 0.25, inf);
  SpectralRange r;
  r.N = N;
  r.amp = d;
  r.complement = complement;
  r.spectrum = eig.values;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double l = eig.values[k];
    if ((l > 0.5) != complement) keep.push_back(k);
    if (l > 0.25 && l < 0.75) ++r.mid_spectrum;
  }
  r.basis.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    r.basis.col(static_cast<Eigen::Index>(k)) = eig.vectors.col(keep[k]);
  return r;
}

}  // namespace cld
