#include "cld/spectral.hpp"

#include <cmath>
#include <map>
#include <string>

#include "cld/errors.hpp"

namespace cld {

using Index = Eigen::Index;
using Triplet = Eigen::Triplet<cplx>;

Truncation build_truncation(int N, int amp) {
  if (N < 1) fail(Status::invalid_argument, "N must be >= 1 (N=0 leaves only ker D)");
  if (amp < 1) fail(Status::invalid_argument, "amplification must be >= 1");
  Truncation tr;
  tr.hilb = {N, amp};
  const TruncatedHilbert& h = tr.hilb;
  const Index dim = h.dim();
  auto& dr = tr.dirac;
  dr.absD.resize(dim);
  dr.gamma.resize(dim);
  tr.gens.h1.resize(dim);
  tr.gens.h2.resize(dim);
  std::vector<Triplet> dt, ft;
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) {
      const double k = std::sqrt(double(m) * m + double(n) * n);
      const cplx up = 2.0 * pi * cplx(-m, n);   // (+, -) entry
      const cplx lo = -2.0 * pi * cplx(m, n);   // (-, +) entry
      for (int i = 0; i < amp; ++i) {
        const Index p = h.index({m, n}, 0, i), q = h.index({m, n}, 1, i);
        dr.absD[p] = dr.absD[q] = 2.0 * pi * k;
        dr.gamma[p] = 1.0;
        dr.gamma[q] = -1.0;
        tr.gens.h1[p] = tr.gens.h1[q] = cplx(0.0, 2.0 * pi * m);
        tr.gens.h2[p] = tr.gens.h2[q] = cplx(0.0, 2.0 * pi * n);
        if (m == 0 && n == 0) {
          ft.emplace_back(p, p, 1.0);
          ft.emplace_back(q, q, 1.0);
          dr.kernel.push_back(p);
          dr.kernel.push_back(q);
          continue;
        }
        dt.emplace_back(p, q, up);
        dt.emplace_back(q, p, lo);
        ft.emplace_back(p, q, up / (2.0 * pi * k));
        ft.emplace_back(q, p, lo / (2.0 * pi * k));
      }
    }
  dr.D.resize(dim, dim);
  dr.D.setFromTriplets(dt.begin(), dt.end());
  dr.F.resize(dim, dim);
  dr.F.setFromTriplets(ft.begin(), ft.end());
  return tr;
}

namespace {

void push_element(const GradedElement& a, const TruncatedHilbert& h, int row_i, int col_i,
                  std::vector<Triplet>& out, std::size_t& dropped) {
  const int N = h.N;
  for (const auto& [w, c] : a.terms) {
    if (c == cplx{}) continue;
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n) {
        const Weight to{m + w.m, n + w.n};
        if (!h.contains(to)) {
          dropped += 2;
          continue;
        }
        for (int s = 0; s < 2; ++s) out.emplace_back(h.index(to, s, row_i), h.index({m, n}, s, col_i), c);
      }
  }
}

std::optional<Weight> single_weight(const MatrixGradedElement& a) {
  std::optional<Weight> w;
  for (const auto& e : a.entries)
    for (const auto& t : e.terms) {
      if (w && *w != t.first) return std::nullopt;
      w = t.first;
    }
  return w;
}

}  // namespace

TruncatedOperator represent(const GradedElement& a, const TruncatedHilbert& hilb) {
  return represent(MatrixGradedElement::scalar(a), hilb);
}

TruncatedOperator represent(const MatrixGradedElement& a, const TruncatedHilbert& hilb) {
  if (a.dim != hilb.amp)
    fail(Status::invalid_argument, "matrix size " + std::to_string(a.dim) +
                                       " does not match amplification " + std::to_string(hilb.amp));
  TruncatedOperator T;
  T.hilb = hilb;
  std::vector<Triplet> trip;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) push_element(a.at(i, j), hilb, i, j, trip, T.dropped);
  T.mat.resize(hilb.dim(), hilb.dim());
  T.mat.setFromTriplets(trip.begin(), trip.end());
  T.homogeneous = single_weight(a);
  return T;
}

TruncatedOperator deform_operator(const TruncatedOperator& T, double theta) {
  TruncatedOperator out = T;
  const TruncatedHilbert& h = T.hilb;
  for (Index col = 0; col < out.mat.outerSize(); ++col) {
    const Weight wc = h.weight(col);
    for (SparseOp::InnerIterator it(out.mat, col); it; ++it)
      it.valueRef() *= phase_factor(theta, h.weight(it.row()) - wc, wc);
  }
  return out;
}

Eigen::VectorXcd torus_unitary(const TruncatedHilbert& hilb, double t1, double t2) {
  Eigen::VectorXcd u(hilb.dim());
  for (Index k = 0; k < hilb.dim(); ++k) {
    const Weight w = hilb.weight(k);
    u[k] = std::polar(1.0, 2.0 * pi * (w.m * t1 + w.n * t2));
  }
  return u;
}

SparseOp conjugate_by_diagonal(const SparseOp& T, const Eigen::VectorXcd& u) {
  SparseOp out = T;
  for (Index col = 0; col < out.outerSize(); ++col)
    for (SparseOp::InnerIterator it(out, col); it; ++it)
      it.valueRef() *= u[it.row()] * std::conj(u[col]);
  return out;
}

TruncatedOperator weight_component(const TruncatedOperator& T, Weight w) {
  TruncatedOperator out = T;
  const TruncatedHilbert& h = T.hilb;
  out.mat.prune([&](Index row, Index col, const cplx&) { return h.weight(row) - h.weight(col) == w; });
  out.homogeneous = w;
  return out;
}

SparseOp identity_op(const TruncatedHilbert& hilb) {
  SparseOp I(hilb.dim(), hilb.dim());
  I.setIdentity();
  return I;
}

SparseOp commutator(const SparseOp& A, const SparseOp& B) {
  SparseOp AB = A * B;
  SparseOp BA = B * A;
  return AB - BA;
}

SparseOp diag_commutator(const Eigen::VectorXcd& d, const SparseOp& A) {
  SparseOp out = A;
  for (Index col = 0; col < out.outerSize(); ++col)
    for (SparseOp::InnerIterator it(out, col); it; ++it) it.valueRef() *= d[it.row()] - d[col];
  return out;
}

SparseOp keep_columns(const SparseOp& A, const TruncatedHilbert& hilb, int R) {
  SparseOp out = A;
  out.prune([&](Index, Index col, const cplx&) { return radius(hilb.weight(col)) <= R; });
  return out;
}

double window_distance(const SparseOp& A, const SparseOp& B, const TruncatedHilbert& hilb, int R) {
  const SparseOp diff = keep_columns(A, hilb, R) - keep_columns(B, hilb, R);
  return max_abs_entry(diff);
}

double max_abs_entry(const SparseOp& A) {
  double d = 0;
  for (Index col = 0; col < A.outerSize(); ++col)
    for (SparseOp::InnerIterator it(A, col); it; ++it) d = std::max(d, std::abs(it.value()));
  return d;
}

namespace {

template <class Op>
NormResult power_iterate(const Op& T, double tol, int max_iter) {
  NormResult r;
  if (T.cols() == 0) {
    r.converged = true;
    return r;
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(T.cols()) / std::sqrt(double(T.cols()));
  double lambda = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXcd Tv = T * v;
    const double next = Tv.squaredNorm();  // Rayleigh quotient of T*T
    r.iterations = it;
    if (next == 0.0) {
      r.value = 0.0;
      r.converged = true;
      return r;
    }
    Eigen::VectorXcd w = T.adjoint() * Tv;
    const double wn = w.norm();
    // Rayleigh quotients of T*T increase along the iteration; a decrease is rounding
    // noise (relative 1e-13 at a few thousand rows), so it counts as converged too.
    if (next - lambda <= tol * next) {
      r.value = std::sqrt(next);
      r.converged = true;
      return r;
    }
    lambda = next;
    v = w / wn;
  }
  r.value = std::sqrt(lambda);
  return r;
}

}  // namespace

NormResult power_norm(const SparseOp& T, double tol, int max_iter) {
  if (!(tol > 0)) fail(Status::invalid_argument, "tolerance must be positive");
  return power_iterate(T, tol, max_iter);
}

double operator_norm(const SparseOp& T, double tol, int max_iter) {
  const NormResult r = power_norm(T, tol, max_iter);
  if (!r.converged)
    fail(Status::not_converged, "power iteration did not converge in " + std::to_string(max_iter) +
                                    " steps (estimate " + std::to_string(r.value) + ")");
  return r.value;
}

double operator_norm(const DenseOp& T, double tol, int max_iter) {
  if (!(tol > 0)) fail(Status::invalid_argument, "tolerance must be positive");
  const NormResult r = power_iterate(T, tol, max_iter);
  if (!r.converged)
    fail(Status::not_converged, "power iteration did not converge in " + std::to_string(max_iter) +
                                    " steps (estimate " + std::to_string(r.value) + ")");
  return r.value;
}

double seminorm_nu(const GradedElement& a, int k, Weight alpha, const Truncation& tr) {
  if (k < 0 || alpha.m < 0 || alpha.n < 0)
    fail(Status::invalid_argument, "k and alpha must be non-negative");
  const int cut = std::max(a.cutoff, a.support_radius());
  const int R = tr.hilb.N - cut - k - alpha.m - alpha.n;
  if (R <= 0)
    fail(Status::window_exhausted, "seminorm window exhausted; need N >= " +
                                       std::to_string(cut + k + alpha.m + alpha.n + 1));
  SparseOp X = represent(a, tr.hilb).mat;
  for (int j = 0; j < alpha.n; ++j) X = diag_commutator(tr.gens.h2, X);
  for (int j = 0; j < alpha.m; ++j) X = diag_commutator(tr.gens.h1, X);
  SparseOp Y = commutator(tr.dirac.D, X);
  const Eigen::VectorXcd absD = tr.dirac.absD.cast<cplx>();
  for (int j = 0; j < k; ++j) {
    X = diag_commutator(absD, X);
    Y = diag_commutator(absD, Y);
  }
  return operator_norm(keep_columns(X, tr.hilb, R)) + operator_norm(keep_columns(Y, tr.hilb, R));
}

DecayReport verify_decay(const TruncatedOperator& T, int window) {
  const TruncatedHilbert& h = T.hilb;
  DecayReport rep;
  // Delta^2 multiplies the weight-w component by 16 pi^4 |w|^4; divide that back out.
  SparseOp lap2 = T.mat;
  for (Index col = 0; col < lap2.outerSize(); ++col)
    for (SparseOp::InnerIterator it(lap2, col); it; ++it) {
      const Weight w = h.weight(it.row()) - h.weight(col);
      const double r2 = double(w.m) * w.m + double(w.n) * w.n;
      it.valueRef() *= r2 * r2;
    }
  // Spectrum of Delta^2 T is nearly continuous at the top, so power iteration only
  // creeps up. Any Rayleigh quotient is a lower bound on the norm, which keeps the
  // ratios below conservative.
  rep.C = power_norm(lap2, 1e-6, 2000).value;
  // split T by weight in one pass
  std::map<Weight, std::vector<Triplet>> parts;
  for (Index col = 0; col < T.mat.outerSize(); ++col)
    for (SparseOp::InnerIterator it(T.mat, col); it; ++it) {
      const Weight w = h.weight(it.row()) - h.weight(col);
      if (std::abs(w.m) > window || std::abs(w.n) > window || w == Weight{}) continue;
      parts[w].emplace_back(it.row(), col, it.value());
    }
  for (const auto& [w, trip] : parts) {
    SparseOp Tw(T.mat.rows(), T.mat.cols());
    Tw.setFromTriplets(trip.begin(), trip.end());
    ++rep.components;
    const double nw = operator_norm(Tw);
    const double r2 = double(w.m) * w.m + double(w.n) * w.n;
    const double sq = rep.C > 0 ? nw * r2 * r2 / rep.C : INFINITY;
    const double lin = rep.C > 0 ? nw * r2 / rep.C : INFINITY;
    if (sq > rep.worst_ratio_sq) {
      rep.worst_ratio_sq = sq;
      rep.worst_sq = w;
    }
    if (lin > rep.worst_ratio_lin) {
      rep.worst_ratio_lin = lin;
      rep.worst_lin = w;
    }
  }
  rep.bound_holds = rep.worst_ratio_sq <= 1.0 + 1e-12;
  return rep;
}

cplx zeta_partial(const TruncatedOperator& T, cplx s, const DiracTruncation& dirac) {
  cplx z{};
  for (Index k = 0; k < T.mat.rows(); ++k) {
    const double lam = dirac.absD[k];
    if (lam == 0.0) continue;
    z += T.mat.coeff(k, k) * std::exp(-s * std::log(lam));
  }
  return z;
}

}  // namespace cld
