#include "cld/crossed.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "cld/errors.hpp"

namespace cld {

namespace {

cplx expi(double angle) { return std::polar(1.0, angle); }

}  // namespace

void CrossedElement::add(int k, int l, const GradedElement& a) { terms[{k, l}] += a; }

CrossedElement crossed_unit(int K, int L) {
  CrossedElement u;
  u.K = K;
  u.L = L;
  for (int l = -L; l <= L; ++l) u.add(0, l, GradedElement::unit());
  return u;
}

// (w^n z^l a)(w^n' z^l' b) = [l + n' = l' + p] exp(-2 pi i theta q n') w^{n+n'} z^{l+n'} (ab)
// for a of weight (p, q); ab is the undeformed product.
CrossedElement crossed_multiply(const CrossedElement& x, const CrossedElement& y, double theta,
                                CrossedStats* stats) {
  CrossedElement out;
  out.K = std::max(x.K, y.K);
  out.L = std::max(x.L, y.L);
  for (const auto& [kx, a] : x.terms)
    for (const auto& [ky, b] : y.terms) {
      const auto [n, l] = kx;
      const auto [n2, l2] = ky;
      for (const auto& [wa, ca] : a.terms) {
        if (l + n2 != l2 + wa.m) continue;
        const int N = n + n2, Lf = l + n2;
        const cplx ph = expi(-2.0 * pi * theta * double(wa.n) * n2);
        for (const auto& [wb, cb] : b.terms) {
          const cplx c = ph * ca * cb;
          if (std::abs(N) > out.K || std::abs(Lf) > out.L) {
            if (stats) {
              ++stats->dropped_terms;
              stats->dropped_mass += std::abs(c);
            }
            continue;
          }
          GradedElement& e = out.terms[{N, Lf}];
          e.add(wa + wb, c);
        }
      }
    }
  return out;
}

double distance(const CrossedElement& x, const CrossedElement& y) {
  double d = 0;
  static const GradedElement zero;
  for (const auto& [k, a] : x.terms) {
    auto it = y.terms.find(k);
    d = std::max(d, distance(a, it == y.terms.end() ? zero : it->second));
  }
  for (const auto& [k, b] : y.terms)
    if (!x.terms.count(k)) d = std::max(d, b.max_abs());
  return d;
}

void MatrixOverDeformed::add(int row, int col, const GradedElement& a) {
  if (std::abs(row) > window || std::abs(col) > window) {
    dropped += a.terms.size();
    return;
  }
  entries[{row, col}] += a;
}

// u^n (t -> e^{2 pi i l t} a), a of weight (m, n'): entry (n - l, m - l), value exp(2 pi i theta l n') a
MatrixOverDeformed kernel_map(int n, int l, const GradedElement& a, double theta, int window) {
  MatrixOverDeformed out;
  out.window = window;
  for (const auto& [w, c] : a.terms)
    out.add(n - l, w.m - l,
            GradedElement::monomial(w, expi(2.0 * pi * theta * double(l) * w.n) * c));
  return out;
}

MatrixOverDeformed kernel_map(const CrossedElement& x, double theta, int window) {
  MatrixOverDeformed out;
  out.window = window;
  for (const auto& [key, a] : x.terms) {
    const MatrixOverDeformed part = kernel_map(key.first, key.second, a, theta, window);
    out.dropped += part.dropped;
    for (const auto& [pos, e] : part.entries) out.entries[pos] += e;
  }
  return out;
}

// entry (l0, m0) with component of weight (p, q): l = p - m0, n = l0 + l
CrossedElement inverse_kernel_map(const MatrixOverDeformed& x, double theta, int K, int L) {
  CrossedElement out;
  out.K = K;
  out.L = L;
  for (const auto& [pos, e] : x.entries)
    for (const auto& [w, c] : e.terms) {
      const int l = w.m - pos.second;
      const int n = pos.first + l;
      out.add(n, l, GradedElement::monomial(w, expi(-2.0 * pi * theta * double(l) * w.n) * c));
    }
  return out;
}

MatrixOverDeformed matrix_multiply(const MatrixOverDeformed& x, const MatrixOverDeformed& y,
                                   double theta) {
  MatrixOverDeformed out;
  out.window = std::max(x.window, y.window);
  for (const auto& [px, a] : x.entries)
    for (const auto& [py, b] : y.entries) {
      if (px.second != py.first) continue;
      out.entries[{px.first, py.second}] += cl_product(a, b, theta);
    }
  return out;
}

double distance(const MatrixOverDeformed& x, const MatrixOverDeformed& y) {
  double d = 0;
  static const GradedElement zero;
  for (const auto& [k, a] : x.entries) {
    auto it = y.entries.find(k);
    d = std::max(d, distance(a, it == y.entries.end() ? zero : it->second));
  }
  for (const auto& [k, b] : y.entries)
    if (!x.entries.count(k)) d = std::max(d, b.max_abs());
  return d;
}

GradedElement cl_star(const GradedElement& a, double theta) {
  return to_cl(star(from_cl(a, theta)), theta);
}

namespace {

// Sparse vectors on l2(Z) (x) H, basis d_k (x) e_{(m,n,s)}.
using Key = std::tuple<int, int, int, int>;  // k, m, n, s
using Vec = std::map<Key, cplx>;

template <class Fn>
Vec apply(const Vec& v, Fn f) {
  Vec out;
  for (const auto& [key, c] : v) f(key, c, out);
  return out;
}

double vec_distance(const Vec& a, const Vec& b) {
  double d = 0;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    d = std::max(d, std::abs(c - (it == b.end() ? cplx{} : it->second)));
  }
  for (const auto& [k, c] : b)
    if (!a.count(k)) d = std::max(d, std::abs(c));
  return d;
}

}  // namespace

U0Report u0_conjugation_check(int p, int q, int l, double theta, int K, int N) {
  if (K < 1 || N < 1) fail(Status::invalid_argument, "windows must be positive");
  const double tp = 2.0 * pi * theta;
  auto U0 = [&](const Vec& v) {
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [k, m, n, s] = key;
      out[{k + m, m, n, s}] += expi(tp * double(n) * k) * c;
    });
  };
  auto U0adj = [&](const Vec& v) {
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [j, m, n, s] = key;
      out[{j - m, m, n, s}] += expi(-tp * double(n) * (j - m)) * c;
    });
  };
  auto za = [&](const Vec& v) {  // z^l a, a = e_{(p,q)}
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [k, m, n, s] = key;
      if (l + k == m + p) out[{k, m + p, n + q, s}] += c;
    });
  };
  auto w = [&](const Vec& v) {
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [k, m, n, s] = key;
      out[{k + 1, m, n, s}] += expi(tp * n) * c;
    });
  };
  auto D = [&](const Vec& v) {
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [k, m, n, s] = key;
      if (s == 0)
        out[{k, m, n, 1}] += -2.0 * pi * cplx(m, n) * c;
      else
        out[{k, m, n, 0}] += 2.0 * pi * cplx(-m, n) * c;
    });
  };
  // e^{2 pi i theta q l} e_{-l, col} (x) a^(theta), with a^(theta) in the asymmetric presentation
  auto rhs = [&](const Vec& v, int col) {
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [k, m, n, s] = key;
      if (k != col) return;
      out[{-l, m + p, n + q, s}] += expi(tp * double(q) * l) * cl_phase(theta, {p, q}, {m, n}) * c;
    });
  };
  // same operator through V (e^{-pi i theta pq} a)^(theta) V*, V = exp(pi i theta m n)
  auto rhs_sym = [&](const Vec& v) {
    return apply(v, [&](const Key& key, cplx c, Vec& out) {
      const auto [k, m, n, s] = key;
      if (k != p - l) return;
      const cplx ph = expi(-pi * theta * double(m) * n) * phase_factor(theta, {p, q}, {m, n}) *
                      expi(pi * theta * double(m + p) * (n + q)) * expi(-pi * theta * double(p) * q);
      out[{-l, m + p, n + q, s}] += expi(tp * double(q) * l) * ph * c;
    });
  };
  U0Report r;
  r.literal_column_agrees = true;
  auto note = [&](double& slot, double d, const Key& key, const char* what) {
    if (d > slot) slot = d;
    if (d > 1e-12 && r.first_mismatch.empty()) {
      std::ostringstream s;
      s << what << " at k=" << std::get<0>(key) << " m=" << std::get<1>(key)
        << " n=" << std::get<2>(key) << " s=" << std::get<3>(key) << " defect " << d;
      r.first_mismatch = s.str();
    }
  };
  for (int k = -K; k <= K; ++k)
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n)
        for (int s = 0; s < 2; ++s) {
          const Key key{k, m, n, s};
          const Vec e{{key, 1.0}};
          ++r.vectors;
          const Vec lhs = U0adj(za(U0(e)));
          note(r.conjugation_defect, vec_distance(lhs, rhs(e, p - l)), key, "conjugation");
          note(r.symmetric_route_defect, vec_distance(lhs, rhs_sym(e)), key, "symmetric route");
          if (vec_distance(lhs, rhs(e, -(l + p))) > 1e-12) r.literal_column_agrees = false;
          const Vec shifted{{{k + 1, m, n, s}, 1.0}};
          note(r.shift_defect, vec_distance(U0adj(w(U0(e))), shifted), key, "shift");
          note(r.dirac_defect, vec_distance(U0adj(D(U0(e))), D(e)), key, "dirac");
        }
  r.pass = r.conjugation_defect <= 1e-12 && r.symmetric_route_defect <= 1e-12 &&
           r.shift_defect <= 1e-12 && r.dirac_defect <= 1e-12;
  return r;
}

BimoduleVector left_act(const CrossedElement& x, const BimoduleVector& v, double theta) {
  BimoduleVector out;
  for (const auto& [key, a] : x.terms) {
    const auto [n, l] = key;
    for (const auto& [k, b] : v)
      for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
          const Weight w = wa + wb;
          if (l != -k + w.m) continue;  // z^l condition on the weight of a b
          const cplx c = expi(2.0 * pi * theta * double(n) * w.n) * ca * cb;
          out[k + n].add(w, c);
        }
  }
  return out;
}

BimoduleVector right_act(const BimoduleVector& v, const GradedElement& s, double theta) {
  BimoduleVector out;
  for (const auto& [k, b] : v)
    for (const auto& [ws, cs] : s.terms)
      for (const auto& [wb, cb] : b.terms)
        out[k + ws.m].add(wb + ws, expi(2.0 * pi * theta * double(k) * ws.n) * cb * cs);
  return out;
}

GradedElement inner_product(const BimoduleVector& x, const BimoduleVector& y, double theta,
                            bool literal) {
  GradedElement out;
  for (const auto& [k, a] : x)
    for (const auto& [k2, b] : y)
      for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) {
          if (k - wa.m != k2 - wb.m) continue;
          const cplx ph = literal ? cplx(1.0) : expi(2.0 * pi * theta * double(k) * (wa.n - wb.n));
          out.add(wb - wa, ph * std::conj(ca) * cb);
        }
  return out;
}

double distance(const BimoduleVector& x, const BimoduleVector& y) {
  double d = 0;
  static const GradedElement zero;
  for (const auto& [k, a] : x) {
    auto it = y.find(k);
    d = std::max(d, distance(a, it == y.end() ? zero : it->second));
  }
  for (const auto& [k, b] : y)
    if (!x.count(k)) d = std::max(d, b.max_abs());
  return d;
}

BimoduleReport bimodule_check(double theta, int samples, unsigned seed, double tol) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> wd(-3, 3), kd(-4, 4), nd(-2, 2);
  std::normal_distribution<double> g;
  auto coef = [&] { return cplx(g(rng), g(rng)); };
  auto mono = [&] { return GradedElement::monomial({wd(rng), wd(rng)}, coef()); };
  auto vec = [&] {
    BimoduleVector v;
    v[kd(rng)] += mono();
    v[kd(rng)] += mono();
    return v;
  };
  auto crossed = [&] {
    CrossedElement c;
    c.K = c.L = 64;
    c.add(nd(rng), kd(rng), mono());
    return c;
  };
  BimoduleReport r;
  r.samples = samples;
  auto upd = [](double& slot, double d) { slot = std::max(slot, d); };
  for (int t = 0; t < samples; ++t) {
    const BimoduleVector x = vec(), y = vec();
    const GradedElement s = mono(), s2 = mono(), a = mono();
    upd(r.right_unit, distance(right_act(x, GradedElement::unit(), theta), x));
    upd(r.right_associativity, distance(right_act(right_act(x, s, theta), s2, theta),
                                        right_act(x, cl_product(s, s2, theta), theta)));
    const CrossedElement X = crossed(), Y = crossed();
    upd(r.bimodule_commutation, distance(right_act(left_act(X, x, theta), s, theta),
                                         left_act(X, right_act(x, s, theta), theta)));
    upd(r.left_representation, distance(left_act(crossed_multiply(X, Y, theta), x, theta),
                                        left_act(X, left_act(Y, x, theta), theta)));
    const GradedElement xy = inner_product(x, y, theta);
    upd(r.inner_right_linear,
        distance(inner_product(x, right_act(y, s, theta), theta), cl_product(xy, s, theta)));
    upd(r.inner_left_conjugate, distance(inner_product(right_act(x, s, theta), y, theta),
                                         cl_product(cl_star(s, theta), xy, theta)));
    upd(r.inner_hermitian, distance(cl_star(xy, theta), inner_product(y, x, theta)));
    // a and w as crossed elements acting on the left: a = sum_l z^l a, w = sum_l w z^l
    CrossedElement A, Astar, W, Winv;
    A.K = Astar.K = W.K = Winv.K = 64;
    A.L = Astar.L = W.L = Winv.L = 64;
    for (int l = -40; l <= 40; ++l) {
      A.add(0, l, a);
      Astar.add(0, l, star(a));
      W.add(1, l, GradedElement::unit());
      Winv.add(-1, l, GradedElement::unit());
    }
    upd(r.left_adjointness, distance(inner_product(left_act(A, x, theta), y, theta),
                                     inner_product(x, left_act(Astar, y, theta), theta)));
    upd(r.left_adjointness, distance(inner_product(left_act(W, x, theta), y, theta),
                                     inner_product(x, left_act(Winv, y, theta), theta)));
    upd(r.literal_inner_defect,
        distance(inner_product(x, right_act(y, s, theta), theta, true),
                 cl_product(inner_product(x, y, theta, true), s, theta)));
    BimoduleVector d0;
    d0[0] = GradedElement::monomial({0, nd(rng)}, coef());
    upd(r.diagonal_example, distance(inner_product(d0, d0, theta),
                                     deformed_product(star(d0[0]), d0[0], 0.0)));
  }
  r.pass = r.right_unit <= tol && r.right_associativity <= tol && r.bimodule_commutation <= tol &&
           r.left_representation <= tol && r.inner_right_linear <= tol &&
           r.inner_left_conjugate <= tol && r.inner_hermitian <= tol &&
           r.left_adjointness <= tol && r.diagonal_example <= tol;
  return r;
}

}  // namespace cld
