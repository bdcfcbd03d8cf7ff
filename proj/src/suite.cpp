#include "cld/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "cld/cocycles.hpp"
#include "cld/crossed.hpp"
#include "cld/errors.hpp"
#include "cld/projections.hpp"
#include "cld/spectral.hpp"

namespace cld {

using nlohmann::json;

namespace {

using Product = std::function<GradedElement(const GradedElement&, const GradedElement&, double)>;

// exp(pi i theta m m' n n') on top of the correct phase: not bilinear, so associativity breaks
GradedElement mutant_product(const GradedElement& a, const GradedElement& b, double theta) {
  GradedElement out;
  for (const auto& [w, c] : a.terms)
    for (const auto& [w2, c2] : b.terms)
      out.add(w + w2, c * c2 * phase_factor(theta, w, w2) *
                          std::polar(1.0, pi * theta * double(w.m) * w2.m * w.n * w2.n));
  out.cutoff = a.cutoff + b.cutoff;
  return out;
}

struct Context {
  const SuiteConfig& cfg;
  std::mt19937_64 rng;
  Product product;

  explicit Context(const SuiteConfig& c) : cfg(c), rng(c.seed) {
    if (c.inject_phase_bug)
      product = mutant_product;
    else
      product = [](const GradedElement& a, const GradedElement& b, double t) {
        return deformed_product(a, b, t);
      };
  }

  cplx gauss() {
    std::normal_distribution<double> g;
    const double re = g(rng);
    return {re, g(rng)};
  }
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

  GradedElement random_element(int r, int terms) {
    GradedElement a;
    for (int k = 0; k < terms; ++k) a.add({uniform(-r, r), uniform(-r, r)}, gauss());
    a.cutoff = r;
    return a;
  }
  GradedElement random_monomial(int r) {
    GradedElement a = GradedElement::monomial({uniform(-r, r), uniform(-r, r)}, gauss());
    a.cutoff = r;
    return a;
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

using Check = std::function<void(Context&, CheckResult&)>;

struct Entry {
  std::string id;
  int criterion;
  std::string description;
  Check run;
};

void set_max(CheckResult& r, double tol, double measured) {
  r.tolerance = tol;
  r.measured = measured;
  r.pass = measured <= tol;
}

// ---- graded core -------------------------------------------------------------

void nc_torus_relation(Context& cx, CheckResult& r) {
  const GradedElement u = GradedElement::monomial({1, 0}), v = GradedElement::monomial({0, 1});
  double worst = 0;
  for (double t : cx.cfg.relation_thetas)
    worst = std::max(worst, distance(cx.product(u, v, t),
                                     std::polar(1.0, 2.0 * pi * t) * cx.product(v, u, t)));
  set_max(r, cx.cfg.tol.algebra, worst);
  r.detail = "max over theta grid of |u*v - e(theta) v*u|";
}

void associativity_and_star(Context& cx, CheckResult& r) {
  double assoc = 0, anti = 0;
  for (int k = 0; k < cx.cfg.samples; ++k) {
    const double t = cx.uniform01();
    const GradedElement a = cx.random_element(3, 5), b = cx.random_element(3, 5),
                        c = cx.random_element(3, 5);
    assoc = std::max(assoc, distance(cx.product(cx.product(a, b, t), c, t),
                                     cx.product(a, cx.product(b, c, t), t)));
    anti = std::max(anti, distance(star(cx.product(a, b, t)), cx.product(star(b), star(a), t)));
  }
  set_max(r, cx.cfg.tol.algebra, std::max(assoc, anti));
  r.detail = "associativity " + fmt(assoc) + ", star antihomomorphism " + fmt(anti);
}

void homogeneous_rule(Context& cx, CheckResult& r) {
  double worst = 0;
  for (int k = 0; k < cx.cfg.samples; ++k) {
    const double t = cx.uniform01();
    const GradedElement a = cx.random_monomial(5), b = cx.random_monomial(5);
    const Weight w = a.weight(), w2 = b.weight();
    const GradedElement expect =
        GradedElement::monomial(w + w2, phase_factor(t, w, w2) * (a.coeff(w) * b.coeff(w2)));
    const GradedElement got = cx.product(a, b, t);
    worst = std::max(worst, distance(got, expect) / std::max(1.0, std::abs(expect.coeff(w + w2))));
  }
  set_max(r, 1e-15, worst);
  r.detail = "relative deviation from phase_factor * undeformed product";
}

void commutative_at_zero(Context& cx, CheckResult& r) {
  double worst = 0;
  for (int k = 0; k < cx.cfg.samples; ++k) {
    const GradedElement a = cx.random_element(3, 5), b = cx.random_element(3, 5);
    worst = std::max(worst, distance(cx.product(a, b, 0.0), cx.product(b, a, 0.0)));
  }
  set_max(r, cx.cfg.tol.algebra, worst);
}

void fejer_trace(Context& cx, CheckResult& r) {
  double worst = 0;
  for (int k = 1; k <= 8; ++k)
    for (FejerNorm norm : {FejerNorm::standard, FejerNorm::literal}) {
      const GradedElement a = cx.random_element(6, 20);
      const cplx lhs = trace_tau(fejer_smooth(a, k, norm));
      const cplx rhs = fejer_coefficient(k, {0, 0}, norm) * trace_tau(a);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  set_max(r, 0.0, worst);
  r.detail = "tau(fejer_smooth(a, k)) vs c_00 tau(a), both normalizations, k = 1..8";
}

// ---- spectral ------------------------------------------------------------------

void representation_compatibility(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(cx.cfg.cutoff, 1);
  double worst = 0;
  int R = 0;
  for (double t : cx.cfg.thetas)
    for (int k = 0; k < 4; ++k) {
      const GradedElement a = cx.random_element(3, 6), b = cx.random_element(3, 6);
      const SparseOp A = deform_operator(represent(a, tr.hilb), t).mat;
      const SparseOp B = deform_operator(represent(b, tr.hilb), t).mat;
      const SparseOp AB = deform_operator(represent(deformed_product(a, b, t), tr.hilb), t).mat;
      R = cx.cfg.cutoff - a.cutoff - b.cutoff;
      worst = std::max(worst, window_distance(SparseOp(A * B), AB, tr.hilb, R));
    }
  set_max(r, cx.cfg.tol.operators, worst);
  r.detail = "N=" + std::to_string(cx.cfg.cutoff) + ", interior radius " + std::to_string(R);
}

void iterated_deformation(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(cx.cfg.cutoff, 1);
  double worst = 0;
  for (int k = 0; k < 6; ++k) {
    const double t = cx.uniform01(), t2 = cx.uniform01();
    const GradedElement a = cx.random_element(3, 6), b = cx.random_element(3, 6);
    TruncatedOperator T = represent(a, tr.hilb);
    T.mat = T.mat * represent(b, tr.hilb).mat;
    T.homogeneous.reset();
    const SparseOp twice = deform_operator(deform_operator(T, t), t2).mat;
    const SparseOp once = deform_operator(T, t + t2).mat;
    worst = std::max(worst, max_abs_entry(SparseOp(twice - once)));
  }
  set_max(r, cx.cfg.tol.algebra, worst);
}

void zeta_invariance(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(12, 1);
  int identical = 0, total = 0;
  for (int k = 0; k < 20; ++k) {
    const TruncatedOperator T = represent(fejer_smooth(cx.random_element(4, 12), 4), tr.hilb);
    const double t = cx.uniform01();
    const TruncatedOperator Tt = deform_operator(T, t);
    for (cplx s : {cplx(3.0), cplx(4.0), cplx(5.0, 2.0)}) {
      ++total;
      if (zeta_partial(Tt, s, tr.dirac) == zeta_partial(T, s, tr.dirac)) ++identical;
    }
  }
  r.tolerance = 0;
  r.measured = total - identical;
  r.pass = identical == total;
  r.detail = std::to_string(identical) + "/" + std::to_string(total) + " bit-identical";
}

void decay_bound(Context& cx, CheckResult& r) {
  const int N = cx.cfg.decay_cutoff;
  const Truncation tr = build_truncation(N, 1);
  double worst_sq = 0, worst_lin = 0;
  for (int k = 0; k < 3; ++k) {
    GradedElement a;
    const double width = 1.5 + k;
    for (int m = -6; m <= 6; ++m)
      for (int n = -6; n <= 6; ++n)
        a.add({m, n}, std::exp(-(m * m + n * n) / (2 * width * width)) * cx.gauss());
    a.cutoff = 6;
    const DecayReport d = verify_decay(represent(a, tr.hilb), 6);
    worst_sq = std::max(worst_sq, d.worst_ratio_sq);
    worst_lin = std::max(worst_lin, d.worst_ratio_lin);
  }
  set_max(r, 1.0 + 1e-12, worst_sq);
  r.detail = "max |T_w| |w|^4 / C = " + fmt(worst_sq) + "; exponent-1 variant |T_w| |w|^2 / C = " +
             fmt(worst_lin);
}

void equivariance(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(8, 1);
  double worst = 0;
  for (int k = 0; k < 6; ++k) {
    const TruncatedOperator T = represent(cx.random_element(3, 8), tr.hilb);
    const double t = cx.uniform01();
    const Eigen::VectorXcd U = torus_unitary(tr.hilb, cx.uniform01(), cx.uniform01());
    TruncatedOperator AdT = T;
    AdT.mat = conjugate_by_diagonal(T.mat, U);
    const SparseOp lhs = conjugate_by_diagonal(deform_operator(T, t).mat, U);
    const SparseOp rhs = deform_operator(AdT, t).mat;
    worst = std::max(worst, max_abs_entry(SparseOp(lhs - rhs)));
  }
  set_max(r, cx.cfg.tol.algebra, worst);
}

void dirac_phase(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(8, 1);
  const SparseOp I = identity_op(tr.hilb);
  const double sq = max_abs_entry(SparseOp(tr.dirac.F * tr.dirac.F - I));
  Eigen::VectorXcd d(tr.hilb.dim());
  std::vector<cplx> site(static_cast<std::size_t>(tr.hilb.sites()));
  for (auto& c : site) c = cx.gauss();
  for (Eigen::Index k = 0; k < d.size(); ++k)
    d[k] = site[static_cast<std::size_t>(k / 2)];  // same value on both spinor slots
  const double comm = max_abs_entry(diag_commutator(d, tr.dirac.F));
  set_max(r, 1e-14, std::max(sq, comm));
  r.detail = "|F^2 - 1| = " + fmt(sq) + ", |[F, even diagonal]| = " + fmt(comm) +
             "; F = +1 on the two kernel slots";
}

void seminorm_invariance(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(10, 1);
  double worst = 0;
  for (int k = 0; k < 3; ++k) {
    const GradedElement a = cx.random_element(2, 6);
    const GradedElement b = rotate(a, cx.uniform01(), cx.uniform01());
    const double na = seminorm_nu(a, 1, {1, 0}, tr), nb = seminorm_nu(b, 1, {1, 0}, tr);
    worst = std::max(worst, std::abs(na - nb) / na);
  }
  set_max(r, 1e-9, worst);
  r.detail = "relative change of nu_{1,(1,0)} under sigma_t";
}

// ---- cocycles ------------------------------------------------------------------

void cyclic_and_invariant(Context& cx, CheckResult& r) {
  double cyc = 0, inv = 0;
  for (int k = 0; k < cx.cfg.samples / 4 + 1; ++k) {
    const double t = cx.uniform01();
    const CyclicCochain tau = trace_cochain(t);
    const CyclicCochain ii = contract(contract(tau, 2), 1);
    const GradedElement a = cx.random_monomial(3), b = cx.random_monomial(3);
    // total weight zero, otherwise every term vanishes
    const GradedElement c = GradedElement::monomial(Weight{} - a.weight() - b.weight(), cx.gauss());
    cyc = std::max(cyc, std::abs(evaluate(tau, {deformed_product(a, b, t)}) -
                                 evaluate(tau, {deformed_product(b, a, t)})));
    cyc = std::max(cyc, std::abs(evaluate(ii, {a, b, c}) - evaluate(ii, {c, a, b})));
    const double t1 = cx.uniform01(), t2 = cx.uniform01();
    inv = std::max(inv, std::abs(evaluate(ii, {rotate(a, t1, t2), rotate(b, t1, t2),
                                               rotate(c, t1, t2)}) -
                                 evaluate(ii, {a, b, c})));
  }
  const double scale = 4 * pi * pi * 36;  // |delta_i| <= 2 pi 3 per derivative
  set_max(r, cx.cfg.tol.algebra, std::max(cyc, inv) / scale);
  r.detail = "cyclic " + fmt(cyc) + ", torus invariance " + fmt(inv) + " (scaled by 4 pi^2 36)";
}

void hochschild(Context& cx, CheckResult& r) {
  double worst = 0;
  for (int k = 0; k < cx.cfg.samples / 4 + 1; ++k) {
    const double t = cx.uniform01();
    const CyclicCochain tau = trace_cochain(t);
    const CyclicCochain ii = contract(contract(tau, 2), 1);
    auto M = [&](int rad) { return MatrixGradedElement::scalar(cx.random_element(rad, 3)); };
    worst = std::max(worst, std::abs(hochschild_coboundary(tau, {M(3), M(3)})));
    worst = std::max(worst, std::abs(hochschild_coboundary(ii, {M(2), M(2), M(2), M(2)})) / 1e3);
  }
  set_max(r, cx.cfg.tol.algebra, worst);
  r.detail = "b tau on pairs, b(i1 i2 tau) on 4-tuples (scaled by 1e-3)";
}

void leibniz_oracle(Context& cx, CheckResult& r) {
  double worst = 0;
  for (int k = 0; k < cx.cfg.samples / 4 + 1; ++k) {
    const double t = cx.uniform01();
    const CyclicCochain ii = contract(contract(trace_cochain(t), 2), 1);
    const GradedElement a = cx.random_element(2, 4), b = cx.random_element(2, 4),
                        c = cx.random_element(2, 4);
    auto P = [&](const GradedElement& x, const GradedElement& y) { return deformed_product(x, y, t); };
    // tau(a0 d1(a1) d2(a2) - a0 d2(a1) d1(a2))
    const cplx closed = trace_tau(P(P(a, derive(b, 1)), derive(c, 2)) - P(P(a, derive(b, 2)), derive(c, 1)));
    worst = std::max(worst, std::abs(evaluate(ii, {a, b, c}) - closed) / std::max(1.0, std::abs(closed)));
  }
  set_max(r, cx.cfg.tol.algebra, worst);
}

void trace_pairing(Context& cx, CheckResult& r) {
  PairingOptions po;
  double worst = 0;
  std::ostringstream d;
  for (double t : cx.cfg.thetas) {
    const MatrixGradedElement p = powers_rieffel(default_profile(t, cx.cfg.fourier_cutoff));
    const PairingReport rep = k0_pairing(trace_cochain(), p, t, po);
    worst = std::max(worst, std::abs(rep.value - t));
    d << "tau(p_" << fmt(t) << ")=" << rep.value.real() << " ";
  }
  const PairingReport one =
      k0_pairing(trace_cochain(), MatrixGradedElement::identity(1), 0.3, po);
  worst = std::max(worst, std::abs(one.value - 1.0));
  d << "tau(1)=" << one.value.real();
  set_max(r, cx.cfg.tol.trace, worst);
  r.detail = d.str();
}

struct IndexRun {
  Normalization norm;
  std::vector<IndexReport> index;
  std::vector<PairingReport> ch;
};

IndexRun index_and_ch(Context& cx) {
  PairingOptions co;
  co.N = cx.cfg.calibration_cutoff;
  co.margin = 2;
  IndexOptions bo;
  bo.N = cx.cfg.calibration_cutoff;
  IndexRun run;
  run.norm = calibrate_chern(bott_projection(cx.cfg.bott_cutoff), co, bo);
  PairingOptions po;
  po.N = cx.cfg.pairing_cutoff;
  po.margin = cx.cfg.pairing_margin;
  po.norm = run.norm;
  IndexOptions io;
  io.N = cx.cfg.index_cutoff;
  for (double t : cx.cfg.thetas) {
    const MatrixGradedElement p = powers_rieffel(default_profile(t, cx.cfg.fourier_cutoff));
    run.index.push_back(fredholm_index_oracle(p, t, io));
    run.ch.push_back(k0_pairing(chern_cochain(2), p, t, po));
  }
  return run;
}

void index_invariance(Context& cx, CheckResult& r) {
  const IndexRun run = index_and_ch(cx);
  std::set<int> values;
  bool reliable = true;
  double worst = 0;
  std::ostringstream d;
  d << "kappa2=" << run.norm.chern_degree2.real() << " (Bott index " << run.norm.calibration_index
    << "); ";
  for (std::size_t k = 0; k < run.index.size(); ++k) {
    values.insert(run.index[k].index);
    reliable = reliable && run.index[k].reliable;
    worst = std::max(worst, std::abs(run.ch[k].normalized - double(run.index[k].index)));
    d << "theta=" << fmt(cx.cfg.thetas[k]) << ": index " << run.index[k].index << ", ch "
      << run.ch[k].normalized.real() << "; ";
  }
  r.tolerance = cx.cfg.tol.pairing;
  r.measured = worst;
  r.pass = values.size() == 1 && reliable && worst <= r.tolerance;
  if (values.size() != 1) d << "index not constant; ";
  if (!reliable) d << "index flagged unreliable; ";
  r.detail = d.str();
}

void bott_calibration(Context& cx, CheckResult& r) {
  const MatrixGradedElement b = bott_projection(cx.cfg.bott_cutoff);
  IndexOptions io;
  io.N = cx.cfg.bott_index_cutoff;
  const IndexReport ir = fredholm_index_oracle(b, 0.0, io);
  PairingOptions po;
  const PairingReport ii = k0_pairing(contract(contract(trace_cochain(), 2), 1), b, 0.0, po);
  const double c1 = std::round(ii.normalized.real());
  double worst = 0;
  std::ostringstream d;
  d << "index " << ir.index << ", c1 " << c1 << "; ";
  for (double t : cx.cfg.thetas) {
    const PairingReport rep = combined_pairing(trace_cochain(), b, t, po);
    worst = std::max(worst, std::abs(rep.normalized - (1.0 + c1 * t)));
    d << "theta=" << fmt(t) << ": " << rep.normalized.real() << " ";
  }
  r.tolerance = cx.cfg.tol.combined;
  r.measured = worst;
  r.pass = std::abs(ir.index) == 1 && ir.reliable && std::abs(c1) == 1 && worst <= r.tolerance;
  r.detail = d.str();
}

void contraction_pairing(Context& cx, CheckResult& r) {
  const MatrixGradedElement b = bott_projection(cx.cfg.bott_cutoff);
  PairingOptions po;
  const PairingReport ii = k0_pairing(contract(contract(trace_cochain(), 2), 1), b, 0.0, po);
  const double c = std::round(ii.normalized.real());
  PairingOptions co;
  co.N = cx.cfg.calibration_cutoff;
  co.margin = 2;
  IndexOptions bo;
  bo.N = cx.cfg.calibration_cutoff;
  PairingOptions io;
  io.N = cx.cfg.contraction_cutoff;
  io.margin = std::max(2, cx.cfg.contraction_cutoff / 4);
  io.extrapolate = false;
  io.norm = calibrate_chern(b, co, bo);
  double worst = 0;
  std::ostringstream d;
  d << "<i1 i2 tau, Bott> = " << ii.normalized.real() << "; ";
  const CyclicCochain iich = contract(contract(chern_cochain(2), 2), 1);
  for (double t : cx.cfg.thetas) {
    const MatrixGradedElement p = powers_rieffel(default_profile(t, cx.cfg.fourier_cutoff));
    const PairingReport rep = k0_pairing(iich, p, t, io);
    worst = std::max(worst, std::abs(rep.normalized));
    d << "<i1 i2 ch2, p_" << fmt(t) << "> = " << std::abs(rep.normalized) << " ";
  }
  r.tolerance = cx.cfg.tol.pairing;
  r.measured = worst;
  r.pass = c != 0 && ii.integer_distance <= cx.cfg.tol.combined && worst <= r.tolerance;
  r.detail = d.str();
}

void cocycle_consistency(Context& cx, CheckResult& r) {
  const Truncation tr = build_truncation(7, 1);
  std::vector<Weight> ws;
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n)
      if (std::abs(m) + std::abs(n) <= 6) ws.push_back({m, n});
  auto l1 = [](Weight w) { return std::abs(w.m) + std::abs(w.n); };
  std::vector<SparseOp> ops;
  double worst = 0;
  long count = 0;
  const double t = cx.cfg.thetas.front();
  std::vector<SparseOp> rep;
  for (Weight w : ws) rep.push_back(deform_operator(represent(GradedElement::monomial(w), tr.hilb), t).mat);
  for (const auto& ins : std::vector<std::vector<int>>{{2, 1}, {1, 2}, {1, 1}}) {
    CyclicCochain phi = trace_cochain(t);
    for (int d : ins) phi = contract(phi, d);
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = 0; j < ws.size(); ++j) {
        if (l1(ws[i]) + l1(ws[j]) > 6) continue;
        for (std::size_t k = 0; k < ws.size(); ++k) {
          if (l1(ws[i]) + l1(ws[j]) + l1(ws[k]) > 6) continue;
          ++count;
          const std::vector<GradedElement> args{GradedElement::monomial(ws[i]),
                                                GradedElement::monomial(ws[j]),
                                                GradedElement::monomial(ws[k])};
          const cplx formula = deformed_cocycle_eval(phi, t, args);
          const Weight total = ws[i] + ws[j] + ws[k];
          cplx op{};
          if (total == Weight{}) op = evaluate_operators(phi, {rep[i], rep[j], rep[k]}, tr, 0);
          worst = std::max(worst, std::abs(formula - op));
        }
      }
  }
  set_max(r, cx.cfg.tol.cocycle, worst);
  r.detail = std::to_string(count) + " triples (i1i2, i2i1, i1i1 contractions of tau), theta=" +
             fmt(t) + "; operator side vanishes identically off total weight 0";
}

// ---- crossed products ----------------------------------------------------------

void kernel_map_checks(Context& cx, CheckResult& r) {
  const int W = cx.cfg.window;
  double closed = 0, hom = 0, round = 0;
  long pairs = 0;
  for (double t : cx.cfg.thetas) {
    // closed form on every generator of the window
    for (int n = -W; n <= W; ++n)
      for (int l = -W; l <= W; ++l)
        for (int p = -3; p <= 3; ++p)
          for (int q = -3; q <= 3; ++q) {
            const GradedElement a = GradedElement::monomial({p, q});
            const MatrixOverDeformed x = kernel_map(n, l, a, t, 4 * W);
            MatrixOverDeformed expect;
            expect.window = 4 * W;
            expect.add(n - l, p - l, GradedElement::monomial({p, q}, std::polar(1.0, 2 * pi * t * l * q)));
            closed = std::max(closed, distance(x, expect));
            CrossedElement c;
            c.K = c.L = 4 * W;
            c.add(n, l, a);
            round = std::max(round, distance(inverse_kernel_map(x, t, 4 * W, 4 * W), c));
          }
    // homomorphism on generator pairs
    const int w = 2;
    for (int n = -w; n <= w; ++n)
      for (int l = -w; l <= w; ++l)
        for (int n2 = -w; n2 <= w; ++n2)
          for (int l2 = -w; l2 <= w; ++l2)
            for (int p = -1; p <= 1; ++p)
              for (int q = -1; q <= 1; ++q)
                for (int p2 = -1; p2 <= 1; ++p2)
                  for (int q2 = -1; q2 <= 1; ++q2) {
                    CrossedElement x, y;
                    x.K = x.L = y.K = y.L = W;
                    x.add(n, l, GradedElement::monomial({p, q}, cx.gauss()));
                    y.add(n2, l2, GradedElement::monomial({p2, q2}, cx.gauss()));
                    const MatrixOverDeformed lhs = kernel_map(crossed_multiply(x, y, t), t, 4 * W);
                    const MatrixOverDeformed rhs =
                        matrix_multiply(kernel_map(x, t, 4 * W), kernel_map(y, t, 4 * W), t);
                    hom = std::max(hom, distance(lhs, rhs));
                    ++pairs;
                  }
  }
  set_max(r, cx.cfg.tol.algebra, std::max({closed, hom, round}));
  r.detail = "closed form " + fmt(closed) + ", homomorphism " + fmt(hom) + " on " +
             std::to_string(pairs) + " pairs, round trip " + fmt(round);
}

void u0_checks(Context& cx, CheckResult& r) {
  double worst = 0;
  int runs = 0;
  bool literal_all = true;
  std::string mismatch;
  for (double t : cx.cfg.thetas)
    for (int p = -1; p <= 1; ++p)
      for (int q = -1; q <= 1; ++q)
        for (int l = -2; l <= 2; ++l) {
          const U0Report u = u0_conjugation_check(p, q, l, t, cx.cfg.window, 3);
          ++runs;
          worst = std::max({worst, u.conjugation_defect, u.symmetric_route_defect, u.shift_defect,
                            u.dirac_defect});
          if (p != 0 && u.literal_column_agrees) literal_all = false;
          if (!u.pass && mismatch.empty()) mismatch = u.first_mismatch;
        }
  set_max(r, cx.cfg.tol.algebra, worst);
  r.detail = std::to_string(runs) + " runs; target column p - l" +
             std::string(literal_all ? "" : " (literal column also matched somewhere)") +
             (mismatch.empty() ? "" : "; first mismatch: " + mismatch);
}

void bimodule(Context& cx, CheckResult& r) {
  double worst = 0;
  double literal = 0;
  for (double t : cx.cfg.thetas) {
    const BimoduleReport b = bimodule_check(t, cx.cfg.samples / 2 + 1, unsigned(cx.cfg.seed));
    worst = std::max({worst, b.right_unit, b.right_associativity, b.bimodule_commutation,
                      b.left_representation, b.inner_right_linear, b.inner_left_conjugate,
                      b.inner_hermitian, b.left_adjointness, b.diagonal_example});
    literal = std::max(literal, b.literal_inner_defect);
  }
  set_max(r, cx.cfg.tol.algebra, worst);
  r.detail = "worst bimodule defect " + fmt(worst) + "; literal inner product misses by " + fmt(literal);
}

std::vector<Entry> registry() {
  return {
      {"criterion.1", 1, "NC-torus relation u*v = e(theta) v*u", nc_torus_relation},
      {"criterion.2", 2, "associativity and star antihomomorphism on random triples",
       associativity_and_star},
      {"criterion.3", 3, "a^(theta) b^(theta) = (a *_theta b)^(theta) on the interior window",
       representation_compatibility},
      {"criterion.4", 4, "deform by theta then theta' equals deform by theta + theta'",
       iterated_deformation},
      {"criterion.5", 5, "zeta_partial bit-identical under deformation", zeta_invariance},
      {"criterion.6", 6, "fourth-derivative decay bound", decay_bound},
      {"criterion.7", 7, "tau(powers_rieffel(theta)) = theta and tau(1) = 1", trace_pairing},
      {"criterion.8", 8, "index constant on the theta grid; normalized ch2 pairing matches",
       index_invariance},
      {"criterion.9", 9, "Bott index +-1 and combined pairing 1 +- theta", bott_calibration},
      {"criterion.10", 10, "kernel_map closed form and homomorphism; U0 identities",
       [](Context& cx, CheckResult& r) {
         CheckResult a, b;
         kernel_map_checks(cx, a);
         u0_checks(cx, b);
         r.tolerance = a.tolerance;
         r.measured = std::max(a.measured, b.measured);
         r.pass = a.pass && b.pass;
         r.detail = a.detail + "; U0: " + b.detail;
       }},
      {"criterion.11", 11, "weight-tuple cocycle formula equals the operator side",
       cocycle_consistency},
      {"criterion.12", 12, "i1 i2 tau pairs to a nonzero integer; i1 i2 ch2 pairs to zero",
       contraction_pairing},
      {"graded.homogeneous_rule", 0, "homogeneous products are phase times undeformed product",
       homogeneous_rule},
      {"graded.commutative_at_zero", 0, "theta = 0 product commutes", commutative_at_zero},
      {"graded.fejer_trace", 0, "tau(fejer_smooth(a, k)) = c_00 tau(a)", fejer_trace},
      {"spectral.equivariance", 0, "Ad U_t commutes with deform_operator", equivariance},
      {"spectral.dirac_phase", 0, "F^2 = 1 and F commutes with even weight-(0,0) diagonals",
       dirac_phase},
      {"spectral.seminorm_invariance", 0, "seminorms are invariant under the torus action",
       seminorm_invariance},
      {"cocycles.cyclic_invariant", 0, "cyclic symmetry and torus invariance of cochains",
       cyclic_and_invariant},
      {"cocycles.hochschild", 0, "b phi = 0 for tau and i1 i2 tau", hochschild},
      {"cocycles.leibniz", 0, "contract twice matches the closed two-derivation form",
       leibniz_oracle},
      {"crossed.bimodule", 0, "bimodule actions, inner product and adjointness", bimodule},
  };
}

}  // namespace

std::vector<std::string> suite_check_ids() {
  std::vector<std::string> ids;
  for (const auto& e : registry()) ids.push_back(e.id);
  return ids;
}

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.samples < 1) fail(Status::invalid_argument, "samples must be positive");
  for (double t : config.thetas)
    if (!std::isfinite(t)) fail(Status::invalid_argument, "theta grid values must be finite");
  const Tolerances& tl = config.tol;
  for (double x : {tl.algebra, tl.operators, tl.trace, tl.pairing, tl.combined, tl.cocycle})
    if (!(x > 0)) fail(Status::invalid_argument, "tolerances must be positive");
  SuiteReport rep;
  rep.config = config;
  rep.smoke = config.smoke;
  if (config.smoke) return rep;
  const auto all = registry();
  for (const auto& id : config.only) {
    bool known = false;
    for (const auto& e : all) known = known || e.id == id;
    if (!known) fail(Status::invalid_argument, "unknown check id '" + id + "'");
  }
  for (const auto& e : all) {
    if (config.criteria_only && e.criterion == 0) continue;
    if (!config.only.empty() &&
        std::find(config.only.begin(), config.only.end(), e.id) == config.only.end())
      continue;
    // each check gets its own stream so results do not depend on the selection
    SuiteConfig local = config;
    local.seed = config.seed * 1000003u + std::hash<std::string>{}(e.id) % 1000003u;
    Context cx(local);
    CheckResult r;
    r.id = e.id;
    r.criterion = e.criterion;
    r.description = e.description;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(cx, r);
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("error: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    (r.pass ? rep.passed : rep.failed) += 1;
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

namespace {

json tolerances_json(const Tolerances& t) {
  return {{"algebra", t.algebra}, {"operators", t.operators}, {"trace", t.trace},
          {"pairing", t.pairing}, {"combined", t.combined},   {"cocycle", t.cocycle}};
}

json config_json(const SuiteConfig& c) {
  return {{"thetas", c.thetas},
          {"relation_thetas", c.relation_thetas},
          {"cutoff", c.cutoff},
          {"decay_cutoff", c.decay_cutoff},
          {"fourier_cutoff", c.fourier_cutoff},
          {"bott_cutoff", c.bott_cutoff},
          {"index_cutoff", c.index_cutoff},
          {"bott_index_cutoff", c.bott_index_cutoff},
          {"pairing_cutoff", c.pairing_cutoff},
          {"pairing_margin", c.pairing_margin},
          {"calibration_cutoff", c.calibration_cutoff},
          {"contraction_cutoff", c.contraction_cutoff},
          {"window", c.window},
          {"samples", c.samples},
          {"seed", c.seed},
          {"tolerances", tolerances_json(c.tol)},
          {"smoke", c.smoke},
          {"inject_phase_bug", c.inject_phase_bug},
          {"criteria_only", c.criteria_only},
          {"only", c.only}};
}

template <class T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

std::string config_to_json(const SuiteConfig& c) { return config_json(c).dump(2); }

SuiteConfig config_from_json(const std::string& text) {
  SuiteConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) fail(Status::parse_error, "suite config must be a JSON object");
    take(j, "thetas", c.thetas);
    take(j, "relation_thetas", c.relation_thetas);
    take(j, "cutoff", c.cutoff);
    take(j, "decay_cutoff", c.decay_cutoff);
    take(j, "fourier_cutoff", c.fourier_cutoff);
    take(j, "bott_cutoff", c.bott_cutoff);
    take(j, "index_cutoff", c.index_cutoff);
    take(j, "bott_index_cutoff", c.bott_index_cutoff);
    take(j, "pairing_cutoff", c.pairing_cutoff);
    take(j, "pairing_margin", c.pairing_margin);
    take(j, "calibration_cutoff", c.calibration_cutoff);
    take(j, "contraction_cutoff", c.contraction_cutoff);
    take(j, "window", c.window);
    take(j, "samples", c.samples);
    take(j, "seed", c.seed);
    take(j, "smoke", c.smoke);
    take(j, "inject_phase_bug", c.inject_phase_bug);
    take(j, "criteria_only", c.criteria_only);
    take(j, "only", c.only);
    if (j.contains("tolerances")) {
      const json& t = j.at("tolerances");
      take(t, "algebra", c.tol.algebra);
      take(t, "operators", c.tol.operators);
      take(t, "trace", c.tol.trace);
      take(t, "pairing", c.tol.pairing);
      take(t, "combined", c.tol.combined);
      take(t, "cocycle", c.tol.cocycle);
    }
  } catch (const json::exception& e) {
    fail(Status::parse_error, std::string("suite config: ") + e.what());
  }
  return c;
}

std::string report_to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"criterion", c.criterion},
                      {"description", c.description},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail},
                      {"seconds", c.seconds}});
  json out = {{"config", config_json(r.config)},
              {"smoke", r.smoke},
              {"passed", r.passed},
              {"failed", r.failed},
              {"checks", checks}};
  return out.dump(2);
}

}  // namespace cld
