#include "cld/cocycles.hpp"

#include <cmath>
#include <sstream>

#include "cld/errors.hpp"
#include "cld/linalg.hpp"
#include "cld/projections.hpp"

namespace cld {

std::string CyclicCochain::name() const {
  std::ostringstream s;
  for (auto it = insertions.rbegin(); it != insertions.rend(); ++it) s << "i" << *it << ":";
  if (base == CochainBase::trace)
    s << "tau";
  else
    s << "ch" << base_degree;
  return s.str();
}

CyclicCochain trace_cochain(double theta, int amp) {
  CyclicCochain c;
  c.theta = theta;
  c.amp = amp;
  return c;
}

CyclicCochain chern_cochain(int n, int amp) {
  if (n < 0 || n % 2 != 0) fail(Status::invalid_argument, "Chern cocycle degree must be even");
  CyclicCochain c;
  c.base = CochainBase::chern;
  c.base_degree = n;
  c.amp = amp;
  return c;
}

CyclicCochain contract(const CyclicCochain& phi, int delta) {
  if (delta != 1 && delta != 2) fail(Status::invalid_argument, "derivation tag must be 1 or 2");
  if (phi.base != CochainBase::trace && phi.base != CochainBase::chern)
    fail(Status::unsupported, "contraction needs a closed graded trace base");
  CyclicCochain c = phi;
  c.insertions.push_back(delta);
  return c;
}

CyclicCochain parse_cochain(const std::string& spec) {
  std::string s = spec;
  for (char& ch : s)
    if (ch == ':' || ch == ',') ch = ' ';
  std::istringstream in(s);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(t);
  if (tok.empty()) fail(Status::parse_error, "empty cocycle spec");
  CyclicCochain c;
  const std::string& base = tok.back();
  if (base == "tau") {
    c = trace_cochain();
  } else if (base.rfind("ch", 0) == 0) {
    int n = 2;
    if (base.size() > 2) {
      try {
        n = std::stoi(base.substr(2));
      } catch (...) {
        fail(Status::parse_error, "bad Chern degree in '" + base + "'");
      }
    }
    if (n != 0 && n != 2) fail(Status::parse_error, "Chern degree must be 0 or 2");
    c = chern_cochain(n);
  } else {
    fail(Status::parse_error, "unknown cocycle base '" + base + "'");
  }
  for (auto it = tok.rbegin() + 1; it != tok.rend(); ++it) {
    if (*it == "i1")
      c = contract(c, 1);
    else if (*it == "i2")
      c = contract(c, 2);
    else
      fail(Status::parse_error, "unknown contraction '" + *it + "'");
  }
  return c;
}

cplx trace_tau(const GradedElement& a) { return a.coeff({0, 0}); }

namespace {

// Algebra backends for the form evaluator.
struct ElementAlgebra {
  using Value = MatrixGradedElement;
  double theta = 0.0;
  int amp = 1;
  bool cl = false;

  Value unit() const { return MatrixGradedElement::identity(amp); }
  Value mul(const Value& a, const Value& b) const {
    return cl ? matrix_cl_product(a, b, theta) : matrix_product(a, b, theta);
  }
  Value derive(int j, const Value& a) const {
    Value out = a;
    for (auto& e : out.entries) e = cld::derive(e, j);
    return out;
  }
  cplx trace(const Value& a) const { return matrix_trace_tau(a); }
  cplx chern(const std::vector<std::pair<bool, Value>>&, int) const {
    fail(Status::unsupported, "Chern cochains are evaluated on operators only");
  }
};

struct OperatorAlgebra {
  using Value = SparseOp;
  const Truncation* tr = nullptr;
  int interior = 0;

  Value unit() const { return identity_op(tr->hilb); }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value derive(int j, const Value& a) const {
    return diag_commutator(j == 1 ? tr->gens.h1 : tr->gens.h2, a);
  }
  cplx trace(const Value& a) const {
    cplx t{};
    for (int i = 0; i < tr->hilb.amp; ++i) {
      const auto k = tr->hilb.index({0, 0}, 0, i);
      t += a.coeff(k, k);
    }
    return t;
  }
  cplx chern(const std::vector<std::pair<bool, Value>>& form, int n) const {
    int degree = 0;
    for (const auto& t : form) degree += t.first ? 1 : 0;
    if (degree != n) return 0.0;
    std::vector<SparseOp> factors;
    for (const auto& [d, x] : form) factors.push_back(d ? commutator(tr->dirac.F, x) : x);
    return supertrace_product(factors);
  }
  cplx supertrace_product(const std::vector<SparseOp>& factors) const;
};

// ring[r] = sum over slots of radius r of gamma_i (X C)_ii
std::vector<cplx> supertrace_rings(const SparseOp& X, const SparseOp& C, const Truncation& tr) {
  const SparseOp Xt = X.transpose();
  std::vector<cplx> ring(static_cast<std::size_t>(tr.hilb.N) + 1);
  for (Eigen::Index i = 0; i < C.cols(); ++i) {
    cplx s{};
    SparseOp::InnerIterator a(Xt, i), b(C, i);
    while (a && b) {
      if (a.row() < b.row())
        ++a;
      else if (b.row() < a.row())
        ++b;
      else {
        s += a.value() * b.value();
        ++a;
        ++b;
      }
    }
    ring[static_cast<std::size_t>(radius(tr.hilb.weight(i)))] += tr.dirac.gamma[i] * s;
  }
  return ring;
}

std::vector<cplx> supertrace_rings(const std::vector<SparseOp>& factors, const Truncation& tr) {
  if (factors.size() == 1) return supertrace_rings(factors[0], identity_op(tr.hilb), tr);
  SparseOp X = factors[0];
  for (std::size_t j = 1; j + 1 < factors.size(); ++j) X = SparseOp(X * factors[j]);
  return supertrace_rings(X, factors.back(), tr);
}

cplx sum_rings(const std::vector<cplx>& ring, int R) {
  cplx t{};
  for (int r = 0; r <= R && r < static_cast<int>(ring.size()); ++r) t += ring[static_cast<std::size_t>(r)];
  return t;
}

cplx OperatorAlgebra::supertrace_product(const std::vector<SparseOp>& factors) const {
  return sum_rings(supertrace_rings(factors, *tr), interior);
}

template <class Alg>
class FormEvaluator {
 public:
  using V = typename Alg::Value;
  using Form = std::vector<std::pair<bool, V>>;  // (is differential, value)

  FormEvaluator(const Alg& alg, const CyclicCochain& phi) : alg_(alg), phi_(phi) {}

  cplx run(const std::vector<V>& args) {
    if (static_cast<int>(args.size()) != phi_.degree() + 1)
      fail(Status::invalid_argument, "cochain " + phi_.name() + " of degree " +
                                         std::to_string(phi_.degree()) + " got " +
                                         std::to_string(args.size()) + " arguments");
    Form f;
    for (std::size_t j = 0; j < args.size(); ++j) f.emplace_back(j > 0, args[j]);
    return eval(static_cast<int>(phi_.insertions.size()), f);
  }

 private:
  // Rewrites into signed standard forms a0 da1 ... dan using (db)c = d(bc) - b dc.
  void normalize(Form f, double sign, std::vector<std::pair<double, Form>>& out) const {
    Form g;
    for (auto& t : f) {
      if (!t.first && !g.empty() && !g.back().first)
        g.back().second = alg_.mul(g.back().second, t.second);
      else
        g.push_back(std::move(t));
    }
    if (g.empty() || g.front().first) g.insert(g.begin(), {false, alg_.unit()});
    for (std::size_t i = 1; i < g.size(); ++i) {
      if (g[i].first) continue;
      // g[i-1] = d b, g[i] = c
      const V& b = g[i - 1].second;
      const V& c = g[i].second;
      Form f1(g.begin(), g.begin() + static_cast<long>(i) - 1);
      Form f2 = f1;
      f1.emplace_back(true, alg_.mul(b, c));
      f2.emplace_back(false, b);
      f2.emplace_back(true, c);
      for (std::size_t k = i + 1; k < g.size(); ++k) {
        f1.push_back(g[k]);
        f2.push_back(g[k]);
      }
      normalize(std::move(f1), sign, out);
      normalize(std::move(f2), -sign, out);
      return;
    }
    out.emplace_back(sign, std::move(g));
  }

  cplx base(const Form& f) const {
    if (phi_.base == CochainBase::chern) return alg_.chern(f, phi_.base_degree);
    std::vector<std::pair<double, Form>> std_forms;
    normalize(f, 1.0, std_forms);
    cplx t{};
    for (const auto& [s, g] : std_forms)
      if (g.size() == 1) t += s * alg_.trace(g[0].second);
    return t;
  }

  cplx eval(int level, const Form& f) const {
    if (level == 0) return base(f);
    std::vector<std::pair<double, Form>> std_forms;
    normalize(f, 1.0, std_forms);
    const int delta = phi_.insertions[static_cast<std::size_t>(level - 1)];
    cplx total{};
    for (const auto& [s, g] : std_forms)
      for (std::size_t j = 1; j < g.size(); ++j) {
        Form h = g;
        h[j] = {false, alg_.derive(delta, g[j].second)};
        total += (j % 2 ? -s : s) * eval(level - 1, h);
      }
    return total;
  }

  const Alg& alg_;
  const CyclicCochain& phi_;
};

std::vector<MatrixGradedElement> as_matrices(const std::vector<GradedElement>& args) {
  std::vector<MatrixGradedElement> out;
  for (const auto& a : args) out.push_back(MatrixGradedElement::scalar(a));
  return out;
}

void check_amp(const CyclicCochain& phi, const std::vector<MatrixGradedElement>& args) {
  for (const auto& a : args)
    if (a.dim != phi.amp)
      fail(Status::invalid_argument, "argument size " + std::to_string(a.dim) +
                                         " does not match amplification " + std::to_string(phi.amp));
}

}  // namespace

cplx evaluate(const CyclicCochain& phi, const std::vector<MatrixGradedElement>& args) {
  check_amp(phi, args);
  ElementAlgebra alg{phi.theta, phi.amp, false};
  return FormEvaluator<ElementAlgebra>(alg, phi).run(args);
}

cplx evaluate(const CyclicCochain& phi, const std::vector<GradedElement>& args) {
  CyclicCochain c = phi;
  c.amp = 1;
  return evaluate(c, as_matrices(args));
}

namespace {

// Chern-based cochains act on forms directly. With iota_d the degree -1 derivation
// iota(a) = 0, iota(da) = d(a), contraction reads i_d psi = -psi o iota_d, and the
// realization d -> [F, .] is a DGA map, so no normal ordering is needed.
std::vector<cplx> chern_form_rings(const CyclicCochain& phi, const std::vector<SparseOp>& args,
                                   const Truncation& tr) {
  if (static_cast<int>(args.size()) != phi.degree() + 1)
    fail(Status::invalid_argument, "cochain " + phi.name() + " of degree " +
                                       std::to_string(phi.degree()) + " got " +
                                       std::to_string(args.size()) + " arguments");
  using Form = std::vector<std::pair<bool, SparseOp>>;
  std::vector<std::pair<double, Form>> terms(1);
  terms[0].first = phi.insertions.size() % 2 ? -1.0 : 1.0;
  for (std::size_t j = 0; j < args.size(); ++j) terms[0].second.emplace_back(j > 0, args[j]);
  for (auto it = phi.insertions.rbegin(); it != phi.insertions.rend(); ++it) {
    const Eigen::VectorXcd& h = *it == 1 ? tr.gens.h1 : tr.gens.h2;
    std::vector<std::pair<double, Form>> next;
    for (const auto& [sign, f] : terms) {
      int seen = 0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        if (!f[j].first) continue;
        Form g = f;
        g[j] = {false, diag_commutator(h, f[j].second)};
        next.emplace_back(seen % 2 ? -sign : sign, std::move(g));
        ++seen;
      }
    }
    terms = std::move(next);
  }
  std::vector<cplx> rings(static_cast<std::size_t>(tr.hilb.N) + 1);
  for (const auto& [sign, f] : terms) {
    std::vector<SparseOp> factors;
    for (const auto& [d, x] : f) factors.push_back(d ? commutator(tr.dirac.F, x) : x);
    const std::vector<cplx> r = supertrace_rings(factors, tr);
    for (std::size_t k = 0; k < r.size(); ++k) rings[k] += sign * r[k];
  }
  return rings;
}

}  // namespace

cplx evaluate_operators(const CyclicCochain& phi, const std::vector<SparseOp>& args,
                        const Truncation& tr, int interior, bool normal_order) {
  if (phi.base == CochainBase::chern && !normal_order)
    return sum_rings(chern_form_rings(phi, args, tr), interior);
  OperatorAlgebra alg{&tr, interior};
  return FormEvaluator<OperatorAlgebra>(alg, phi).run(args);
}

std::vector<cplx> operator_radial_sums(const CyclicCochain& phi, const std::vector<SparseOp>& args,
                                       const Truncation& tr) {
  if (phi.base != CochainBase::chern)
    fail(Status::unsupported, "radial sums need a Chern-based cochain");
  const std::vector<cplx> ring = chern_form_rings(phi, args, tr);
  std::vector<cplx> out(ring.size());
  cplx acc{};
  for (std::size_t r = 0; r < ring.size(); ++r) out[r] = acc += ring[r];
  return out;
}

namespace {

struct TupleTerm {
  int row = 0, col = 0;
  Weight w;
  cplx c;
};

// Terms of a matrix argument, grouped by row index for the index-chain enumeration.
std::vector<std::vector<TupleTerm>> terms_by_row(const MatrixGradedElement& a) {
  std::vector<std::vector<TupleTerm>> rows(static_cast<std::size_t>(a.dim));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      for (const auto& [w, c] : a.at(i, j).terms)
        if (c != cplx{}) rows[static_cast<std::size_t>(i)].push_back({i, j, w, c});
  return rows;
}

}  // namespace

cplx deformed_cocycle_eval(const CyclicCochain& phi, double theta,
                           const std::vector<MatrixGradedElement>& args) {
  if (phi.base != CochainBase::trace)
    fail(Status::unsupported, "weight-tuple formula needs an algebraic (trace-based) cochain");
  if (static_cast<int>(args.size()) != phi.degree() + 1)
    fail(Status::invalid_argument, "argument count does not match cochain degree");
  check_amp(phi, args);
  const int d = phi.amp;
  CyclicCochain plain = phi;
  plain.theta = 0.0;
  plain.amp = 1;
  std::vector<std::vector<std::vector<TupleTerm>>> rows;
  for (const auto& a : args) {
    MatrixGradedElement cl(a.dim);
    for (std::size_t k = 0; k < a.entries.size(); ++k) cl.entries[k] = to_cl(a.entries[k], theta);
    rows.push_back(terms_by_row(cl));
  }
  const std::size_t n = args.size();
  std::vector<const TupleTerm*> pick(n);
  cplx total{};
  // phi((a0)_{w0}, b1, ..., bn), b_k = exp(2 pi i theta (sum_{j<k} m_j) l_k) (a_k)_{w_k}
  auto recurse = [&](auto&& self, std::size_t k, int row, Weight acc, int msum, cplx phase,
                     int first_row) -> void {
    if (k == n) {
      if (row != first_row || acc != Weight{}) return;
      std::vector<GradedElement> mono;
      cplx coef = phase;
      for (const TupleTerm* t : pick) {
        mono.push_back(GradedElement::monomial(t->w, 1.0));
        coef *= t->c;
      }
      total += coef * evaluate(plain, mono);
      return;
    }
    for (const TupleTerm& t : rows[k][static_cast<std::size_t>(row)]) {
      pick[k] = &t;
      const cplx ph = k == 0 ? cplx(1.0) : std::polar(1.0, 2.0 * pi * theta * double(msum) * t.w.n);
      self(self, k + 1, t.col, acc + t.w, msum + t.w.m, phase * ph, first_row);
    }
  };
  for (int r = 0; r < d; ++r) recurse(recurse, 0, r, Weight{}, 0, cplx(1.0), r);
  return total;
}

cplx deformed_cocycle_eval(const CyclicCochain& phi, double theta,
                           const std::vector<GradedElement>& args) {
  CyclicCochain c = phi;
  c.amp = 1;
  return deformed_cocycle_eval(c, theta, as_matrices(args));
}

cplx combined_cocycle_eval(const CyclicCochain& phi, double theta,
                           const std::vector<MatrixGradedElement>& args,
                           const std::vector<MatrixGradedElement>& args2) {
  const CyclicCochain ii = contract(contract(phi, 2), 1);
  if (static_cast<int>(args.size()) != phi.degree() + 1 ||
      static_cast<int>(args2.size()) != ii.degree() + 1)
    fail(Status::invalid_argument, "combined cocycle needs " + std::to_string(phi.degree() + 1) +
                                       " and " + std::to_string(ii.degree() + 1) + " arguments");
  return evaluate(phi, args) + theta * evaluate(ii, args2);
}

namespace {

std::vector<SparseOp> chern_factors(int n, const Truncation& tr, const std::vector<SparseOp>& args) {
  if (n < 0 || n % 2 != 0) fail(Status::invalid_argument, "Chern cocycle degree must be even");
  if (static_cast<int>(args.size()) != n + 1)
    fail(Status::invalid_argument, "ch_D of degree " + std::to_string(n) + " needs " +
                                       std::to_string(n + 1) + " arguments");
  std::vector<SparseOp> factors{args[0]};
  for (int j = 1; j <= n; ++j)
    factors.push_back(commutator(tr.dirac.F, args[static_cast<std::size_t>(j)]));
  return factors;
}

}  // namespace

cplx chern_cocycle_eval(int n, const Truncation& tr, const std::vector<SparseOp>& args,
                        int interior) {
  return sum_rings(supertrace_rings(chern_factors(n, tr, args), tr), interior);
}

std::vector<cplx> chern_radial_sums(int n, const Truncation& tr, const std::vector<SparseOp>& args) {
  const std::vector<cplx> ring = supertrace_rings(chern_factors(n, tr, args), tr);
  std::vector<cplx> out(ring.size());
  cplx acc{};
  for (std::size_t r = 0; r < ring.size(); ++r) out[r] = acc += ring[r];
  return out;
}

cplx hochschild_coboundary(const CyclicCochain& phi, const std::vector<MatrixGradedElement>& args) {
  const int n = phi.degree();
  if (static_cast<int>(args.size()) != n + 2)
    fail(Status::invalid_argument, "b phi needs degree + 2 arguments");
  cplx total{};
  for (int j = 0; j <= n; ++j) {
    std::vector<MatrixGradedElement> a;
    for (int k = 0; k < n + 2; ++k) {
      if (k == j) {
        a.push_back(matrix_product(args[k], args[k + 1], phi.theta));
        ++k;
      } else {
        a.push_back(args[static_cast<std::size_t>(k)]);
      }
    }
    total += (j % 2 ? -1.0 : 1.0) * evaluate(phi, a);
  }
  std::vector<MatrixGradedElement> a{matrix_product(args.back(), args.front(), phi.theta)};
  for (int k = 1; k <= n; ++k) a.push_back(args[static_cast<std::size_t>(k)]);
  total += ((n + 1) % 2 ? -1.0 : 1.0) * evaluate(phi, a);
  return total;
}

cplx normalization_for(const CyclicCochain& phi, const Normalization& norm) {
  if (phi.base == CochainBase::trace) {
    if (phi.degree() == 0) return 1.0;
    if (phi.degree() == 2) return norm.trace_degree2;
    return 1.0;
  }
  if (phi.base_degree == 0) return 1.0;
  // contractions of ch_D share the degree-2 constant, as in the combined cocycle
  return norm.calibrated ? norm.chern_degree2 : cplx(1.0);
}

RadialEstimate radial_estimate(const std::vector<cplx>& sums, const PairingOptions& opt) {
  const int N = static_cast<int>(sums.size()) - 1;
  const int R = N - opt.margin;
  if (R < 1) fail(Status::window_exhausted, "interior radius N - margin must be positive");
  RadialEstimate e;
  e.radius = R;
  e.raw = sums[static_cast<std::size_t>(R)];
  e.value = e.raw;
  if (opt.extrapolate) {
    const int R2 = R - opt.extrapolation_gap;
    if (R2 < 1 || opt.extrapolation_gap < 1)
      fail(Status::window_exhausted, "extrapolation needs two positive radii");
    // S(R) = S + A / R^2 + ...
    const double a = double(R) * R, b = double(R2) * R2;
    e.value = (a * e.raw - b * sums[static_cast<std::size_t>(R2)]) / (a - b);
  }
  return e;
}

namespace {

PairingReport make_report(const CyclicCochain& phi, double theta, cplx value, cplx kappa) {
  PairingReport r;
  r.cocycle = phi.name();
  r.theta = theta;
  r.value = value;
  r.raw = value;
  r.normalized = kappa * value;
  r.integer_distance = std::abs(r.normalized - std::round(r.normalized.real()));
  return r;
}

}  // namespace

PairingReport k0_pairing(const CyclicCochain& phi, const MatrixGradedElement& p, double theta,
                         const PairingOptions& opt) {
  const ProjectionReport pr = verify_projection(p, theta, opt.projection_tol);
  if (!pr.pass)
    fail(Status::not_projection, "not a projection at theta=" + std::to_string(theta) +
                                     ": idempotency defect " + std::to_string(pr.idempotency_defect) +
                                     ", self-adjointness defect " + std::to_string(pr.adjoint_defect));
  CyclicCochain c = phi;
  c.amp = p.dim;
  c.theta = theta;
  cplx value;
  if (c.base == CochainBase::trace) {
    value = evaluate(c, std::vector<MatrixGradedElement>(static_cast<std::size_t>(c.degree() + 1), p));
  } else {
    const Truncation tr = build_truncation(opt.N, p.dim);
    const SparseOp P = deform_operator(represent(p, tr.hilb), theta).mat;
    const std::vector<SparseOp> args(static_cast<std::size_t>(c.degree() + 1), P);
    const RadialEstimate e = radial_estimate(operator_radial_sums(c, args, tr), opt);
    value = e.value;
    PairingReport r = make_report(c, theta, value, normalization_for(c, opt.norm));
    r.raw = e.raw;
    r.radius = e.radius;
    return r;
  }
  return make_report(c, theta, value, normalization_for(c, opt.norm));
}

PairingReport combined_pairing(const CyclicCochain& phi, const MatrixGradedElement& p,
                               double theta, const PairingOptions& opt) {
  if (phi.base != CochainBase::trace)
    fail(Status::unsupported, "combined pairing is implemented for trace-based cochains");
  const ProjectionReport pr = verify_projection(p, 0.0, opt.projection_tol);
  if (!pr.pass)
    fail(Status::not_projection,
         "not a projection: idempotency defect " + std::to_string(pr.idempotency_defect));
  CyclicCochain c = phi;
  c.amp = p.dim;
  c.theta = 0.0;
  const CyclicCochain ii = contract(contract(c, 2), 1);
  const std::vector<MatrixGradedElement> a(static_cast<std::size_t>(c.degree() + 1), p);
  const std::vector<MatrixGradedElement> a2(static_cast<std::size_t>(ii.degree() + 1), p);
  const cplx v0 = evaluate(c, a), v2 = evaluate(ii, a2);
  PairingReport r;
  r.cocycle = "combined:" + c.name();
  r.theta = theta;
  r.value = v0 + theta * v2;
  r.normalized = normalization_for(c, opt.norm) * v0 + theta * normalization_for(ii, opt.norm) * v2;
  r.integer_distance = std::abs(r.normalized - std::round(r.normalized.real()));
  return r;
}

IndexReport fredholm_index_oracle(const MatrixGradedElement& p, double theta,
                                  const IndexOptions& opt) {
  const int N = opt.N;
  if (N < 1) fail(Status::invalid_argument, "N must be >= 1");
  const int d = p.dim;
  const int side = 2 * N + 1;
  const Eigen::Index n = Eigen::Index(side) * side * d;
  auto idx = [&](Weight w, int i) { return (Eigen::Index(w.m + N) * side + (w.n + N)) * d + i; };
  // index(P Phi P) = -index((1-P) Phi (1-P)); work on the smaller of the two ranges
  const bool complement = matrix_trace_tau(p).real() > 0.5 * d;
  const SpectralRange range = spectral_sharpen(p, theta, N, complement);
  const Eigen::MatrixXcd& Q = range.basis;
  const Eigen::Index r = Q.cols();
  // F+ : H+ -> H-, phase -(m + i n)/|k|; the kernel slot is sent to its partner.
  Eigen::VectorXcd phi(n);
  Eigen::VectorXd interior(n);
  const double Rin = opt.interior_fraction * N;
  for (int m = -N; m <= N; ++m)
    for (int k = -N; k <= N; ++k) {
      const double len = std::hypot(double(m), double(k));
      const cplx ph = (m == 0 && k == 0) ? cplx(1.0) : -cplx(m, k) / len;
      for (int i = 0; i < d; ++i) {
        phi[idx({m, k}, i)] = ph;
        interior[idx({m, k}, i)] = radius({m, k}) <= Rin ? 1.0 : 0.0;
      }
    }
  const Eigen::MatrixXcd T = Q.adjoint() * (phi.asDiagonal() * Q);
  // Only singular values below unreliable_high matter: take them from partial
  // eigen-solves of T*T (right vectors) and T T* (left vectors), paired in order.
  const double cut = opt.unreliable_high * opt.unreliable_high;
  const HermitianEigen right = hermitian_eigen(T.adjoint() * T, -1.0, cut);
  const HermitianEigen left = hermitian_eigen(T * T.adjoint(), -1.0, cut);
  IndexReport rep;
  rep.range_rank = static_cast<int>(r);
  auto weight = [&](const Eigen::VectorXcd& x) {
    const Eigen::VectorXcd y = Q * x;
    return y.cwiseAbs2().cwiseProduct(interior).sum();
  };
  const Eigen::Index count = std::max(right.values.size(), left.values.size());
  for (Eigen::Index k = 0; k < count; ++k) {
    const bool has_r = k < right.values.size(), has_l = k < left.values.size();
    const double s2 = has_r ? right.values[k] : left.values[k];
    const double s = std::sqrt(std::max(s2, 0.0));
    const double wv = has_r ? weight(right.vectors.col(k)) : 0.0;
    const double wu = has_l ? weight(left.vectors.col(k)) : 0.0;
    rep.small_singular_values.push_back(s);
    rep.kernel_weights.push_back(wv);
    rep.cokernel_weights.push_back(wu);
    const bool kin = wv > 0.5, cin = wu > 0.5;
    if (s < opt.threshold) {
      rep.kernel += kin ? 1 : 0;
      rep.cokernel += cin ? 1 : 0;
    }
    // a borderline value only matters when exactly one side is localized inside
    if (s >= opt.unreliable_low && kin != cin) rep.reliable = false;
  }
  rep.complement = complement;
  rep.index = complement ? rep.cokernel - rep.kernel : rep.kernel - rep.cokernel;
  return rep;
}

Normalization calibrate_chern(const MatrixGradedElement& bott, const PairingOptions& opt,
                              const IndexOptions& iopt) {
  const IndexReport ir = fredholm_index_oracle(bott, 0.0, iopt);
  if (ir.index == 0 || !ir.reliable)
    fail(Status::not_converged, "index oracle gave no usable value on the Bott projection");
  const Truncation tr = build_truncation(opt.N, bott.dim);
  const SparseOp P = represent(bott, tr.hilb).mat;
  const RadialEstimate e = radial_estimate(chern_radial_sums(2, tr, {P, P, P}), opt);
  Normalization n = opt.norm;
  n.chern_degree2 = double(ir.index) / e.value.real();
  n.calibrated = true;
  n.calibration_raw = e.value.real();
  n.calibration_index = ir.index;
  return n;
}

}  // namespace cld
