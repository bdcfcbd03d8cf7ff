#include "cldeform.h"

#include <cstring>
#include <json.hpp>
#include <new>
#include <string>

#include "cld/cocycles.hpp"
#include "cld/errors.hpp"
#include "cld/io.hpp"
#include "cld/projections.hpp"
#include "cld/suite.hpp"
#include "json_convert.hpp"

using nlohmann::json;

struct cld_element {
  cld::MatrixGradedElement value;
};

struct cld_pairing_context {
  cld_pairing_options opt;
  cld::Normalization norm;
};

namespace {

thread_local std::string last_error;

template <class F>
cld_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return CLD_OK;
  } catch (const cld::Error& e) {
    last_error = e.what();
    return static_cast<cld_status>(e.status());
  } catch (const json::exception& e) {
    last_error = e.what();
    return CLD_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CLD_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CLD_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) cld::fail(cld::Status::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cld_element* wrap(cld::MatrixGradedElement m) { return new cld_element{std::move(m)}; }

cld::MatrixGradedElement parse_any(const std::string& text) {
  const json j = json::parse(text);
  if (j.is_object() && j.contains("dim")) return cld::matrix_of(j);
  return cld::MatrixGradedElement::scalar(cld::element_of(j));
}

std::string dump_any(const cld::MatrixGradedElement& a) {
  if (a.dim == 1) return cld::element_json(a.at(0, 0)).dump(2);
  return cld::matrix_json(a).dump(2);
}

// flat layout, the same columns as the CSV table
json pairing_json(const cld::PairingReport& r) {
  return {{"cocycle", r.cocycle},
          {"theta", r.theta},
          {"value_re", r.value.real()},
          {"value_im", r.value.imag()},
          {"normalized", r.normalized.real()},
          {"normalized_im", r.normalized.imag()},
          {"integer_distance", r.integer_distance},
          {"raw_re", r.raw.real()},
          {"raw_im", r.raw.imag()},
          {"radius", r.radius}};
}

cld::PairingOptions pairing_options(const cld_pairing_context& ctx) {
  cld::PairingOptions o;
  o.N = ctx.opt.cutoff;
  o.margin = ctx.opt.margin;
  o.extrapolate = ctx.opt.extrapolate != 0;
  o.norm = ctx.norm;
  return o;
}

void calibrate(cld_pairing_context& ctx) {
  if (ctx.norm.calibrated) return;
  cld::PairingOptions co;
  co.N = ctx.opt.calibration_cutoff;
  co.margin = 2;
  co.extrapolate = ctx.opt.extrapolate != 0;
  cld::IndexOptions io;
  io.N = ctx.opt.calibration_cutoff;
  ctx.norm = cld::calibrate_chern(cld::bott_projection(ctx.opt.bott_cutoff), co, io);
}

}  // namespace

extern "C" {

const char* cld_version(void) { return "1.0.0"; }
const char* cld_last_error(void) { return last_error.c_str(); }
void cld_string_free(char* s) { std::free(s); }

cld_status cld_element_from_json(const char* text, cld_element** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = wrap(parse_any(text));
  });
}

cld_status cld_element_read_file(const char* path, cld_element** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = wrap(parse_any(cld::read_text_file(path)));
  });
}

cld_status cld_element_to_json(const cld_element* a, char** out) {
  return guard([&] {
    need(a, "element");
    need(out, "out");
    *out = dup(dump_any(a->value));
  });
}

cld_status cld_element_write_file(const cld_element* a, const char* path) {
  return guard([&] {
    need(a, "element");
    need(path, "path");
    cld::write_text_file(path, dump_any(a->value) + "\n");
  });
}

cld_status cld_element_monomial(int m, int n, double re, double im, cld_element** out) {
  return guard([&] {
    need(out, "out");
    cld::GradedElement a = cld::GradedElement::monomial({m, n}, {re, im});
    a.cutoff = cld::radius({m, n});
    *out = wrap(cld::MatrixGradedElement::scalar(a));
  });
}

cld_status cld_element_identity(int dim, cld_element** out) {
  return guard([&] {
    need(out, "out");
    if (dim < 1) cld::fail(cld::Status::invalid_argument, "dimension must be positive");
    *out = wrap(cld::MatrixGradedElement::identity(dim));
  });
}

void cld_element_free(cld_element* a) { delete a; }

int cld_element_dim(const cld_element* a) { return a ? a->value.dim : 0; }

cld_status cld_product(const cld_element* a, const cld_element* b, double theta,
                       cld_element** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    if (a->value.dim != b->value.dim)
      cld::fail(cld::Status::invalid_argument, "matrix sizes differ");
    *out = wrap(cld::matrix_product(a->value, b->value, theta));
  });
}

cld_status cld_star(const cld_element* a, cld_element** out) {
  return guard([&] {
    need(a, "element");
    need(out, "out");
    *out = wrap(cld::matrix_star(a->value));
  });
}

cld_status cld_distance(const cld_element* a, const cld_element* b, double* out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = cld::distance(a->value, b->value);
  });
}

cld_status cld_trace(const cld_element* a, double* re, double* im) {
  return guard([&] {
    need(a, "element");
    need(re, "re");
    need(im, "im");
    const cld::cplx t = cld::matrix_trace_tau(a->value);
    *re = t.real();
    *im = t.imag();
  });
}

cld_status cld_fejer(const cld_element* a, int k, int literal, cld_element** out) {
  return guard([&] {
    need(a, "element");
    need(out, "out");
    cld::MatrixGradedElement r = a->value;
    for (auto& e : r.entries)
      e = cld::fejer_smooth(e, k, literal ? cld::FejerNorm::literal : cld::FejerNorm::standard);
    *out = wrap(std::move(r));
  });
}

cld_status cld_phase_factor(double theta, int m, int n, int m2, int n2, double* re, double* im) {
  return guard([&] {
    need(re, "re");
    need(im, "im");
    const cld::cplx z = cld::phase_factor(theta, {m, n}, {m2, n2});
    *re = z.real();
    *im = z.imag();
  });
}

cld_status cld_powers_rieffel(double theta, int fourier_cutoff, cld_element** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(cld::powers_rieffel(cld::default_profile(theta, fourier_cutoff)));
  });
}

cld_status cld_bott(int fourier_cutoff, cld_element** out) {
  return guard([&] {
    need(out, "out");
    *out = wrap(cld::bott_projection(fourier_cutoff));
  });
}

cld_status cld_verify_projection(const cld_element* p, double theta, double tol,
                                 double* idempotency, double* adjoint, int* pass) {
  return guard([&] {
    need(p, "projection");
    const cld::ProjectionReport r = cld::verify_projection(p->value, theta, tol);
    if (idempotency) *idempotency = r.idempotency_defect;
    if (adjoint) *adjoint = r.adjoint_defect;
    if (pass) *pass = r.pass ? 1 : 0;
  });
}

void cld_pairing_options_default(cld_pairing_options* opt) {
  if (!opt) return;
  const cld::SuiteConfig d;
  opt->cutoff = d.pairing_cutoff;
  opt->margin = d.pairing_margin;
  opt->extrapolate = 1;
  opt->index_cutoff = d.index_cutoff;
  opt->calibration_cutoff = d.calibration_cutoff;
  opt->bott_cutoff = d.bott_cutoff;
}

cld_status cld_pairing_context_new(const cld_pairing_options* opt, cld_pairing_context** out) {
  return guard([&] {
    need(out, "out");
    auto* ctx = new cld_pairing_context{};
    if (opt)
      ctx->opt = *opt;
    else
      cld_pairing_options_default(&ctx->opt);
    const auto& o = ctx->opt;
    if (o.cutoff < 1 || o.margin < 0 || o.margin >= o.cutoff || o.index_cutoff < 1 ||
        o.calibration_cutoff < 3 || o.bott_cutoff < 1) {
      delete ctx;
      cld::fail(cld::Status::invalid_argument, "pairing options out of range");
    }
    *out = ctx;
  });
}

void cld_pairing_context_free(cld_pairing_context* ctx) { delete ctx; }

cld_status cld_pairing_calibrate(cld_pairing_context* ctx, double* kappa) {
  return guard([&] {
    need(ctx, "context");
    calibrate(*ctx);
    if (kappa) *kappa = ctx->norm.chern_degree2.real();
  });
}

cld_status cld_pair(cld_pairing_context* ctx, const cld_element* p, const char* cocycle,
                    double theta, char** report) {
  return guard([&] {
    need(ctx, "context");
    need(p, "projection");
    need(cocycle, "cocycle");
    need(report, "report");
    const cld::CyclicCochain c = cld::parse_cochain(cocycle);
    if (c.base == cld::CochainBase::chern && c.base_degree == 2) calibrate(*ctx);
    json j = pairing_json(cld::k0_pairing(c, p->value, theta, pairing_options(*ctx)));
    if (ctx->norm.calibrated) j["kappa2"] = ctx->norm.chern_degree2.real();
    *report = dup(j.dump(2));
  });
}

cld_status cld_pair_combined(cld_pairing_context* ctx, const cld_element* p, double theta,
                             char** report) {
  return guard([&] {
    need(ctx, "context");
    need(p, "projection");
    need(report, "report");
    const cld::PairingReport r =
        cld::combined_pairing(cld::trace_cochain(), p->value, theta, pairing_options(*ctx));
    *report = dup(pairing_json(r).dump(2));
  });
}

cld_status cld_index(const cld_pairing_context* ctx, const cld_element* p, double theta,
                     char** report) {
  return guard([&] {
    need(ctx, "context");
    need(p, "projection");
    need(report, "report");
    cld::IndexOptions io;
    io.N = ctx->opt.index_cutoff;
    const cld::IndexReport r = cld::fredholm_index_oracle(p->value, theta, io);
    const json j = {{"theta", theta},
                    {"index", r.index},
                    {"kernel", r.kernel},
                    {"cokernel", r.cokernel},
                    {"range_rank", r.range_rank},
                    {"complement", r.complement},
                    {"reliable", r.reliable},
                    {"small_singular_values", r.small_singular_values}};
    *report = dup(j.dump(2));
  });
}

cld_status cld_suite_default_config(char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(cld::config_to_json(cld::SuiteConfig{}));
  });
}

cld_status cld_run_suite(const char* config, char** report, int* all_pass) {
  return guard([&] {
    need(report, "report");
    const cld::SuiteConfig c = config ? cld::config_from_json(config) : cld::SuiteConfig{};
    const cld::SuiteReport r = cld::run_suite(c);
    *report = dup(cld::report_to_json(r));
    if (all_pass) *all_pass = r.failed == 0 ? 1 : 0;
  });
}

cld_status cld_suite_check_ids(char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(json(cld::suite_check_ids()).dump());
  });
}

}  // extern "C"
