// cld: batch front end over the C API.
// Exit codes: 0 success, 2 validation failure, 3 input error.
#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "cldeform.h"

using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_input = 3;

struct ApiError {
  cld_status status;
  std::string message;
};

void check(cld_status s) {
  if (s != CLD_OK) throw ApiError{s, cld_last_error()};
}

int exit_for(cld_status s) {
  switch (s) {
    case CLD_INVALID_ARGUMENT:
    case CLD_PARSE_ERROR:
    case CLD_IO_ERROR:
      return exit_input;
    default:
      return exit_validation;
  }
}

struct ElementDeleter {
  void operator()(cld_element* e) const { cld_element_free(e); }
};
using Element = std::unique_ptr<cld_element, ElementDeleter>;

Element read_element(const std::string& path) {
  cld_element* e = nullptr;
  check(cld_element_read_file(path.c_str(), &e));
  return Element(e);
}

std::string take(char* s) {
  std::string out(s);
  cld_string_free(s);
  return out;
}

struct Common {
  double theta = 0.25;
  std::string theta_grid;
  int cutoff = 0;  // 0: command default
  int fourier_cutoff = 64;
  int window = 8;
  double tol = 0.0;  // 0: command default
  std::string format = "json";
  std::uint64_t seed = 7;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--theta", c.theta, "deformation parameter")->envname("CLD_THETA");
  app->add_option("--theta-grid", c.theta_grid, "comma separated theta values, overrides --theta")
      ->envname("CLD_THETA_GRID");
  app->add_option("--cutoff", c.cutoff, "operator truncation N")->envname("CLD_CUTOFF");
  app->add_option("--fourier-cutoff", c.fourier_cutoff, "Fourier cutoff of built-in projections")
      ->envname("CLD_FOURIER_CUTOFF");
  app->add_option("--window", c.window, "crossed-product window K = L")->envname("CLD_WINDOW");
  app->add_option("--tol", c.tol, "tolerance")->envname("CLD_TOL");
  app->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("CLD_FORMAT");
  app->add_option("--seed", c.seed, "seed for randomized checks")->envname("CLD_SEED");
  app->add_option("--out", c.out, "output file, stdout when empty")->envname("CLD_OUT");
}

std::vector<double> thetas(const Common& c) {
  if (c.theta_grid.empty()) {
    if (!std::isfinite(c.theta)) throw ApiError{CLD_INVALID_ARGUMENT, "theta must be finite"};
    return {c.theta};
  }
  std::vector<double> out;
  std::stringstream in(c.theta_grid);
  for (std::string tok; std::getline(in, tok, ',');) {
    std::size_t used = 0;
    double t = 0;
    try {
      t = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    // allow p/q for exact rationals such as 1/3
    if (used < tok.size() && tok[used] == '/') {
      const double q = std::stod(tok.substr(used + 1));
      t /= q;
    } else if (used == 0 || tok.find_first_not_of(" ", used) != std::string::npos) {
      throw ApiError{CLD_INVALID_ARGUMENT, "bad theta grid entry '" + tok + "'"};
    }
    if (!std::isfinite(t)) throw ApiError{CLD_INVALID_ARGUMENT, "theta grid values must be finite"};
    out.push_back(t);
  }
  if (out.empty()) throw ApiError{CLD_INVALID_ARGUMENT, "empty theta grid"};
  return out;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!(f << text)) throw ApiError{CLD_IO_ERROR, "cannot write " + c.out};
}

// ---- product

struct ProductArgs {
  std::string a, b;
  bool commutative = false;
};

int cmd_product(const Common& c, const ProductArgs& p) {
  const Element a = read_element(p.a), b = read_element(p.b);
  const double tol = c.tol > 0 ? c.tol : 1e-12;
  const double theta = thetas(c).front();
  cld_element* ab = nullptr;
  check(cld_product(a.get(), b.get(), theta, &ab));
  const Element prod(ab);
  int code = exit_ok;
  if (p.commutative) {
    cld_element *x = nullptr, *y = nullptr;
    check(cld_product(a.get(), b.get(), 0.0, &x));
    const Element xe(x);
    check(cld_product(b.get(), a.get(), 0.0, &y));
    const Element ye(y);
    double d = 0;
    check(cld_distance(xe.get(), ye.get(), &d));
    std::cerr << "theta=0 commutativity defect " << d << (d <= tol ? " ok" : " FAILED") << "\n";
    if (d > tol) code = exit_validation;
  }
  if (c.format == "csv") {
    // one row per term of a plain element
    const json j = json::parse(take([&] {
      char* s = nullptr;
      check(cld_element_to_json(prod.get(), &s));
      return s;
    }()));
    if (!j.contains("terms")) throw ApiError{CLD_INVALID_ARGUMENT, "csv output needs a 1x1 element"};
    std::ostringstream o;
    o.precision(17);
    o << "m,n,re,im\n";
    for (const auto& t : j["terms"])
      o << t["m"].get<int>() << "," << t["n"].get<int>() << "," << t["re"].get<double>() << ","
        << t["im"].get<double>() << "\n";
    emit(c, o.str());
  } else {
    char* s = nullptr;
    check(cld_element_to_json(prod.get(), &s));
    emit(c, take(s) + "\n");
  }
  return code;
}

// ---- pair

struct PairArgs {
  std::string projection;
  std::string builtin;
  std::string cocycle = "tau";
  bool combined = false;
  bool with_index = false;
  int margin = 6;
};

int cmd_pair(const Common& c, const PairArgs& p) {
  const std::vector<double> grid = thetas(c);
  if (p.projection.empty() == p.builtin.empty())
    throw ApiError{CLD_INVALID_ARGUMENT, "give exactly one of --projection and --builtin"};
  cld_pairing_options opt;
  cld_pairing_options_default(&opt);
  if (c.cutoff > 0) opt.cutoff = c.cutoff;
  opt.margin = p.margin;
  cld_pairing_context* raw = nullptr;
  check(cld_pairing_context_new(&opt, &raw));
  std::unique_ptr<cld_pairing_context, void (*)(cld_pairing_context*)> ctx(raw,
                                                                           cld_pairing_context_free);
  Element fixed;
  if (!p.projection.empty()) fixed = read_element(p.projection);
  const double tol = c.tol > 0 ? c.tol : 1e-6;

  json rows = json::array();
  for (double t : grid) {
    Element built;
    const cld_element* proj = fixed.get();
    if (!proj) {
      cld_element* e = nullptr;
      if (p.builtin == "powers-rieffel")
        check(cld_powers_rieffel(t, c.fourier_cutoff, &e));
      else if (p.builtin == "bott")
        check(cld_bott(c.fourier_cutoff, &e));
      else
        check(cld_element_identity(1, &e));
      built.reset(e);
      proj = e;
    }
    double idem = 0, adj = 0;
    int ok = 0;
    // Bott is a projection for the commutative product only
    const double check_theta = p.builtin == "bott" ? 0.0 : t;
    check(cld_verify_projection(proj, check_theta, tol, &idem, &adj, &ok));
    if (!ok) {
      std::ostringstream m;
      m << "projection defect at theta=" << t << ": idempotency " << idem << ", adjoint " << adj
        << " (tol " << tol << ")";
      throw ApiError{CLD_NOT_PROJECTION, m.str()};
    }
    char* s = nullptr;
    if (p.combined)
      check(cld_pair_combined(ctx.get(), proj, t, &s));
    else
      check(cld_pair(ctx.get(), proj, p.cocycle.c_str(), t, &s));
    json row = json::parse(take(s));
    if (p.with_index) {
      check(cld_index(ctx.get(), proj, t, &s));
      row["index"] = json::parse(take(s));
    }
    rows.push_back(row);
  }
  // integer stability: one rounded value across the grid, each close to it
  bool stable = true;
  const double first = std::round(rows.front()["normalized"].get<double>());
  for (const auto& r : rows)
    stable = stable && std::round(r["normalized"].get<double>()) == first &&
             r["integer_distance"].get<double>() < 5e-3;

  if (c.format == "csv") {
    std::ostringstream o;
    o.precision(17);
    o << "theta,value_re,value_im,normalized,integer_distance\n";
    for (const auto& r : rows)
      o << r["theta"].get<double>() << "," << r["value_re"].get<double>() << ","
        << r["value_im"].get<double>() << "," << r["normalized"].get<double>() << ","
        << r["integer_distance"].get<double>() << "\n";
    emit(c, o.str());
  } else {
    const json out = {{"cocycle", p.combined ? "tau + theta i1:i2:tau" : p.cocycle},
                      {"rows", rows},
                      {"integer_stable", stable}};
    emit(c, out.dump(2) + "\n");
  }
  return exit_ok;
}

// ---- verify

struct VerifyArgs {
  std::string config;
  bool smoke = false;
  bool inject = false;
  bool criteria_only = false;
  std::vector<std::string> only;
  bool list = false;
};

int cmd_verify(const Common& c, const VerifyArgs& v, const CLI::App& app) {
  if (v.list) {
    char* s = nullptr;
    check(cld_suite_check_ids(&s));
    for (const auto& id : json::parse(take(s))) std::cout << id.get<std::string>() << "\n";
    return exit_ok;
  }
  json cfg = json::object();
  if (!v.config.empty()) {
    std::ifstream f(v.config);
    if (!f) throw ApiError{CLD_IO_ERROR, "cannot read " + v.config};
    try {
      cfg = json::parse(f);
    } catch (const json::exception& e) {
      throw ApiError{CLD_PARSE_ERROR, v.config + ": " + e.what()};
    }
  }
  // flags given explicitly (or through the environment) win over the file
  auto given = [&](const char* name) { return app.count(name) > 0; };
  if (given("--theta-grid") || given("--theta")) cfg["thetas"] = thetas(c);
  if (given("--cutoff")) cfg["cutoff"] = c.cutoff;
  if (given("--fourier-cutoff")) cfg["fourier_cutoff"] = c.fourier_cutoff;
  if (given("--window")) cfg["window"] = c.window;
  if (given("--seed")) cfg["seed"] = c.seed;
  if (given("--tol")) cfg["tolerances"]["algebra"] = c.tol;
  if (v.smoke) cfg["smoke"] = true;
  if (v.inject) cfg["inject_phase_bug"] = true;
  if (v.criteria_only) cfg["criteria_only"] = true;
  if (!v.only.empty()) cfg["only"] = v.only;

  char* s = nullptr;
  int all = 0;
  check(cld_run_suite(cfg.dump().c_str(), &s, &all));
  const json rep = json::parse(take(s));
  if (c.format == "csv") {
    std::ostringstream o;
    o.precision(6);
    o << "id,criterion,pass,measured,tolerance,seconds\n";
    for (const auto& k : rep["checks"])
      o << k["id"].get<std::string>() << "," << k["criterion"].get<int>() << ","
        << (k["pass"].get<bool>() ? "pass" : "fail") << "," << k["measured"].get<double>() << ","
        << k["tolerance"].get<double>() << "," << k["seconds"].get<double>() << "\n";
    emit(c, o.str());
  } else {
    emit(c, rep.dump(2) + "\n");
  }
  for (const auto& k : rep["checks"])
    std::cerr << (k["pass"].get<bool>() ? "PASS " : "FAIL ") << k["id"].get<std::string>() << "  "
              << k["detail"].get<std::string>() << "\n";
  return all ? exit_ok : exit_validation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed noncommutative tori: products, pairings and the check suite"};
  app.require_subcommand(1);

  Common common_product, common_pair, common_verify;

  ProductArgs product;
  auto* sp = app.add_subcommand("product", "a *_theta b of two element files");
  add_common(sp, common_product);
  sp->add_option("a", product.a, "left factor (JSON)")->required();
  sp->add_option("b", product.b, "right factor (JSON)")->required();
  sp->add_flag("--check-commutative", product.commutative,
               "also check that the theta = 0 product commutes");

  PairArgs pair;
  auto* pp = app.add_subcommand("pair", "pair a projection with a cocycle across the theta grid");
  add_common(pp, common_pair);
  pp->add_option("--projection", pair.projection, "projection file (JSON)");
  pp->add_option("--builtin", pair.builtin, "built-in projection, rebuilt for each theta")
      ->check(CLI::IsMember({"powers-rieffel", "bott", "trivial"}));
  pp->add_option("--cocycle", pair.cocycle, "tau, ch2, i1:i2:tau, i1:i2:ch2, ...")
      ->envname("CLD_COCYCLE");
  pp->add_flag("--combined", pair.combined, "tau + theta i1 i2 tau / (2 pi i)");
  pp->add_flag("--index", pair.with_index, "attach the Fredholm index oracle");
  pp->add_option("--margin", pair.margin, "graded trace radius is cutoff - margin");

  VerifyArgs verify;
  auto* vp = app.add_subcommand("verify", "run the invariant suite and acceptance criteria");
  add_common(vp, common_verify);
  vp->add_option("--config", verify.config, "suite configuration (JSON)")->envname("CLD_CONFIG");
  vp->add_flag("--smoke", verify.smoke, "echo the configuration only");
  vp->add_flag("--inject-phase-bug", verify.inject, "swap in a broken product phase");
  vp->add_flag("--criteria-only", verify.criteria_only, "skip module invariants");
  vp->add_option("--only", verify.only, "run only these check ids");
  vp->add_flag("--list", verify.list, "list check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*sp) return cmd_product(common_product, product);
    if (*pp) return cmd_pair(common_pair, pair);
    return cmd_verify(common_verify, verify, *vp);
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.message << "\n";
    return exit_for(e.status);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_input;
  }
}
