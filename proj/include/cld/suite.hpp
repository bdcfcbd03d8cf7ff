#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace cld {

struct Tolerances {
  double algebra = 1e-12;   // termwise identities
  double operators = 1e-10; // operator compatibility on interior windows
  double trace = 1e-6;      // tau pairings
  double pairing = 5e-3;    // ch-type pairings against the index
  double combined = 1e-4;   // combined cocycle on the Bott class
  double cocycle = 1e-11;   // weight-tuple formula vs operator side
};

struct SuiteConfig {
  std::vector<double> thetas{0.25, 1.0 / 3.0, 0.7};
  std::vector<double> relation_thetas{0.1, 0.25, 1.0 / 3.0, 0.7};
  int cutoff = 16;          // operator truncation for compatibility checks
  int decay_cutoff = 32;
  int fourier_cutoff = 64;  // Powers-Rieffel profile
  int bott_cutoff = 16;
  int index_cutoff = 24;
  int bott_index_cutoff = 16;
  int pairing_cutoff = 36;  // ch pairing truncation
  int pairing_margin = 6;
  int calibration_cutoff = 10;
  int contraction_cutoff = 16;  // i_{d1} i_{d2} ch_D pairing
  int window = 8;           // crossed products, K = L
  int samples = 100;
  std::uint64_t seed = 7;
  Tolerances tol;
  bool smoke = false;             // echo the configuration only
  bool inject_phase_bug = false;  // swap in a non-bilinear phase to exercise the checks
  bool criteria_only = false;
  std::vector<std::string> only;  // run only these check ids when non-empty
};

struct CheckResult {
  std::string id;
  int criterion = 0;  // 0 for module invariants
  std::string description;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  bool smoke = false;
};

SuiteReport run_suite(const SuiteConfig& config);
std::vector<std::string> suite_check_ids();

std::string config_to_json(const SuiteConfig& c);
SuiteConfig config_from_json(const std::string& text);  // missing keys keep defaults
std::string report_to_json(const SuiteReport& r);

}  // namespace cld
