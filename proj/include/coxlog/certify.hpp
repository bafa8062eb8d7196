#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "coxlog/logmod.hpp"

namespace coxlog {

inline constexpr const char* kToolVersion = "coxlog 0.1.0";
inline constexpr int kSchemaVersion = 1;

// One verification suite run.  Every field is explicit; nothing is read from
// the environment, so a config plus a version pins the certificates.
struct SuiteConfig {
  std::string type = "A1";
  int k_min = -1;
  int k_max = 2;
  std::vector<std::string> multiplicities;  // filtration-shift specs, default const:-1
  int samples = 8;
  unsigned long seed = 42;
  int jobs = 1;
  std::string corrupt;  // "k,form,hyperplane": perturb one basis form (negative control)
};

// Arrangement summary plus all basis families in range, as canonical text.
nlohmann::json generate_data(const std::string& type, int k_min, int k_max);

// Runs every checker and returns {schema, version, config, certificates,
// elapsed_ms}.  Certificates depend only on config and version; timing lives
// outside the certificate array.
nlohmann::json run_suite(const SuiteConfig& cfg);

bool suite_passed(const nlohmann::json& suite);

// Re-runs each certificate's check from its recorded text inputs alone and
// compares verdicts and witnesses; true iff everything reproduces.
bool recheck_certificates(const nlohmann::json& suite);

// "markdown" or "tsv"; failures sort before passes.
std::string render_report(const nlohmann::json& suite, const std::string& format);

// Exit codes: 0 success, 1 verification/generation failure, 2 usage error.
int run_cli(int argc, const char* const* argv);

}  // namespace coxlog
