#pragma once

// JSON job configs, command pipelines and reports.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qlssmash/qas.hpp"

namespace qls {

inline constexpr const char* kToolName = "qls-smash";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "qls-smash-report/1";

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitInvalid = 2, kExitUnknown = 3 };

struct JobOptions {
  int degree_cap = 16;
  bool strict = false;
  std::size_t size_limit = 4096;
  int validation_degree = 12;
  int sample_degree = 3;
  std::size_t samples = 200;
};

struct SmashTermSpec {
  CycNumber coeff;
  Monomial u;
  std::vector<int> x;
  GroupElement g;
};

struct JobConfig {
  std::string digest;  // "sha256:<hex>" of the raw config text
  unsigned conductor = 1;
  QlsDatum datum;
  std::optional<ActionSpec> action;
  std::optional<std::vector<std::size_t>> ordering;  // 0-based chain order
  std::optional<std::vector<SmashTermSpec>> smash_lhs;
  std::optional<std::vector<SmashTermSpec>> smash_rhs;
  JobOptions options;
};

/// Parses and schema-checks a config. Throws ConfigError with a JSON pointer.
JobConfig parse_config(const std::string& text);

/// Scalar syntax: integer, {"num": a, "den": b}, {"zeta": N, "pow": k},
/// {"add": [...]}, {"mul": [...]}. `path` prefixes error pointers.
CycNumber parse_scalar(const nlohmann::json& j, const std::string& path);

struct ReportError {
  std::string code;
  std::string message;
  std::string path;
  friend bool operator==(const ReportError&, const ReportError&) = default;
};

struct Report {
  std::string schema = kReportSchema;
  std::string tool = kToolName;
  std::string version = kToolVersion;
  std::string command;
  std::string input_digest;
  std::string status;  // "ok", "failed", "unknown", "invalid_input"
  int exit_code = kExitOk;
  std::optional<ReportError> error;
  double wall_ms = 0.0;
  /// Command-specific fields, emitted at the top level.
  nlohmann::json payload = nlohmann::json::object();

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  friend bool operator==(const Report&, const Report&) = default;
};

const std::vector<std::string>& job_commands();

/// Runs one command on a config text. Never throws: errors become reports
/// with status "invalid_input" and exit code 2.
Report run_job(const std::string& command, const std::string& config_text,
               const std::optional<int>& degree_cap_override = std::nullopt, bool strict = false);

std::string sha256_hex(const std::string& data);

}  // namespace qls
