// qls-smash: command-line front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qlssmash/qlssmash.h"

namespace {

void summarize(const std::string& report) {
  const auto j = nlohmann::json::parse(report, nullptr, false);
  if (j.is_discarded()) return;
  std::cerr << j.value("command", "?") << ": " << j.value("status", "?");
  if (j.contains("verdict")) std::cerr << ", verdict " << j["verdict"].get<std::string>();
  if (j.contains("error")) std::cerr << " (" << j["error"].value("message", "") << ")";
  std::cerr << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smash products of quantum linear spaces over quantum affine spaces"};
  app.set_version_flag("--version", std::string(qls_version()));
  app.require_subcommand(1);

  std::string config_path;
  int degree_cap = -1;
  bool strict = false;
  bool quiet = false;
  const char* commands[][2] = {
      {"validate", "Check the datum and the module-algebra identities"},
      {"hopf-check", "Run the Hopf-algebra, radical and smash identity suites"},
      {"invariants", "Kernels of the x_i, the invariant chain and R^x"},
      {"semiprime", "Decide semiprimeness of A # B"},
      {"prime", "Decide primeness of A # B"},
      {"smash-eval", "Multiply two smash-product elements from the config"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c[0], c[1]);
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--degree-cap", degree_cap, "Degree cap for capped searches")->check(CLI::Range(0, 64));
    sub->add_flag("--strict", strict, "Exit with 3 when a verdict is Unknown");
    sub->add_flag("-q,--quiet", quiet, "No summary on standard error");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; usage errors are invalid input.
    const int code = app.exit(e);
    return code == 0 ? 0 : QLS_EXIT_INVALID;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << config_path << "\n";
    return QLS_EXIT_INVALID;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  qls_job* job = nullptr;
  if (qls_job_create(buf.str().c_str(), &job) != QLS_OK) {
    std::cerr << "cannot create job\n";
    return QLS_EXIT_INVALID;
  }
  qls_job_set_degree_cap(job, degree_cap);
  qls_job_set_strict(job, strict ? 1 : 0);
  char* report = nullptr;
  int exit_code = QLS_EXIT_INVALID;
  if (qls_job_run(job, command.c_str(), &report, &exit_code) != QLS_OK) {
    std::cerr << "error: " << qls_job_last_error(job) << "\n";
    qls_job_destroy(job);
    return QLS_EXIT_INVALID;
  }
  std::cout << report << "\n";
  if (!quiet) summarize(report);
  qls_string_free(report);
  qls_job_destroy(job);
  return exit_code;
}
