#include "qlssmash/qlssmash.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "qlssmash/job.hpp"

struct qls_job {
  std::string config;
  std::optional<int> degree_cap;
  bool strict = false;
  std::string last_error;
};

namespace {

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qls_status fail(qls_job* job, qls_status status, const char* message) {
  if (job) job->last_error = message;
  return status;
}

}  // namespace

extern "C" {

const char* qls_version(void) { return qls::kToolVersion; }

qls_status qls_job_create(const char* config_json, qls_job** out) {
  if (!config_json || !out) return QLS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  try {
    auto* job = new qls_job;
    job->config = config_json;
    *out = job;
    return QLS_OK;
  } catch (const std::bad_alloc&) {
    return QLS_ERR_OUT_OF_MEMORY;
  }
}

void qls_job_destroy(qls_job* job) { delete job; }

qls_status qls_job_set_degree_cap(qls_job* job, int cap) {
  if (!job) return QLS_ERR_NULL_ARGUMENT;
  if (cap > 64) return fail(job, QLS_ERR_INVALID_ARGUMENT, "degree cap must be at most 64");
  job->degree_cap = cap < 0 ? std::nullopt : std::optional<int>(cap);
  job->last_error.clear();
  return QLS_OK;
}

qls_status qls_job_set_strict(qls_job* job, int strict) {
  if (!job) return QLS_ERR_NULL_ARGUMENT;
  job->strict = strict != 0;
  job->last_error.clear();
  return QLS_OK;
}

qls_status qls_job_run(qls_job* job, const char* command, char** report_json, int* exit_code) {
  if (!job) return QLS_ERR_NULL_ARGUMENT;
  if (!command || !report_json || !exit_code) return fail(job, QLS_ERR_NULL_ARGUMENT, "null argument");
  *report_json = nullptr;
  try {
    const qls::Report r = qls::run_job(command, job->config, job->degree_cap, job->strict);
    char* s = copy_string(r.to_json().dump(2));
    if (!s) return fail(job, QLS_ERR_OUT_OF_MEMORY, "out of memory");
    *report_json = s;
    *exit_code = r.exit_code;
    job->last_error = r.error ? r.error->message : "";
    return QLS_OK;
  } catch (const std::bad_alloc&) {
    return fail(job, QLS_ERR_OUT_OF_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(job, QLS_ERR_INTERNAL, e.what());
  }
}

const char* qls_job_last_error(const qls_job* job) { return job ? job->last_error.c_str() : ""; }

void qls_string_free(char* s) { std::free(s); }

}  // extern "C"
