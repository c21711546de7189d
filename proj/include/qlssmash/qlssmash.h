#ifndef QLSSMASH_QLSSMASH_H
#define QLSSMASH_QLSSMASH_H

/* C interface to the qls-smash job runner. A job holds one JSON config; running
 * it produces a JSON report string. All strings returned by the library are
 * owned by the caller and released with qls_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define QLS_API __declspec(dllexport)
#else
#define QLS_API __attribute__((visibility("default")))
#endif

typedef struct qls_job qls_job;

typedef enum qls_status {
  QLS_OK = 0,
  QLS_ERR_NULL_ARGUMENT = 1,
  QLS_ERR_INVALID_ARGUMENT = 2,
  QLS_ERR_OUT_OF_MEMORY = 3,
  QLS_ERR_INTERNAL = 4
} qls_status;

/* Report exit codes, mirrored by the CLI. */
enum { QLS_EXIT_OK = 0, QLS_EXIT_FAILED = 1, QLS_EXIT_INVALID = 2, QLS_EXIT_UNKNOWN = 3 };

QLS_API const char* qls_version(void);

/* Copies config_json (NUL-terminated). Parsing happens in qls_job_run, so a
 * malformed config still yields a report. */
QLS_API qls_status qls_job_create(const char* config_json, qls_job** out);
QLS_API void qls_job_destroy(qls_job* job);

/* cap < 0 restores the config's own degree_cap. */
QLS_API qls_status qls_job_set_degree_cap(qls_job* job, int cap);
QLS_API qls_status qls_job_set_strict(qls_job* job, int strict);

/* command: validate, hopf-check, invariants, semiprime, prime, smash-eval.
 * On QLS_OK, *report_json receives the report and *exit_code its exit code. */
QLS_API qls_status qls_job_run(qls_job* job, const char* command, char** report_json, int* exit_code);

/* Message for the last non-OK status or report error on this job, or ""
 * (owned by the job). */
QLS_API const char* qls_job_last_error(const qls_job* job);

QLS_API void qls_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
