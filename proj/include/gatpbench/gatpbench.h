/*
 * gatpbench C API.
 *
 * Every object is an opaque handle released with its matching *_free
 * function. Functions that can fail return a gatp_error; on failure the
 * message (and, for parse errors, the position) of the calling thread's
 * last error is available through gatp_last_error*(). Strings returned by
 * accessors are owned by the handle and stay valid until it is freed.
 */
#ifndef GATPBENCH_H
#define GATPBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(GATPBENCH_BUILDING)
#define GATP_API __attribute__((visibility("default")))
#else
#define GATP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gatp_error {
  GATP_OK = 0,
  GATP_ERR_INVALID_ARGUMENT = 1,
  GATP_ERR_IO = 2,
  GATP_ERR_PARSE = 3,
  GATP_ERR_CORPUS = 4,
  GATP_ERR_ALGEBRAIZE = 5,
  GATP_ERR_DEGENERATE_EXHAUSTED = 6,
  GATP_ERR_CORRUPT_RECORD = 7,
  GATP_ERR_MISSING_RECORDS = 8,
  GATP_ERR_NEGATIVE_WEIGHT = 9,
  GATP_ERR_SPAWN = 10,
  GATP_ERR_INTERNAL = 99
} gatp_error;

typedef enum gatp_status {
  GATP_PROVED = 0,
  GATP_UNPROVED = 1,
  GATP_TIMEOUT = 2,
  GATP_STATUS_ERROR = 3
} gatp_status;

typedef enum gatp_prover_kind { GATP_PROVER_WU = 0, GATP_PROVER_GROEBNER = 1 } gatp_prover_kind;

typedef enum gatp_groebner_mode {
  GATP_GROEBNER_GENERIC = 0, /* truth modulo nondegeneracy conditions */
  GATP_GROEBNER_STRICT = 1   /* plain radical membership */
} gatp_groebner_mode;

typedef enum gatp_reliability {
  GATP_FORMALLY_VERIFIED = 0,
  GATP_EXTENSIVELY_TESTED = 1,
  GATP_UNVERIFIED = 2
} gatp_reliability;

typedef enum gatp_timing_basis { GATP_BASIS_WALL = 0, GATP_BASIS_CPU = 1 } gatp_timing_basis;

typedef struct gatp_problem gatp_problem;
typedef struct gatp_outcome gatp_outcome;
typedef struct gatp_check gatp_check;
typedef struct gatp_corpus gatp_corpus;
typedef struct gatp_bench gatp_bench;
typedef struct gatp_rank_request gatp_rank_request;
typedef struct gatp_report gatp_report;

/* ---- library ---------------------------------------------------------- */

GATP_API const char* gatp_version(void);
/* Built-in default per-run timeout in seconds (60). */
GATP_API double gatp_default_timeout(void);
GATP_API const char* gatp_error_name(gatp_error code);
GATP_API const char* gatp_status_name(gatp_status status);
/* Message of the calling thread's most recent failure ("" if none). */
GATP_API const char* gatp_last_error(void);
/* 1-based position of the last GATP_ERR_PARSE; 0 otherwise. */
GATP_API size_t gatp_last_error_line(void);
GATP_API size_t gatp_last_error_column(void);

/* ---- problems --------------------------------------------------------- */

GATP_API gatp_error gatp_problem_parse(const char* text, gatp_problem** out);
GATP_API gatp_error gatp_problem_load(const char* path, gatp_problem** out);
GATP_API void gatp_problem_free(gatp_problem* problem);
GATP_API const char* gatp_problem_id(const gatp_problem* problem);
/* Canonical text form. */
GATP_API const char* gatp_problem_render(const gatp_problem* problem);
GATP_API size_t gatp_problem_step_count(const gatp_problem* problem);
GATP_API size_t gatp_problem_conjecture_count(const gatp_problem* problem);
GATP_API size_t gatp_problem_warning_count(const gatp_problem* problem);
/* "Kind: message", or NULL when index is out of range. */
GATP_API const char* gatp_problem_warning(const gatp_problem* problem, size_t index);

/* ---- proving ---------------------------------------------------------- */

typedef struct gatp_prove_options {
  double timeout_seconds;
  gatp_prover_kind prover;
  gatp_groebner_mode mode;
  int trace; /* nonzero: keep a proof record */
} gatp_prove_options;

/* Defaults: 60 s, Wu's method, generic mode, no trace. */
GATP_API void gatp_prove_options_init(gatp_prove_options* options);

/* Runs a built-in prover. GATP_ERR_ALGEBRAIZE for degenerate constructions;
 * prover-side failures (timeouts, inconsistent hypotheses) are reported in
 * the outcome instead. */
GATP_API gatp_error gatp_prove(const gatp_problem* problem, const gatp_prove_options* options,
                               gatp_outcome** out);

/* Runs an external prover: command_template must contain "{input}". */
GATP_API gatp_error gatp_prove_external(const char* command_template, const char* problem_file,
                                        double timeout_seconds, gatp_outcome** out);

GATP_API void gatp_outcome_free(gatp_outcome* outcome);
GATP_API gatp_status gatp_outcome_status(const gatp_outcome* outcome);
GATP_API size_t gatp_outcome_ndg_count(const gatp_outcome* outcome);
GATP_API const char* gatp_outcome_ndg(const gatp_outcome* outcome, size_t index);
/* NULL when the prover kept no record. */
GATP_API const char* gatp_outcome_trace(const gatp_outcome* outcome);
GATP_API const char* gatp_outcome_message(const gatp_outcome* outcome);
GATP_API double gatp_outcome_cpu_seconds(const gatp_outcome* outcome);
GATP_API double gatp_outcome_wall_seconds(const gatp_outcome* outcome);

/* ---- numeric oracle --------------------------------------------------- */

/* Exact evaluation of the conclusions on `samples` seeded random models.
 * When `nondegenerate` is non-NULL, models also keep its ndg conditions
 * nonzero. */
GATP_API gatp_error gatp_check_run(const gatp_problem* problem, size_t samples, uint64_t seed,
                                   const gatp_outcome* nondegenerate, gatp_check** out);
GATP_API void gatp_check_free(gatp_check* check);
GATP_API int gatp_check_consistent(const gatp_check* check);
GATP_API size_t gatp_check_samples_used(const gatp_check* check);
/* Deterministic text summary, including the counterexample if any. */
GATP_API const char* gatp_check_report(const gatp_check* check);

/* ---- corpus ----------------------------------------------------------- */

GATP_API gatp_error gatp_corpus_load(const char* manifest_path, gatp_corpus** out);
GATP_API void gatp_corpus_free(gatp_corpus* corpus);
GATP_API size_t gatp_corpus_size(const gatp_corpus* corpus);
GATP_API const char* gatp_corpus_id(const gatp_corpus* corpus, size_t index);
/* "proved", "not-a-theorem" or "unknown". */
GATP_API const char* gatp_corpus_expected(const gatp_corpus* corpus, size_t index);
GATP_API const char* gatp_corpus_path(const gatp_corpus* corpus, size_t index);
GATP_API const char* gatp_corpus_hash(const gatp_corpus* corpus);

/* ---- benchmarking ----------------------------------------------------- */

GATP_API gatp_bench* gatp_bench_new(void);
GATP_API void gatp_bench_free(gatp_bench* bench);
GATP_API gatp_error gatp_bench_set_timeout(gatp_bench* bench, double seconds);
GATP_API gatp_error gatp_bench_set_repetitions(gatp_bench* bench, unsigned repetitions);
GATP_API gatp_error gatp_bench_set_parallelism(gatp_bench* bench, unsigned workers);
/* Built-in provers with trace on write their records here. */
GATP_API gatp_error gatp_bench_set_trace_dir(gatp_bench* bench, const char* dir);
GATP_API gatp_error gatp_bench_add_builtin(gatp_bench* bench, const char* id,
                                           gatp_prover_kind kind, gatp_groebner_mode mode,
                                           int trace);
GATP_API gatp_error gatp_bench_add_external(gatp_bench* bench, const char* id,
                                            const char* command_template,
                                            int readability_level,
                                            gatp_reliability reliability);
/* Runs every (problem, prover, repetition) and appends the records to
 * store_path, writing the header when the file is new. */
GATP_API gatp_error gatp_bench_run(const gatp_bench* bench, const gatp_corpus* corpus,
                                   const char* store_path, size_t* records_written);

/* Number of records in a store file; GATP_ERR_CORRUPT_RECORD on bad lines. */
GATP_API gatp_error gatp_store_count(const char* store_path, size_t* count);

/* ---- ranking ---------------------------------------------------------- */

GATP_API gatp_rank_request* gatp_rank_request_new(const char* store_path);
GATP_API void gatp_rank_request_free(gatp_rank_request* request);
/* Restricts scope to the corpus and enables the oracle cross-check. The
 * corpus must outlive the request. */
GATP_API gatp_error gatp_rank_request_set_corpus(gatp_rank_request* request,
                                                 const gatp_corpus* corpus);
/* "scope=1,efficiency=1/2,..."; NULL or "" clears. */
GATP_API gatp_error gatp_rank_request_set_weights(gatp_rank_request* request,
                                                  const char* weights);
GATP_API gatp_error gatp_rank_request_set_basis(gatp_rank_request* request,
                                                gatp_timing_basis basis);
/* Samples and seed for the oracle run on each corpus problem (default 100,
 * seed 1; 0 samples disables the oracle). */
GATP_API gatp_error gatp_rank_request_set_oracle(gatp_rank_request* request, size_t samples,
                                                 uint64_t seed);
/* Declared readability and reliability of a prover in the store. */
GATP_API gatp_error gatp_rank_request_declare(gatp_rank_request* request, const char* prover_id,
                                              int readability_level,
                                              gatp_reliability reliability);
GATP_API gatp_error gatp_rank_run(const gatp_rank_request* request, gatp_report** out);
GATP_API void gatp_report_free(gatp_report* report);
GATP_API const char* gatp_report_text(const gatp_report* report);
GATP_API const char* gatp_report_tsv(const gatp_report* report);

#ifdef __cplusplus
}
#endif

#endif /* GATPBENCH_H */
