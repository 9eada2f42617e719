#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "gatpbench/gatpbench.h"

namespace fs = std::filesystem;

namespace {

const std::string kCorpus = std::string(GATP_CORPUS_DIR) + "/corpus.tsv";
const std::string kMidpoint = std::string(GATP_CORPUS_DIR) + "/problems/GEO0001.geo";

std::string temp_store() {
  static int n = 0;
  return (fs::temp_directory_path() /
          ("gatp-capi-" + std::to_string(::getpid()) + "-" + std::to_string(n++) + ".tsv"))
      .string();
}

} // namespace

TEST_CASE("problems through the C API") {
  gatp_problem* p = nullptr;
  REQUIRE(gatp_problem_load(kMidpoint.c_str(), &p) == GATP_OK);
  CHECK(std::string(gatp_problem_id(p)) == "GEO0001");
  CHECK(gatp_problem_step_count(p) == 5);
  CHECK(gatp_problem_conjecture_count(p) == 1);
  CHECK(gatp_problem_warning_count(p) == 0);
  CHECK(gatp_problem_warning(p, 0) == nullptr);

  gatp_problem* again = nullptr;
  REQUIRE(gatp_problem_parse(gatp_problem_render(p), &again) == GATP_OK);
  CHECK(std::string(gatp_problem_render(again)) == gatp_problem_render(p));
  gatp_problem_free(again);
  gatp_problem_free(p);

  gatp_problem* bad = nullptr;
  CHECK(gatp_problem_parse("problem X\nmidpoint M A B\n", &bad) == GATP_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(gatp_last_error_line() == 2);
  CHECK(std::string(gatp_last_error()).size() > 0);
  CHECK(gatp_problem_load("/nonexistent.geo", &bad) == GATP_ERR_IO);
  CHECK(gatp_problem_parse(nullptr, &bad) == GATP_ERR_INVALID_ARGUMENT);

  gatp_problem* warn = nullptr;
  REQUIRE(gatp_problem_parse("problem W\nfree A\nconjecture collinear A A A\n", &warn) == GATP_OK);
  CHECK(gatp_problem_warning_count(warn) == 1);
  gatp_problem_free(warn);
}

TEST_CASE("proving and checking through the C API") {
  gatp_problem* p = nullptr;
  REQUIRE(gatp_problem_load(kMidpoint.c_str(), &p) == GATP_OK);

  gatp_prove_options o;
  gatp_prove_options_init(&o);
  CHECK(o.timeout_seconds == 60.0);
  o.trace = 1;
  gatp_outcome* out = nullptr;
  REQUIRE(gatp_prove(p, &o, &out) == GATP_OK);
  CHECK(gatp_outcome_status(out) == GATP_PROVED);
  CHECK(gatp_outcome_ndg_count(out) == 0);
  CHECK(gatp_outcome_trace(out) != nullptr);
  CHECK(gatp_outcome_wall_seconds(out) < 1.5);

  gatp_check* c = nullptr;
  REQUIRE(gatp_check_run(p, 20, 1, out, &c) == GATP_OK);
  CHECK(gatp_check_consistent(c) == 1);
  CHECK(gatp_check_samples_used(c) == 20);
  gatp_check_free(c);
  gatp_outcome_free(out);

  o.prover = GATP_PROVER_GROEBNER;
  o.mode = GATP_GROEBNER_STRICT;
  REQUIRE(gatp_prove(p, &o, &out) == GATP_OK);
  CHECK(gatp_outcome_status(out) == GATP_PROVED);
  gatp_outcome_free(out);

  o.timeout_seconds = -1;
  CHECK(gatp_prove(p, &o, &out) == GATP_ERR_INVALID_ARGUMENT);

  REQUIRE(gatp_prove_external("test -f {input}", kMidpoint.c_str(), 5, &out) == GATP_OK);
  CHECK(gatp_outcome_status(out) == GATP_PROVED);
  gatp_outcome_free(out);
  CHECK(gatp_prove_external("true", kMidpoint.c_str(), 5, &out) == GATP_ERR_INVALID_ARGUMENT);
  gatp_problem_free(p);

  gatp_problem* degenerate = nullptr;
  REQUIRE(gatp_problem_parse("problem D\nfree A\non_line P A A\nconjecture collinear A A P\n",
                             &degenerate) == GATP_OK);
  CHECK(gatp_prove(degenerate, nullptr, &out) == GATP_ERR_ALGEBRAIZE);
  gatp_problem_free(degenerate);

  CHECK(std::string(gatp_status_name(GATP_TIMEOUT)) == "Timeout");
  CHECK(gatp_default_timeout() == 60.0);
}

TEST_CASE("bench and rank through the C API") {
  gatp_corpus* corpus = nullptr;
  REQUIRE(gatp_corpus_load(kCorpus.c_str(), &corpus) == GATP_OK);
  size_t n = gatp_corpus_size(corpus);
  CHECK(n >= 13);
  CHECK(std::string(gatp_corpus_expected(corpus, 0)) == "proved");
  CHECK(fs::exists(gatp_corpus_path(corpus, 0)));
  CHECK(gatp_corpus_id(corpus, n) == nullptr);

  gatp_bench* b = gatp_bench_new();
  REQUIRE(b);
  CHECK(gatp_bench_add_builtin(b, "wu", GATP_PROVER_WU, GATP_GROEBNER_GENERIC, 0) == GATP_OK);
  CHECK(gatp_bench_add_builtin(b, "wu", GATP_PROVER_WU, GATP_GROEBNER_GENERIC, 0) ==
        GATP_ERR_INVALID_ARGUMENT);
  CHECK(gatp_bench_add_external(b, "stub", "test -f {input}", 2, GATP_UNVERIFIED) == GATP_OK);
  CHECK(gatp_bench_set_parallelism(b, 0) == GATP_ERR_INVALID_ARGUMENT);
  CHECK(gatp_bench_set_parallelism(b, 2) == GATP_OK);

  auto store = temp_store();
  size_t written = 0;
  REQUIRE(gatp_bench_run(b, corpus, store.c_str(), &written) == GATP_OK);
  CHECK(written == 2 * n);
  size_t count = 0;
  REQUIRE(gatp_store_count(store.c_str(), &count) == GATP_OK);
  CHECK(count == 2 * n);
  gatp_bench_free(b);

  gatp_rank_request* r = gatp_rank_request_new(store.c_str());
  REQUIRE(r);
  CHECK(gatp_rank_request_set_corpus(r, corpus) == GATP_OK);
  CHECK(gatp_rank_request_set_weights(r, "scope=-1") == GATP_ERR_NEGATIVE_WEIGHT);
  CHECK(gatp_rank_request_set_weights(r, "scope=1,reliability=1") == GATP_OK);
  CHECK(gatp_rank_request_declare(r, "stub", 9, GATP_UNVERIFIED) == GATP_ERR_INVALID_ARGUMENT);
  CHECK(gatp_rank_request_declare(r, "stub", 2, GATP_UNVERIFIED) == GATP_OK);
  gatp_report* rep = nullptr;
  REQUIRE(gatp_rank_run(r, &rep) == GATP_OK);
  std::string text = gatp_report_text(rep);
  CHECK(text.find("Aggregate") != std::string::npos);
  CHECK(text.find(gatp_corpus_hash(corpus)) != std::string::npos);
  gatp_report* rep2 = nullptr;
  REQUIRE(gatp_rank_run(r, &rep2) == GATP_OK);
  CHECK(std::string(gatp_report_tsv(rep)) == gatp_report_tsv(rep2));
  gatp_report_free(rep);
  gatp_report_free(rep2);
  gatp_rank_request_free(r);

  gatp_rank_request* missing = gatp_rank_request_new("/nonexistent/store.tsv");
  CHECK(gatp_rank_run(missing, &rep) == GATP_ERR_IO);
  gatp_rank_request_free(missing);

  std::FILE* f = std::fopen(store.c_str(), "a");
  std::fputs("GEO0001\twu\t1\tPro", f);
  std::fclose(f);
  CHECK(gatp_store_count(store.c_str(), &count) == GATP_ERR_CORRUPT_RECORD);

  gatp_corpus_free(corpus);
  fs::remove(store);
  CHECK(gatp_corpus_load("/nonexistent.tsv", &corpus) == GATP_ERR_CORPUS);
}
