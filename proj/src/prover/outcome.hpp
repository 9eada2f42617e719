#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poly/polynomial.hpp"

namespace gatp::prover {

enum class Status { Proved, Unproved, Timeout, Error };

std::string_view to_string(Status s);
std::optional<Status> parse_status(std::string_view s);

/// One cell of a comparison table: verdict, side conditions, timing.
struct ProofOutcome {
  Status status = Status::Error;
  std::string message; // error detail for Status::Error
  std::vector<poly::Polynomial> ndg_conditions;
  std::vector<std::string> ndg_text; // ndg_conditions in canonical form
  std::optional<std::string> trace;
  double cpu_seconds = 0;
  double wall_seconds = 0;
};

enum class ProverKind { BuiltinWu, BuiltinGroebner, External };
enum class ReliabilityClass { FormallyVerified, ExtensivelyTested, Unverified };
enum class GroebnerMode { Strict, Generic };

std::string_view to_string(ReliabilityClass r);
std::optional<ReliabilityClass> parse_reliability(std::string_view s);
std::string_view to_string(GroebnerMode m);

struct ProverDescriptor {
  std::string id;
  ProverKind kind = ProverKind::BuiltinWu;
  std::string command; // External only; contains "{input}"
  GroebnerMode mode = GroebnerMode::Generic;
  bool emit_trace = false;
  int readability_level = 1; // 1..5
  ReliabilityClass reliability = ReliabilityClass::Unverified;
  /// False for built-ins, whose level follows from emit_trace.
  bool readability_declared = false;

  static ProverDescriptor wu(std::string id = "wu", bool trace = false);
  static ProverDescriptor groebner(std::string id = "gbm",
                                   GroebnerMode mode = GroebnerMode::Generic,
                                   bool trace = false);
  static ProverDescriptor external(std::string id, std::string command,
                                   int readability_level = 1,
                                   ReliabilityClass reliability = ReliabilityClass::Unverified);
};

} // namespace gatp::prover
