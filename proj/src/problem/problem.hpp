#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/error.hpp"
#include "common/rational.hpp"

namespace gatp::problem {

/// Point identifier, `[A-Za-z][A-Za-z0-9_]*`.
using PointName = std::string;

bool is_identifier(std::string_view s);

enum class StepKind {
  Free,         // free P
  Fixed,        // fixed P x y
  Midpoint,     // midpoint M A B
  OnLine,       // on_line P A B
  InterLL,      // inter P A B C D
  Foot,         // foot F P A B
  OnCircle,     // on_circle P O A
  Circumcenter, // circumcenter O A B C
};

/// One constructive step. points[0] is the point being introduced; the
/// rest are previously constructed points it depends on.
struct ConstructionStep {
  StepKind kind = StepKind::Free;
  std::vector<PointName> points;
  Rational x, y; // only meaningful for Fixed

  const PointName& introduced() const { return points.front(); }
  bool operator==(const ConstructionStep&) const = default;
};

enum class PredicateKind {
  Collinear,     // collinear A B C
  Parallel,      // parallel A B C D    (AB || CD)
  Perpendicular, // perpendicular A B C D
  EqDist,        // eqdist A B C D      (|AB| = |CD|)
  MidpointOf,    // midpoint_of M A B
  OnCircleOf,    // on_circle_of P O A  (P on the circle centred at O through A)
};

struct Predicate {
  PredicateKind kind = PredicateKind::Collinear;
  std::vector<PointName> points;
  bool operator==(const Predicate&) const = default;
};

std::string_view keyword(StepKind kind);
std::string_view keyword(PredicateKind kind);
/// Number of point arguments, including the introduced point for steps.
std::size_t arity(StepKind kind);
std::size_t arity(PredicateKind kind);

struct Problem {
  std::string id;
  std::vector<ConstructionStep> steps;
  std::vector<Predicate> conjectures;
  std::optional<std::string> meta;

  /// Points in construction order.
  std::vector<PointName> points() const;
  bool operator==(const Problem&) const = default;
};

class ParseError : public Error {
public:
  enum class Kind { Syntax, UndefinedPoint, DuplicatePoint, BadArity };

  ParseError(Kind kind, std::size_t line, std::size_t column, std::string subject,
             const std::string& detail);

  Kind kind;
  std::size_t line;
  std::size_t column;
  /// Offending point name or predicate keyword; empty for pure syntax errors.
  std::string subject;
};

/// Parses the line-oriented problem language. Lines starting with `#:` carry
/// the optional description; other `#` text is a comment.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::filesystem::path& path);

/// Canonical text: one statement per line, single spaces, rationals in
/// lowest terms.
std::string render_problem(const Problem& p);

struct Warning {
  enum class Kind { DegeneratePredicate, DegenerateConstruction, UnusedPoint };
  Kind kind;
  std::string subject; // point name or statement text
  std::string message;
  bool operator==(const Warning&) const = default;
};

std::string_view to_string(Warning::Kind kind);

/// Semantic checks that do not prevent algebraization.
std::vector<Warning> validate_problem(const Problem& p);

/// True when the step cannot define a point (repeated arguments such as a
/// line through A and A).
bool is_degenerate(const ConstructionStep& step);
bool is_degenerate(const Predicate& pred);

std::string render_step(const ConstructionStep& step);
std::string render_predicate(const Predicate& pred);

// ------------------------------------------------------------------ corpus

enum class ExpectedStatus { Proved, NotATheorem, Unknown };

std::string_view to_string(ExpectedStatus s);
std::optional<ExpectedStatus> parse_expected_status(std::string_view s);

struct CorpusEntry {
  std::string id;
  std::string path;                   // as written in the manifest
  std::filesystem::path resolved;     // relative to the manifest directory
  ExpectedStatus expected = ExpectedStatus::Unknown;
  /// Size of a reference informal proof, when the manifest provides one.
  std::optional<std::uint64_t> informal_proof_bytes;
  Problem problem;
  std::vector<Warning> warnings;
};

struct CorpusManifest {
  std::filesystem::path source;
  std::vector<CorpusEntry> entries;

  const CorpusEntry* find(std::string_view id) const;
  /// FNV-1a over the rendered problems and expected statuses, hex encoded.
  std::string content_hash() const;
};

class CorpusError : public Error {
public:
  enum class Kind { Unreadable, Malformed, MissingFile, DuplicateId, ProblemParse, IdMismatch };

  CorpusError(Kind kind, std::string id, std::size_t line, const std::string& detail);

  Kind kind;
  std::string id;
  std::size_t line; // manifest line, 0 when not applicable
};

/// Reads `id<TAB>path<TAB>expected[<TAB>informal-bytes]` lines. Blank lines
/// and `#` comments are skipped.
CorpusManifest load_corpus(const std::filesystem::path& manifest);

} // namespace gatp::problem
