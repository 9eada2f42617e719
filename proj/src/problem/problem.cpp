#include "problem/problem.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gatp::problem {

namespace {

struct StepInfo {
  StepKind kind;
  std::string_view word;
  std::size_t arity;
};

constexpr std::array<StepInfo, 8> kSteps{{
    {StepKind::Free, "free", 1},
    {StepKind::Fixed, "fixed", 1},
    {StepKind::Midpoint, "midpoint", 3},
    {StepKind::OnLine, "on_line", 3},
    {StepKind::InterLL, "inter", 5},
    {StepKind::Foot, "foot", 4},
    {StepKind::OnCircle, "on_circle", 3},
    {StepKind::Circumcenter, "circumcenter", 4},
}};

struct PredicateInfo {
  PredicateKind kind;
  std::string_view word;
  std::size_t arity;
};

constexpr std::array<PredicateInfo, 6> kPredicates{{
    {PredicateKind::Collinear, "collinear", 3},
    {PredicateKind::Parallel, "parallel", 4},
    {PredicateKind::Perpendicular, "perpendicular", 4},
    {PredicateKind::EqDist, "eqdist", 4},
    {PredicateKind::MidpointOf, "midpoint_of", 3},
    {PredicateKind::OnCircleOf, "on_circle_of", 3},
}};

struct Token {
  std::string text;
  std::size_t column; // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back(Token{std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::string_view rtrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view ltrim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  return s;
}

std::string format_error(std::size_t line, std::size_t column, const std::string& detail) {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + detail;
}

class Parser {
public:
  Problem run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      statement(text.substr(start, end - start), line_no);
      if (end == text.size()) break;
      start = end + 1;
    }
    if (!seen_header_)
      throw ParseError(ParseError::Kind::Syntax, line_no + 1, 1, "",
                       "expected 'problem <id>'");
    if (problem_.conjectures.empty())
      throw ParseError(ParseError::Kind::Syntax, line_no + 1, 1, "",
                       "expected at least one 'conjecture'");
    if (!meta_lines_.empty()) {
      std::string meta;
      for (std::size_t i = 0; i < meta_lines_.size(); ++i) {
        if (i) meta += '\n';
        meta += meta_lines_[i];
      }
      problem_.meta = std::move(meta);
    }
    return std::move(problem_);
  }

private:
  void statement(std::string_view raw, std::size_t line) {
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::string_view trimmed = ltrim(raw);
    if (trimmed.substr(0, 2) == "#:") {
      std::string_view body = rtrim(trimmed.substr(2));
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      meta_lines_.emplace_back(body);
      return;
    }
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = tokenize(raw);
    if (tokens.empty()) return;

    const Token& head = tokens.front();
    if (!seen_header_) {
      if (head.text != "problem")
        syntax(line, head.column, "expected 'problem <id>', got '" + head.text + "'");
      if (tokens.size() != 2)
        syntax(line, tokens.size() < 2 ? head.column + head.text.size() : tokens[2].column,
               "'problem' takes exactly one identifier");
      if (!is_identifier(tokens[1].text))
        syntax(line, tokens[1].column, "invalid problem id '" + tokens[1].text + "'");
      problem_.id = tokens[1].text;
      seen_header_ = true;
      return;
    }
    if (head.text == "problem") syntax(line, head.column, "duplicate 'problem' header");
    if (head.text == "conjecture") {
      conjecture(tokens, line);
      return;
    }
    if (!problem_.conjectures.empty())
      syntax(line, head.column, "construction step after a conjecture");
    step(tokens, line);
  }

  void step(const std::vector<Token>& tokens, std::size_t line) {
    const Token& head = tokens.front();
    auto info = std::find_if(kSteps.begin(), kSteps.end(),
                             [&](const StepInfo& s) { return s.word == head.text; });
    if (info == kSteps.end())
      syntax(line, head.column, "unknown statement '" + head.text + "'");
    const std::size_t extra = info->kind == StepKind::Fixed ? 2 : 0;
    const std::size_t expected = 1 + info->arity + extra;
    if (tokens.size() != expected) {
      std::size_t col = tokens.size() > expected
                            ? tokens[expected].column
                            : tokens.back().column + tokens.back().text.size();
      syntax(line, col,
             "'" + head.text + "' expects " + std::to_string(info->arity + extra) +
                 " arguments, got " + std::to_string(tokens.size() - 1));
    }
    ConstructionStep s;
    s.kind = info->kind;
    for (std::size_t i = 1; i <= info->arity; ++i) {
      const Token& t = tokens[i];
      if (!is_identifier(t.text))
        syntax(line, t.column, "invalid point name '" + t.text + "'");
      if (i > 1) require_declared(t, line);
      s.points.push_back(t.text);
    }
    if (s.kind == StepKind::Fixed) {
      for (std::size_t i = 0; i < 2; ++i) {
        const Token& t = tokens[2 + i];
        Rational q;
        if (!parse_rational(t.text, q))
          syntax(line, t.column, "invalid rational '" + t.text + "'");
        (i == 0 ? s.x : s.y) = q;
      }
    }
    const Token& fresh = tokens[1];
    if (declared_.count(fresh.text))
      throw ParseError(ParseError::Kind::DuplicatePoint, line, fresh.column, fresh.text,
                       "point '" + fresh.text + "' is already defined");
    declared_.insert(fresh.text);
    problem_.steps.push_back(std::move(s));
  }

  void conjecture(const std::vector<Token>& tokens, std::size_t line) {
    if (tokens.size() < 2)
      syntax(line, tokens.front().column + tokens.front().text.size(),
             "'conjecture' needs a predicate");
    const Token& word = tokens[1];
    auto info = std::find_if(kPredicates.begin(), kPredicates.end(),
                             [&](const PredicateInfo& p) { return p.word == word.text; });
    if (info == kPredicates.end())
      syntax(line, word.column, "unknown predicate '" + word.text + "'");
    if (tokens.size() - 2 != info->arity)
      throw ParseError(ParseError::Kind::BadArity, line, word.column, word.text,
                       "'" + word.text + "' takes " + std::to_string(info->arity) +
                           " points, got " + std::to_string(tokens.size() - 2));
    Predicate p;
    p.kind = info->kind;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const Token& t = tokens[i];
      if (!is_identifier(t.text))
        syntax(line, t.column, "invalid point name '" + t.text + "'");
      require_declared(t, line);
      p.points.push_back(t.text);
    }
    problem_.conjectures.push_back(std::move(p));
  }

  void require_declared(const Token& t, std::size_t line) const {
    if (!declared_.count(t.text))
      throw ParseError(ParseError::Kind::UndefinedPoint, line, t.column, t.text,
                       "point '" + t.text + "' is used before it is defined");
  }

  [[noreturn]] static void syntax(std::size_t line, std::size_t col, const std::string& msg) {
    throw ParseError(ParseError::Kind::Syntax, line, col, "", msg);
  }

  Problem problem_;
  bool seen_header_ = false;
  std::set<std::string> declared_;
  std::vector<std::string> meta_lines_;
};

bool all_distinct(const std::vector<PointName>& pts) {
  std::set<PointName> s(pts.begin(), pts.end());
  return s.size() == pts.size();
}

bool same_pair(const PointName& a, const PointName& b, const PointName& c,
               const PointName& d) {
  return (a == c && b == d) || (a == d && b == c);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::string_view keyword(StepKind kind) {
  for (const auto& s : kSteps)
    if (s.kind == kind) return s.word;
  return "?";
}

std::string_view keyword(PredicateKind kind) {
  for (const auto& p : kPredicates)
    if (p.kind == kind) return p.word;
  return "?";
}

std::size_t arity(StepKind kind) {
  for (const auto& s : kSteps)
    if (s.kind == kind) return s.arity;
  return 0;
}

std::size_t arity(PredicateKind kind) {
  for (const auto& p : kPredicates)
    if (p.kind == kind) return p.arity;
  return 0;
}

std::vector<PointName> Problem::points() const {
  std::vector<PointName> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.introduced());
  return out;
}

ParseError::ParseError(Kind k, std::size_t l, std::size_t c, std::string s,
                       const std::string& detail)
    : Error(format_error(l, c, detail)), kind(k), line(l), column(c),
      subject(std::move(s)) {}

Problem parse_problem(std::string_view text) { return Parser().run(text); }

Problem load_problem(const std::filesystem::path& path) {
  return parse_problem(read_file(path));
}

std::string render_step(const ConstructionStep& step) {
  std::string out(keyword(step.kind));
  for (const auto& p : step.points) out += " " + p;
  if (step.kind == StepKind::Fixed)
    out += " " + gatp::to_string(step.x) + " " + gatp::to_string(step.y);
  return out;
}

std::string render_predicate(const Predicate& pred) {
  std::string out(keyword(pred.kind));
  for (const auto& p : pred.points) out += " " + p;
  return out;
}

std::string render_problem(const Problem& p) {
  std::string out = "problem " + p.id + "\n";
  if (p.meta) {
    std::istringstream lines(*p.meta);
    std::string line;
    while (std::getline(lines, line)) out += line.empty() ? "#:\n" : "#: " + line + "\n";
  }
  for (const auto& s : p.steps) out += render_step(s) + "\n";
  for (const auto& c : p.conjectures) out += "conjecture " + render_predicate(c) + "\n";
  return out;
}

bool is_degenerate(const ConstructionStep& step) {
  const auto& a = step.points;
  switch (step.kind) {
  case StepKind::Free:
  case StepKind::Fixed:
    return false;
  case StepKind::Midpoint:
  case StepKind::OnLine:
  case StepKind::OnCircle:
    return a[1] == a[2];
  case StepKind::Foot:
    return a[2] == a[3];
  case StepKind::InterLL:
    return a[1] == a[2] || a[3] == a[4] || same_pair(a[1], a[2], a[3], a[4]);
  case StepKind::Circumcenter:
    return !all_distinct({a[1], a[2], a[3]});
  }
  return false;
}

bool is_degenerate(const Predicate& pred) {
  const auto& a = pred.points;
  switch (pred.kind) {
  case PredicateKind::Collinear:
    return !all_distinct(a);
  case PredicateKind::Parallel:
  case PredicateKind::Perpendicular:
    return a[0] == a[1] || a[2] == a[3] ||
           (pred.kind == PredicateKind::Parallel && same_pair(a[0], a[1], a[2], a[3]));
  case PredicateKind::EqDist:
    return a[0] == a[1] || a[2] == a[3] || same_pair(a[0], a[1], a[2], a[3]);
  case PredicateKind::MidpointOf:
    return a[0] == a[1] || a[0] == a[2];
  case PredicateKind::OnCircleOf:
    return a[0] == a[2] || a[1] == a[2];
  }
  return false;
}

std::string_view to_string(Warning::Kind kind) {
  switch (kind) {
  case Warning::Kind::DegeneratePredicate: return "DegeneratePredicate";
  case Warning::Kind::DegenerateConstruction: return "DegenerateConstruction";
  case Warning::Kind::UnusedPoint: return "UnusedPoint";
  }
  return "?";
}

std::vector<Warning> validate_problem(const Problem& p) {
  std::vector<Warning> out;
  std::map<PointName, std::size_t> uses;
  for (const auto& s : p.steps) {
    for (std::size_t i = 1; i < s.points.size(); ++i) ++uses[s.points[i]];
    if (is_degenerate(s))
      out.push_back({Warning::Kind::DegenerateConstruction, render_step(s),
                     "construction '" + render_step(s) + "' does not determine a point"});
  }
  for (const auto& c : p.conjectures) {
    for (const auto& pt : c.points) ++uses[pt];
    if (is_degenerate(c))
      out.push_back({Warning::Kind::DegeneratePredicate, render_predicate(c),
                     "predicate '" + render_predicate(c) + "' has repeated points"});
  }
  for (const auto& s : p.steps)
    if (!uses.count(s.introduced()))
      out.push_back({Warning::Kind::UnusedPoint, s.introduced(),
                     "point '" + s.introduced() + "' is never referenced"});
  return out;
}

// ------------------------------------------------------------------ corpus

std::string_view to_string(ExpectedStatus s) {
  switch (s) {
  case ExpectedStatus::Proved: return "proved";
  case ExpectedStatus::NotATheorem: return "not-a-theorem";
  case ExpectedStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<ExpectedStatus> parse_expected_status(std::string_view s) {
  if (s == "proved") return ExpectedStatus::Proved;
  if (s == "not-a-theorem") return ExpectedStatus::NotATheorem;
  if (s == "unknown") return ExpectedStatus::Unknown;
  return std::nullopt;
}

const CorpusEntry* CorpusManifest::find(std::string_view id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

std::string CorpusManifest::content_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& e : entries) {
    mix(e.id);
    mix("\t");
    mix(to_string(e.expected));
    mix("\n");
    mix(render_problem(e.problem));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CorpusError::CorpusError(Kind k, std::string i, std::size_t l, const std::string& detail)
    : Error(detail), kind(k), id(std::move(i)), line(l) {}

CorpusManifest load_corpus(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in)
    throw CorpusError(CorpusError::Kind::Unreadable, "", 0,
                      "cannot read corpus manifest " + manifest.string());
  CorpusManifest out;
  out.source = manifest;
  const auto base = manifest.parent_path();
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = ltrim(line);
    if (view.empty() || view.front() == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    auto where = manifest.string() + ":" + std::to_string(line_no) + ": ";
    if (fields.size() < 3 || fields.size() > 4)
      throw CorpusError(CorpusError::Kind::Malformed, "", line_no,
                        where + "expected id<TAB>path<TAB>expected-status");
    CorpusEntry e;
    e.id = fields[0];
    e.path = fields[1];
    if (!is_identifier(e.id))
      throw CorpusError(CorpusError::Kind::Malformed, e.id, line_no,
                        where + "invalid problem id '" + e.id + "'");
    auto status = parse_expected_status(fields[2]);
    if (!status)
      throw CorpusError(CorpusError::Kind::Malformed, e.id, line_no,
                        where + "unknown expected status '" + fields[2] + "'");
    e.expected = *status;
    if (fields.size() == 4) {
      try {
        std::size_t used = 0;
        e.informal_proof_bytes = std::stoull(fields[3], &used);
        if (used != fields[3].size() || *e.informal_proof_bytes == 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw CorpusError(CorpusError::Kind::Malformed, e.id, line_no,
                          where + "informal proof size must be a positive integer");
      }
    }
    if (!ids.insert(e.id).second)
      throw CorpusError(CorpusError::Kind::DuplicateId, e.id, line_no,
                        where + "duplicate problem id '" + e.id + "'");
    e.resolved = base / e.path;
    std::string text;
    try {
      text = read_file(e.resolved);
    } catch (const IoError&) {
      throw CorpusError(CorpusError::Kind::MissingFile, e.id, line_no,
                        where + "problem file not found: " + e.resolved.string());
    }
    try {
      e.problem = parse_problem(text);
    } catch (const ParseError& err) {
      throw CorpusError(CorpusError::Kind::ProblemParse, e.id, line_no,
                        where + e.id + ": " + e.resolved.string() + ":" + err.what());
    }
    if (e.problem.id != e.id)
      throw CorpusError(CorpusError::Kind::IdMismatch, e.id, line_no,
                        where + "file declares problem '" + e.problem.id + "'");
    e.warnings = validate_problem(e.problem);
    out.entries.push_back(std::move(e));
  }
  return out;
}

} // namespace gatp::problem
