#include "rank/ranking.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gatp::rank {

using gatp::to_string;

std::string_view to_string(EfficiencyClass c) {
  switch (c) {
  case EfficiencyClass::Good: return "Good";
  case EfficiencyClass::Fair: return "Fair";
  case EfficiencyClass::Unsuitable: return "Unsuitable";
  case EfficiencyClass::Undecided: return "Undecided";
  }
  return "Undecided";
}

EfficiencyClass classify_time(double seconds, Status status) {
  if (status != Status::Proved) return EfficiencyClass::Undecided;
  if (seconds <= kGoodSeconds) return EfficiencyClass::Good;
  if (seconds <= kFairSeconds) return EfficiencyClass::Fair;
  return EfficiencyClass::Unsuitable;
}

ReadabilityLevel::ReadabilityLevel(int level) : level_(level) {
  if (level < 1 || level > 5) throw std::invalid_argument("readability level must lie in 1..5");
}

std::string_view ReadabilityLevel::description() const {
  switch (level_) {
  case 1: return "no readable proof";
  case 2: return "non-synthetic proof";
  case 3: return "semi-synthetic proof, prover language";
  case 4: return "(semi-)synthetic proof, natural language";
  default: return "(semi-)synthetic proof, natural language and visual";
  }
}

Rational de_bruijn_factor(std::uint64_t informal_bytes, std::uint64_t formal_bytes, bool) {
  if (informal_bytes == 0 || formal_bytes == 0) throw ZeroSize();
  Rational q(Integer(std::to_string(informal_bytes)), Integer(std::to_string(formal_bytes)));
  q.canonicalize();
  return q;
}

std::uint64_t compressed_size(std::string_view bytes) {
  uLongf bound = compressBound(static_cast<uLong>(bytes.size()));
  std::vector<Bytef> buf(bound);
  if (compress2(buf.data(), &bound, reinterpret_cast<const Bytef*>(bytes.data()),
                static_cast<uLong>(bytes.size()), 9) != Z_OK)
    throw Error("compression failed");
  return bound;
}

std::int64_t median(std::vector<std::int64_t> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

CellSummary summarize_cell(const std::vector<const bench::RunRecord*>& reps, TimingBasis basis) {
  if (reps.empty()) throw std::invalid_argument("empty cell");
  std::map<Status, std::size_t> counts;
  for (const auto* r : reps) ++counts[r->status];
  // Status enum order is Proved < Unproved < Timeout < Error, i.e. best
  // first, so the first maximum wins ties.
  Status best = counts.begin()->first;
  for (const auto& [s, n] : counts)
    if (n > counts[best]) best = s;
  std::vector<std::int64_t> times;
  for (const auto* r : reps)
    if (r->status == best)
      times.push_back(basis == TimingBasis::Wall ? r->wall_micros : r->cpu_micros);
  return {best, median(std::move(times))};
}

QualityProfile build_quality_profile(const std::vector<bench::RunRecord>& records,
                                     const prover::ProverDescriptor& desc,
                                     const problem::CorpusManifest& corpus,
                                     const OracleVerdicts& oracle, TimingBasis basis) {
  std::map<std::string, std::vector<const bench::RunRecord*>> cells;
  bool traced = desc.emit_trace;
  for (const auto& r : records) {
    if (r.prover_id != desc.id) continue;
    cells[r.problem_id].push_back(&r);
    traced = traced || r.trace_path.has_value();
  }

  QualityProfile p;
  p.prover_id = desc.id;
  p.reliability = desc.reliability;
  if (desc.kind == prover::ProverKind::External) {
    p.readability = ReadabilityLevel(desc.readability_level);
    p.readability_declared = desc.readability_declared;
  } else {
    p.readability = ReadabilityLevel(traced ? 2 : 1);
  }
  for (auto c : {EfficiencyClass::Good, EfficiencyClass::Fair, EfficiencyClass::Unsuitable,
                 EfficiencyClass::Undecided})
    p.histogram[c] = 0;

  std::vector<std::int64_t> proved_times;
  std::uint64_t informal_total = 0, formal_total = 0;
  for (const auto& e : corpus.entries) {
    auto it = cells.find(e.id);
    if (it == cells.end()) throw MissingRecords(desc.id, e.id);
    const auto cell = summarize_cell(it->second, basis);

    if (cell.status == Status::Proved) {
      ++p.proved_verdicts;
      auto verdict = oracle.find(e.id);
      if (verdict != oracle.end() && !verdict->second) ++p.contradicted;
    }
    if (e.expected == problem::ExpectedStatus::NotATheorem) continue;

    ++p.scope_total;
    ++p.histogram[classify_time(static_cast<double>(cell.median_micros) * 1e-6, cell.status)];
    if (cell.status == Status::Proved) {
      ++p.proved;
      proved_times.push_back(cell.median_micros);
    }

    if (e.informal_proof_bytes) {
      for (const auto* r : it->second) {
        if (!r->trace_path) continue;
        std::error_code ec;
        auto size = std::filesystem::file_size(*r->trace_path, ec);
        if (ec || size == 0) continue;
        informal_total += *e.informal_proof_bytes;
        formal_total += size;
        break;
      }
    }
  }
  p.scope_score = p.scope_total ? Rational(p.proved, p.scope_total) : Rational(0);
  p.scope_score.canonicalize();
  if (!proved_times.empty()) p.median_micros = median(std::move(proved_times));
  if (informal_total && formal_total) p.de_bruijn = de_bruijn_factor(informal_total, formal_total);
  if (p.proved_verdicts) {
    p.oracle_agreement = Rational(p.proved_verdicts - p.contradicted, p.proved_verdicts);
    p.oracle_agreement.canonicalize();
  }
  return p;
}

std::string_view to_string(Dimension d) {
  switch (d) {
  case Dimension::Scope: return "scope";
  case Dimension::Efficiency: return "efficiency";
  case Dimension::Readability: return "readability";
  case Dimension::Reliability: return "reliability";
  }
  return "?";
}

std::optional<Dimension> parse_dimension(std::string_view s) {
  for (auto d : kDimensions)
    if (to_string(d) == s) return d;
  return std::nullopt;
}

Weights parse_weights(std::string_view text) {
  Weights out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto item = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("weight '" + std::string(item) + "' is not name=value");
    auto dim = parse_dimension(item.substr(0, eq));
    if (!dim) throw std::invalid_argument("unknown dimension '" + std::string(item.substr(0, eq)) + "'");
    Rational w;
    if (!parse_rational(item.substr(eq + 1), w))
      throw std::invalid_argument("weight '" + std::string(item) + "' is not a rational");
    if (w < 0) throw NegativeWeight(*dim);
    if (out.count(*dim)) throw std::invalid_argument("weight for '" + std::string(to_string(*dim)) + "' given twice");
    out[*dim] = w;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

std::string seconds_text(std::int64_t micros) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%06lld", static_cast<long long>(micros / 1000000),
                static_cast<long long>(micros % 1000000));
  return buf;
}

int reliability_rank(ReliabilityClass r) {
  switch (r) {
  case ReliabilityClass::FormallyVerified: return 0;
  case ReliabilityClass::ExtensivelyTested: return 1;
  case ReliabilityClass::Unverified: return 2;
  }
  return 3;
}

// Distance of a size ratio from 1, as max(f, 1/f).
Rational spread(const Rational& f) { return f >= 1 ? f : Rational(1 / f); }

std::string score(Dimension d, const QualityProfile& p) {
  std::string s;
  switch (d) {
  case Dimension::Scope:
    s = to_string(p.scope_score) + " (" + std::to_string(p.proved) + "/" +
        std::to_string(p.scope_total) + ")";
    break;
  case Dimension::Efficiency:
    s = "good=" + std::to_string(p.count(EfficiencyClass::Good)) +
        ";fair=" + std::to_string(p.count(EfficiencyClass::Fair)) +
        ";unsuitable=" + std::to_string(p.count(EfficiencyClass::Unsuitable)) +
        ";undecided=" + std::to_string(p.count(EfficiencyClass::Undecided)) +
        ";median=" + (p.median_micros ? seconds_text(*p.median_micros) : std::string("-"));
    break;
  case Dimension::Readability:
    s = "level=" + std::to_string(p.readability.value());
    if (p.de_bruijn)
      s += ";debruijn=" + to_string(*p.de_bruijn) + ";inverse=" + to_string(Rational(1 / *p.de_bruijn));
    if (p.readability_declared) s += ";declared";
    break;
  case Dimension::Reliability:
    s = std::string(to_string(p.reliability)) + ";agreement=" + to_string(p.oracle_agreement);
    break;
  }
  return s;
}

// True when a is strictly better than b on dimension d.
bool better(Dimension d, const QualityProfile& a, const QualityProfile& b) {
  switch (d) {
  case Dimension::Scope:
    if (a.scope_score != b.scope_score) return a.scope_score > b.scope_score;
    break;
  case Dimension::Efficiency: {
    auto ga = a.count(EfficiencyClass::Good), gb = b.count(EfficiencyClass::Good);
    if (ga != gb) return ga > gb;
    if (a.median_micros.has_value() != b.median_micros.has_value())
      return a.median_micros.has_value();
    if (a.median_micros && *a.median_micros != *b.median_micros)
      return *a.median_micros < *b.median_micros;
    break;
  }
  case Dimension::Readability:
    if (a.readability != b.readability) return a.readability > b.readability;
    if (a.de_bruijn.has_value() != b.de_bruijn.has_value()) return a.de_bruijn.has_value();
    if (a.de_bruijn && spread(*a.de_bruijn) != spread(*b.de_bruijn))
      return spread(*a.de_bruijn) < spread(*b.de_bruijn);
    break;
  case Dimension::Reliability:
    if (a.reliability != b.reliability)
      return reliability_rank(a.reliability) < reliability_rank(b.reliability);
    if (a.oracle_agreement != b.oracle_agreement) return a.oracle_agreement > b.oracle_agreement;
    break;
  }
  return false;
}

std::string weights_text(const Weights& w) {
  std::string out;
  for (auto d : kDimensions) {
    auto it = w.find(d);
    if (it == w.end()) continue;
    if (!out.empty()) out += ",";
    out += std::string(to_string(d)) + "=" + to_string(it->second);
  }
  return out.empty() ? "none" : out;
}

std::string_view basis_text(TimingBasis b) { return b == TimingBasis::Wall ? "wall" : "cpu"; }

void table(std::ostringstream& out, const std::string& title,
           const std::vector<RankEntry>& rows) {
  std::size_t w_rank = 4, w_prover = 6;
  for (const auto& r : rows) {
    w_rank = std::max(w_rank, std::to_string(r.position).size());
    w_prover = std::max(w_prover, r.prover_id.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  out << title << "\n";
  out << "  " << pad("rank", w_rank) << "  " << pad("prover", w_prover) << "  score\n";
  for (const auto& r : rows)
    out << "  " << pad(std::to_string(r.position), w_rank) << "  " << pad(r.prover_id, w_prover)
        << "  " << r.score << "\n";
  out << "\n";
}

} // namespace

RankingReport rank_report(const std::vector<QualityProfile>& profiles,
                          const std::optional<Weights>& weights, Provenance provenance) {
  if (profiles.empty()) throw std::invalid_argument("no profiles to rank");
  RankingReport report;
  report.profiles = profiles;
  std::sort(report.profiles.begin(), report.profiles.end(),
            [](const auto& a, const auto& b) { return a.prover_id < b.prover_id; });
  std::sort(provenance.host_fingerprints.begin(), provenance.host_fingerprints.end());
  provenance.host_fingerprints.erase(
      std::unique(provenance.host_fingerprints.begin(), provenance.host_fingerprints.end()),
      provenance.host_fingerprints.end());
  report.provenance = std::move(provenance);

  std::map<Dimension, std::map<std::string, std::size_t>> positions;
  for (auto d : kDimensions) {
    std::vector<const QualityProfile*> order;
    for (const auto& p : report.profiles) order.push_back(&p);
    // profiles are already in id order, so ties fall back to the id
    std::stable_sort(order.begin(), order.end(), [d](const QualityProfile* a,
                                                     const QualityProfile* b) {
      return better(d, *a, *b);
    });
    auto& rows = report.rankings[d];
    for (std::size_t i = 0; i < order.size(); ++i) {
      rows.push_back(RankEntry{i + 1, order[i]->prover_id, score(d, *order[i])});
      positions[d][order[i]->prover_id] = i;
    }
  }

  if (weights) {
    for (const auto& [d, w] : *weights)
      if (w < 0) throw NegativeWeight(d);
    report.weights = *weights;
    Rational total = 0;
    for (const auto& [d, w] : *weights) total += w;
    if (total > 0) {
      const std::size_t n = report.profiles.size();
      std::vector<std::pair<Rational, std::string>> scored;
      for (const auto& p : report.profiles) {
        Rational s = 0;
        for (const auto& [d, w] : *weights) {
          Rational norm = n > 1 ? Rational(positions[d][p.prover_id], n - 1) : Rational(0);
          norm.canonicalize();
          s += w * norm;
        }
        s /= total;
        scored.emplace_back(s, p.prover_id);
      }
      std::sort(scored.begin(), scored.end());
      std::vector<RankEntry> rows;
      for (std::size_t i = 0; i < scored.size(); ++i)
        rows.push_back(RankEntry{i + 1, scored[i].second, to_string(scored[i].first)});
      report.aggregate = std::move(rows);
    }
  }
  return report;
}

std::string RankingReport::text() const {
  std::ostringstream out;
  for (auto d : kDimensions) {
    std::string title(to_string(d));
    title[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(title[0])));
    if (d == Dimension::Readability) title += " (levels are declared for external provers)";
    table(out, title, rankings.at(d));
  }
  if (aggregate)
    table(out, "Aggregate (weighted normalized rank, lower is better)", *aggregate);
  else
    out << "Aggregate\n  not computed (no positive weights given)\n\n";
  out << "Provenance\n"
      << "  timing basis: " << basis_text(provenance.basis) << "\n"
      << "  weights: " << weights_text(weights) << "\n"
      << "  corpus hash: " << (provenance.corpus_hash.empty() ? "-" : provenance.corpus_hash)
      << "\n"
      << "  records: " << provenance.record_count << "\n";
  for (const auto& h : provenance.host_fingerprints) out << "  host: " << h << "\n";
  return out.str();
}

std::string RankingReport::tsv() const {
  std::ostringstream out;
  out << "# dimension\trank\tprover\tscore\n";
  for (auto d : kDimensions)
    for (const auto& r : rankings.at(d))
      out << to_string(d) << '\t' << r.position << '\t' << r.prover_id << '\t' << r.score << '\n';
  if (aggregate)
    for (const auto& r : *aggregate)
      out << "aggregate\t" << r.position << '\t' << r.prover_id << '\t' << r.score << '\n';
  return out.str();
}

} // namespace gatp::rank
