#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefsim/scenarios.hpp"

namespace prefsim {

/// Malformed results file.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One (trial, timestep) line of raw.csv.
struct RawRow {
  std::string experiment;
  std::string scenario;
  std::string sampler;
  int d = 0;
  std::optional<int> t_change;
  std::optional<double> sigma;
  std::optional<int> k;
  std::optional<int> m;
  std::string feature_kind;
  int agent_index = 0;
  std::uint64_t seed = 0;
  int timestep = 0;
  double accuracy = 0.0;
  std::optional<double> norm_distance;

  friend bool operator==(const RawRow&, const RawRow&) = default;
};

/// One (cell, sampler, timestep, metric) line of summary.csv. mean is empty
/// when n = 0 and std is empty when n < 2.
struct SummaryRow {
  std::string experiment;
  std::string scenario;
  int d = 0;
  std::optional<int> t_change;
  std::optional<double> sigma;
  std::optional<int> k;
  std::optional<int> m;
  std::string feature_kind;
  std::string sampler;
  int timestep = 0;
  std::string metric;  // "accuracy" or "norm_distance"
  std::optional<double> mean;
  std::optional<double> std;
  std::size_t n = 0;
};

struct SummaryStats {
  std::vector<SummaryRow> rows;
  std::size_t aborted = 0;
};

/// Shortest round-trippable text: 17 significant digits.
std::string format_real(double value);

std::vector<RawRow> raw_rows(const TrialPlan& plan, const TrialTrace& trace);

/// Groups rows by (cell, sampler, timestep) in order of first appearance and
/// reports mean and sample standard deviation (n - 1) of each metric.
std::vector<SummaryRow> summarize_rows(std::span<const RawRow> rows);

/// Summary over the traces of an expanded spec. traces[i] belongs to
/// plans[i]; an empty entry is an aborted trial and is excluded (and counted).
/// Throws PreconditionError when a (cell, sampler) has no completed trial.
SummaryStats summarize(std::span<const TrialPlan> plans,
                       std::span<const std::optional<TrialTrace>> traces);

extern const char* const kRawCsvHeader;
extern const char* const kSummaryCsvHeader;

void write_raw_csv(std::ostream& out, std::span<const RawRow> rows);
void write_raw_row(std::ostream& out, const RawRow& row);
/// Throws CsvError on a bad header, field count or number.
std::vector<RawRow> read_raw_csv(std::istream& in);
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace prefsim
