#include "prefsim/results.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace prefsim {

const char* const kRawCsvHeader =
    "experiment,scenario,sampler,d,t_change,sigma,k,m,feature_kind,agent_index,seed,timestep,"
    "accuracy,norm_distance";
const char* const kSummaryCsvHeader =
    "experiment,scenario,d,t_change,sigma,k,m,feature_kind,sampler,timestep,metric,mean,std,n";

namespace {

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_real(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no, const char* column) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw CsvError("line " + std::to_string(line_no) + ": bad " + column + " value '" + text + "'");
  return value;
}

template <typename T>
std::optional<T> parse_optional(const std::string& text, std::size_t line_no, const char* column) {
  if (text.empty()) return std::nullopt;
  return parse_number<T>(text, line_no, column);
}

struct Accumulator {
  std::vector<double> accuracy;
  std::vector<double> distance;
};

std::pair<std::optional<double>, std::optional<double>> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {std::nullopt, std::nullopt};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, std::nullopt};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<RawRow> raw_rows(const TrialPlan& plan, const TrialTrace& trace) {
  std::vector<RawRow> rows;
  rows.reserve(trace.steps.size());
  for (const auto& step : trace.steps) {
    RawRow r;
    r.experiment = plan.experiment;
    r.scenario = plan.cell.scenario;
    r.sampler = to_string(plan.sampler);
    r.d = plan.cell.d;
    r.t_change = plan.cell.t_change;
    r.sigma = plan.cell.sigma;
    r.k = plan.cell.k;
    r.m = plan.cell.m;
    r.feature_kind = to_string(plan.cell.feature_kind);
    r.agent_index = plan.agent_index;
    r.seed = plan.config.seed;
    r.timestep = step.timestep;
    r.accuracy = step.accuracy;
    r.norm_distance = step.distance;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> summarize_rows(std::span<const RawRow> rows) {
  // Keys use the serialized text of each field, so rows parsed back from
  // raw.csv group exactly like the in-memory rows they were written from.
  std::map<std::string, std::size_t> index;
  std::vector<const RawRow*> first;
  std::vector<Accumulator> acc;
  for (const auto& r : rows) {
    const std::string key = r.experiment + ',' + r.scenario + ',' + std::to_string(r.d) + ',' +
                            opt(r.t_change) + ',' + opt(r.sigma) + ',' + opt(r.k) + ',' + opt(r.m) +
                            ',' + r.feature_kind + ',' + r.sampler + ',' + std::to_string(r.timestep);
    auto [it, inserted] = index.try_emplace(key, acc.size());
    if (inserted) {
      first.push_back(&r);
      acc.emplace_back();
    }
    auto& a = acc[it->second];
    a.accuracy.push_back(r.accuracy);
    if (r.norm_distance) a.distance.push_back(*r.norm_distance);
  }

  std::vector<SummaryRow> out;
  out.reserve(2 * acc.size());
  for (std::size_t g = 0; g < acc.size(); ++g) {
    const RawRow& r = *first[g];
    SummaryRow s;
    s.experiment = r.experiment;
    s.scenario = r.scenario;
    s.d = r.d;
    s.t_change = r.t_change;
    s.sigma = r.sigma;
    s.k = r.k;
    s.m = r.m;
    s.feature_kind = r.feature_kind;
    s.sampler = r.sampler;
    s.timestep = r.timestep;

    s.metric = "accuracy";
    std::tie(s.mean, s.std) = mean_std(acc[g].accuracy);
    s.n = acc[g].accuracy.size();
    out.push_back(s);

    s.metric = "norm_distance";
    std::tie(s.mean, s.std) = mean_std(acc[g].distance);
    s.n = acc[g].distance.size();
    out.push_back(std::move(s));
  }
  return out;
}

SummaryStats summarize(std::span<const TrialPlan> plans,
                       std::span<const std::optional<TrialTrace>> traces) {
  if (plans.size() != traces.size()) throw PreconditionError("summarize: one trace slot per plan required");
  SummaryStats stats;
  std::vector<RawRow> rows;
  std::map<std::string, std::size_t> completed;  // (cell, sampler) -> completed trials
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto& p = plans[i];
    const std::string key = p.experiment + '|' + p.cell.scenario + '|' + std::to_string(p.cell.d) + '|' +
                            opt(p.cell.t_change) + '|' + opt(p.cell.sigma) + '|' + opt(p.cell.k) + '|' +
                            opt(p.cell.m) + '|' + to_string(p.cell.feature_kind) + '|' + to_string(p.sampler);
    auto& count = completed[key];
    if (!traces[i]) {
      ++stats.aborted;
      continue;
    }
    ++count;
    auto r = raw_rows(p, *traces[i]);
    rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  }
  for (const auto& [key, count] : completed)
    if (count == 0) throw PreconditionError("summarize: no completed trials for cell " + key);
  stats.rows = summarize_rows(rows);
  return stats;
}

void write_raw_row(std::ostream& out, const RawRow& r) {
  out << r.experiment << ',' << r.scenario << ',' << r.sampler << ',' << r.d << ',' << opt(r.t_change)
      << ',' << opt(r.sigma) << ',' << opt(r.k) << ',' << opt(r.m) << ',' << r.feature_kind << ','
      << r.agent_index << ',' << r.seed << ',' << r.timestep << ',' << format_real(r.accuracy) << ','
      << opt(r.norm_distance) << '\n';
}

void write_raw_csv(std::ostream& out, std::span<const RawRow> rows) {
  out << kRawCsvHeader << '\n';
  for (const auto& r : rows) write_raw_row(out, r);
}

std::vector<RawRow> read_raw_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("raw csv is empty (missing header)");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRawCsvHeader) throw CsvError("unexpected raw csv header: '" + line + "'");

  std::vector<RawRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 14)
      throw CsvError("line " + std::to_string(line_no) + ": expected 14 fields, got " +
                     std::to_string(f.size()));
    RawRow r;
    r.experiment = f[0];
    r.scenario = f[1];
    r.sampler = f[2];
    r.d = parse_number<int>(f[3], line_no, "d");
    r.t_change = parse_optional<int>(f[4], line_no, "t_change");
    r.sigma = parse_optional<double>(f[5], line_no, "sigma");
    r.k = parse_optional<int>(f[6], line_no, "k");
    r.m = parse_optional<int>(f[7], line_no, "m");
    r.feature_kind = f[8];
    r.agent_index = parse_number<int>(f[9], line_no, "agent_index");
    r.seed = parse_number<std::uint64_t>(f[10], line_no, "seed");
    r.timestep = parse_number<int>(f[11], line_no, "timestep");
    r.accuracy = parse_number<double>(f[12], line_no, "accuracy");
    r.norm_distance = parse_optional<double>(f[13], line_no, "norm_distance");
    if (r.experiment.empty() || r.scenario.empty() || r.sampler.empty())
      throw CsvError("line " + std::to_string(line_no) + ": empty label column");
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw CsvError("raw csv has no data rows");
  return rows;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << kSummaryCsvHeader << '\n';
  for (const auto& s : rows) {
    out << s.experiment << ',' << s.scenario << ',' << s.d << ',' << opt(s.t_change) << ','
        << opt(s.sigma) << ',' << opt(s.k) << ',' << opt(s.m) << ',' << s.feature_kind << ','
        << s.sampler << ',' << s.timestep << ',' << s.metric << ',' << opt(s.mean) << ','
        << opt(s.std) << ',' << s.n << '\n';
  }
}

}  // namespace prefsim
