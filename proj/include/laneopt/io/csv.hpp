#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "laneopt/errors.hpp"
#include "laneopt/headway.hpp"
#include "laneopt/io/format.hpp"
#include "laneopt/sweep.hpp"

namespace laneopt::io {

/// Creates `dir` (and parents) if needed. Throws IoError when it cannot.
inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string{}));
  }
}

/// Writes to `<path>.tmp` and renames over `path`, so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view f = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
    fields.emplace_back(f);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

/// Splits into lines, skipping blank lines and '#' comments; keeps 1-based line numbers.
inline std::vector<std::pair<int, std::string>> data_lines(std::string_view text) {
  std::vector<std::pair<int, std::string>> lines;
  int number = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    lines.emplace_back(number, line);
  }
  return lines;
}

namespace detail {

inline double parse_double(const std::string& s, std::string_view where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError(std::string(where) + ": expected a number, got '" + s + "'");
  return v;
}

inline int parse_int(const std::string& s, std::string_view where) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError(std::string(where) + ": expected an integer, got '" + s + "'");
  return v;
}

}  // namespace detail

// --- sweep.csv ---------------------------------------------------------------

inline constexpr std::string_view kSweepHeader =
    "p,l_A_opt,Q,q_A,p_prime_A,C_mix_unallocated,q_mix,C_mix_single_lane";

inline std::string sweep_csv(const SweepSeries& series, int p_decimals = kPenetrationDecimals) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const SweepPoint& pt : series.points) {
    const AllocationEvaluation& b = pt.result.best;
    out += fixed(pt.p.value(), p_decimals) + ',' + std::to_string(b.dedicated_lanes) + ',' +
           flow(b.throughput) + ',' + flow(b.cav_lane_flow) + ',' +
           fixed(b.residual_penetration.value(), p_decimals) + ',' + flow(pt.unallocated_capacity) +
           ',' + flow(b.mixed_lane_flow) + ',' + flow(pt.single_lane_capacity) + '\n';
  }
  return out;
}

// --- transitions.csv ---------------------------------------------------------

inline constexpr std::string_view kTransitionsHeader = "l_A,p_low,p_high";

inline std::string transitions_csv(const std::vector<TransitionRange>& ranges,
                                   int p_decimals = kPenetrationDecimals) {
  std::string out(kTransitionsHeader);
  out += '\n';
  for (const TransitionRange& r : ranges) {
    out += std::to_string(r.dedicated_lanes) + ',' + fixed(r.p_low, p_decimals) + ',' +
           fixed(r.p_high, p_decimals) + '\n';
  }
  return out;
}

inline std::vector<TransitionRange> parse_transitions_csv(std::string_view text) {
  auto lines = data_lines(text);
  if (lines.empty() || split_fields(lines.front().second) != split_fields(kTransitionsHeader)) {
    throw InputError("transitions: missing header '" + std::string(kTransitionsHeader) + "'");
  }
  std::vector<TransitionRange> ranges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [number, line] = lines[i];
    const std::string where = "transitions line " + std::to_string(number);
    auto f = split_fields(line);
    if (f.size() != 3) throw InputError(where + ": expected 3 fields");
    ranges.push_back({detail::parse_int(f[0], where), detail::parse_double(f[1], where),
                      detail::parse_double(f[2], where)});
  }
  return ranges;
}

// --- capacity.csv ------------------------------------------------------------

inline constexpr std::string_view kCapacityHeader = "p,h_mix,C_mix";

inline std::string capacity_row(const HeadwayProfile& profile, PenetrationRate p,
                                int p_decimals = kPenetrationDecimals) {
  return fixed(p.value(), p_decimals) + ',' + headway(mixed_headway(profile, p)) + ',' +
         flow(mixed_capacity(profile, p));
}

inline std::string capacity_csv(const HeadwayProfile& profile, const std::vector<PenetrationRate>& grid,
                                int p_decimals = kPenetrationDecimals) {
  std::string out(kCapacityHeader);
  out += '\n';
  for (PenetrationRate p : grid) out += capacity_row(profile, p, p_decimals) + '\n';
  return out;
}

// --- optimize.csv ------------------------------------------------------------

inline constexpr std::string_view kOptimizeHeader = "l_A,q_A,p_prime_A,C_mix,q_mix,Q,optimal";

inline std::string optimize_csv(const OptimizationResult& result) {
  std::string out(kOptimizeHeader);
  out += '\n';
  for (const AllocationEvaluation& e : result.candidates) {
    out += std::to_string(e.dedicated_lanes) + ',' + flow(e.cav_lane_flow) + ',' +
           penetration(e.residual_penetration.value()) + ',' + flow(e.mixed_lane_capacity) + ',' +
           flow(e.mixed_lane_flow) + ',' + flow(e.throughput) + ',' +
           (e.dedicated_lanes == result.best.dedicated_lanes ? "*" : "") + '\n';
  }
  return out;
}

// --- calibration targets and reports -----------------------------------------

inline constexpr std::string_view kTargetsHeader = "scenario,L,l_A,p_low,p_high";

/// Parses a targets file. `source` names the file in diagnostics.
inline std::vector<CalibrationTarget> parse_targets_csv(std::string_view text,
                                                        std::string_view source = "targets") {
  auto lines = data_lines(text);
  std::vector<CalibrationTarget> targets;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& [number, line] = lines[i];
    auto f = split_fields(line);
    if (i == 0 && f == split_fields(kTargetsHeader)) continue;
    const std::string where = std::string(source) + " line " + std::to_string(number);
    if (f.size() != 5) throw InputError(where + ": expected 5 fields (" + std::string(kTargetsHeader) + ")");
    auto scenario = parse_scenario(f[0]);
    if (!scenario) throw InputError(where + ": unknown scenario '" + f[0] + "'");
    CalibrationTarget t{*scenario, detail::parse_int(f[1], where), detail::parse_int(f[2], where),
                        detail::parse_double(f[3], where), detail::parse_double(f[4], where)};
    if (t.lanes < 2) throw InputError(where + ": L must be at least 2");
    if (t.dedicated_lanes < 0 || t.dedicated_lanes > t.lanes) throw InputError(where + ": l_A outside [0, L]");
    if (!(0.0 <= t.p_low && t.p_low <= t.p_high && t.p_high <= 1.0)) {
      throw InputError(where + ": need 0 <= p_low <= p_high <= 1");
    }
    targets.push_back(t);
  }
  return targets;
}

inline std::string targets_csv(const std::vector<CalibrationTarget>& targets) {
  std::string out(kTargetsHeader);
  out += '\n';
  for (const CalibrationTarget& t : targets) {
    out += std::string(scenario_name(t.scenario)) + ',' + std::to_string(t.lanes) + ',' +
           std::to_string(t.dedicated_lanes) + ',' + penetration(t.p_low) + ',' + penetration(t.p_high) + '\n';
  }
  return out;
}

inline constexpr std::string_view kCalibrationHeader =
    "D,scenario,L,l_A,target_low,target_high,fit_low,fit_high,residual_low,residual_high";

inline std::string calibration_csv(const CalibrationReport& report) {
  std::string out(kCalibrationHeader);
  out += '\n';
  for (const TargetFit& f : report.fits) {
    const CalibrationTarget& t = f.target;
    out += flow(report.best_demand) + ',' + std::string(scenario_name(t.scenario)) + ',' +
           std::to_string(t.lanes) + ',' + std::to_string(t.dedicated_lanes) + ',' +
           penetration(t.p_low) + ',' + penetration(t.p_high) + ',' +
           (f.matched ? penetration(f.matched->p_low) : "NA") + ',' +
           (f.matched ? penetration(f.matched->p_high) : "NA") + ',' + penetration(f.residual_low) +
           ',' + penetration(f.residual_high) + '\n';
  }
  return out;
}

inline std::string calibration_scan_csv(const CalibrationReport& report) {
  std::string out = "D,total_mismatch\n";
  for (const DemandScore& s : report.scan) out += flow(s.demand) + ',' + penetration(s.total_mismatch) + '\n';
  return out;
}

}  // namespace laneopt::io
