#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "opdyn/experiments.hpp"

namespace opdyn {

/// Shortest decimal that round-trips to the same double, `.` separator.
std::string format_real(double value);

/// Header `scenario,seed,tick,mean_welfare,mean_security,std_welfare,std_security`,
/// rows in (scenario, seed, tick) order as given by run_batch.
std::string write_timeseries_csv(std::span<const RunResult> results);

/// Per-scenario final aggregates, a blank line, then the threshold block
/// `tolerance,inversion_threshold_wa_pct` (`none` when no row inverts).
std::string write_summary_csv(std::span<const AggregateResult> aggregates,
                              std::span<const ThresholdRow> thresholds);

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Writes bytes verbatim. Throws IoError naming the path and cause.
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace opdyn
