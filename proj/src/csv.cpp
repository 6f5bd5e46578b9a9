#include "opdyn/csv.hpp"

#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "opdyn/error.hpp"

namespace opdyn {

std::string format_real(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw UsageError("cannot format real value");
    return std::string(buf.data(), end);
}

std::string write_timeseries_csv(std::span<const RunResult> results) {
    if (results.empty()) throw UsageError("no run results to write");
    std::string out = "scenario,seed,tick,mean_welfare,mean_security,std_welfare,std_security\n";
    for (const auto& r : results) {
        const std::string prefix = r.scenario + ',' + std::to_string(r.seed) + ',';
        for (const auto& m : r.series) {
            out += prefix;
            out += std::to_string(m.tick);
            out += ',';
            out += format_real(m.mean_welfare);
            out += ',';
            out += format_real(m.mean_security);
            out += ',';
            out += format_real(m.std_welfare);
            out += ',';
            out += format_real(m.std_security);
            out += '\n';
        }
    }
    return out;
}

std::string write_summary_csv(std::span<const AggregateResult> aggregates,
                              std::span<const ThresholdRow> thresholds) {
    std::string out =
        "tolerance,tv_pct,wa_pct,white_pct,final_mean_welfare,final_mean_security,inverted\n";
    for (const auto& a : aggregates) {
        out += format_real(a.tolerance) + ',' + std::to_string(a.tv_pct) + ',' + std::to_string(a.wa_pct) +
               ',' + std::to_string(a.white_pct) + ',' + format_real(a.final.mean_welfare) + ',' +
               format_real(a.final.mean_security) + ',' + (a.inverted() ? "true" : "false") + '\n';
    }
    out += "\ntolerance,inversion_threshold_wa_pct\n";
    for (const auto& t : thresholds) {
        out += format_real(t.tolerance) + ',' + (t.wa_pct ? std::to_string(*t.wa_pct) : "none") + '\n';
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
    os.flush();
    if (!os) throw IoError("write to " + path.string() + " failed: " + std::strerror(errno));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace opdyn
