#include "opdyn/scenario_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <optional>

#include "opdyn/csv.hpp"
#include "opdyn/error.hpp"

namespace opdyn {

namespace {

constexpr std::array<std::string_view, 20> kKeys = {
    "agents",         "tv_pct",          "wa_pct",     "white_pct",   "tolerance",
    "convergence_m",  "expert_mode",     "media_welfare", "media_security", "expert_welfare",
    "expert_security", "net_core",       "net_attach", "max_ticks",   "eps",
    "patience",       "seeds",           "edge_activation", "update_reads", "fixed_network",
};

struct Entry {
    std::string value;
    int line = 0;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Reader {
public:
    explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {}

    const Entry* find(std::string_view key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

    int line_of(std::string_view key) const {
        const Entry* e = find(key);
        return e ? e->line : 0;
    }

    [[noreturn]] void fail(std::string_view key, const std::string& msg) const {
        const int line = line_of(key);
        std::string where = line > 0 ? "line " + std::to_string(line) + ": " : std::string{};
        throw ConfigError(where + "key '" + std::string(key) + "': " + msg, std::string(key), line);
    }

    template <typename T>
    T number(std::string_view key, T fallback) const {
        const Entry* e = find(key);
        if (!e) return fallback;
        T out{};
        const char* first = e->value.data();
        const char* last = first + e->value.size();
        const auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc{} || ptr != last) fail(key, "'" + e->value + "' is not a valid number");
        return out;
    }

    std::string word(std::string_view key, std::string_view fallback) const {
        const Entry* e = find(key);
        return e ? e->value : std::string(fallback);
    }

private:
    std::map<std::string, Entry, std::less<>> entries_;
};

std::vector<std::uint64_t> parse_seeds(const Reader& r) {
    const Entry* e = r.find("seeds");
    if (!e) return ScenarioConfig{}.seeds;
    const std::string_view v = e->value;
    auto parse_one = [&](std::string_view token) {
        token = trim(token);
        std::uint64_t out = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            r.fail("seeds", "'" + std::string(token) + "' is not a seed");
        }
        return out;
    };

    std::vector<std::uint64_t> seeds;
    if (const auto dots = v.find(".."); dots != std::string_view::npos) {
        const auto lo = parse_one(v.substr(0, dots));
        const auto hi = parse_one(v.substr(dots + 2));
        if (hi < lo) r.fail("seeds", "empty range");
        if (hi - lo >= 1'000'000) r.fail("seeds", "range too large");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
        return seeds;
    }
    std::size_t start = 0;
    while (start <= v.size()) {
        const auto comma = v.find(',', start);
        const auto end = comma == std::string_view::npos ? v.size() : comma;
        seeds.push_back(parse_one(v.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return seeds;
}

std::size_t count_from_pct(const Reader& r, std::string_view key, long pct, std::size_t n) {
    if (pct < 0 || pct > 100) r.fail(key, "percentage must be in [0, 100]");
    const std::size_t scaled = static_cast<std::size_t>(pct) * n;
    if (scaled % 100 != 0) {
        r.fail(key, std::to_string(pct) + "% of " + std::to_string(n) + " agents is not a whole count");
    }
    return scaled / 100;
}

}  // namespace

std::span<const std::string_view> scenario_keys() { return kKeys; }

ScenarioConfig parse_scenario_file(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        pos = end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", {}, line_no);
            }
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'", key,
                                  line_no);
            }
            if (value.empty()) {
                throw ConfigError("line " + std::to_string(line_no) + ": key '" + key + "' has no value", key,
                                  line_no);
            }
            entries[key] = Entry{value, line_no};
        }
        if (nl == std::string_view::npos) break;
    }

    const Reader r(std::move(entries));
    if (!r.find("agents")) throw ConfigError("missing required key 'agents'", "agents");

    ScenarioConfig c;
    const long agents = r.number<long>("agents", 0);
    if (agents < 1) r.fail("agents", "must be at least 1");
    const auto n = static_cast<std::size_t>(agents);

    const long tv = r.number<long>("tv_pct", 0);
    const long wa = r.number<long>("wa_pct", 0);
    const long white = r.number<long>("white_pct", 0);
    if (tv + wa + white != 100) {
        const int line = std::max({r.line_of("tv_pct"), r.line_of("wa_pct"), r.line_of("white_pct")});
        throw ConfigError((line > 0 ? "line " + std::to_string(line) + ": " : std::string{}) +
                              "tv_pct + wa_pct + white_pct = " + std::to_string(tv + wa + white) +
                              ", expected 100",
                          "tv_pct+wa_pct+white_pct", line);
    }

    auto& pop = c.population;
    pop.n = n;
    pop.tv_count = count_from_pct(r, "tv_pct", tv, n);
    pop.wa_count = count_from_pct(r, "wa_pct", wa, n);
    pop.white_count = count_from_pct(r, "white_pct", white, n);
    pop.tolerance = r.number<double>("tolerance", 0.5);
    if (!(pop.tolerance >= 0.0 && pop.tolerance <= 1.0)) r.fail("tolerance", "must be in [0, 1]");
    pop.convergence = r.number<double>("convergence_m", 0.5);
    if (!(pop.convergence > 0.0 && pop.convergence <= 0.5)) r.fail("convergence_m", "must be in (0, 0.5]");

    const std::string mode = r.word("expert_mode", "converge");
    if (mode == "converge") {
        pop.expert_mode = ExpertMode::Converge;
    } else if (mode == "adopt") {
        pop.expert_mode = ExpertMode::Adopt;
    } else {
        r.fail("expert_mode", "expected 'converge' or 'adopt', got '" + mode + "'");
    }

    auto unit = [&](std::string_view key, double fallback) {
        const double v = r.number<double>(key, fallback);
        if (!(v >= 0.0 && v <= 1.0)) r.fail(key, "must be in [0, 1]");
        return v;
    };
    c.media.value = {unit("media_welfare", kDefaultMedia.value.welfare),
                     unit("media_security", kDefaultMedia.value.security)};
    c.expert.value = {unit("expert_welfare", kDefaultExpert.value.welfare),
                      unit("expert_security", kDefaultExpert.value.security)};

    c.network.n = n;
    const long core = r.number<long>("net_core", 3);
    const long attach = r.number<long>("net_attach", 2);
    if (core < 2) r.fail("net_core", "must be at least 2");
    if (attach < 1 || attach > core) r.fail("net_attach", "must be in [1, net_core]");
    if (static_cast<std::size_t>(core) > n) r.fail("net_core", "exceeds agents");
    c.network.seed_core_size = static_cast<std::size_t>(core);
    c.network.attach_count = static_cast<std::size_t>(attach);

    const long max_ticks = r.number<long>("max_ticks", 100);
    if (max_ticks < 1) r.fail("max_ticks", "must be at least 1");
    c.controls.max_ticks = static_cast<std::size_t>(max_ticks);
    c.controls.convergence_eps = r.number<double>("eps", 1e-4);
    if (!(c.controls.convergence_eps >= 0.0)) r.fail("eps", "must be non-negative");
    const long patience = r.number<long>("patience", 10);
    if (patience < 1) r.fail("patience", "must be at least 1");
    c.controls.patience = static_cast<std::size_t>(patience);

    c.seeds = parse_seeds(r);

    const std::string activation = r.word("edge_activation", "once");
    if (activation == "once") {
        c.edge_activation = EdgeActivation::Once;
    } else if (activation == "per_direction") {
        c.edge_activation = EdgeActivation::PerDirection;
    } else {
        r.fail("edge_activation", "expected 'once' or 'per_direction', got '" + activation + "'");
    }

    const std::string reads = r.word("update_reads", "live");
    if (reads == "live") {
        c.update_reads = UpdateReads::Live;
    } else if (reads == "snapshot") {
        c.update_reads = UpdateReads::Snapshot;
    } else {
        r.fail("update_reads", "expected 'live' or 'snapshot', got '" + reads + "'");
    }

    const std::string fixed = r.word("fixed_network", "false");
    if (fixed == "true") {
        c.fixed_network = true;
    } else if (fixed == "false") {
        c.fixed_network = false;
    } else {
        r.fail("fixed_network", "expected 'true' or 'false', got '" + fixed + "'");
    }

    c.validate();
    return c;
}

std::string render_scenario(const ScenarioConfig& c) {
    std::string seeds;
    for (std::size_t i = 0; i < c.seeds.size(); ++i) {
        if (i) seeds += ',';
        seeds += std::to_string(c.seeds[i]);
    }
    const std::array<std::string, kKeys.size()> values = {
        std::to_string(c.population.n),
        std::to_string(c.tv_pct()),
        std::to_string(c.wa_pct()),
        std::to_string(c.white_pct()),
        format_real(c.population.tolerance),
        format_real(c.population.convergence),
        std::string(to_string(c.population.expert_mode)),
        format_real(c.media.value.welfare),
        format_real(c.media.value.security),
        format_real(c.expert.value.welfare),
        format_real(c.expert.value.security),
        std::to_string(c.network.seed_core_size),
        std::to_string(c.network.attach_count),
        std::to_string(c.controls.max_ticks),
        format_real(c.controls.convergence_eps),
        std::to_string(c.controls.patience),
        seeds,
        std::string(to_string(c.edge_activation)),
        std::string(to_string(c.update_reads)),
        c.fixed_network ? "true" : "false",
    };
    std::string out;
    for (std::size_t i = 0; i < kKeys.size(); ++i) {
        out += kKeys[i];
        out += " = ";
        out += values[i];
        out += '\n';
    }
    return out;
}

}  // namespace opdyn
