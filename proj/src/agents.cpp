#include "opdyn/agents.hpp"

#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::TeleViewer: return "televiewer";
        case Role::WiseAgent: return "wise_agent";
        case Role::WhiteZone: return "white_zone";
    }
    return "?";
}

std::string_view to_string(ExpertMode mode) {
    return mode == ExpertMode::Adopt ? "adopt" : "converge";
}

void PopulationConfig::validate() const {
    if (n < 1) throw ConfigError("population must have at least one agent", "agents");
    if (tv_count + wa_count + white_count != n) {
        throw ConfigError("role counts " + std::to_string(tv_count) + " + " +
                              std::to_string(wa_count) + " + " + std::to_string(white_count) +
                              " do not sum to " + std::to_string(n),
                          "tv_pct");
    }
    params().validate();
}

std::vector<Role> assign_roles(const PopulationConfig& config, Rng& rng) {
    config.validate();
    std::vector<Role> roles;
    roles.reserve(config.n);
    roles.insert(roles.end(), config.tv_count, Role::TeleViewer);
    roles.insert(roles.end(), config.wa_count, Role::WiseAgent);
    roles.insert(roles.end(), config.white_count, Role::WhiteZone);
    rng.shuffle(std::span<Role>(roles));
    return roles;
}

std::vector<OpinionPair> init_opinions(std::size_t n, Rng& rng) {
    std::vector<OpinionPair> out(n);
    for (auto& p : out) {
        p.welfare = rng.uniform01();
        p.security = rng.uniform01();
    }
    return out;
}

void media_step(std::span<AgentState> agents, const SourceMessage& media, const UpdateParams& params) {
    if (media.audience != Role::TeleViewer) throw UsageError("media message must target televiewers");
    for (auto& a : agents) {
        if (a.role == Role::TeleViewer) a.opinions = bc_update_pair(a.opinions, media.value, params);
    }
}

void expert_step(std::span<AgentState> agents, const SourceMessage& expert, double convergence,
                 ExpertMode mode) {
    if (expert.audience != Role::WiseAgent) throw UsageError("expert message must target wise agents");
    const double m = mode == ExpertMode::Adopt ? 1.0 : convergence;
    for (auto& a : agents) {
        if (a.role == Role::WiseAgent) a.opinions = unguarded_update_pair(a.opinions, expert.value, m);
    }
}

}  // namespace opdyn
