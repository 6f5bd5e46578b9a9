#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "opdyn/network.hpp"
#include "opdyn/opinion.hpp"
#include "opdyn/rng.hpp"

namespace opdyn {

enum class Role {
    TeleViewer,  // receives the media broadcast, bounded confidence
    WiseAgent,   // receives the expert message, accepted unguarded
    WhiteZone,   // no source, peers only
};

std::string_view to_string(Role role);

/// How wise agents take in the expert message.
enum class ExpertMode {
    Converge,  // move by the run's m
    Adopt,     // copy the message
};

std::string_view to_string(ExpertMode mode);

struct AgentState {
    NodeId id = 0;
    Role role = Role::WhiteZone;
    OpinionPair opinions;

    bool operator==(const AgentState&) const = default;
};

/// Constant message broadcast every tick to one audience.
struct SourceMessage {
    OpinionPair value;
    Role audience = Role::TeleViewer;

    bool operator==(const SourceMessage&) const = default;
};

inline constexpr SourceMessage kDefaultMedia{{0.3, 0.8}, Role::TeleViewer};
inline constexpr SourceMessage kDefaultExpert{{0.8, 0.3}, Role::WiseAgent};

struct PopulationConfig {
    std::size_t n = 100;
    std::size_t tv_count = 0;
    std::size_t wa_count = 0;
    std::size_t white_count = 100;
    double tolerance = 0.5;
    double convergence = 0.5;
    ExpertMode expert_mode = ExpertMode::Converge;

    UpdateParams params() const { return {tolerance, convergence}; }

    /// Throws ConfigError when counts do not partition n or params are out of range.
    void validate() const;

    bool operator==(const PopulationConfig&) const = default;
};

/// Uniformly random assignment of exactly the configured role counts.
std::vector<Role> assign_roles(const PopulationConfig& config, Rng& rng);

/// Independent uniform [0, 1) draws, welfare then security per agent.
std::vector<OpinionPair> init_opinions(std::size_t n, Rng& rng);

/// Guarded update of every TeleViewer toward the media message.
void media_step(std::span<AgentState> agents, const SourceMessage& media, const UpdateParams& params);

/// Unguarded update of every WiseAgent toward the expert message.
void expert_step(std::span<AgentState> agents, const SourceMessage& expert, double convergence,
                 ExpertMode mode);

}  // namespace opdyn
