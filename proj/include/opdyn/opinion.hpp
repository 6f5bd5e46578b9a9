#pragma once

namespace opdyn {

/// Two independent opinion dimensions, each in [0, 1].
struct OpinionPair {
    double welfare = 0.0;
    double security = 0.0;

    bool operator==(const OpinionPair&) const = default;
};

/// Bounded-confidence parameters: acceptance threshold and step fraction.
struct UpdateParams {
    double tolerance = 0.5;    // t in [0, 1]
    double convergence = 0.5;  // m in (0, 0.5]

    /// Throws ConfigError naming `tolerance` or `convergence_m`.
    void validate() const;

    bool operator==(const UpdateParams&) const = default;
};

/// |own - received| <= t. The boundary accepts.
constexpr bool guard(double own, double received, double tolerance) noexcept {
    const double d = own - received;
    return (d < 0 ? -d : d) <= tolerance;
}

/// own + m (received - own) when the guard passes, own otherwise.
constexpr double bc_update_dimension(double own, double received, const UpdateParams& p) noexcept {
    return guard(own, received, p.tolerance) ? own + p.convergence * (received - own) : own;
}

/// Per-dimension guarded update; a rejected dimension does not block the other.
constexpr OpinionPair bc_update_pair(const OpinionPair& own, const OpinionPair& received,
                                     const UpdateParams& p) noexcept {
    return {bc_update_dimension(own.welfare, received.welfare, p),
            bc_update_dimension(own.security, received.security, p)};
}

/// Unguarded move toward `received` by fraction m. m == 1 copies exactly.
constexpr OpinionPair unguarded_update_pair(const OpinionPair& own, const OpinionPair& received,
                                            double m) noexcept {
    if (m == 1.0) return received;
    return {own.welfare + m * (received.welfare - own.welfare),
            own.security + m * (received.security - own.security)};
}

constexpr bool in_unit_range(const OpinionPair& p) noexcept {
    return p.welfare >= 0.0 && p.welfare <= 1.0 && p.security >= 0.0 && p.security <= 1.0;
}

}  // namespace opdyn
