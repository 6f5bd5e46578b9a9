#include "opdyn/opinion.hpp"

#include <string>

#include "opdyn/error.hpp"

namespace opdyn {

void UpdateParams::validate() const {
    if (!(tolerance >= 0.0 && tolerance <= 1.0)) {
        throw ConfigError("tolerance must be in [0, 1], got " + std::to_string(tolerance),
                          "tolerance");
    }
    if (!(convergence > 0.0 && convergence <= 0.5)) {
        throw ConfigError("convergence_m must be in (0, 0.5], got " + std::to_string(convergence),
                          "convergence_m");
    }
}

}  // namespace opdyn
