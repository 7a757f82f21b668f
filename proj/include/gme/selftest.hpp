// selftest.hpp
// Built-in oracle battery: algebraic identities, decomposition round
// trips, norm-bound sampling, and biseparable bound checks, with
// per-check residual reporting.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gme/types.hpp"

namespace gme {

struct SelfTestOptions {
    int samples = 1000;
    std::uint64_t seed = 1;
    // When set, restricts the battery to this one system.
    std::optional<std::vector<int>> dims;
};

// Runs the battery, printing one line per check with its worst residual.
// Returns the number of violated checks (0 = all good).
int run_selftest(const SelfTestOptions& opts, std::ostream& os);

}  // namespace gme
