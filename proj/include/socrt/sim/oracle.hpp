#pragma once

#include <cstdint>
#include <vector>

namespace socrt::sim {

/// Instance of the round-robin admission game behind the same-type
/// interference count: one observed port plus |phi_k| interfering ports
/// contending for a peripheral that admits chi transactions, the observed
/// port needing its v-th grant.
struct InterferenceGame {
    std::vector<int> phi_k; // per-interferer outstanding capacity
    int chi = 1;            // peripheral admission capacity
    int v = 1;              // observed grant index of interest
};

/// Exhaustive adversarial search over arrival, completion and initial-state
/// choices; returns the maximum number of grants that can precede the
/// observed port's v-th grant. Throws std::invalid_argument when the state
/// space guard (sum phi + chi + v <= 32) is exceeded.
int brute_force_interference_count(const InterferenceGame& g);

} // namespace socrt::sim
