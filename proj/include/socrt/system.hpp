#pragma once

#include <optional>
#include <string>

#include "socrt/component.hpp"

namespace socrt {

/// One transaction under analysis: who issues it, where it goes, its burst
/// length, the worst-case interfering burst length, and its position V in a
/// batch issued by the same controller (V = 1: first / only transaction).
struct TransactionQuery {
    std::string controller;
    std::string peripheral;
    TransactionKind kind = TransactionKind::Read;
    std::int64_t beta = 1;
    std::int64_t interferer_beta = 1;
    std::optional<MemoryCase> memory_case;
    int position_v = 1;
    HramDataMode hram_mode = HramDataMode::PhysicalCeil;
};

struct SameTypeCount {
    int value = 0;
    std::int64_t arm_phi_sum = 0;   // V-1 + sum of interferer phi
    std::int64_t arm_capacity = 0;  // V-1 + chi + V*|Psi|
};

struct WcrtBound {
    Duration isolation;
    int same_type_count = 0;   // S
    int cross_type_count = 0;  // U
    Duration per_interferer_delay; // Delta
    Duration total;            // H = isolation + (S+U)*Delta
    BoundBreakdown isolation_breakdown;
    BoundBreakdown delta_breakdown;
};

/// Response time in isolation: peripheral service bound plus the bridges on
/// the controller's path plus the crossbar traversal (contention term
/// included, M = |Psi| + 1).
BoundBreakdown isolation_bound(const Topology& t, const TransactionQuery& q);

/// Maximum same-type interfering transactions, V-parameterized form:
/// min(V-1 + sum phi, V-1 + chi + V*|Psi|). At V = 1 this reduces to
/// min(sum phi, chi + |Psi|).
SameTypeCount same_type_interference_count(const Topology& t, const TransactionQuery& q);

/// Alternate closed form min(sum phi, chi + phi_i*|Psi|), exposed for
/// comparison only; never merged with the primary form.
int same_type_interference_count_alt(const Topology& t, const TransactionQuery& q);

/// Cross-type interference: U = (S+1)*(1-theta).
int cross_type_interference_count(int same_type_s, int theta);

/// Per-interferer delay: crossbar traversal + (1-rho)*t_ctrl + t_data*beta_k,
/// specialized at the interfering burst length. When theta = 0 the control
/// term takes the worst of the read/write control times.
BoundBreakdown per_interferer_delay(const Topology& t, const TransactionQuery& q);

/// Theorem-level WCRT: H = d + (S + U) * Delta.
WcrtBound wcrt(const Topology& t, const TransactionQuery& q);

/// 100 * (bound - measured) / measured, exact. Negative means the bound was
/// violated. Throws ConfigError when measured is zero.
Rational pessimism_pct(Duration bound, Duration measured);

} // namespace socrt
