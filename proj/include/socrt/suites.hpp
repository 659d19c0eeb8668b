#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socrt/system.hpp"
#include "socrt/sim/sim.hpp"

namespace socrt {

struct SuiteOptions {
    int seed_count = 20;
    std::uint64_t base_seed = 1;
    int thread_count = 0;        // 0 = hardware concurrency
    int count_scale = 1;         // multiplies per-cell transaction counts
    HramDataMode hram_mode = HramDataMode::PhysicalCeil;
};

/// One measured-versus-bound cell. `bound_ps` is the bound for the record
/// that achieved `measured_ps`; `pass` means every record in the cell stayed
/// at or below its own bound.
struct SuiteRow {
    std::string suite;
    std::string scenario;
    TransactionKind kind = TransactionKind::Read;
    std::int64_t beta = 1;
    int phi_k = 0;               // interferer outstanding cap (0: isolation)
    int position_v = 1;
    std::uint64_t seed = 1;
    std::int64_t bound_ps = 0;
    std::int64_t measured_ps = 0;
    Rational pessimism;          // percent
    bool pass = true;
};

struct SuiteReport {
    std::vector<SuiteRow> rows;

    bool all_pass() const;
    std::size_t violations() const;
};

/// Run one named suite: "isolation", "interference", "parallelism",
/// "crossbar", "cdc" or "all". The first two exercise the given topology;
/// the last three build small synthetic topologies around the property they
/// check and use `t` only for clocking defaults. Throws ConfigError on an
/// unknown name.
SuiteReport run_suite(const Topology& t, const std::string& suite, const SuiteOptions& o);

/// Isolation plus interference grids over every peripheral, both kinds,
/// power-of-two bursts and interferer caps, `seed_count` seeds each.
SuiteReport run_safety_suites(const Topology& t, const SuiteOptions& o);

/// Isolation-only pessimism sweep over burst lengths, one row per
/// (peripheral, case, kind, beta, seed).
SuiteReport run_pessimism_sweep(const Topology& t, const SuiteOptions& o);

/// CSV with the fixed column set
/// suite,scenario,kind,beta,phi_k,V,seed,bound_ps,measured_ps,pessimism_pct,pass.
/// Formatting is locale-free and byte-stable across runs.
std::string suite_csv(const std::vector<SuiteRow>& rows);

/// Scenario builders shared by the suites and the validation harness.
/// `run_cell` executes one scenario and folds the observed records into a row.
namespace suites {

struct CellSpec {
    std::string suite;
    std::string scenario;
    Scenario definition;
    TransactionKind kind = TransactionKind::Read;
    std::int64_t beta = 1;
    std::int64_t interferer_beta = 1;
    int phi_k = 0;
    HramDataMode hram_mode = HramDataMode::PhysicalCeil;
};

SuiteRow run_cell(const Topology& t, const CellSpec& spec);

/// Saturating or isolated traffic aimed at `target`. `phi_cap` of 0 leaves
/// the controller's own limit in force.
WorkloadSpec make_workload(const std::string& controller, WorkloadMode mode,
                           const std::string& target, KindMix kind, std::int64_t beta,
                           std::int64_t count, AddressPattern pattern, int phi_cap,
                           std::int64_t max_gap_cycles);

/// Synthetic star topology: `controller_count` direct controllers on one
/// clock, one zero-latency generic peripheral. Used for crossbar latency
/// checks where the fabric must be the only timed element.
Topology make_star_topology(int controller_count, Duration period, int phi, int chi);

/// One CDC-bridged controller in its own domain, zero-latency peripheral on
/// the crossbar clock.
Topology make_cdc_topology(Duration controller_period, Duration crossbar_period, int depth,
                           int phi);

/// Two direct controllers and one SPM of the given FIFO depth.
Topology make_depth_topology(int fifo_depth, Duration period, int phi);

} // namespace suites

} // namespace socrt
