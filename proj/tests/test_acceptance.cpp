#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "socrt/config.hpp"
#include "socrt/sim/oracle.hpp"
#include "socrt/sim/sim.hpp"
#include "socrt/suites.hpp"
#include "socrt/system.hpp"

using namespace socrt;

namespace {

const Topology& reference() {
    static Topology t = load_topology_file(SOCRT_REFERENCE_TOPOLOGY);
    return t;
}

/// Safety grids are shared by several criteria; run them once.
const SuiteReport& safety_report() {
    static SuiteReport rep = [] {
        SuiteOptions o;
        o.seed_count = 10;
        return run_safety_suites(reference(), o);
    }();
    return rep;
}

void report(int criterion, const char* name, bool ok) {
    std::printf("[criterion %d] %s: %s\n", criterion, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK_MESSAGE(ok, "criterion ", criterion, " (", std::string(name), ")");
}

std::vector<const SuiteRow*> rows_of(const SuiteReport& rep, const std::string& scenario) {
    std::vector<const SuiteRow*> out;
    for (const auto& r : rep.rows)
        if (r.scenario == scenario) out.push_back(&r);
    return out;
}

/// Pessimism of the worst (largest) measurement in a scenario, in percent.
Rational worst_case_pessimism(const SuiteReport& rep, const std::string& scenario, int phi_k) {
    const SuiteRow* worst = nullptr;
    for (const auto& r : rep.rows)
        if (r.scenario == scenario && r.phi_k == phi_k)
            if (!worst || r.measured_ps > worst->measured_ps) worst = &r;
    REQUIRE_MESSAGE(worst != nullptr, "no rows for ", scenario);
    return pessimism_pct(Duration{worst->bound_ps}, Duration{worst->measured_ps});
}

} // namespace

TEST_CASE("criterion 1: measured response never exceeds the analytical bound") {
    const SuiteReport& rep = safety_report();
    bool ok = !rep.rows.empty() && rep.all_pass() && rep.violations() == 0;
    report(1, "bound safety over isolation and interference grids", ok);
}

TEST_CASE("criterion 2: crossbar bound is exact for single-word traffic") {
    SuiteOptions o;
    o.seed_count = 64;
    SuiteReport rep = run_suite(reference(), "crossbar", o);
    bool ok = rep.all_pass();
    for (int m : {1, 2, 4}) {
        std::int64_t bound = (2 + (m - 1)) * 1000;
        std::int64_t peak = 0;
        for (const auto* r : rows_of(rep, "star_m" + std::to_string(m))) {
            ok = ok && r->bound_ps == bound && r->measured_ps <= bound;
            peak = std::max(peak, r->measured_ps);
        }
        // Some seed must realize the worst round-robin alignment.
        ok = ok && peak == bound;
    }
    report(2, "crossbar latency bound reached but never crossed", ok);
}

TEST_CASE("criterion 3: io subsystem bound is tight") {
    // Unit level: single-word service costs are exactly 5 (read) and 4
    // (write) cycles.
    auto io = io_timing(2, ClockDomain{"sys", Duration{1000}});
    bool ok = io.service_bound(TransactionKind::Read, 1).ps == 5000 &&
              io.service_bound(TransactionKind::Write, 1).ps == 4000;

    // System level: the end-to-end isolation bound leaves at most two io
    // cycles of slack.
    const Duration max_slack{2000};
    int cells = 0;
    for (const auto& r : safety_report().rows) {
        if (r.suite != "isolation" || r.scenario.rfind("io_", 0) != 0) continue;
        ++cells;
        Duration slack = Duration{r.bound_ps} - Duration{r.measured_ps};
        ok = ok && slack >= Duration::zero() && slack <= max_slack;
    }
    ok = ok && cells > 0;
    report(3, "io bounds tight at unit and system level", ok);
}

TEST_CASE("criterion 4: cdc crossing bound holds over random phase alignments") {
    SuiteOptions o;
    o.seed_count = 200; // 5 clock ratios -> 1000 phase draws
    SuiteReport rep = run_suite(reference(), "cdc", o);
    bool ok = rep.all_pass() && rep.rows.size() >= 1000;
    for (std::int64_t tc : {10, 20, 30, 40, 50}) {
        std::int64_t slower = std::max<std::int64_t>(tc, 30) * 1000;
        std::int64_t peak = 0, bound = 0;
        for (const auto* r : rows_of(rep, "cdc_" + std::to_string(tc) + "ns")) {
            peak = std::max(peak, r->measured_ps);
            bound = r->bound_ps;
        }
        // The bound is conservative only up to one period of the slower clock.
        ok = ok && peak <= bound && bound - peak <= slower;
    }
    report(4, "cdc bound safe and within one slow period of the worst case", ok);
}

TEST_CASE("criterion 5: pessimism shrinks with burst length and stays bounded") {
    const SuiteReport& rep = safety_report();
    bool ok = true;

    auto trend = [&](const std::string& prefix, const char* kind) {
        Rational prev{1000000};
        for (std::int64_t beta : {16, 32, 64, 128, 256}) {
            Rational p = worst_case_pessimism(
                rep, prefix + "_" + kind + "_b" + std::to_string(beta), 0);
            ok = ok && Rational{0} <= p && p <= prev;
            prev = p;
        }
        return prev; // value at beta = 256
    };
    // Long bursts amortize the fixed control overhead almost completely.
    ok = ok && trend("spm", "read") <= Rational{3};
    ok = ok && trend("spm", "write") <= Rational{3};
    ok = ok && trend("mm_hit", "read") <= Rational{3};

    // Misses: the refill model must be conservative but not vacuous while the
    // burst fits one line span.
    for (const char* sc : {"mm_miss_read_b1", "mm_miss_read_b8", "mm_evict_write_b1",
                           "mm_evict_write_b8"}) {
        Rational p = worst_case_pessimism(rep, sc, 0);
        ok = ok && Rational{0} < p && p <= Rational{60};
    }
    report(5, "isolation pessimism decreasing in beta, small for long bursts", ok);
}

TEST_CASE("criterion 6: request parallelism saturates at the fifo depth") {
    SuiteOptions o;
    o.seed_count = 16;
    SuiteReport rep = run_suite(reference(), "parallelism", o);
    bool ok = !rep.rows.empty() && rep.all_pass();
    for (const auto& r : rep.rows) ok = ok && r.measured_ps == r.bound_ps;
    report(6, "peak in-service transactions equal the fifo depth", ok);
}

TEST_CASE("criterion 7: interference cost plateaus at the admission capacity") {
    const SuiteReport& rep = safety_report();
    // chi + |Psi| = 5 for the SPM, so caps 8 and 16 must behave identically:
    // same bound, and the same seed produces the same measurement.
    bool ok = true;
    for (const char* sc : {"spm_read_vs_read_b16", "spm_write_vs_write_b16"}) {
        std::map<std::uint64_t, const SuiteRow*> at8, at16;
        for (const auto* r : rows_of(rep, sc)) {
            if (r->phi_k == 8) at8[r->seed] = r;
            if (r->phi_k == 16) at16[r->seed] = r;
        }
        ok = ok && !at8.empty() && at8.size() == at16.size();
        for (const auto& [seed, r8] : at8) {
            auto it = at16.find(seed);
            if (it == at16.end()) { ok = false; continue; }
            ok = ok && r8->bound_ps == it->second->bound_ps &&
                 r8->measured_ps == it->second->measured_ps;
        }
    }
    report(7, "bound and measurement identical beyond chi plus psi", ok);
}

TEST_CASE("criterion 8: admission game never beats the closed-form count") {
    bool ok = true;
    // Exhaustive grid: up to two interferers with phi in [0, 8] each,
    // chi in [1, 8], batch position in [1, 4].
    std::vector<std::vector<int>> phis{{}};
    for (int p0 = 0; p0 <= 8; ++p0) phis.push_back({p0});
    for (int p0 = 0; p0 <= 8; ++p0)
        for (int p1 = 0; p1 <= 8; ++p1) phis.push_back({p0, p1});
    for (const auto& phi : phis) {
        long long phi_sum = 0;
        for (int p : phi) phi_sum += p;
        for (int chi = 1; chi <= 8; ++chi) {
            for (int v = 1; v <= 4; ++v) {
                if (phi_sum + chi + v > 32) continue;
                int played = sim::brute_force_interference_count({phi, chi, v});
                long long arm1 = v - 1 + phi_sum;
                long long arm2 = v - 1 + chi + static_cast<long long>(v) * phi.size();
                ok = ok && played <= std::min(arm1, arm2);
            }
        }
    }

    // The V-parameterized count at V = 1 reduces to min(sum phi, chi + |Psi|)
    // on randomly drawn configurations.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        int n = 1 + static_cast<int>(rng() % 4);
        int chi = 1 + static_cast<int>(rng() % 63);
        Topology t = suites::make_star_topology(n, Duration{1000}, 1, chi);
        long long phi_sum = 0;
        for (std::size_t i = 1; i < t.controllers.size(); ++i) {
            int p = 1 + static_cast<int>(rng() % 32);
            t.controllers[i].phi_read = p;
            phi_sum += p;
        }
        TransactionQuery q{.controller = "c0", .peripheral = "hub"};
        int s = same_type_interference_count(t, q).value;
        ok = ok && s == std::min<long long>(phi_sum, chi + (n - 1));
    }
    report(8, "round-robin game bounded by the interference formula", ok);
}

TEST_CASE("criterion 9: runs are reproducible bit for bit") {
    Topology t = reference();
    Scenario s;
    s.name = "repro";
    s.observed = "cva6";
    s.seed = 11;
    s.workloads.push_back(suites::make_workload("cva6", WorkloadMode::Isolation, "spm",
                                                KindMix::Read, 16, 40, AddressPattern::HitLoop, 0,
                                                8));
    s.workloads.push_back(suites::make_workload("cluster", WorkloadMode::Interference, "spm",
                                                KindMix::Read, 16, 400, AddressPattern::HitLoop,
                                                0, 0));
    auto a = sim::run_simulation(t, s);
    auto b = sim::run_simulation(t, s);
    bool ok = a.horizon_ok && a.trace_hash == b.trace_hash && a.records.size() == b.records.size();

    SuiteOptions o;
    o.seed_count = 2;
    o.thread_count = 4;
    auto r1 = run_suite(t, "interference", o);
    auto r2 = run_suite(t, "interference", o);
    ok = ok && suite_csv(r1.rows) == suite_csv(r2.rows);
    report(9, "identical seeds give identical traces and reports", ok);
}
