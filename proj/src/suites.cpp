#include "socrt/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

namespace socrt {

bool SuiteReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
}

std::size_t SuiteReport::violations() const {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return !r.pass; }));
}

namespace suites {

WorkloadSpec make_workload(const std::string& controller, WorkloadMode mode,
                           const std::string& target, KindMix kind, std::int64_t beta,
                           std::int64_t count, AddressPattern pattern, int phi_cap,
                           std::int64_t max_gap_cycles) {
    WorkloadSpec w;
    w.controller = controller;
    w.mode = mode;
    w.target = target;
    w.kind = kind;
    w.beta_choices = {beta};
    w.count = count;
    w.pattern = pattern;
    if (phi_cap > 0) w.phi_override = phi_cap;
    w.max_gap_cycles = max_gap_cycles;
    return w;
}

namespace {

PeripheralModel zero_latency_hub(const ClockDomain& clock, int chi) {
    PeripheralModel p;
    p.id = "hub";
    p.kind = PeripheralKind::Generic;
    p.clock = clock;
    PeripheralTimingModel g;
    g.chi_read = chi;
    g.chi_write = chi;
    g.rho = 1;
    g.theta = 1;
    g.t_data_ps = Rational{0};
    p.generic_timing = g;
    p.address = {0x1000, 0x1000};
    return p;
}

} // namespace

Topology make_star_topology(int controller_count, Duration period, int phi, int chi) {
    Topology t;
    t.clocks.push_back({"clk", period});
    const ClockDomain& clk = t.clocks[0];
    for (int i = 0; i < controller_count; ++i) {
        ControllerModel c;
        c.id = "c" + std::to_string(i);
        c.clock = clk;
        c.phi_read = phi;
        c.phi_write = phi;
        t.controllers.push_back(std::move(c));
    }
    t.crossbar.clock = clk;
    t.crossbar.d_tab = std::max(16, chi);
    t.peripherals.push_back(zero_latency_hub(clk, chi));
    return t;
}

Topology make_cdc_topology(Duration controller_period, Duration crossbar_period, int depth,
                           int phi) {
    Topology t;
    t.clocks.push_back({"cclk", controller_period});
    t.clocks.push_back({"xclk", crossbar_period});
    BridgeModel b;
    b.id = "br0";
    b.kind = BridgeKind::CdcFifo;
    b.tx_clock = t.clocks[0];
    b.rx_clock = t.clocks[1];
    b.depth = depth;
    t.bridges.push_back(std::move(b));
    ControllerModel c;
    c.id = "c0";
    c.clock = t.clocks[0];
    c.phi_read = phi;
    c.phi_write = phi;
    c.bridge_path = {"br0"};
    t.controllers.push_back(std::move(c));
    t.crossbar.clock = t.clocks[1];
    t.peripherals.push_back(zero_latency_hub(t.clocks[1], 64));
    return t;
}

Topology make_depth_topology(int fifo_depth, Duration period, int phi) {
    Topology t;
    t.clocks.push_back({"clk", period});
    const ClockDomain& clk = t.clocks[0];
    for (int i = 0; i < 2; ++i) {
        ControllerModel c;
        c.id = "c" + std::to_string(i);
        c.clock = clk;
        c.phi_read = phi;
        c.phi_write = phi;
        t.controllers.push_back(std::move(c));
    }
    t.crossbar.clock = clk;
    t.crossbar.d_tab = 16;
    PeripheralModel p;
    p.id = "spm";
    p.kind = PeripheralKind::Spm;
    p.clock = clk;
    p.fifo_depth = fifo_depth;
    p.bank_count = 8;
    p.address = {0x1000, 0x100000};
    t.peripherals.push_back(std::move(p));
    return t;
}

SuiteRow run_cell(const Topology& t, const CellSpec& spec) {
    SuiteRow row;
    row.suite = spec.suite;
    row.scenario = spec.scenario;
    row.kind = spec.kind;
    row.beta = spec.beta;
    row.phi_k = spec.phi_k;
    row.seed = spec.definition.seed;

    // The bound has to reflect the interferer cap the scenario actually
    // applies, so the analysis sees a copy with phi pinned to phi_k.
    Topology analysis = t;
    if (spec.phi_k > 0)
        for (auto& c : analysis.controllers)
            if (c.id != spec.definition.observed) {
                c.phi_read = spec.phi_k;
                c.phi_write = spec.phi_k;
            }

    sim::SimResult res = sim::run_simulation(t, spec.definition);
    if (!res.horizon_ok) {
        row.pass = false;
        return row;
    }

    const WorkloadSpec* obs = spec.definition.find_workload(spec.definition.observed);
    row.pass = true;
    Duration best_meas;
    Duration best_bound;
    for (const auto& rec : res.records) {
        if (rec.controller != spec.definition.observed) continue;
        TransactionQuery q;
        q.controller = rec.controller;
        q.peripheral = obs->target;
        q.kind = rec.kind;
        q.beta = rec.beta;
        q.interferer_beta = spec.interferer_beta;
        q.position_v = rec.position_v;
        q.hram_mode = spec.hram_mode;
        const PeripheralModel* p = t.find_peripheral(obs->target);
        if (p->kind == PeripheralKind::MainMemory) q.memory_case = rec.memory_case;
        Duration bound = spec.phi_k > 0 ? wcrt(analysis, q).total
                                        : isolation_bound(analysis, q).total;
        Duration meas = rec.service();
        if (meas > bound) row.pass = false;
        if (meas > best_meas) {
            best_meas = meas;
            best_bound = bound;
            row.position_v = rec.position_v;
            row.kind = rec.kind;
        }
    }
    row.measured_ps = best_meas.ps;
    row.bound_ps = best_bound.ps;
    if (best_meas.ps > 0) row.pessimism = pessimism_pct(best_bound, best_meas);
    return row;
}

} // namespace suites

namespace {

using suites::CellSpec;
using suites::make_workload;

std::vector<SuiteRow> run_cells(const Topology& t, const std::vector<CellSpec>& cells,
                                const std::vector<const Topology*>& topo_of, int threads) {
    std::vector<SuiteRow> rows(cells.size());
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Topology* topo = topo_of.empty() ? &t : topo_of[i];
            rows[i] = suites::run_cell(*topo, cells[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

KindMix mix_of(TransactionKind k) {
    return k == TransactionKind::Read ? KindMix::Read : KindMix::Write;
}

struct MemoryCell {
    AddressPattern pattern;
    TransactionKind kind;
    std::vector<std::int64_t> betas;
    const char* tag;
};

Scenario one_shot(const Topology& t, const std::string& observed, std::uint64_t seed) {
    Scenario s;
    s.observed = observed.empty() ? t.controllers.front().id : observed;
    s.seed = seed;
    return s;
}

void add_isolation_cells(const Topology& t, const SuiteOptions& o, std::vector<CellSpec>& cells) {
    const std::string observed = t.controllers.front().id;
    const std::vector<std::int64_t> bursty{1, 4, 16, 32, 64, 128, 256};
    for (const auto& p : t.peripherals) {
        std::vector<MemoryCell> variants;
        switch (p.kind) {
            case PeripheralKind::Spm:
            case PeripheralKind::Generic:
                variants = {{AddressPattern::HitLoop, TransactionKind::Read, bursty, ""},
                            {AddressPattern::HitLoop, TransactionKind::Write, bursty, ""}};
                break;
            case PeripheralKind::IoSubsystem:
                variants = {{AddressPattern::HitLoop, TransactionKind::Read, {1, 4}, ""},
                            {AddressPattern::HitLoop, TransactionKind::Write, {1, 4}, ""}};
                break;
            case PeripheralKind::MainMemory:
                variants = {
                    {AddressPattern::HitLoop, TransactionKind::Read, bursty, "_hit"},
                    {AddressPattern::HitLoop, TransactionKind::Write, bursty, "_hit"},
                    {AddressPattern::ColdMiss, TransactionKind::Read, {1, 8, 64}, "_miss"},
                    {AddressPattern::ConflictEvict, TransactionKind::Write, {1, 8}, "_evict"},
                };
                break;
        }
        for (const auto& v : variants) {
            for (std::int64_t beta : v.betas) {
                for (int si = 0; si < o.seed_count; ++si) {
                    CellSpec c;
                    c.suite = "isolation";
                    c.scenario = p.id + std::string(v.tag) + "_" + to_string(v.kind) + "_b" +
                                 std::to_string(beta);
                    c.kind = v.kind;
                    c.beta = beta;
                    c.phi_k = 0;
                    c.hram_mode = o.hram_mode;
                    c.definition = one_shot(t, observed, o.base_seed + si);
                    c.definition.name = c.scenario;
                    c.definition.hram_mode = o.hram_mode;
                    c.definition.workloads.push_back(
                        make_workload(observed, WorkloadMode::Isolation, p.id, mix_of(v.kind),
                                      beta, 30 * o.count_scale, v.pattern, 0, 8));
                    cells.push_back(std::move(c));
                }
            }
        }
    }
}

void add_interference_cells(const Topology& t, const SuiteOptions& o,
                            std::vector<CellSpec>& cells) {
    if (t.controllers.size() < 2) return;
    const std::string observed = t.controllers.front().id;
    const std::vector<int> caps{1, 2, 4, 8, 16};
    for (const auto& p : t.peripherals) {
        std::vector<std::pair<MemoryCell, TransactionKind>> variants; // observed cell, interferer kind
        switch (p.kind) {
            case PeripheralKind::Spm:
            case PeripheralKind::Generic:
                variants = {
                    {{AddressPattern::HitLoop, TransactionKind::Read, {16}, ""},
                     TransactionKind::Read},
                    {{AddressPattern::HitLoop, TransactionKind::Write, {16}, ""},
                     TransactionKind::Write},
                };
                break;
            case PeripheralKind::IoSubsystem:
                variants = {
                    {{AddressPattern::HitLoop, TransactionKind::Read, {1}, ""},
                     TransactionKind::Read},
                    {{AddressPattern::HitLoop, TransactionKind::Write, {1}, ""},
                     TransactionKind::Write},
                    {{AddressPattern::HitLoop, TransactionKind::Read, {1}, "_xk"},
                     TransactionKind::Write},
                };
                break;
            case PeripheralKind::MainMemory:
                variants = {
                    {{AddressPattern::HitLoop, TransactionKind::Read, {8}, "_hit"},
                     TransactionKind::Read},
                    {{AddressPattern::HitLoop, TransactionKind::Write, {8}, "_hit"},
                     TransactionKind::Write},
                    {{AddressPattern::ColdMiss, TransactionKind::Read, {8}, "_miss"},
                     TransactionKind::Read},
                    {{AddressPattern::ConflictEvict, TransactionKind::Write, {8}, "_evict"},
                     TransactionKind::Write},
                };
                break;
        }
        for (const auto& [v, ikind] : variants) {
            for (std::int64_t beta : v.betas) {
                for (int cap : caps) {
                    for (int si = 0; si < o.seed_count; ++si) {
                        CellSpec c;
                        c.suite = "interference";
                        c.scenario = p.id + std::string(v.tag) + "_" + to_string(v.kind) + "_vs_" +
                                     to_string(ikind) + "_b" + std::to_string(beta);
                        c.kind = v.kind;
                        c.beta = beta;
                        c.interferer_beta = beta;
                        c.phi_k = cap;
                        c.hram_mode = o.hram_mode;
                        c.definition = one_shot(t, observed, o.base_seed + si);
                        c.definition.name = c.scenario;
                        c.definition.hram_mode = o.hram_mode;
                        c.definition.workloads.push_back(
                            make_workload(observed, WorkloadMode::Isolation, p.id,
                                          mix_of(v.kind), beta, 25 * o.count_scale, v.pattern, 0,
                                          8));
                        for (std::size_t ci = 1; ci < t.controllers.size(); ++ci)
                            c.definition.workloads.push_back(make_workload(
                                t.controllers[ci].id, WorkloadMode::Interference, p.id,
                                mix_of(ikind), beta, 500 * o.count_scale, v.pattern, cap, 0));
                        cells.push_back(std::move(c));
                    }
                }
            }
        }
    }
}

SuiteReport run_parallelism_suite(const SuiteOptions& o) {
    SuiteReport rep;
    for (int depth : {2, 4, 8}) {
        Topology t = suites::make_depth_topology(depth, Duration{1000}, 16);
        for (int si = 0; si < std::max(1, o.seed_count / 4); ++si) {
            Scenario s = one_shot(t, "c0", o.base_seed + si);
            s.name = "spm_depth" + std::to_string(depth);
            s.workloads.push_back(make_workload("c0", WorkloadMode::Saturation, "spm",
                                                KindMix::Read, 16, 60, AddressPattern::HitLoop, 0,
                                                0));
            sim::SimResult res = sim::run_simulation(t, s);
            SuiteRow row;
            row.suite = "parallelism";
            row.scenario = s.name;
            row.kind = TransactionKind::Read;
            row.beta = 16;
            row.seed = s.seed;
            int peak = res.peak_in_service.at("spm").at(TransactionKind::Read);
            row.bound_ps = depth;
            row.measured_ps = peak;
            row.pass = res.horizon_ok && peak == depth;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

SuiteReport run_crossbar_suite(const SuiteOptions& o) {
    SuiteReport rep;
    const Duration cy{1000};
    for (int m : {1, 2, 4}) {
        Topology t = suites::make_star_topology(m, cy, 4, 64);
        Duration bound = (2 + (m - 1)) * cy;
        for (int si = 0; si < std::max(4, o.seed_count); ++si) {
            Scenario s = one_shot(t, "c0", o.base_seed + si);
            s.name = "star_m" + std::to_string(m);
            s.workloads.push_back(make_workload("c0", WorkloadMode::Isolation, "hub",
                                                KindMix::Read, 1, 150, AddressPattern::HitLoop, 0,
                                                7));
            for (int i = 1; i < m; ++i)
                s.workloads.push_back(make_workload("c" + std::to_string(i),
                                                    WorkloadMode::Interference, "hub",
                                                    KindMix::Read, 1, 4000, AddressPattern::HitLoop,
                                                    0, 0));
            sim::SimResult res = sim::run_simulation(t, s);
            SuiteRow row;
            row.suite = "crossbar";
            row.scenario = s.name;
            row.kind = TransactionKind::Read;
            row.beta = 1;
            row.phi_k = m > 1 ? 4 : 0;
            row.seed = s.seed;
            Duration meas = res.max_service("c0");
            row.bound_ps = bound.ps;
            row.measured_ps = meas.ps;
            row.pass = res.horizon_ok && meas <= bound;
            if (meas.ps > 0) row.pessimism = pessimism_pct(bound, meas);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

SuiteReport run_cdc_suite(const SuiteOptions& o) {
    SuiteReport rep;
    const Duration xp = nanoseconds(30);
    for (std::int64_t tc : {10, 20, 30, 40, 50}) {
        Topology t = suites::make_cdc_topology(nanoseconds(tc), xp, 4, 4);
        TransactionQuery q;
        q.controller = "c0";
        q.peripheral = "hub";
        q.kind = TransactionKind::Read;
        q.beta = 1;
        Duration bound = isolation_bound(t, q).total;
        for (int si = 0; si < std::max(4, o.seed_count); ++si) {
            Scenario s = one_shot(t, "c0", o.base_seed + si);
            s.name = "cdc_" + std::to_string(tc) + "ns";
            s.workloads.push_back(make_workload("c0", WorkloadMode::Isolation, "hub",
                                                KindMix::Read, 1, 50, AddressPattern::HitLoop, 0,
                                                7));
            sim::SimResult res = sim::run_simulation(t, s);
            SuiteRow row;
            row.suite = "cdc";
            row.scenario = s.name;
            row.kind = TransactionKind::Read;
            row.beta = 1;
            row.seed = s.seed;
            Duration meas = res.max_service("c0");
            row.bound_ps = bound.ps;
            row.measured_ps = meas.ps;
            row.pass = res.horizon_ok && meas <= bound;
            if (meas.ps > 0) row.pessimism = pessimism_pct(bound, meas);
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

} // namespace

SuiteReport run_safety_suites(const Topology& t, const SuiteOptions& o) {
    std::vector<CellSpec> cells;
    add_isolation_cells(t, o, cells);
    add_interference_cells(t, o, cells);
    SuiteReport rep;
    rep.rows = run_cells(t, cells, {}, o.thread_count);
    return rep;
}

SuiteReport run_pessimism_sweep(const Topology& t, const SuiteOptions& o) {
    std::vector<CellSpec> cells;
    add_isolation_cells(t, o, cells);
    SuiteReport rep;
    rep.rows = run_cells(t, cells, {}, o.thread_count);
    return rep;
}

SuiteReport run_suite(const Topology& t, const std::string& suite, const SuiteOptions& o) {
    if (suite == "isolation") return run_pessimism_sweep(t, o);
    if (suite == "interference") {
        std::vector<CellSpec> cells;
        add_interference_cells(t, o, cells);
        SuiteReport rep;
        rep.rows = run_cells(t, cells, {}, o.thread_count);
        return rep;
    }
    if (suite == "parallelism") return run_parallelism_suite(o);
    if (suite == "crossbar") return run_crossbar_suite(o);
    if (suite == "cdc") return run_cdc_suite(o);
    if (suite == "all") {
        SuiteReport rep = run_safety_suites(t, o);
        for (auto* fn : {&run_parallelism_suite, &run_crossbar_suite, &run_cdc_suite}) {
            SuiteReport part = fn(o);
            rep.rows.insert(rep.rows.end(), part.rows.begin(), part.rows.end());
        }
        return rep;
    }
    throw ConfigError("unknown suite '" + suite + "'");
}

std::string suite_csv(const std::vector<SuiteRow>& rows) {
    std::string out = "suite,scenario,kind,beta,phi_k,V,seed,bound_ps,measured_ps,pessimism_pct,pass\n";
    char buf[256];
    for (const auto& r : rows) {
        double pess = r.pessimism.to_double();
        std::snprintf(buf, sizeof buf, "%s,%s,%s,%lld,%d,%d,%llu,%lld,%lld,%.4f,%d\n",
                      r.suite.c_str(), r.scenario.c_str(), to_string(r.kind),
                      static_cast<long long>(r.beta), r.phi_k, r.position_v,
                      static_cast<unsigned long long>(r.seed),
                      static_cast<long long>(r.bound_ps), static_cast<long long>(r.measured_ps),
                      pess, r.pass ? 1 : 0);
        out += buf;
    }
    return out;
}

} // namespace socrt
