#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "socrt/config.hpp"
#include "socrt/suites.hpp"
#include "socrt/system.hpp"
#include "socrt/sim/sim.hpp"

namespace {

using namespace socrt;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitHorizon = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
}

HramDataMode parse_hram_mode(const std::string& s) {
    if (s == "literal") return HramDataMode::LiteralEq9;
    if (s == "physical") return HramDataMode::PhysicalCeil;
    throw ConfigError("hram-mode must be 'literal' or 'physical'");
}

TransactionKind parse_kind_flag(const std::string& s) {
    if (s == "read") return TransactionKind::Read;
    if (s == "write") return TransactionKind::Write;
    throw ConfigError("kind must be 'read' or 'write'");
}

Topology load_and_check(const std::string& path) {
    Topology t = load_topology_file(path);
    ValidationResult v = validate_topology(t);
    for (const auto& d : v.diagnostics)
        std::cerr << (d.severity == Severity::Error ? "error: " : "warning: ") << d.message
                  << "\n";
    if (!v.ok) throw ConfigError("topology '" + path + "' failed validation");
    return t;
}

nlohmann::json breakdown_json(const BoundBreakdown& b) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [label, d] : b.terms)
        terms.push_back({{"term", label}, {"ps", d.ps}});
    return {{"total_ps", b.total.ps}, {"terms", std::move(terms)}};
}

int cmd_analyze(const std::string& topo_path, const std::string& controller,
                const std::string& peripheral, const std::string& kinds,
                std::vector<std::int64_t> betas, const std::string& memory_case, int v,
                std::int64_t interferer_beta, const std::string& hram_mode, bool json_out,
                const std::string& out_path) {
    Topology t = load_and_check(topo_path);
    if (betas.empty()) betas = {1, 4, 16, 64, 256};

    std::optional<MemoryCase> mc;
    if (!memory_case.empty()) {
        if (memory_case == "hit") mc = MemoryCase::Hit;
        else if (memory_case == "miss") mc = MemoryCase::MissRefill;
        else if (memory_case == "evict") mc = MemoryCase::MissRefillEvict;
        else throw ConfigError("memory-case must be hit, miss or evict");
    }
    const PeripheralModel* p = t.find_peripheral(peripheral);
    if (!p) throw ConfigError("unknown peripheral '" + peripheral + "'");
    if (p->kind == PeripheralKind::MainMemory && !mc) mc = MemoryCase::Hit;

    std::vector<TransactionKind> kind_list;
    if (kinds == "both") kind_list = {TransactionKind::Read, TransactionKind::Write};
    else kind_list = {parse_kind_flag(kinds)};

    nlohmann::json rows = nlohmann::json::array();
    std::string table = "kind,beta,isolation_ps,S,U,delta_ps,wcrt_ps\n";
    char buf[160];
    for (TransactionKind k : kind_list) {
        for (std::int64_t beta : betas) {
            TransactionQuery q;
            q.controller = controller;
            q.peripheral = peripheral;
            q.kind = k;
            q.beta = beta;
            q.interferer_beta = interferer_beta > 0 ? interferer_beta : beta;
            q.memory_case = mc;
            q.position_v = v;
            q.hram_mode = parse_hram_mode(hram_mode);
            WcrtBound w = wcrt(t, q);
            std::snprintf(buf, sizeof buf, "%s,%lld,%lld,%d,%d,%lld,%lld\n", to_string(k),
                          static_cast<long long>(beta),
                          static_cast<long long>(w.isolation.ps), w.same_type_count,
                          w.cross_type_count, static_cast<long long>(w.per_interferer_delay.ps),
                          static_cast<long long>(w.total.ps));
            table += buf;
            rows.push_back({{"kind", to_string(k)},
                            {"beta", beta},
                            {"isolation", breakdown_json(w.isolation_breakdown)},
                            {"same_type", w.same_type_count},
                            {"cross_type", w.cross_type_count},
                            {"delta", breakdown_json(w.delta_breakdown)},
                            {"wcrt_ps", w.total.ps}});
        }
    }
    std::string output = json_out ? rows.dump(2) + "\n" : table;
    std::fputs(output.c_str(), stdout);
    if (!out_path.empty()) write_file(out_path, output);
    return kExitOk;
}

int cmd_simulate(const std::string& topo_path, const std::string& scen_path, std::int64_t seed,
                 std::int64_t count, std::int64_t horizon_ps, const std::string& out_path,
                 bool full) {
    Topology t = load_and_check(topo_path);
    Scenario s = load_scenario_file(scen_path);
    if (seed >= 0) s.seed = static_cast<std::uint64_t>(seed);
    if (horizon_ps > 0) s.horizon = Duration{horizon_ps};
    if (count > 0)
        for (auto& w : s.workloads)
            if (w.controller == s.observed) w.count = count;

    sim::SimResult res = sim::run_simulation(t, s);

    std::map<std::string, Duration> max_by_ctrl;
    for (const auto& r : res.records)
        max_by_ctrl[r.controller] = std::max(max_by_ctrl[r.controller], r.service());
    std::printf("transactions: %zu\n", res.records.size());
    for (const auto& [c, m] : max_by_ctrl)
        std::printf("max_service[%s]: %lld ps\n", c.c_str(), static_cast<long long>(m.ps));
    for (const auto& [p, by_kind] : res.peak_in_service)
        std::printf("peak_in_service[%s]: read %d, write %d\n", p.c_str(),
                    by_kind.at(TransactionKind::Read), by_kind.at(TransactionKind::Write));
    std::printf("trace_hash: %016llx\n", static_cast<unsigned long long>(res.trace_hash));
    if (!res.horizon_ok) std::printf("horizon: exceeded\n");

    if (!out_path.empty()) {
        std::string trace;
        char buf[256];
        std::size_t id = 0;
        for (const auto& r : res.records) {
            std::snprintf(buf, sizeof buf, "%zu %s %lld %s %s %lld %lld %lld\n", id++,
                          to_string(r.kind), static_cast<long long>(r.beta),
                          r.controller.c_str(), r.peripheral.c_str(),
                          static_cast<long long>(r.issued.ps),
                          static_cast<long long>(r.accepted.ps),
                          static_cast<long long>(r.completed.ps));
            trace += buf;
            if (!full && id >= 10000) break;
        }
        write_file(out_path, trace);
    }
    return res.horizon_ok ? kExitOk : kExitHorizon;
}

int cmd_validate(const std::string& topo_path, const std::string& suite, int seeds, int threads,
                 const std::string& hram_mode, const std::string& out_path) {
    Topology t = load_and_check(topo_path);
    SuiteOptions o;
    o.seed_count = seeds;
    o.thread_count = threads;
    o.hram_mode = parse_hram_mode(hram_mode);
    SuiteReport rep = run_suite(t, suite, o);

    Rational min_p{0}, max_p{0};
    bool first = true;
    for (const auto& r : rep.rows) {
        if (r.measured_ps == 0) continue;
        if (first || r.pessimism < min_p) min_p = r.pessimism;
        if (first || max_p < r.pessimism) max_p = r.pessimism;
        first = false;
    }
    std::printf("cells: %zu\n", rep.rows.size());
    std::printf("violations: %zu\n", rep.violations());
    if (!first)
        std::printf("pessimism: min %.4f%%, max %.4f%%\n", min_p.to_double(), max_p.to_double());
    if (!out_path.empty()) write_file(out_path, suite_csv(rep.rows));
    return rep.all_pass() ? kExitOk : kExitViolation;
}

int cmd_sweep(const std::string& topo_path, const std::string& dimension, int seeds, int threads,
              const std::string& hram_mode, const std::string& out_path) {
    Topology t = load_and_check(topo_path);
    SuiteOptions o;
    o.seed_count = seeds;
    o.thread_count = threads;
    o.hram_mode = parse_hram_mode(hram_mode);
    std::string suite;
    if (dimension == "beta") suite = "isolation";
    else if (dimension == "phi") suite = "interference";
    else if (dimension == "clock_ratio") suite = "cdc";
    else if (dimension == "fifo_depth") suite = "parallelism";
    else throw ConfigError("dimension must be beta, phi, clock_ratio or fifo_depth");
    SuiteReport rep = run_suite(t, suite, o);
    std::string csv = suite_csv(rep.rows);
    if (!out_path.empty()) write_file(out_path, csv);
    else std::fputs(csv.c_str(), stdout);
    return rep.all_pass() ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"WCRT analysis and simulation toolkit for a crossbar-based SoC"};
    app.require_subcommand(1);

    std::string topo_path, scen_path, out_path;
    std::string controller, peripheral;
    std::string kinds = "both", memory_case, hram_mode = "physical";
    std::string suite = "all", dimension = "beta";
    std::vector<std::int64_t> betas;
    std::int64_t seed = -1, count = 0, horizon_ps = 0, interferer_beta = 0;
    int v = 1, seeds = 20, threads = 0;
    bool json_out = false, full = false;

    auto* analyze = app.add_subcommand("analyze", "Print bound tables for one query");
    analyze->add_option("--topology", topo_path)->required();
    analyze->add_option("--controller", controller)->required();
    analyze->add_option("--peripheral", peripheral)->required();
    analyze->add_option("--kind", kinds);
    analyze->add_option("--beta", betas);
    analyze->add_option("--memory-case", memory_case);
    analyze->add_option("--position", v);
    analyze->add_option("--interferer-beta", interferer_beta);
    analyze->add_option("--hram-mode", hram_mode);
    analyze->add_flag("--json", json_out);
    analyze->add_option("--out", out_path);

    auto* simulate = app.add_subcommand("simulate", "Run one scenario");
    simulate->add_option("--topology", topo_path)->required();
    simulate->add_option("--scenario", scen_path)->required();
    simulate->add_option("--seed", seed);
    simulate->add_option("--count", count);
    simulate->add_option("--horizon", horizon_ps);
    simulate->add_option("--out", out_path);
    simulate->add_flag("--full", full);

    auto* validate = app.add_subcommand("validate", "Run bound-versus-measured suites");
    validate->add_option("--topology", topo_path)->required();
    validate->add_option("--suite", suite);
    validate->add_option("--seeds", seeds);
    validate->add_option("--threads", threads);
    validate->add_option("--hram-mode", hram_mode);
    validate->add_option("--out", out_path);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps in long-format CSV");
    sweep->add_option("--topology", topo_path)->required();
    sweep->add_option("--dimension", dimension);
    sweep->add_option("--seeds", seeds);
    sweep->add_option("--threads", threads);
    sweep->add_option("--hram-mode", hram_mode);
    sweep->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed())
            return cmd_analyze(topo_path, controller, peripheral, kinds, betas, memory_case, v,
                               interferer_beta, hram_mode, json_out, out_path);
        if (simulate->parsed())
            return cmd_simulate(topo_path, scen_path, seed, count, horizon_ps, out_path, full);
        if (validate->parsed())
            return cmd_validate(topo_path, suite, seeds, threads, hram_mode, out_path);
        if (sweep->parsed())
            return cmd_sweep(topo_path, dimension, seeds, threads, hram_mode, out_path);
    } catch (const socrt::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
