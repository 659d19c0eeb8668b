#include "socrt/component.hpp"

#include <algorithm>

namespace socrt {

Duration cdc_hop_delay(const ClockDomain& tx, const ClockDomain& rx) {
    return tx.period + 4 * rx.period;
}

BoundBreakdown cdc_transaction_delay(const ClockDomain& ctrl, const ClockDomain& periph,
                                     TransactionKind) {
    // Same bound in both directions and for both kinds: one hop each way.
    return BoundBreakdown::of({
        {"cdc_forward", cdc_hop_delay(ctrl, periph)},
        {"cdc_return", cdc_hop_delay(periph, ctrl)},
    });
}

PeripheralTimingModel spm_timing(int fifo_depth, const ClockDomain& clock) {
    PeripheralTimingModel m;
    m.chi_read = fifo_depth;
    m.chi_write = fifo_depth;
    m.rho = 1;
    m.theta = 1;
    m.t_ctrl_read = 6 * clock.period;
    m.t_ctrl_write = 5 * clock.period;
    m.t_data_ps = Rational{clock.period.ps};
    return m;
}

PeripheralTimingModel io_timing(int fifo_depth, const ClockDomain& clock) {
    PeripheralTimingModel m;
    m.chi_read = fifo_depth;
    m.chi_write = fifo_depth;
    m.rho = 0;
    m.theta = 0;
    m.t_ctrl_read = 4 * clock.period;
    m.t_ctrl_write = 3 * clock.period;
    m.t_data_ps = Rational{clock.period.ps};
    return m;
}

Duration llc_hit_ctrl(const ClockDomain& llc) { return 6 * llc.period; }
Duration llc_hit_data(const ClockDomain& llc) { return 1 * llc.period; }
Duration llc_miss_ctrl(const ClockDomain& llc) { return llc_hit_ctrl(llc) + 2 * llc.period; }

BoundBreakdown hmc_ctrl(TransactionKind kind, const ClockDomain& hmc, const ClockDomain& hram) {
    std::vector<std::pair<std::string, Duration>> terms;
    terms.emplace_back("hmc_front_end", 5 * hmc.period);
    terms.emplace_back("cdc_to_hram", cdc_hop_delay(hmc, hram));
    if (kind == TransactionKind::Read)
        terms.emplace_back("cdc_from_hram", cdc_hop_delay(hram, hmc));
    terms.emplace_back("hmc_back_end", 2 * hram.period);
    return BoundBreakdown::of(std::move(terms));
}

Duration hram_ctrl(const ClockDomain& hram, int access_latency_cycles) {
    if (access_latency_cycles < 7 || access_latency_cycles > 16)
        throw ConfigError("HyperRAM access latency must lie in [7, 16] cycles");
    return (3 + access_latency_cycles) * hram.period;
}

Duration hram_word_time(int dw_axi, int dw_hyper, const ClockDomain& hram, HramDataMode mode) {
    std::int64_t sub = ceil_div(dw_axi, dw_hyper);
    std::int64_t cycles = (mode == HramDataMode::LiteralEq9) ? dw_hyper * sub : sub;
    return cycles * hram.period;
}

MsMissBound ms_miss_bound(std::int64_t beta, bool with_evict, const MainMemoryParams& params,
                          HramDataMode mode) {
    if (beta < 1) throw ConfigError("burst length must be >= 1");
    const std::int64_t lw = params.line_width_words;
    const std::int64_t lines = ceil_div(beta, lw);

    Duration hmc_rd = hmc_ctrl(TransactionKind::Read, params.hmc_clock, params.hram_clock).total;
    Duration hram = hram_ctrl(params.hram_clock, params.hram_access_latency_cycles);

    std::vector<std::pair<std::string, Duration>> terms;
    terms.emplace_back("llc_miss", llc_miss_ctrl(params.llc_clock));
    terms.emplace_back("refill_ctrl", lines * (hmc_rd + hram));
    if (with_evict) {
        Duration hmc_wr = hmc_ctrl(TransactionKind::Write, params.hmc_clock, params.hram_clock).total;
        terms.emplace_back("evict_ctrl", lines * (hmc_wr + hram));
    }

    MsMissBound b;
    b.ctrl_breakdown = BoundBreakdown::of(std::move(terms));
    b.t_ctrl = b.ctrl_breakdown.total;
    // Per-word data time amortizes whole-line transfers over the burst:
    // hit data + (LW/beta)*ceil(beta/LW)*word time, doubled when the victim
    // line has to be written back.
    Duration word = hram_word_time(params.dw_axi, params.dw_hyper, params.hram_clock, mode);
    std::int64_t streams = with_evict ? 2 : 1;
    b.t_data_ps = Rational{llc_hit_data(params.llc_clock).ps} +
                  Rational{lw * lines * streams, beta} * Rational{word.ps};
    return b;
}

BoundBreakdown xbar_delay(TransactionKind, int interferer_count_m, const ClockDomain& xbar) {
    if (interferer_count_m < 1) throw ConfigError("crossbar contention count must be >= 1");
    return BoundBreakdown::of({
        {"xbar_propagation", 2 * xbar.period},
        {"xbar_contention", (interferer_count_m - 1) * xbar.period},
    });
}

std::int64_t effective_beta(const PeripheralModel& p, std::int64_t beta) {
    return p.kind == PeripheralKind::IoSubsystem ? 1 : beta;
}

PeripheralTimingModel specialize_peripheral(const PeripheralModel& p, std::int64_t beta,
                                            std::optional<MemoryCase> memory_case,
                                            HramDataMode mode) {
    switch (p.kind) {
        case PeripheralKind::Spm:
            return spm_timing(p.fifo_depth, p.clock);
        case PeripheralKind::IoSubsystem:
            return io_timing(p.fifo_depth, p.clock);
        case PeripheralKind::Generic:
            if (!p.generic_timing) throw ConfigError("generic peripheral without timing");
            return *p.generic_timing;
        case PeripheralKind::MainMemory: break;
    }
    if (!p.memory) throw ConfigError("main memory peripheral without parameters");
    if (!memory_case) throw ConfigError("main memory specialization requires a service case");
    const auto& m = *p.memory;

    PeripheralTimingModel t;
    t.chi_read = m.llc_fifo_depth;
    t.chi_write = m.llc_fifo_depth;
    t.rho = 1;
    t.theta = 1;
    switch (*memory_case) {
        case MemoryCase::Hit:
            t.t_ctrl_read = llc_hit_ctrl(m.llc_clock);
            t.t_ctrl_write = llc_hit_ctrl(m.llc_clock);
            t.t_data_ps = Rational{llc_hit_data(m.llc_clock).ps};
            break;
        case MemoryCase::MissRefill:
        case MemoryCase::MissRefillEvict: {
            MsMissBound b =
                ms_miss_bound(beta, *memory_case == MemoryCase::MissRefillEvict, m, mode);
            t.t_ctrl_read = b.t_ctrl;
            t.t_ctrl_write = b.t_ctrl;
            t.t_data_ps = b.t_data_ps;
            break;
        }
    }
    return t;
}

} // namespace socrt
