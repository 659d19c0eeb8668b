#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "socrt/model.hpp"

namespace socrt {

/// A duration bound together with its additive decomposition, kept for audit:
/// the labeled terms always sum exactly to the total.
struct BoundBreakdown {
    Duration total;
    std::vector<std::pair<std::string, Duration>> terms;

    static BoundBreakdown of(std::vector<std::pair<std::string, Duration>> parts) {
        BoundBreakdown b;
        b.terms = std::move(parts);
        for (const auto& [label, d] : b.terms) b.total += d;
        return b;
    }

    bool sums_exactly() const {
        Duration s;
        for (const auto& [label, d] : terms) s += d;
        return s == total;
    }
};

/// One-way clock-domain-crossing FIFO delay: 1 TX cycle + 4 RX cycles.
Duration cdc_hop_delay(const ClockDomain& tx, const ClockDomain& rx);

/// Whole-transaction CDC FIFO delay between a controller-side and a
/// peripheral-side clock: one hop each way, 5*(t_ck_c + t_ck_p). Identical
/// for reads and writes.
BoundBreakdown cdc_transaction_delay(const ClockDomain& ctrl, const ClockDomain& periph,
                                     TransactionKind kind);

/// SPM specialization: t_ctrl 6/5 cycles (read/write), 1 cycle per word,
/// chi = fifo_depth, fully pipelined with independent read/write paths.
PeripheralTimingModel spm_timing(int fifo_depth, const ClockDomain& clock);

/// IO subsystem specialization: t_ctrl 4/3 cycles, 1 cycle per word,
/// chi = fifo_depth, no pipelining, reads and writes share one path.
/// Callers clamp burst length to 1 (single-word IP).
PeripheralTimingModel io_timing(int fifo_depth, const ClockDomain& clock);

Duration llc_hit_ctrl(const ClockDomain& llc);
Duration llc_hit_data(const ClockDomain& llc);
Duration llc_miss_ctrl(const ClockDomain& llc);

/// HyperRAM memory controller control time: front end, CDC hops (one for
/// writes, both directions for reads), back end.
BoundBreakdown hmc_ctrl(TransactionKind kind, const ClockDomain& hmc, const ClockDomain& hram);

/// HyperRAM control latency: 3 command cycles plus the fixed access latency.
/// Throws ConfigError outside the HyperBUS range [7, 16].
Duration hram_ctrl(const ClockDomain& hram, int access_latency_cycles);

/// Cycles to move one AXI word over the HyperBUS back end, per HramDataMode.
Duration hram_word_time(int dw_axi, int dw_hyper, const ClockDomain& hram, HramDataMode mode);

/// Memory-subsystem miss bounds (refill, optionally plus eviction):
/// control time and exact-rational per-word data time.
struct MsMissBound {
    Duration t_ctrl;
    Rational t_data_ps; // per word
    BoundBreakdown ctrl_breakdown;
};

MsMissBound ms_miss_bound(std::int64_t beta, bool with_evict, const MainMemoryParams& params,
                          HramDataMode mode = HramDataMode::PhysicalCeil);

/// Crossbar traversal bound: 2 cycles of propagation plus M-1 cycles of
/// round-robin contention, M being the number of controllers that can
/// contend (including the one under analysis). Kind-independent.
BoundBreakdown xbar_delay(TransactionKind kind, int interferer_count_m, const ClockDomain& xbar);

/// Instantiate the generic timing tuple for one peripheral. `memory_case`
/// must be given exactly when the peripheral is the main memory subsystem.
PeripheralTimingModel specialize_peripheral(const PeripheralModel& p, std::int64_t beta,
                                            std::optional<MemoryCase> memory_case,
                                            HramDataMode mode = HramDataMode::PhysicalCeil);

/// Effective burst length a peripheral serves (IO clamps bursts to one word).
std::int64_t effective_beta(const PeripheralModel& p, std::int64_t beta);

} // namespace socrt
