#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socrt/duration.hpp"

namespace socrt {

/// A named clock domain. Periods are integer picoseconds so that edges of
/// rationally related clocks align exactly.
struct ClockDomain {
    std::string name;
    Duration period;

    bool operator==(const ClockDomain&) const = default;
};

enum class TransactionKind { Read, Write };

constexpr const char* to_string(TransactionKind k) {
    return k == TransactionKind::Read ? "read" : "write";
}
constexpr TransactionKind other(TransactionKind k) {
    return k == TransactionKind::Read ? TransactionKind::Write : TransactionKind::Read;
}

/// Timing tuple of a specialized peripheral: outstanding capacity per kind,
/// pipelining and read/write-parallelism flags, control overheads and the
/// per-word data time. The data time is kept as an exact rational because the
/// memory-subsystem specialization carries a (LW/beta)*ceil(beta/LW) factor;
/// totals are always exact integers.
struct PeripheralTimingModel {
    int chi_read = 1;
    int chi_write = 1;
    int rho = 0;
    int theta = 0;
    Duration t_ctrl_read;
    Duration t_ctrl_write;
    Rational t_data_ps; // per word, picoseconds

    Duration t_ctrl(TransactionKind k) const {
        return k == TransactionKind::Read ? t_ctrl_read : t_ctrl_write;
    }
    int chi(TransactionKind k) const {
        return k == TransactionKind::Read ? chi_read : chi_write;
    }

    /// Total data time for a burst of `beta` words, ceiled (safe direction);
    /// in practice all specializations produce exact integers here.
    Duration data_time(std::int64_t beta) const {
        return Duration{(t_data_ps * beta).ceil()};
    }

    /// Service bound in isolation: t_ctrl + t_data * beta.
    Duration service_bound(TransactionKind k, std::int64_t beta) const {
        return t_ctrl(k) + data_time(beta);
    }
};

struct ControllerModel {
    std::string id;
    ClockDomain clock;
    int phi_read = 1;
    int phi_write = 1;
    std::vector<std::string> bridge_path; // bridges between controller and crossbar

    int phi(TransactionKind k) const { return k == TransactionKind::Read ? phi_read : phi_write; }
};

enum class BridgeKind { CdcFifo, FixedDelay };

struct BridgeModel {
    std::string id;
    BridgeKind kind = BridgeKind::CdcFifo;
    // CdcFifo: tx side faces the controller, rx side faces the crossbar.
    ClockDomain tx_clock;
    ClockDomain rx_clock;
    int depth = 4;
    // FixedDelay: whole-transaction delays.
    Duration d_read;
    Duration d_write;
};

enum class PeripheralKind { Spm, IoSubsystem, MainMemory, Generic };

constexpr const char* to_string(PeripheralKind k) {
    switch (k) {
        case PeripheralKind::Spm: return "spm";
        case PeripheralKind::IoSubsystem: return "io";
        case PeripheralKind::MainMemory: return "main_memory";
        default: return "generic";
    }
}

/// Interpretation of the HyperRAM per-AXI-word data time. The literal
/// formulation (DW_HYPER * ceil(DW_AXI/DW_HYPER) cycles) is kept for audits;
/// the physical reading (ceil(DW_AXI/DW_HYPER) cycles, one back-end word per
/// cycle) is the default and what the simulator implements.
enum class HramDataMode { LiteralEq9, PhysicalCeil };

/// Memory-subsystem service cases for bounds and scenario classification.
enum class MemoryCase { Hit, MissRefill, MissRefillEvict };

constexpr const char* to_string(MemoryCase c) {
    switch (c) {
        case MemoryCase::Hit: return "hit";
        case MemoryCase::MissRefill: return "miss_refill";
        default: return "miss_refill_evict";
    }
}

struct AddressRange {
    std::uint64_t base = 0;
    std::uint64_t size = 0;

    std::uint64_t end() const { return base + size; } // exclusive
    bool contains(std::uint64_t a) const { return a >= base && a < base + size; }
    bool overlaps(const AddressRange& o) const {
        return base < o.end() && o.base < end();
    }
};

struct MainMemoryParams {
    ClockDomain llc_clock;
    ClockDomain hmc_clock;
    ClockDomain hram_clock;
    int line_width_words = 8;     // LW_LLC
    int llc_fifo_depth = 8;       // D_FIFO^LLC
    int dw_axi = 64;              // bits
    int dw_hyper = 32;            // bits
    int hram_access_latency_cycles = 12; // HyperBUS range [7, 16]
    int set_count = 1024;
    int way_count = 4;
};

struct PeripheralModel {
    std::string id;
    PeripheralKind kind = PeripheralKind::Generic;
    ClockDomain clock;
    int fifo_depth = 4;           // D_FIFO (Spm / IoSubsystem)
    int bank_count = 8;           // Spm only
    std::optional<MainMemoryParams> memory; // MainMemory only
    std::optional<PeripheralTimingModel> generic_timing; // Generic only
    AddressRange address;
};

struct CrossbarModel {
    ClockDomain clock;
    int d_tab = 16;               // write-order table depth per S port
    int subordinate_port_count = 0; // 0 = derive from controller count
    int manager_port_count = 0;     // 0 = derive from peripheral count
};

struct Topology {
    std::vector<ClockDomain> clocks;
    std::vector<ControllerModel> controllers;
    std::vector<BridgeModel> bridges;
    CrossbarModel crossbar;
    std::vector<PeripheralModel> peripherals;

    const ControllerModel* find_controller(const std::string& id) const;
    const PeripheralModel* find_peripheral(const std::string& id) const;
    const BridgeModel* find_bridge(const std::string& id) const;
    const ClockDomain* find_clock(const std::string& name) const;

    /// Peripheral owning the given address, or nullptr.
    const PeripheralModel* route(std::uint64_t address) const;
};

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string message;
    std::string offending_id;
};

struct ValidationResult {
    bool ok = true;
    std::vector<Diagnostic> diagnostics;
};

/// Raised by config parsing and CLI-facing entry points on malformed input.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structural validation of a topology: reference resolution, id uniqueness,
/// address-map disjointness, parameter ranges, and the crossbar configuration
/// constraint d_tab >= max peripheral write parallelism.
ValidationResult validate_topology(const Topology& t);

/// Controllers other than `ci` that can reach `pj` through the crossbar.
/// In this architecture every manager can access every subordinate, so this
/// is all other controllers. Throws ConfigError on unknown ids.
std::vector<std::string> interfering_set(const Topology& t, const std::string& ci,
                                         const std::string& pj);

} // namespace socrt
