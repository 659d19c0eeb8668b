#pragma once

#include <optional>
#include <string>
#include <vector>

#include "socrt/model.hpp"

namespace socrt {

/// How a controller drives its workload.
enum class WorkloadMode {
    Idle,         ///< issues nothing
    Isolation,    ///< one transaction at a time, random think gaps
    Saturation,   ///< keeps phi transactions outstanding at all times
    Interference, ///< like Saturation, used for traffic aimed at the observed target
};

enum class KindMix { Read, Write, Mix };

/// Address pattern; meaningful for the main memory subsystem, ignored by
/// peripherals without a cache.
enum class AddressPattern { HitLoop, ColdMiss, ConflictEvict };

struct WorkloadSpec {
    std::string controller;
    WorkloadMode mode = WorkloadMode::Idle;
    std::string target;           // peripheral id
    KindMix kind = KindMix::Read;
    std::vector<std::int64_t> beta_choices{1}; // drawn uniformly per transaction
    std::int64_t count = 0;       // transactions to issue (0 = unlimited within horizon)
    AddressPattern pattern = AddressPattern::HitLoop;
    std::optional<int> phi_override; // caps outstanding below the controller's phi
    std::int64_t max_gap_cycles = 0; // Isolation: random think time 0..max_gap
};

struct Scenario {
    std::string name;
    std::string observed;         // controller whose transactions are measured
    std::vector<WorkloadSpec> workloads;
    std::uint64_t seed = 1;
    Duration horizon = nanoseconds(10'000'000);
    HramDataMode hram_mode = HramDataMode::PhysicalCeil;

    const WorkloadSpec* find_workload(const std::string& controller) const {
        for (const auto& w : workloads)
            if (w.controller == controller) return &w;
        return nullptr;
    }
};

constexpr const char* to_string(WorkloadMode m) {
    switch (m) {
        case WorkloadMode::Idle: return "idle";
        case WorkloadMode::Isolation: return "isolation";
        case WorkloadMode::Saturation: return "saturation";
        default: return "interference";
    }
}

constexpr const char* to_string(KindMix k) {
    switch (k) {
        case KindMix::Read: return "read";
        case KindMix::Write: return "write";
        default: return "mix";
    }
}

constexpr const char* to_string(AddressPattern p) {
    switch (p) {
        case AddressPattern::HitLoop: return "hit_loop";
        case AddressPattern::ColdMiss: return "cold_miss";
        default: return "conflict_evict";
    }
}

} // namespace socrt
