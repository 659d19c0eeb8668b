#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "socrt/model.hpp"
#include "socrt/scenario.hpp"

namespace socrt::sim {

/// One completed transaction as observed at its controller.
struct TxRecord {
    std::string controller;
    std::string peripheral;
    TransactionKind kind = TransactionKind::Read;
    std::int64_t beta = 1;
    int position_v = 1;            // outstanding same-kind transactions at issue, self included
    MemoryCase memory_case = MemoryCase::Hit; // what the cache actually did
    Duration issued;
    Duration accepted;   // crossbar grant time
    Duration completed;

    Duration service() const { return completed - issued; }
};

struct SimResult {
    bool horizon_ok = true;
    std::vector<TxRecord> records; // completion order, all controllers
    std::uint64_t trace_hash = 0;  // FNV-1a over the completion stream
    /// Peak concurrent transactions in service, per peripheral and kind.
    std::map<std::string, std::map<TransactionKind, int>> peak_in_service;

    std::vector<const TxRecord*> records_of(const std::string& controller) const;
    Duration max_service(const std::string& controller) const;
    int max_position(const std::string& controller) const;
};

/// Run one scenario on a topology. Clock phases are drawn from the scenario
/// seed, so a (topology, scenario) pair fully determines the result.
/// Throws ConfigError on references the topology cannot resolve.
SimResult run_simulation(const Topology& t, const Scenario& s);

} // namespace socrt::sim
