#include "socrt/model.hpp"

#include <algorithm>
#include <set>

namespace socrt {

const ControllerModel* Topology::find_controller(const std::string& id) const {
    for (const auto& c : controllers)
        if (c.id == id) return &c;
    return nullptr;
}

const PeripheralModel* Topology::find_peripheral(const std::string& id) const {
    for (const auto& p : peripherals)
        if (p.id == id) return &p;
    return nullptr;
}

const BridgeModel* Topology::find_bridge(const std::string& id) const {
    for (const auto& b : bridges)
        if (b.id == id) return &b;
    return nullptr;
}

const ClockDomain* Topology::find_clock(const std::string& name) const {
    for (const auto& c : clocks)
        if (c.name == name) return &c;
    return nullptr;
}

const PeripheralModel* Topology::route(std::uint64_t address) const {
    for (const auto& p : peripherals)
        if (p.address.contains(address)) return &p;
    return nullptr;
}

namespace {

int peripheral_chi_write(const PeripheralModel& p) {
    switch (p.kind) {
        case PeripheralKind::Spm:
        case PeripheralKind::IoSubsystem: return p.fifo_depth;
        case PeripheralKind::MainMemory: return p.memory ? p.memory->llc_fifo_depth : 0;
        case PeripheralKind::Generic: return p.generic_timing ? p.generic_timing->chi_write : 0;
    }
    return 0;
}

struct Checker {
    const Topology& t;
    std::vector<Diagnostic> diags;

    void error(std::string msg, std::string id) {
        diags.push_back({Severity::Error, std::move(msg), std::move(id)});
    }
    void warn(std::string msg, std::string id) {
        diags.push_back({Severity::Warning, std::move(msg), std::move(id)});
    }

    void check_clock(const ClockDomain& c, const std::string& owner) {
        if (c.period <= Duration::zero())
            error("clock '" + c.name + "' has non-positive period", owner);
        const ClockDomain* declared = t.find_clock(c.name);
        if (!declared)
            error("clock '" + c.name + "' is not declared", owner);
        else if (declared->period != c.period)
            error("clock '" + c.name + "' period mismatch with declaration", owner);
    }

    void run() {
        std::set<std::string> ids;
        auto unique_id = [&](const std::string& id, const char* what) {
            if (id.empty()) error(std::string(what) + " with empty id", id);
            if (!ids.insert(id).second)
                error(std::string("duplicate id '") + id + "'", id);
        };

        std::set<std::string> clock_names;
        for (const auto& c : t.clocks) {
            if (!clock_names.insert(c.name).second)
                error("duplicate clock name '" + c.name + "'", c.name);
            if (c.period <= Duration::zero())
                error("clock '" + c.name + "' has non-positive period", c.name);
        }

        if (t.controllers.empty()) error("topology has no controllers", "");
        if (t.peripherals.empty()) error("topology has no peripherals", "");

        std::map<std::string, std::string> bridge_owner;
        for (const auto& c : t.controllers) {
            unique_id(c.id, "controller");
            check_clock(c.clock, c.id);
            if (c.phi_read < 1 || c.phi_write < 1)
                error("controller '" + c.id + "' must allow at least one outstanding transaction", c.id);
            for (const auto& bid : c.bridge_path) {
                if (!t.find_bridge(bid))
                    error("controller '" + c.id + "' references unknown bridge '" + bid + "'", c.id);
                auto [it, inserted] = bridge_owner.emplace(bid, c.id);
                if (!inserted)
                    error("bridge '" + bid + "' appears in more than one controller path", bid);
            }
        }

        for (const auto& b : t.bridges) {
            unique_id(b.id, "bridge");
            if (b.kind == BridgeKind::CdcFifo) {
                check_clock(b.tx_clock, b.id);
                check_clock(b.rx_clock, b.id);
                if (b.depth < 2)
                    error("CDC FIFO '" + b.id + "' depth must be at least 2", b.id);
            } else {
                if (b.d_read < Duration::zero() || b.d_write < Duration::zero())
                    error("fixed-delay bridge '" + b.id + "' has negative delay", b.id);
            }
            if (!bridge_owner.count(b.id))
                warn("bridge '" + b.id + "' is not on any controller path", b.id);
        }

        check_clock(t.crossbar.clock, "crossbar");
        if (t.crossbar.d_tab < 1) error("crossbar write-order table depth must be positive", "crossbar");

        int max_chi_w = 0;
        for (const auto& p : t.peripherals) {
            unique_id(p.id, "peripheral");
            check_clock(p.clock, p.id);
            if (p.address.size == 0)
                error("peripheral '" + p.id + "' has an empty address range", p.id);
            max_chi_w = std::max(max_chi_w, peripheral_chi_write(p));
            switch (p.kind) {
                case PeripheralKind::Spm:
                    if (p.fifo_depth < 1) error("SPM '" + p.id + "' fifo_depth must be >= 1", p.id);
                    if (p.bank_count < 1) error("SPM '" + p.id + "' bank_count must be >= 1", p.id);
                    break;
                case PeripheralKind::IoSubsystem:
                    if (p.fifo_depth < 1) error("IO subsystem '" + p.id + "' fifo_depth must be >= 1", p.id);
                    break;
                case PeripheralKind::MainMemory: {
                    if (!p.memory) { error("main memory '" + p.id + "' is missing its parameters", p.id); break; }
                    const auto& m = *p.memory;
                    check_clock(m.llc_clock, p.id);
                    check_clock(m.hmc_clock, p.id);
                    check_clock(m.hram_clock, p.id);
                    if (m.dw_axi <= 0 || m.dw_axi % 8 != 0)
                        error("main memory '" + p.id + "' dw_axi must be a positive multiple of 8", p.id);
                    if (m.dw_hyper <= 0 || m.dw_hyper % 8 != 0)
                        error("main memory '" + p.id + "' dw_hyper must be a positive multiple of 8", p.id);
                    if (m.line_width_words < 1)
                        error("main memory '" + p.id + "' line_width must be >= 1", p.id);
                    if (m.llc_fifo_depth < 1)
                        error("main memory '" + p.id + "' llc_fifo_depth must be >= 1", p.id);
                    if (m.hram_access_latency_cycles < 7 || m.hram_access_latency_cycles > 16)
                        error("main memory '" + p.id +
                              "' hram_access_latency_cycles outside the HyperBUS range [7, 16]", p.id);
                    if (m.set_count < 1 || m.way_count < 1)
                        error("main memory '" + p.id + "' set/way counts must be >= 1", p.id);
                    if (m.llc_clock.name != m.hmc_clock.name)
                        error("main memory '" + p.id +
                              "' LLC and controller front end must share one clock", p.id);
                    break;
                }
                case PeripheralKind::Generic:
                    if (!p.generic_timing)
                        error("generic peripheral '" + p.id + "' is missing its timing tuple", p.id);
                    else {
                        const auto& g = *p.generic_timing;
                        if (g.rho != 0 && g.rho != 1) error("rho must be 0 or 1", p.id);
                        if (g.theta != 0 && g.theta != 1) error("theta must be 0 or 1", p.id);
                        if (g.chi_read < 1 || g.chi_write < 1)
                            error("chi values must be >= 1", p.id);
                        if (g.t_ctrl_read < Duration::zero() || g.t_ctrl_write < Duration::zero() ||
                            g.t_data_ps < Rational{0})
                            error("generic timing durations must be non-negative", p.id);
                    }
                    break;
            }
        }

        // Address map disjointness.
        for (std::size_t i = 0; i < t.peripherals.size(); ++i)
            for (std::size_t j = i + 1; j < t.peripherals.size(); ++j)
                if (t.peripherals[i].address.overlaps(t.peripherals[j].address))
                    error("address ranges of '" + t.peripherals[i].id + "' and '" +
                              t.peripherals[j].id + "' overlap",
                          t.peripherals[i].id + "," + t.peripherals[j].id);

        if (t.crossbar.d_tab < max_chi_w)
            error("crossbar W-table smaller than peripheral write parallelism (d_tab " +
                      std::to_string(t.crossbar.d_tab) + " < max chi_W " + std::to_string(max_chi_w) + ")",
                  "crossbar");

        // Clock-domain coherence on the crossbar boundary: a direct-connected
        // controller must run on the crossbar clock, and the crossbar-facing
        // side of a controller's last bridge must be the crossbar clock.
        // Without this the simulated alignment would sit outside the model.
        for (const auto& c : t.controllers) {
            if (c.bridge_path.empty()) {
                if (c.clock.name != t.crossbar.clock.name)
                    error("controller '" + c.id +
                          "' is in a different clock domain than the crossbar but has no bridge", c.id);
            } else {
                const BridgeModel* last = t.find_bridge(c.bridge_path.back());
                if (last && last->kind == BridgeKind::CdcFifo &&
                    last->rx_clock.name != t.crossbar.clock.name)
                    error("bridge '" + last->id + "' rx side must be the crossbar clock", last->id);
                const BridgeModel* first = t.find_bridge(c.bridge_path.front());
                if (first && first->kind == BridgeKind::CdcFifo &&
                    first->tx_clock.name != c.clock.name)
                    error("bridge '" + first->id + "' tx side must be controller '" + c.id +
                          "' clock", first->id);
            }
        }
        for (const auto& p : t.peripherals)
            if (p.clock.name != t.crossbar.clock.name)
                warn("peripheral '" + p.id +
                     "' front clock differs from the crossbar clock; crossing is not modeled", p.id);
    }
};

} // namespace

ValidationResult validate_topology(const Topology& t) {
    Checker c{t, {}};
    c.run();
    ValidationResult r;
    r.diagnostics = std::move(c.diags);
    r.ok = std::none_of(r.diagnostics.begin(), r.diagnostics.end(),
                        [](const Diagnostic& d) { return d.severity == Severity::Error; });
    return r;
}

std::vector<std::string> interfering_set(const Topology& t, const std::string& ci,
                                         const std::string& pj) {
    if (!t.find_controller(ci)) throw ConfigError("unknown controller '" + ci + "'");
    if (!t.find_peripheral(pj)) throw ConfigError("unknown peripheral '" + pj + "'");
    std::vector<std::string> out;
    for (const auto& c : t.controllers)
        if (c.id != ci) out.push_back(c.id);
    return out;
}

} // namespace socrt
