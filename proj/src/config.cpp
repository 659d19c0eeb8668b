#include "socrt/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace socrt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

/// Strict-schema guard: every present key must be in `allowed`.
void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    require_object(j, path);
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) fail(path, "unknown key '" + it.key() + "'");
    }
}

const json& member(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
    return *it;
}

std::string get_string(const json& j, const std::string& path, const char* key) {
    const json& v = member(j, path, key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::int64_t get_int(const json& j, const std::string& path, const char* key) {
    const json& v = member(j, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

std::int64_t get_int_or(const json& j, const std::string& path, const char* key,
                        std::int64_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

std::uint64_t get_u64(const json& j, const std::string& path, const char* key) {
    const json& v = member(j, path, key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    fail(path + "." + key, "expected a non-negative integer");
}

ClockDomain resolve_clock(const Topology& t, const std::string& name, const std::string& path) {
    const ClockDomain* c = t.find_clock(name);
    if (!c) fail(path, "unknown clock '" + name + "'");
    return *c;
}

AddressRange parse_address(const json& j, const std::string& path) {
    check_keys(j, path, {"base", "size"});
    AddressRange a;
    a.base = get_u64(j, path, "base");
    a.size = get_u64(j, path, "size");
    return a;
}

PeripheralTimingModel parse_generic_timing(const json& j, const std::string& path) {
    check_keys(j, path,
               {"chi_read", "chi_write", "rho", "theta", "t_ctrl_read_ps", "t_ctrl_write_ps",
                "t_data_num_ps", "t_data_den"});
    PeripheralTimingModel m;
    m.chi_read = static_cast<int>(get_int(j, path, "chi_read"));
    m.chi_write = static_cast<int>(get_int(j, path, "chi_write"));
    m.rho = static_cast<int>(get_int(j, path, "rho"));
    m.theta = static_cast<int>(get_int(j, path, "theta"));
    m.t_ctrl_read = Duration{get_int(j, path, "t_ctrl_read_ps")};
    m.t_ctrl_write = Duration{get_int(j, path, "t_ctrl_write_ps")};
    m.t_data_ps = Rational{get_int(j, path, "t_data_num_ps"), get_int_or(j, path, "t_data_den", 1)};
    return m;
}

Topology parse_topology_json(const json& root) {
    check_keys(root, "$",
               {"clocks", "controllers", "bridges", "crossbar", "peripherals", "memory_map"});
    Topology t;

    const json& clocks = member(root, "$", "clocks");
    if (!clocks.is_array()) fail("$.clocks", "expected an array");
    for (std::size_t i = 0; i < clocks.size(); ++i) {
        std::string path = "$.clocks[" + std::to_string(i) + "]";
        check_keys(clocks[i], path, {"name", "period_ps"});
        t.clocks.push_back({get_string(clocks[i], path, "name"),
                            Duration{get_int(clocks[i], path, "period_ps")}});
    }

    if (root.contains("bridges")) {
        const json& bridges = root.at("bridges");
        if (!bridges.is_array()) fail("$.bridges", "expected an array");
        for (std::size_t i = 0; i < bridges.size(); ++i) {
            std::string path = "$.bridges[" + std::to_string(i) + "]";
            const json& b = bridges[i];
            BridgeModel m;
            m.id = get_string(b, path, "id");
            std::string kind = get_string(b, path, "kind");
            if (kind == "cdc") {
                check_keys(b, path, {"id", "kind", "tx_clock", "rx_clock", "depth"});
                m.kind = BridgeKind::CdcFifo;
                m.tx_clock = resolve_clock(t, get_string(b, path, "tx_clock"), path + ".tx_clock");
                m.rx_clock = resolve_clock(t, get_string(b, path, "rx_clock"), path + ".rx_clock");
                m.depth = static_cast<int>(get_int_or(b, path, "depth", 4));
            } else if (kind == "fixed") {
                check_keys(b, path, {"id", "kind", "d_read_ps", "d_write_ps"});
                m.kind = BridgeKind::FixedDelay;
                m.d_read = Duration{get_int(b, path, "d_read_ps")};
                m.d_write = Duration{get_int(b, path, "d_write_ps")};
            } else {
                fail(path + ".kind", "expected 'cdc' or 'fixed'");
            }
            t.bridges.push_back(std::move(m));
        }
    }

    const json& controllers = member(root, "$", "controllers");
    if (!controllers.is_array()) fail("$.controllers", "expected an array");
    for (std::size_t i = 0; i < controllers.size(); ++i) {
        std::string path = "$.controllers[" + std::to_string(i) + "]";
        const json& c = controllers[i];
        check_keys(c, path, {"id", "clock", "phi_read", "phi_write", "bridge_path"});
        ControllerModel m;
        m.id = get_string(c, path, "id");
        m.clock = resolve_clock(t, get_string(c, path, "clock"), path + ".clock");
        m.phi_read = static_cast<int>(get_int(c, path, "phi_read"));
        m.phi_write = static_cast<int>(get_int(c, path, "phi_write"));
        if (c.contains("bridge_path")) {
            const json& bp = c.at("bridge_path");
            if (!bp.is_array()) fail(path + ".bridge_path", "expected an array");
            for (const auto& bid : bp) {
                if (!bid.is_string()) fail(path + ".bridge_path", "expected bridge ids");
                m.bridge_path.push_back(bid.get<std::string>());
            }
        }
        t.controllers.push_back(std::move(m));
    }

    const json& xbar = member(root, "$", "crossbar");
    check_keys(xbar, "$.crossbar", {"clock", "d_tab"});
    t.crossbar.clock = resolve_clock(t, get_string(xbar, "$.crossbar", "clock"), "$.crossbar.clock");
    t.crossbar.d_tab = static_cast<int>(get_int_or(xbar, "$.crossbar", "d_tab", 16));

    const json& peripherals = member(root, "$", "peripherals");
    if (!peripherals.is_array()) fail("$.peripherals", "expected an array");
    for (std::size_t i = 0; i < peripherals.size(); ++i) {
        std::string path = "$.peripherals[" + std::to_string(i) + "]";
        const json& p = peripherals[i];
        PeripheralModel m;
        m.id = get_string(p, path, "id");
        std::string kind = get_string(p, path, "kind");
        if (kind == "spm") {
            check_keys(p, path, {"id", "kind", "clock", "fifo_depth", "bank_count", "address"});
            m.kind = PeripheralKind::Spm;
            m.clock = resolve_clock(t, get_string(p, path, "clock"), path + ".clock");
            m.fifo_depth = static_cast<int>(get_int_or(p, path, "fifo_depth", 4));
            m.bank_count = static_cast<int>(get_int_or(p, path, "bank_count", 8));
        } else if (kind == "io") {
            check_keys(p, path, {"id", "kind", "clock", "fifo_depth", "address"});
            m.kind = PeripheralKind::IoSubsystem;
            m.clock = resolve_clock(t, get_string(p, path, "clock"), path + ".clock");
            m.fifo_depth = static_cast<int>(get_int_or(p, path, "fifo_depth", 2));
        } else if (kind == "main_memory") {
            check_keys(p, path,
                       {"id", "kind", "clock", "hram_clock", "line_width_words", "llc_fifo_depth",
                        "dw_axi", "dw_hyper", "hram_access_latency_cycles", "set_count",
                        "way_count", "address"});
            m.kind = PeripheralKind::MainMemory;
            m.clock = resolve_clock(t, get_string(p, path, "clock"), path + ".clock");
            MainMemoryParams mm;
            // The LLC and the memory-controller front end share the
            // peripheral's front clock; only the HyperBUS side differs.
            mm.llc_clock = m.clock;
            mm.hmc_clock = m.clock;
            mm.hram_clock = resolve_clock(t, get_string(p, path, "hram_clock"), path + ".hram_clock");
            mm.line_width_words = static_cast<int>(get_int_or(p, path, "line_width_words", 8));
            mm.llc_fifo_depth = static_cast<int>(get_int_or(p, path, "llc_fifo_depth", 8));
            mm.dw_axi = static_cast<int>(get_int_or(p, path, "dw_axi", 64));
            mm.dw_hyper = static_cast<int>(get_int_or(p, path, "dw_hyper", 32));
            mm.hram_access_latency_cycles =
                static_cast<int>(get_int_or(p, path, "hram_access_latency_cycles", 12));
            mm.set_count = static_cast<int>(get_int_or(p, path, "set_count", 1024));
            mm.way_count = static_cast<int>(get_int_or(p, path, "way_count", 4));
            m.memory = mm;
        } else if (kind == "generic") {
            check_keys(p, path, {"id", "kind", "clock", "timing", "address"});
            m.kind = PeripheralKind::Generic;
            m.clock = resolve_clock(t, get_string(p, path, "clock"), path + ".clock");
            m.generic_timing = parse_generic_timing(member(p, path, "timing"), path + ".timing");
        } else {
            fail(path + ".kind", "expected 'spm', 'io', 'main_memory' or 'generic'");
        }
        if (p.contains("address")) m.address = parse_address(p.at("address"), path + ".address");
        t.peripherals.push_back(std::move(m));
    }

    if (root.contains("memory_map")) {
        const json& mm = root.at("memory_map");
        require_object(mm, "$.memory_map");
        for (auto it = mm.begin(); it != mm.end(); ++it) {
            std::string path = "$.memory_map." + it.key();
            bool found = false;
            for (auto& p : t.peripherals)
                if (p.id == it.key()) {
                    p.address = parse_address(it.value(), path);
                    found = true;
                }
            if (!found) fail(path, "unknown peripheral '" + it.key() + "'");
        }
    }
    for (const auto& p : t.peripherals)
        if (p.address.size == 0)
            fail("$.peripherals", "peripheral '" + p.id + "' has no address range");

    return t;
}

json address_json(const AddressRange& a) {
    return json{{"base", a.base}, {"size", a.size}};
}

json topology_json(const Topology& t) {
    json root;
    root["clocks"] = json::array();
    for (const auto& c : t.clocks)
        root["clocks"].push_back({{"name", c.name}, {"period_ps", c.period.ps}});
    root["controllers"] = json::array();
    for (const auto& c : t.controllers)
        root["controllers"].push_back({{"id", c.id},
                                       {"clock", c.clock.name},
                                       {"phi_read", c.phi_read},
                                       {"phi_write", c.phi_write},
                                       {"bridge_path", c.bridge_path}});
    root["bridges"] = json::array();
    for (const auto& b : t.bridges) {
        if (b.kind == BridgeKind::CdcFifo)
            root["bridges"].push_back({{"id", b.id},
                                       {"kind", "cdc"},
                                       {"tx_clock", b.tx_clock.name},
                                       {"rx_clock", b.rx_clock.name},
                                       {"depth", b.depth}});
        else
            root["bridges"].push_back({{"id", b.id},
                                       {"kind", "fixed"},
                                       {"d_read_ps", b.d_read.ps},
                                       {"d_write_ps", b.d_write.ps}});
    }
    root["crossbar"] = {{"clock", t.crossbar.clock.name}, {"d_tab", t.crossbar.d_tab}};
    root["peripherals"] = json::array();
    for (const auto& p : t.peripherals) {
        json pj{{"id", p.id}, {"kind", to_string(p.kind)}, {"clock", p.clock.name},
                {"address", address_json(p.address)}};
        switch (p.kind) {
            case PeripheralKind::Spm:
                pj["fifo_depth"] = p.fifo_depth;
                pj["bank_count"] = p.bank_count;
                break;
            case PeripheralKind::IoSubsystem:
                pj["fifo_depth"] = p.fifo_depth;
                break;
            case PeripheralKind::MainMemory: {
                const auto& m = *p.memory;
                pj["hram_clock"] = m.hram_clock.name;
                pj["line_width_words"] = m.line_width_words;
                pj["llc_fifo_depth"] = m.llc_fifo_depth;
                pj["dw_axi"] = m.dw_axi;
                pj["dw_hyper"] = m.dw_hyper;
                pj["hram_access_latency_cycles"] = m.hram_access_latency_cycles;
                pj["set_count"] = m.set_count;
                pj["way_count"] = m.way_count;
                break;
            }
            case PeripheralKind::Generic: {
                const auto& g = *p.generic_timing;
                pj["timing"] = {{"chi_read", g.chi_read},
                                {"chi_write", g.chi_write},
                                {"rho", g.rho},
                                {"theta", g.theta},
                                {"t_ctrl_read_ps", g.t_ctrl_read.ps},
                                {"t_ctrl_write_ps", g.t_ctrl_write.ps},
                                {"t_data_num_ps", g.t_data_ps.num},
                                {"t_data_den", g.t_data_ps.den}};
                break;
            }
        }
        root["peripherals"].push_back(std::move(pj));
    }
    return root;
}

json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ConfigError("malformed document");
    return j;
}

WorkloadMode parse_mode(const std::string& s, const std::string& path) {
    if (s == "idle") return WorkloadMode::Idle;
    if (s == "isolation") return WorkloadMode::Isolation;
    if (s == "saturation") return WorkloadMode::Saturation;
    if (s == "interference") return WorkloadMode::Interference;
    fail(path, "unknown mode '" + s + "'");
}

KindMix parse_kind(const std::string& s, const std::string& path) {
    if (s == "read") return KindMix::Read;
    if (s == "write") return KindMix::Write;
    if (s == "mix") return KindMix::Mix;
    fail(path, "unknown kind '" + s + "'");
}

AddressPattern parse_pattern(const std::string& s, const std::string& path) {
    if (s == "hit_loop") return AddressPattern::HitLoop;
    if (s == "cold_miss") return AddressPattern::ColdMiss;
    if (s == "conflict_evict") return AddressPattern::ConflictEvict;
    fail(path, "unknown pattern '" + s + "'");
}

Scenario parse_scenario_json(const json& root) {
    check_keys(root, "$", {"scenario"});
    const json& s = member(root, "$", "scenario");
    check_keys(s, "$.scenario",
               {"name", "observed", "seed", "horizon_ps", "hram_mode", "workloads"});
    Scenario out;
    out.name = get_string(s, "$.scenario", "name");
    out.observed = get_string(s, "$.scenario", "observed");
    out.seed = s.contains("seed") ? get_u64(s, "$.scenario", "seed") : 1;
    out.horizon = Duration{get_int_or(s, "$.scenario", "horizon_ps", out.horizon.ps)};
    if (s.contains("hram_mode")) {
        std::string m = get_string(s, "$.scenario", "hram_mode");
        if (m == "literal") out.hram_mode = HramDataMode::LiteralEq9;
        else if (m == "physical") out.hram_mode = HramDataMode::PhysicalCeil;
        else fail("$.scenario.hram_mode", "expected 'literal' or 'physical'");
    }
    const json& ws = member(s, "$.scenario", "workloads");
    if (!ws.is_array()) fail("$.scenario.workloads", "expected an array");
    for (std::size_t i = 0; i < ws.size(); ++i) {
        std::string path = "$.scenario.workloads[" + std::to_string(i) + "]";
        const json& w = ws[i];
        check_keys(w, path,
                   {"controller", "mode", "target", "kind", "beta", "count", "pattern",
                    "phi_cap", "max_gap_cycles"});
        WorkloadSpec spec;
        spec.controller = get_string(w, path, "controller");
        spec.mode = parse_mode(get_string(w, path, "mode"), path + ".mode");
        if (spec.mode != WorkloadMode::Idle) {
            spec.target = get_string(w, path, "target");
            spec.kind = parse_kind(get_string(w, path, "kind"), path + ".kind");
            const json& beta = member(w, path, "beta");
            spec.beta_choices.clear();
            if (beta.is_number_integer()) {
                spec.beta_choices.push_back(beta.get<std::int64_t>());
            } else if (beta.is_array() && !beta.empty()) {
                for (const auto& b : beta) {
                    if (!b.is_number_integer()) fail(path + ".beta", "expected integers");
                    spec.beta_choices.push_back(b.get<std::int64_t>());
                }
            } else {
                fail(path + ".beta", "expected an integer or a non-empty array");
            }
            spec.count = get_int_or(w, path, "count", 0);
            if (w.contains("pattern"))
                spec.pattern = parse_pattern(get_string(w, path, "pattern"), path + ".pattern");
            if (w.contains("phi_cap"))
                spec.phi_override = static_cast<int>(get_int(w, path, "phi_cap"));
            spec.max_gap_cycles = get_int_or(w, path, "max_gap_cycles", 0);
        }
        out.workloads.push_back(std::move(spec));
    }
    return out;
}

} // namespace

Topology parse_topology(const std::string& json_text) {
    return parse_topology_json(parse_text(json_text));
}

std::string serialize_topology(const Topology& t, int indent) {
    return topology_json(t).dump(indent);
}

Topology load_topology_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_topology(ss.str());
}

Scenario parse_scenario(const std::string& json_text) {
    return parse_scenario_json(parse_text(json_text));
}

std::string serialize_scenario(const Scenario& s, int indent) {
    json ws = json::array();
    for (const auto& w : s.workloads) {
        json wj{{"controller", w.controller}, {"mode", to_string(w.mode)}};
        if (w.mode != WorkloadMode::Idle) {
            wj["target"] = w.target;
            wj["kind"] = to_string(w.kind);
            wj["beta"] = w.beta_choices;
            wj["count"] = w.count;
            wj["pattern"] = to_string(w.pattern);
            if (w.phi_override) wj["phi_cap"] = *w.phi_override;
            wj["max_gap_cycles"] = w.max_gap_cycles;
        }
        ws.push_back(std::move(wj));
    }
    json inner;
    inner["name"] = s.name;
    inner["observed"] = s.observed;
    inner["seed"] = s.seed;
    inner["horizon_ps"] = s.horizon.ps;
    inner["hram_mode"] = s.hram_mode == HramDataMode::LiteralEq9 ? "literal" : "physical";
    inner["workloads"] = std::move(ws);
    json root;
    root["scenario"] = std::move(inner);
    return root.dump(indent);
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

} // namespace socrt
