#include "doctest.h"

#include <algorithm>

#include "socrt/config.hpp"
#include "socrt/model.hpp"

using namespace socrt;

namespace {

/// Minimal valid topology: one direct controller, one SPM, one clock.
Topology tiny_topology() {
    Topology t;
    ClockDomain sys{"sys", Duration{1000}};
    t.clocks = {sys};
    t.controllers = {{.id = "c0", .clock = sys, .phi_read = 4, .phi_write = 4}};
    t.crossbar = {.clock = sys, .d_tab = 16};
    t.peripherals = {{.id = "spm", .kind = PeripheralKind::Spm, .clock = sys, .fifo_depth = 4,
                      .bank_count = 8, .address = {0x1000'0000, 0x10'0000}}};
    return t;
}

bool has_error_mentioning(const ValidationResult& r, const std::string& needle) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [&](const Diagnostic& d) {
        return d.severity == Severity::Error && d.message.find(needle) != std::string::npos;
    });
}

} // namespace

TEST_CASE("reference topology parses and resolves") {
    Topology t = load_topology_file(SOCRT_REFERENCE_TOPOLOGY);
    CHECK(t.controllers.size() == 2);
    CHECK(t.peripherals.size() == 3);
    CHECK(t.bridges.size() == 1);
    CHECK(t.crossbar.clock.period.ps == 1000);

    REQUIRE(t.find_controller("cluster") != nullptr);
    CHECK(t.find_controller("cluster")->clock.period.ps == 2000);
    CHECK(t.find_controller("cluster")->bridge_path == std::vector<std::string>{"cluster_cdc"});
    CHECK(t.find_controller("missing") == nullptr);

    REQUIRE(t.find_peripheral("mm") != nullptr);
    const auto& mm = *t.find_peripheral("mm")->memory;
    CHECK(mm.hram_clock.period.ps == 5000);
    CHECK(mm.line_width_words == 8);
    CHECK(mm.set_count == 1024);

    CHECK(t.route(0x1000'0000)->id == "spm");
    CHECK(t.route(0x8000'0000)->id == "mm");
    CHECK(t.route(0x8000'0000 + 16 * 1024 * 1024) == nullptr);
}

TEST_CASE("reference topology validates cleanly") {
    Topology t = load_topology_file(SOCRT_REFERENCE_TOPOLOGY);
    auto r = validate_topology(t);
    for (const auto& d : r.diagnostics)
        CHECK(d.severity == Severity::Warning);
    CHECK(r.ok);
}

TEST_CASE("topology serialization round-trips") {
    Topology t = load_topology_file(SOCRT_REFERENCE_TOPOLOGY);
    std::string once = serialize_topology(t);
    Topology again = parse_topology(once);
    CHECK(serialize_topology(again) == once);
    CHECK(again.controllers.size() == t.controllers.size());
    CHECK(again.find_peripheral("io")->fifo_depth == 2);
}

TEST_CASE("strict parsing rejects unknown and missing keys") {
    CHECK_THROWS_AS(parse_topology("{\"clocks\": [], \"bogus\": 1}"), ConfigError);
    CHECK_THROWS_AS(parse_topology("not json"), ConfigError);
    // A controller without a clock.
    CHECK_THROWS_AS(parse_topology(R"({
        "clocks": [{"name": "sys", "period_ps": 1000}],
        "controllers": [{"id": "c0"}],
        "crossbar": {"clock": "sys"},
        "peripherals": []
    })"),
                    ConfigError);
    // Wrong type.
    CHECK_THROWS_AS(parse_topology(R"({
        "clocks": [{"name": "sys", "period_ps": "fast"}],
        "controllers": [], "crossbar": {"clock": "sys"}, "peripherals": []
    })"),
                    ConfigError);
}

TEST_CASE("validation flags structural faults") {
    SUBCASE("duplicate controller id") {
        auto t = tiny_topology();
        t.controllers.push_back(t.controllers[0]);
        auto r = validate_topology(t);
        CHECK_FALSE(r.ok);
        CHECK(has_error_mentioning(r, "duplicate id"));
    }
    SUBCASE("undeclared clock") {
        auto t = tiny_topology();
        t.controllers[0].clock = {"ghost", Duration{1000}};
        CHECK(has_error_mentioning(validate_topology(t), "not declared"));
    }
    SUBCASE("clock period mismatch with declaration") {
        auto t = tiny_topology();
        t.peripherals[0].clock = {"sys", Duration{2000}};
        CHECK(has_error_mentioning(validate_topology(t), "period mismatch"));
    }
    SUBCASE("zero outstanding capacity") {
        auto t = tiny_topology();
        t.controllers[0].phi_write = 0;
        CHECK(has_error_mentioning(validate_topology(t), "at least one outstanding"));
    }
    SUBCASE("overlapping address ranges") {
        auto t = tiny_topology();
        auto second = t.peripherals[0];
        second.id = "spm2";
        second.address.base += second.address.size / 2;
        t.peripherals.push_back(second);
        CHECK(has_error_mentioning(validate_topology(t), "overlap"));
    }
    SUBCASE("write-order table smaller than peripheral write parallelism") {
        auto t = tiny_topology();
        t.crossbar.d_tab = 2; // spm chi_W = 4
        CHECK(has_error_mentioning(validate_topology(t), "W-table"));
    }
    SUBCASE("cross-domain controller without a bridge") {
        auto t = tiny_topology();
        t.clocks.push_back({"slow", Duration{3000}});
        t.controllers[0].clock = {"slow", Duration{3000}};
        CHECK(has_error_mentioning(validate_topology(t), "no bridge"));
    }
    SUBCASE("cdc depth below two") {
        auto t = tiny_topology();
        t.clocks.push_back({"slow", Duration{3000}});
        t.bridges.push_back({.id = "b0", .kind = BridgeKind::CdcFifo,
                             .tx_clock = {"slow", Duration{3000}},
                             .rx_clock = {"sys", Duration{1000}}, .depth = 1});
        t.controllers[0].clock = {"slow", Duration{3000}};
        t.controllers[0].bridge_path = {"b0"};
        CHECK(has_error_mentioning(validate_topology(t), "at least 2"));
    }
    SUBCASE("hram latency outside the supported range") {
        Topology t = load_topology_file(SOCRT_REFERENCE_TOPOLOGY);
        t.peripherals[2].memory->hram_access_latency_cycles = 20;
        CHECK(has_error_mentioning(validate_topology(t), "[7, 16]"));
    }
    SUBCASE("validation is deterministic") {
        auto t = tiny_topology();
        t.controllers.push_back(t.controllers[0]);
        auto a = validate_topology(t);
        auto b = validate_topology(t);
        REQUIRE(a.diagnostics.size() == b.diagnostics.size());
        for (std::size_t i = 0; i < a.diagnostics.size(); ++i)
            CHECK(a.diagnostics[i].message == b.diagnostics[i].message);
    }
}

TEST_CASE("interfering set") {
    Topology t = load_topology_file(SOCRT_REFERENCE_TOPOLOGY);
    CHECK(interfering_set(t, "cva6", "spm") == std::vector<std::string>{"cluster"});
    CHECK(interfering_set(t, "cluster", "mm") == std::vector<std::string>{"cva6"});
    CHECK_THROWS_AS(interfering_set(t, "nope", "spm"), ConfigError);
    CHECK_THROWS_AS(interfering_set(t, "cva6", "nope"), ConfigError);

    auto tiny = tiny_topology();
    CHECK(interfering_set(tiny, "c0", "spm").empty());

    // Every other manager can reach every subordinate through the crossbar.
    for (int extra = 0; extra < 3; ++extra) {
        auto c = tiny.controllers[0];
        c.id = "x" + std::to_string(extra);
        tiny.controllers.push_back(c);
    }
    CHECK(interfering_set(tiny, "c0", "spm").size() == 3);
}

TEST_CASE("scenario parsing") {
    Scenario s = parse_scenario(R"({
      "scenario": {
        "name": "demo",
        "observed": "c0",
        "seed": 7,
        "horizon_ps": 1000000,
        "hram_mode": "literal",
        "workloads": [
          { "controller": "c0", "mode": "isolation", "target": "spm",
            "kind": "read", "beta": [4, 16], "count": 10, "max_gap_cycles": 3 },
          { "controller": "c1", "mode": "interference", "target": "spm",
            "kind": "write", "beta": 8, "count": 0, "phi_cap": 2 }
        ]
      }
    })");
    CHECK(s.name == "demo");
    CHECK(s.observed == "c0");
    CHECK(s.seed == 7);
    CHECK(s.horizon.ps == 1000000);
    CHECK(s.hram_mode == HramDataMode::LiteralEq9);
    REQUIRE(s.workloads.size() == 2);
    CHECK(s.workloads[0].beta_choices == std::vector<std::int64_t>{4, 16});
    CHECK(s.workloads[0].max_gap_cycles == 3);
    CHECK(s.workloads[1].phi_override == 2);
    CHECK(s.workloads[1].kind == KindMix::Write);
    CHECK(s.find_workload("c1") == &s.workloads[1]);
    CHECK(s.find_workload("c2") == nullptr);

    // Round trip.
    Scenario again = parse_scenario(serialize_scenario(s));
    CHECK(serialize_scenario(again) == serialize_scenario(s));

    CHECK_THROWS_AS(parse_scenario("{\"scenario\": {\"name\": \"x\"}}"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({
      "scenario": {"name": "x", "observed": "c0",
        "workloads": [{"controller": "c0", "mode": "sideways", "target": "p"}]}
    })"),
                    ConfigError);
}
