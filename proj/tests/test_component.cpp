#include "doctest.h"

#include "socrt/component.hpp"

using namespace socrt;

namespace {

ClockDomain clk(const char* name, std::int64_t ps) { return {name, Duration{ps}}; }

MainMemoryParams mm_params(std::int64_t front_ps, std::int64_t hram_ps, int lat = 12) {
    MainMemoryParams m;
    m.llc_clock = clk("llc", front_ps);
    m.hmc_clock = clk("llc", front_ps);
    m.hram_clock = clk("hyper", hram_ps);
    m.hram_access_latency_cycles = lat;
    return m;
}

} // namespace

TEST_CASE("cdc hop is one tx cycle plus four rx cycles") {
    CHECK(cdc_hop_delay(clk("a", 1000), clk("b", 1000)).ps == 5000);
    CHECK(cdc_hop_delay(clk("a", 2000), clk("b", 1000)).ps == 6000);
    CHECK(cdc_hop_delay(clk("a", 1000), clk("b", 2000)).ps == 9000);
}

TEST_CASE("cdc transaction delay is five periods of each clock, kind independent") {
    auto rd = cdc_transaction_delay(clk("c", 1000), clk("p", 1000), TransactionKind::Read);
    auto wr = cdc_transaction_delay(clk("c", 1000), clk("p", 1000), TransactionKind::Write);
    CHECK(rd.total.ps == 10000);
    CHECK(wr.total.ps == rd.total.ps);
    CHECK(rd.sums_exactly());

    // 5 * (t_c + t_p) for an asymmetric pair, and symmetric in the two clocks.
    auto asym = cdc_transaction_delay(clk("c", 2000), clk("p", 1000), TransactionKind::Read);
    CHECK(asym.total.ps == 15000);
    auto flipped = cdc_transaction_delay(clk("c", 1000), clk("p", 2000), TransactionKind::Read);
    CHECK(flipped.total.ps == asym.total.ps);
}

TEST_CASE("spm timing tuple") {
    auto t = spm_timing(4, clk("sys", 1000));
    CHECK(t.chi_read == 4);
    CHECK(t.chi_write == 4);
    CHECK(t.rho == 1);
    CHECK(t.theta == 1);
    CHECK(t.t_ctrl_read.ps == 6000);
    CHECK(t.t_ctrl_write.ps == 5000);
    CHECK(t.t_data_ps == Rational{1000});
    CHECK(t.service_bound(TransactionKind::Read, 16).ps == 22000);
    CHECK(t.service_bound(TransactionKind::Write, 1).ps == 6000);
}

TEST_CASE("io timing tuple and single-word service bound") {
    auto t = io_timing(2, clk("sys", 1000));
    CHECK(t.chi_read == 2);
    CHECK(t.chi_write == 2);
    CHECK(t.rho == 0);
    CHECK(t.theta == 0);
    CHECK(t.t_ctrl_read.ps == 4000);
    CHECK(t.t_ctrl_write.ps == 3000);
    // Single-word IP: 5 cycles for a read, 4 for a write.
    CHECK(t.service_bound(TransactionKind::Read, 1).ps == 5000);
    CHECK(t.service_bound(TransactionKind::Write, 1).ps == 4000);
}

TEST_CASE("llc hit and miss control times") {
    CHECK(llc_hit_ctrl(clk("sys", 1000)).ps == 6000);
    CHECK(llc_hit_data(clk("sys", 1000)).ps == 1000);
    CHECK(llc_miss_ctrl(clk("sys", 1000)).ps == 8000);
    // Homogeneous in the clock period.
    CHECK(llc_hit_ctrl(clk("sys", 2000)).ps == 12000);
}

TEST_CASE("hyperram memory controller control time") {
    auto rd = hmc_ctrl(TransactionKind::Read, clk("sys", 1000), clk("hyper", 5000));
    // 5 cycles front end + (1+4*5) to hram + (5+4*1) back + 2 hram cycles.
    CHECK(rd.total.ps == 45000);
    CHECK(rd.sums_exactly());

    auto wr = hmc_ctrl(TransactionKind::Write, clk("sys", 1000), clk("hyper", 5000));
    // Writes post: no return hop.
    CHECK(wr.total.ps == 36000);
    CHECK(wr.total < rd.total);
}

TEST_CASE("hyperram access control time and latency range") {
    CHECK(hram_ctrl(clk("hyper", 5000), 12).ps == 75000);
    CHECK(hram_ctrl(clk("hyper", 5000), 7).ps == 50000);
    CHECK(hram_ctrl(clk("hyper", 5000), 16).ps == 95000);
    CHECK_THROWS_AS(hram_ctrl(clk("hyper", 5000), 6), ConfigError);
    CHECK_THROWS_AS(hram_ctrl(clk("hyper", 5000), 17), ConfigError);
}

TEST_CASE("hyperram per-word data time, both interpretations") {
    CHECK(hram_word_time(64, 32, clk("hyper", 5000), HramDataMode::PhysicalCeil).ps == 10000);
    CHECK(hram_word_time(64, 32, clk("hyper", 5000), HramDataMode::LiteralEq9).ps == 320000);
    CHECK(hram_word_time(32, 32, clk("hyper", 5000), HramDataMode::PhysicalCeil).ps == 5000);
}

TEST_CASE("memory-subsystem miss bound, single line") {
    auto m = mm_params(1000, 1000);
    auto b = ms_miss_bound(8, false, m, HramDataMode::PhysicalCeil);
    // miss ctrl 8 + read hmc ctrl 17 + hram ctrl 15, one line.
    CHECK(b.t_ctrl.ps == 40000);
    CHECK(b.t_data_ps == Rational{3000});
    CHECK(b.ctrl_breakdown.sums_exactly());
    CHECK(b.t_ctrl + Duration{(b.t_data_ps * 8).ceil()} == Duration{64000});
}

TEST_CASE("memory-subsystem miss bound with eviction") {
    auto m = mm_params(1000, 1000);
    auto b = ms_miss_bound(8, true, m, HramDataMode::PhysicalCeil);
    // Adds the posted write-back control: write hmc ctrl 12 + hram ctrl 15.
    CHECK(b.t_ctrl.ps == 67000);
    // Two back-end streams share the per-word budget.
    CHECK(b.t_data_ps == Rational{5000});
}

TEST_CASE("memory-subsystem miss bound, burst spanning several lines") {
    auto m = mm_params(1000, 1000);
    auto b = ms_miss_bound(64, false, m, HramDataMode::PhysicalCeil);
    // ceil(64/8) = 8 lines of refill control.
    CHECK(b.t_ctrl.ps == 8000 + 8 * (17000 + 15000));
    // Per-word share is beta-independent when beta is a multiple of the line.
    CHECK(b.t_data_ps == Rational{3000});
    // Sub-line bursts pay the whole line in the per-word share.
    auto s = ms_miss_bound(2, false, m, HramDataMode::PhysicalCeil);
    CHECK(s.t_ctrl.ps == 40000);
    CHECK(s.t_data_ps == Rational{1000} + Rational{8 * 2000, 2});
}

TEST_CASE("crossbar traversal bound") {
    CHECK(xbar_delay(TransactionKind::Read, 1, clk("sys", 1000)).total.ps == 2000);
    CHECK(xbar_delay(TransactionKind::Read, 2, clk("sys", 1000)).total.ps == 3000);
    CHECK(xbar_delay(TransactionKind::Write, 5, clk("sys", 1000)).total.ps == 6000);
    auto b = xbar_delay(TransactionKind::Read, 4, clk("sys", 1000));
    CHECK(b.sums_exactly());
    CHECK(b.terms.size() == 2);
}

TEST_CASE("peripheral specialization dispatch") {
    PeripheralModel spm{.id = "spm", .kind = PeripheralKind::Spm, .clock = clk("sys", 1000),
                        .fifo_depth = 4};
    CHECK(specialize_peripheral(spm, 16, std::nullopt).t_ctrl_read.ps == 6000);

    PeripheralModel io{.id = "io", .kind = PeripheralKind::IoSubsystem, .clock = clk("sys", 1000),
                       .fifo_depth = 2};
    CHECK(specialize_peripheral(io, 1, std::nullopt).t_ctrl_read.ps == 4000);
    CHECK(effective_beta(io, 16) == 1);
    CHECK(effective_beta(spm, 16) == 16);

    PeripheralModel mm{.id = "mm", .kind = PeripheralKind::MainMemory, .clock = clk("sys", 1000)};
    mm.memory = mm_params(1000, 1000);
    CHECK_THROWS_AS(specialize_peripheral(mm, 8, std::nullopt), ConfigError);
    auto hit = specialize_peripheral(mm, 8, MemoryCase::Hit);
    CHECK(hit.t_ctrl_read.ps == 6000);
    CHECK(hit.t_data_ps == Rational{1000});
    CHECK(hit.chi_read == 8);
    auto miss = specialize_peripheral(mm, 8, MemoryCase::MissRefill);
    CHECK(miss.t_ctrl_read.ps == 40000);
    auto evict = specialize_peripheral(mm, 8, MemoryCase::MissRefillEvict);
    CHECK(evict.t_ctrl_read.ps == 67000);
}

TEST_CASE("component bounds scale homogeneously with the clock period") {
    for (std::int64_t p : {500, 1000, 2000, 3000}) {
        CHECK(spm_timing(4, clk("s", p)).t_ctrl_read.ps == 6 * p);
        CHECK(io_timing(2, clk("s", p)).t_ctrl_write.ps == 3 * p);
        CHECK(xbar_delay(TransactionKind::Read, 3, clk("s", p)).total.ps == 4 * p);
    }
}
