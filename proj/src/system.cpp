#include "socrt/system.hpp"

#include <algorithm>

namespace socrt {

namespace {

struct ResolvedQuery {
    const ControllerModel* ctrl;
    const PeripheralModel* periph;
    PeripheralTimingModel observed_timing;
    PeripheralTimingModel interferer_timing;
    std::vector<std::string> psi;
    std::int64_t beta;            // effective observed burst
    std::int64_t interferer_beta; // effective interferer burst
};

ResolvedQuery resolve(const Topology& t, const TransactionQuery& q) {
    ResolvedQuery r;
    r.ctrl = t.find_controller(q.controller);
    if (!r.ctrl) throw ConfigError("unknown controller '" + q.controller + "'");
    r.periph = t.find_peripheral(q.peripheral);
    if (!r.periph) throw ConfigError("unknown peripheral '" + q.peripheral + "'");
    if (q.beta < 1 || q.interferer_beta < 1) throw ConfigError("burst length must be >= 1");
    if (q.position_v < 1) throw ConfigError("batch position V must be >= 1");
    r.beta = effective_beta(*r.periph, q.beta);
    r.interferer_beta = effective_beta(*r.periph, q.interferer_beta);
    r.observed_timing = specialize_peripheral(*r.periph, r.beta, q.memory_case, q.hram_mode);
    r.interferer_timing =
        specialize_peripheral(*r.periph, r.interferer_beta, q.memory_case, q.hram_mode);
    r.psi = interfering_set(t, q.controller, q.peripheral);
    return r;
}

} // namespace

BoundBreakdown isolation_bound(const Topology& t, const TransactionQuery& q) {
    ResolvedQuery r = resolve(t, q);
    std::vector<std::pair<std::string, Duration>> terms;

    terms.emplace_back("peripheral_ctrl", r.observed_timing.t_ctrl(q.kind));
    terms.emplace_back("peripheral_data", r.observed_timing.data_time(r.beta));

    for (const auto& bid : r.ctrl->bridge_path) {
        const BridgeModel* b = t.find_bridge(bid);
        if (!b) throw ConfigError("unknown bridge '" + bid + "'");
        if (b->kind == BridgeKind::CdcFifo) {
            BoundBreakdown cdc = cdc_transaction_delay(b->tx_clock, b->rx_clock, q.kind);
            terms.emplace_back("bridge_" + b->id, cdc.total);
        } else {
            terms.emplace_back("bridge_" + b->id,
                               q.kind == TransactionKind::Read ? b->d_read : b->d_write);
        }
    }

    int m = static_cast<int>(r.psi.size()) + 1;
    terms.emplace_back("crossbar", xbar_delay(q.kind, m, t.crossbar.clock).total);
    return BoundBreakdown::of(std::move(terms));
}

SameTypeCount same_type_interference_count(const Topology& t, const TransactionQuery& q) {
    ResolvedQuery r = resolve(t, q);
    std::int64_t phi_sum = 0;
    for (const auto& id : r.psi) phi_sum += t.find_controller(id)->phi(q.kind);
    std::int64_t v = q.position_v;
    SameTypeCount s;
    s.arm_phi_sum = v - 1 + phi_sum;
    s.arm_capacity = v - 1 + r.observed_timing.chi(q.kind) +
                     v * static_cast<std::int64_t>(r.psi.size());
    s.value = static_cast<int>(std::min(s.arm_phi_sum, s.arm_capacity));
    return s;
}

int same_type_interference_count_alt(const Topology& t, const TransactionQuery& q) {
    ResolvedQuery r = resolve(t, q);
    std::int64_t phi_sum = 0;
    for (const auto& id : r.psi) phi_sum += t.find_controller(id)->phi(q.kind);
    std::int64_t cap = r.observed_timing.chi(q.kind) +
                       static_cast<std::int64_t>(r.ctrl->phi(q.kind)) *
                           static_cast<std::int64_t>(r.psi.size());
    return static_cast<int>(std::min(phi_sum, cap));
}

int cross_type_interference_count(int same_type_s, int theta) {
    if (theta != 0 && theta != 1) throw ConfigError("theta must be 0 or 1");
    return (same_type_s + 1) * (1 - theta);
}

BoundBreakdown per_interferer_delay(const Topology& t, const TransactionQuery& q) {
    ResolvedQuery r = resolve(t, q);
    int m = static_cast<int>(r.psi.size()) + 1;
    const PeripheralTimingModel& pt = r.interferer_timing;

    Duration ctrl = Duration::zero();
    if (pt.rho == 0) {
        // Non-pipelined peripherals also stall on the other kind's control
        // phase, so take the worse of the two when theta = 0.
        ctrl = pt.t_ctrl(q.kind);
        if (pt.theta == 0) ctrl = std::max(ctrl, pt.t_ctrl(other(q.kind)));
    }
    return BoundBreakdown::of({
        {"xbar_pass", xbar_delay(q.kind, m, t.crossbar.clock).total},
        {"interferer_ctrl", ctrl},
        {"interferer_data", pt.data_time(r.interferer_beta)},
    });
}

WcrtBound wcrt(const Topology& t, const TransactionQuery& q) {
    WcrtBound w;
    w.isolation_breakdown = isolation_bound(t, q);
    w.isolation = w.isolation_breakdown.total;
    SameTypeCount s = same_type_interference_count(t, q);
    w.same_type_count = s.value;
    ResolvedQuery r = resolve(t, q);
    w.cross_type_count = cross_type_interference_count(s.value, r.observed_timing.theta);
    w.delta_breakdown = per_interferer_delay(t, q);
    w.per_interferer_delay = w.delta_breakdown.total;
    w.total = w.isolation +
              (static_cast<std::int64_t>(w.same_type_count) + w.cross_type_count) *
                  w.per_interferer_delay;
    return w;
}

Rational pessimism_pct(Duration bound, Duration measured) {
    if (measured.ps == 0) throw ConfigError("pessimism is undefined for zero measured time");
    return Rational{100 * (bound.ps - measured.ps), measured.ps};
}

} // namespace socrt
