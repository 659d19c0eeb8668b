#include "socrt/sim/sim.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <set>

#include "socrt/component.hpp"
#include "socrt/sim/engine.hpp"

namespace socrt::sim {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

void fnv(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
}

struct Request {
    int workload = 0;
    const ControllerModel* ctrl = nullptr;
    const PeripheralModel* periph = nullptr;
    int periph_index = 0;
    int sport = 0;
    TransactionKind kind = TransactionKind::Read;
    std::int64_t beta = 1;
    std::uint64_t line = 0;      // first cache line (main memory)
    std::int64_t line_count = 1;
    int position_v = 1;
    Duration issued;
    Duration accepted;
    MemoryCase mcase = MemoryCase::Hit;
};

struct Sim;

/// Set-associative LRU cache of line tags, with a preload hook so scenarios
/// can start from a warm or pre-dirtied state.
class LlcCache {
public:
    LlcCache(int sets, int ways) : sets_(sets), ways_(ways), data_(sets) {}

    struct Outcome {
        bool hit = false;
        bool dirty_victim = false;
    };

    Outcome access(std::uint64_t line, bool is_write) {
        auto& set = data_[set_of(line)];
        for (auto& w : set)
            if (w.line == line) {
                w.lru = tick_++;
                w.dirty = w.dirty || is_write;
                return {true, false};
            }
        Outcome out{false, false};
        if (static_cast<int>(set.size()) < ways_) {
            set.push_back({line, is_write, tick_++});
            return out;
        }
        auto victim = std::min_element(set.begin(), set.end(),
                                       [](const Way& a, const Way& b) { return a.lru < b.lru; });
        out.dirty_victim = victim->dirty;
        *victim = {line, is_write, tick_++};
        return out;
    }

    void preload(std::uint64_t line, bool dirty) {
        auto& set = data_[set_of(line)];
        for (auto& w : set)
            if (w.line == line) { w.dirty = w.dirty || dirty; return; }
        if (static_cast<int>(set.size()) < ways_) set.push_back({line, dirty, tick_++});
    }

private:
    struct Way {
        std::uint64_t line;
        bool dirty;
        std::uint64_t lru;
    };

    std::size_t set_of(std::uint64_t line) const { return line % sets_; }

    int sets_;
    int ways_;
    std::vector<std::vector<Way>> data_;
    std::uint64_t tick_ = 0;
};

/// Service cost of one request at a peripheral, split the same way the
/// analysis splits it: a control part that pipelines away under load and a
/// data part that always occupies the peripheral.
struct ServiceCost {
    Duration ctrl;
    Duration data;
};

struct PeripheralSim {
    const PeripheralModel* model = nullptr;
    PeripheralTimingModel base; // chi / rho / theta for admission control
    std::unique_ptr<LlcCache> cache;

    // Pipelined (rho = 1) per-kind tail, single-server state otherwise.
    Duration tail[2];
    bool busy = false;
    int last_kind = 1;
    std::deque<Request*> queue[2];

    int in_service[2] = {0, 0};
    int peak[2] = {0, 0};
};

struct BridgeSim {
    const BridgeModel* model = nullptr;
    int occupancy = 0;
    std::deque<Request*> pending;
};

struct ControllerSim {
    const ControllerModel* ctrl = nullptr;
    const WorkloadSpec* spec = nullptr;
    ClockSignal clock;
    std::vector<BridgeSim*> path;
    int cap[2] = {0, 0};
    int outstanding[2] = {0, 0};
    std::int64_t issued = 0;
    std::int64_t completed = 0;
    Rng rng{0};
    // Address pattern state.
    std::uint64_t set_base = 0;
    std::uint64_t set_span = 1;
    std::uint64_t hit_footprint = 1;
    std::uint64_t cold_offset = 0;
    std::uint64_t cold_tag = 1;
    std::uint64_t evict_index = 0;
    std::uint64_t plain_index = 0;
};

struct Crossbar {
    ClockSignal clock;
    int sports = 0;
    std::vector<std::deque<Request*>> queue[2]; // [kind][sport]
    std::vector<int> rr[2];                     // [kind][peripheral]
    std::vector<int> outstanding_w;             // per sport, D_TAB
    std::set<std::int64_t> scheduled;
    std::int64_t last_arb_edge = -1;
};

struct Sim {
    const Topology* topo = nullptr;
    const Scenario* scen = nullptr;
    Engine engine;
    Crossbar xbar;
    std::vector<ControllerSim> ctrls;
    std::vector<PeripheralSim> periphs;
    std::vector<BridgeSim> bridges;
    std::vector<std::unique_ptr<Request>> arena;
    SimResult result;
    std::uint64_t hash = kFnvOffset;

    int kindex(TransactionKind k) const { return k == TransactionKind::Read ? 0 : 1; }

    // --- controller side ---------------------------------------------------

    void schedule_issue(int ci, Duration not_before) {
        ControllerSim& c = ctrls[ci];
        engine.at(c.clock.at_or_after(not_before), [this, ci] { try_issue(ci); });
    }

    bool may_issue(const ControllerSim& c, TransactionKind k) const {
        if (c.spec->mode == WorkloadMode::Isolation)
            return c.outstanding[0] + c.outstanding[1] == 0;
        return c.outstanding[kindex(k)] < c.cap[kindex(k)];
    }

    void try_issue(int ci) {
        ControllerSim& c = ctrls[ci];
        if (c.spec->count > 0 && c.issued >= c.spec->count) return;
        TransactionKind k = pick_kind(c);
        while (may_issue(c, k) && (c.spec->count == 0 || c.issued < c.spec->count)) {
            issue_one(ci, k);
            if (c.spec->mode == WorkloadMode::Isolation) break;
            k = pick_kind(c);
        }
    }

    TransactionKind pick_kind(ControllerSim& c) {
        switch (c.spec->kind) {
            case KindMix::Read: return TransactionKind::Read;
            case KindMix::Write: return TransactionKind::Write;
            default: return c.rng.uniform(2) == 0 ? TransactionKind::Read : TransactionKind::Write;
        }
    }

    void issue_one(int ci, TransactionKind k) {
        ControllerSim& c = ctrls[ci];
        auto req = std::make_unique<Request>();
        Request* r = req.get();
        arena.push_back(std::move(req));
        r->workload = ci;
        r->ctrl = c.ctrl;
        r->sport = ci;
        r->kind = k;
        r->beta = c.spec->beta_choices[c.rng.uniform(c.spec->beta_choices.size())];
        r->issued = engine.now();
        int pi = 0;
        for (; pi < static_cast<int>(topo->peripherals.size()); ++pi)
            if (topo->peripherals[pi].id == c.spec->target) break;
        r->periph = &topo->peripherals[pi];
        r->periph_index = pi;
        assign_address(c, r);
        c.outstanding[kindex(k)] += 1;
        r->position_v = c.outstanding[kindex(k)];
        c.issued += 1;
        forward(r, 0, engine.now());
    }

    void assign_address(ControllerSim& c, Request* r) {
        if (r->periph->kind != PeripheralKind::MainMemory) {
            r->line = c.plain_index++;
            r->line_count = 1;
            return;
        }
        const auto& m = *r->periph->memory;
        r->line_count = ceil_div(r->beta, m.line_width_words);
        std::uint64_t span = c.set_span;
        switch (c.spec->pattern) {
            case AddressPattern::HitLoop: {
                std::uint64_t room = c.hit_footprint - static_cast<std::uint64_t>(r->line_count) + 1;
                std::uint64_t off = (c.plain_index * static_cast<std::uint64_t>(r->line_count)) % room;
                c.plain_index += 1;
                r->line = c.set_base + off;
                break;
            }
            case AddressPattern::ColdMiss: {
                if (c.cold_offset + r->line_count > span) {
                    c.cold_offset = 0;
                    c.cold_tag += 1;
                }
                r->line = c.cold_tag * m.set_count + c.set_base + c.cold_offset;
                c.cold_offset += r->line_count;
                break;
            }
            case AddressPattern::ConflictEvict: {
                std::uint64_t set = c.set_base + c.evict_index % span;
                std::uint64_t tag = 1 + c.evict_index / span;
                c.evict_index += 1;
                r->line = tag * m.set_count + set;
                break;
            }
        }
    }

    // --- bridge path -------------------------------------------------------

    void forward(Request* r, std::size_t hop, Duration t) {
        ControllerSim& c = ctrls[r->workload];
        if (hop == c.path.size()) {
            enqueue_at_crossbar(r, t);
            return;
        }
        BridgeSim* b = c.path[hop];
        if (b->model->kind == BridgeKind::FixedDelay) {
            Duration d = r->kind == TransactionKind::Read ? b->model->d_read : b->model->d_write;
            engine.at(t + d, [this, r, hop] { forward(r, hop + 1, engine.now()); });
            return;
        }
        if (b->occupancy >= b->model->depth) {
            b->pending.push_back(r);
            return;
        }
        b->occupancy += 1;
        Duration out = cross(t, b->model->tx_clock, b->model->rx_clock);
        engine.at(out, [this, r, hop, b] {
            Duration now = engine.now();
            b->occupancy -= 1;
            if (!b->pending.empty()) {
                Request* next = b->pending.front();
                b->pending.pop_front();
                forward(next, hop, now);
            }
            forward(r, hop + 1, now);
        });
    }

    /// One CDC hop: launch takes a TX cycle, then the synchronizer releases
    /// the word three RX edges after the first capture edge.
    Duration cross(Duration t, const ClockDomain& tx, const ClockDomain& rx) {
        ClockSignal rxs = signal(rx);
        return rxs.at_or_after(t + tx.period) + 3 * rx.period;
    }

    void backward(Request* r, std::size_t hop_plus_one, Duration t) {
        ControllerSim& c = ctrls[r->workload];
        if (hop_plus_one == 0) {
            complete_at_controller(r, t);
            return;
        }
        BridgeSim* b = c.path[hop_plus_one - 1];
        if (b->model->kind == BridgeKind::FixedDelay) {
            backward(r, hop_plus_one - 1, t);
            return;
        }
        Duration out = cross(t, b->model->rx_clock, b->model->tx_clock);
        engine.at(out, [this, r, hop_plus_one] { backward(r, hop_plus_one - 1, engine.now()); });
    }

    // --- crossbar ----------------------------------------------------------

    void enqueue_at_crossbar(Request* r, Duration t) {
        xbar.queue[kindex(r->kind)][r->sport].push_back(r);
        schedule_arbitration(t);
    }

    void schedule_arbitration(Duration t) {
        Duration edge = xbar.clock.at_or_after(t);
        // One arbitration round per edge: state changes after this edge's
        // round (completions freeing capacity) take effect a cycle later.
        if (edge.ps <= xbar.last_arb_edge) edge = Duration{xbar.last_arb_edge} + xbar.clock.period;
        if (xbar.scheduled.insert(edge.ps).second)
            engine.at(edge, [this, edge] {
                xbar.scheduled.erase(edge.ps);
                arbitrate();
            });
    }

    bool head_eligible(int kind, int s, int pj) const {
        const auto& q = xbar.queue[kind][s];
        if (q.empty()) return false;
        const Request* r = q.front();
        if (r->periph_index != pj) return false;
        const PeripheralSim& p = periphs[pj];
        if (p.in_service[kind] >= p.base.chi(r->kind)) return false;
        if (kind == 1 && xbar.outstanding_w[s] >= topo->crossbar.d_tab) return false;
        return true;
    }

    void arbitrate() {
        Duration now = engine.now();
        xbar.last_arb_edge = now.ps;
        for (int pj = 0; pj < static_cast<int>(periphs.size()); ++pj) {
            for (int kind = 0; kind < 2; ++kind) {
                int& ptr = xbar.rr[kind][pj];
                for (int i = 0; i < xbar.sports; ++i) {
                    int s = (ptr + i) % xbar.sports;
                    if (!head_eligible(kind, s, pj)) continue;
                    Request* r = xbar.queue[kind][s].front();
                    xbar.queue[kind][s].pop_front();
                    PeripheralSim& p = periphs[pj];
                    p.in_service[kind] += 1;
                    p.peak[kind] = std::max(p.peak[kind], p.in_service[kind]);
                    if (kind == 1) xbar.outstanding_w[s] += 1;
                    r->accepted = now;
                    ptr = (s + 1) % xbar.sports;
                    engine.at(now + xbar.clock.period, [this, r] { deliver(r, engine.now()); });
                    break;
                }
            }
        }
        bool pending = false;
        for (int kind = 0; kind < 2 && !pending; ++kind)
            for (const auto& q : xbar.queue[kind])
                if (!q.empty()) { pending = true; break; }
        if (pending) schedule_arbitration(now + Duration{1});
    }

    // --- peripherals -------------------------------------------------------

    void deliver(Request* r, Duration t) {
        PeripheralSim& p = periphs[r->periph_index];
        if (p.base.rho == 1) {
            ServiceCost sc = cost(p, r, t);
            int k = kindex(r->kind);
            Duration comp = std::max(t + sc.ctrl, p.tail[k]) + sc.data;
            p.tail[k] = comp;
            engine.at(comp, [this, r] { finish(r, engine.now()); });
        } else {
            p.queue[kindex(r->kind)].push_back(r);
            serve(r->periph_index, t);
        }
    }

    void serve(int pj, Duration t) {
        PeripheralSim& p = periphs[pj];
        if (p.busy) return;
        int first = 1 - p.last_kind;
        int k = !p.queue[first].empty() ? first : (!p.queue[1 - first].empty() ? 1 - first : -1);
        if (k < 0) return;
        Request* r = p.queue[k].front();
        p.queue[k].pop_front();
        p.busy = true;
        p.last_kind = k;
        ServiceCost sc = cost(p, r, t);
        Duration comp = t + sc.ctrl + sc.data;
        engine.at(comp, [this, r, pj] {
            PeripheralSim& p2 = periphs[pj];
            p2.busy = false;
            Duration now = engine.now();
            finish(r, now);
            serve(pj, now);
        });
    }

    ServiceCost cost(PeripheralSim& p, Request* r, Duration t) {
        const PeripheralModel& m = *p.model;
        Duration cy = m.clock.period;
        std::int64_t beta = effective_beta(m, r->beta);
        switch (m.kind) {
            case PeripheralKind::Spm:
                return {(r->kind == TransactionKind::Read ? 5 : 3) * cy, beta * cy};
            case PeripheralKind::IoSubsystem:
                return {(r->kind == TransactionKind::Read ? 4 : 3) * cy, beta * cy};
            case PeripheralKind::Generic: {
                const auto& g = *m.generic_timing;
                return {g.t_ctrl(r->kind), g.data_time(beta)};
            }
            case PeripheralKind::MainMemory: break;
        }
        return memory_cost(p, r, t);
    }

    ServiceCost memory_cost(PeripheralSim& p, Request* r, Duration t) {
        const auto& m = *p.model->memory;
        Duration llc = m.llc_clock.period;
        bool is_write = r->kind == TransactionKind::Write;
        std::int64_t misses = 0;
        std::int64_t dirty = 0;
        for (std::int64_t i = 0; i < r->line_count; ++i) {
            auto out = p.cache->access(r->line + i, is_write);
            if (!out.hit) {
                misses += 1;
                if (out.dirty_victim) dirty += 1;
            }
        }
        r->mcase = dirty > 0 ? MemoryCase::MissRefillEvict
                             : (misses > 0 ? MemoryCase::MissRefill : MemoryCase::Hit);
        if (misses == 0) return {4 * llc, r->beta * llc};

        // Miss: the control phase runs through the back end once; every
        // missing line adds its HyperBUS occupancy to the data part so that
        // queued misses pipeline the way the front end does.
        Duration line_data =
            hram_word_time(m.dw_axi, m.dw_hyper, m.hram_clock, scen->hram_mode) *
            m.line_width_words;
        Duration ctrl_end = t + 6 * llc;
        if (dirty > 0) ctrl_end = backend_write_ctrl(ctrl_end, m) + line_data;
        ctrl_end = backend_read_ctrl(ctrl_end, m);
        // Every refill and every write-back past the first streams a full
        // line; the first write-back is already inside the control phase.
        Duration data = misses * line_data + (dirty > 0 ? dirty - 1 : 0) * line_data +
                        r->beta * llc;
        return {ctrl_end - t, data};
    }

    /// Command path of one line write-back, real clock-crossing alignment,
    /// no return hop. Returns the time the data phase may start.
    Duration backend_write_ctrl(Duration t, const MainMemoryParams& m) {
        Duration t1 = t + 3 * m.hmc_clock.period;
        Duration t2 = cross(t1, m.hmc_clock, m.hram_clock);
        return t2 + (3 + m.hram_access_latency_cycles) * m.hram_clock.period;
    }

    /// Command path of one line refill, including the data burst and the
    /// return hop plus one parse cycle at the memory controller.
    Duration backend_read_ctrl(Duration t, const MainMemoryParams& m) {
        Duration t1 = t + 3 * m.hmc_clock.period;
        Duration t2 = cross(t1, m.hmc_clock, m.hram_clock);
        Duration t3 = t2 + (3 + m.hram_access_latency_cycles) * m.hram_clock.period;
        Duration data = hram_word_time(m.dw_axi, m.dw_hyper, m.hram_clock, scen->hram_mode) *
                        m.line_width_words;
        Duration t4 = cross(t3 + data, m.hram_clock, m.hmc_clock);
        return t4 + 1 * m.hmc_clock.period - data; // data accounted separately
    }

    // --- completion --------------------------------------------------------

    void finish(Request* r, Duration t) {
        PeripheralSim& p = periphs[r->periph_index];
        p.in_service[kindex(r->kind)] -= 1;
        schedule_arbitration(t);
        int s = r->sport;
        engine.at(t + xbar.clock.period, [this, r, s] {
            if (r->kind == TransactionKind::Write) xbar.outstanding_w[s] -= 1;
            backward(r, ctrls[r->workload].path.size(), engine.now());
        });
    }

    void complete_at_controller(Request* r, Duration t) {
        ControllerSim& c = ctrls[r->workload];
        c.outstanding[kindex(r->kind)] -= 1;
        c.completed += 1;

        TxRecord rec;
        rec.controller = c.ctrl->id;
        rec.peripheral = r->periph->id;
        rec.kind = r->kind;
        rec.beta = r->beta;
        rec.position_v = r->position_v;
        rec.memory_case = r->mcase;
        rec.issued = r->issued;
        rec.accepted = r->accepted;
        rec.completed = t;
        fnv(hash, rec.controller);
        fnv(hash, static_cast<std::uint64_t>(rec.kind));
        fnv(hash, static_cast<std::uint64_t>(rec.beta));
        fnv(hash, static_cast<std::uint64_t>(rec.position_v));
        fnv(hash, static_cast<std::uint64_t>(rec.memory_case));
        fnv(hash, static_cast<std::uint64_t>(rec.issued.ps));
        fnv(hash, static_cast<std::uint64_t>(rec.completed.ps));
        result.records.push_back(std::move(rec));

        if (c.spec->count == 0 || c.issued < c.spec->count) {
            Duration gap = Duration::zero();
            if (c.spec->mode == WorkloadMode::Isolation && c.spec->max_gap_cycles > 0)
                gap = static_cast<std::int64_t>(c.rng.uniform(c.spec->max_gap_cycles + 1)) *
                      c.clock.period;
            schedule_issue(r->workload, t + gap);
        }
    }

    ClockSignal signal(const ClockDomain& c) const {
        auto it = signals.find(c.name);
        return it->second;
    }

    std::map<std::string, ClockSignal> signals;
};

} // namespace

std::vector<const TxRecord*> SimResult::records_of(const std::string& controller) const {
    std::vector<const TxRecord*> out;
    for (const auto& r : records)
        if (r.controller == controller) out.push_back(&r);
    return out;
}

Duration SimResult::max_service(const std::string& controller) const {
    Duration m;
    for (const auto& r : records)
        if (r.controller == controller) m = std::max(m, r.service());
    return m;
}

int SimResult::max_position(const std::string& controller) const {
    int m = 0;
    for (const auto& r : records)
        if (r.controller == controller) m = std::max(m, r.position_v);
    return m;
}

SimResult run_simulation(const Topology& t, const Scenario& s) {
    Sim sim;
    sim.topo = &t;
    sim.scen = &s;

    // Clock phases: one draw per declared clock, stable across workloads.
    for (std::size_t i = 0; i < t.clocks.size(); ++i) {
        Rng r = Rng::stream(s.seed, 0x1000 + i);
        Duration phase{static_cast<std::int64_t>(r.uniform(t.clocks[i].period.ps))};
        sim.signals.emplace(t.clocks[i].name, ClockSignal{t.clocks[i].period, phase});
    }

    sim.bridges.reserve(t.bridges.size());
    for (const auto& b : t.bridges) sim.bridges.push_back({&b, 0, {}});

    // Active workloads become controller agents, one per workload; a
    // controller may appear at most once.
    std::vector<const WorkloadSpec*> specs;
    for (const auto& w : s.workloads) {
        if (w.mode == WorkloadMode::Idle) continue;
        const ControllerModel* c = t.find_controller(w.controller);
        if (!c) throw ConfigError("scenario references unknown controller '" + w.controller + "'");
        if (!t.find_peripheral(w.target))
            throw ConfigError("scenario references unknown peripheral '" + w.target + "'");
        for (const auto* prev : specs)
            if (prev->controller == w.controller)
                throw ConfigError("controller '" + w.controller + "' has two workloads");
        specs.push_back(&w);
    }
    if (!s.observed.empty() && !t.find_controller(s.observed))
        throw ConfigError("scenario observes unknown controller '" + s.observed + "'");

    sim.ctrls.resize(specs.size());
    sim.periphs.reserve(t.peripherals.size());
    for (const auto& p : t.peripherals) {
        PeripheralSim ps;
        ps.model = &p;
        std::optional<MemoryCase> mc;
        if (p.kind == PeripheralKind::MainMemory) {
            mc = MemoryCase::Hit;
            ps.cache = std::make_unique<LlcCache>(p.memory->set_count, p.memory->way_count);
        }
        ps.base = specialize_peripheral(p, 1, mc, s.hram_mode);
        sim.periphs.push_back(std::move(ps));
    }

    // Disjoint LLC set ranges per memory workload keep the address patterns
    // from evicting each other's footprints.
    int mem_workloads = 0;
    for (const auto* w : specs) {
        const PeripheralModel* p = t.find_peripheral(w->target);
        if (p->kind == PeripheralKind::MainMemory) mem_workloads += 1;
    }
    int mem_index = 0;

    for (std::size_t i = 0; i < specs.size(); ++i) {
        ControllerSim& c = sim.ctrls[i];
        c.ctrl = t.find_controller(specs[i]->controller);
        c.spec = specs[i];
        c.clock = sim.signal(c.ctrl->clock);
        c.rng = Rng::stream(s.seed, 0x2000 + i);
        for (const auto& bid : c.ctrl->bridge_path) {
            for (auto& b : sim.bridges)
                if (b.model->id == bid) c.path.push_back(&b);
        }
        int pr = c.ctrl->phi_read;
        int pw = c.ctrl->phi_write;
        if (c.spec->phi_override && *c.spec->phi_override > 0) {
            pr = std::min(pr, *c.spec->phi_override);
            pw = std::min(pw, *c.spec->phi_override);
        }
        c.cap[0] = pr;
        c.cap[1] = pw;

        const PeripheralModel* p = t.find_peripheral(c.spec->target);
        if (p->kind == PeripheralKind::MainMemory) {
            const auto& m = *p->memory;
            c.set_span = std::max<std::uint64_t>(1, m.set_count / std::max(1, mem_workloads));
            c.set_base = static_cast<std::uint64_t>(mem_index) * c.set_span;
            mem_index += 1;
            c.hit_footprint = std::min<std::uint64_t>(c.set_span, 64);
            PeripheralSim* psim = nullptr;
            for (auto& ps : sim.periphs)
                if (ps.model == p) psim = &ps;
            if (c.spec->pattern == AddressPattern::HitLoop) {
                for (std::uint64_t l = 0; l < c.hit_footprint; ++l)
                    psim->cache->preload(c.set_base + l, false);
            } else if (c.spec->pattern == AddressPattern::ConflictEvict) {
                for (std::uint64_t sset = 0; sset < c.set_span; ++sset)
                    for (int w = 0; w < m.way_count; ++w)
                        psim->cache->preload(
                            (1000 + static_cast<std::uint64_t>(w)) * m.set_count + c.set_base + sset,
                            true);
            }
        }
    }

    sim.xbar.clock = sim.signal(t.crossbar.clock);
    sim.xbar.sports = static_cast<int>(specs.size());
    for (int k = 0; k < 2; ++k) {
        sim.xbar.queue[k].resize(specs.size());
        sim.xbar.rr[k].resize(t.peripherals.size());
        Rng r = Rng::stream(s.seed, 0x3000 + k);
        for (auto& p : sim.xbar.rr[k])
            p = sim.xbar.sports > 0 ? static_cast<int>(r.uniform(sim.xbar.sports)) : 0;
    }
    sim.xbar.outstanding_w.assign(specs.size(), 0);

    for (std::size_t i = 0; i < specs.size(); ++i) sim.schedule_issue(static_cast<int>(i), Duration::zero());

    sim.result.horizon_ok = sim.engine.run(s.horizon);
    sim.result.trace_hash = sim.hash;
    for (const auto& ps : sim.periphs) {
        auto& m = sim.result.peak_in_service[ps.model->id];
        m[TransactionKind::Read] = ps.peak[0];
        m[TransactionKind::Write] = ps.peak[1];
    }
    return sim.result;
}

} // namespace socrt::sim
