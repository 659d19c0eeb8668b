#include "socrt/sim/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace socrt::sim {

namespace {

/// Game state: round-robin pointer, grants the observed port has already
/// received, and the remaining grant budget of every interfering port.
/// Port 0 is the observed port; interferer k sits at port k+1.
struct State {
    int ptr = 0;
    int obs_grants = 0;
    std::vector<int> budget;

    bool operator<(const State& o) const {
        if (ptr != o.ptr) return ptr < o.ptr;
        if (obs_grants != o.obs_grants) return obs_grants < o.obs_grants;
        return budget < o.budget;
    }
};

struct Solver {
    int v;
    int ports; // 1 + |Psi|
    std::map<State, int> memo;

    /// Maximum further grants that can precede the observed port's v-th
    /// grant. The observed port always presents a request; an interferer can
    /// present only while its budget lasts. The arbiter grants the first
    /// presenting port scanning from ptr, so an adversary can pick any
    /// budgeted interferer the scan reaches before port 0.
    int solve(const State& s) {
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
        int best;
        if (s.ptr == 0) {
            // Scan starts at the observed port: it is granted outright.
            best = obs_granted(s);
        } else {
            best = obs_granted(s); // adversary may also present nothing
            for (int p = s.ptr; p < ports; ++p) {
                int k = p - 1;
                if (s.budget[k] <= 0) continue;
                State n = s;
                n.budget[k] -= 1;
                n.ptr = (p + 1) % ports;
                best = std::max(best, 1 + solve(n));
            }
        }
        memo.emplace(s, best);
        return best;
    }

    int obs_granted(const State& s) {
        if (s.obs_grants + 1 == v) return 0;
        State n = s;
        n.obs_grants += 1;
        n.ptr = 1 % ports;
        return 1 + solve(n);
    }
};

} // namespace

int brute_force_interference_count(const InterferenceGame& g) {
    if (g.v < 1 || g.chi < 1) throw std::invalid_argument("v and chi must be positive");
    long long phi_sum = 0;
    for (int p : g.phi_k) {
        if (p < 0) throw std::invalid_argument("phi must be non-negative");
        phi_sum += p;
    }
    if (phi_sum + g.chi + g.v > 32) throw std::invalid_argument("instance too large");

    Solver solver;
    solver.v = g.v;
    solver.ports = static_cast<int>(g.phi_k.size()) + 1;

    int best = 0;
    // Enumerate adversarial prefills: interferer transactions already sitting
    // in the peripheral FIFO when the observed batch arrives. They consume
    // grant budget, are capped by chi in total, and pin the pointer right
    // past the port granted last.
    std::vector<int> prefill(g.phi_k.size(), 0);
    auto run = [&](int total, int last) {
        State s;
        s.budget.resize(g.phi_k.size());
        for (std::size_t i = 0; i < g.phi_k.size(); ++i)
            s.budget[i] = g.phi_k[i] - prefill[i];
        s.obs_grants = 0;
        if (total == 0) {
            for (int ptr = 0; ptr < solver.ports; ++ptr) {
                s.ptr = ptr;
                best = std::max(best, solver.solve(s));
            }
        } else {
            s.ptr = (last + 2) % solver.ports; // port of interferer `last` is last+1
            best = std::max(best, total + solver.solve(s));
        }
    };
    // Depth-first enumeration of prefill vectors.
    auto enumerate = [&](auto&& self, std::size_t i, int total) -> void {
        if (i == prefill.size()) {
            if (total == 0) {
                run(0, -1);
            } else {
                for (std::size_t k = 0; k < prefill.size(); ++k)
                    if (prefill[k] > 0) run(total, static_cast<int>(k));
            }
            return;
        }
        int cap = std::min(g.phi_k[i], g.chi - total);
        for (int p = 0; p <= cap; ++p) {
            prefill[i] = p;
            self(self, i + 1, total + p);
        }
        prefill[i] = 0;
    };
    enumerate(enumerate, 0, 0);
    return best;
}

} // namespace socrt::sim
