#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "socrt/duration.hpp"

namespace socrt::sim {

/// SplitMix64, chosen for portability: identical streams on every platform,
/// trivially splittable into independent per-component streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). n must be positive; modulo bias is irrelevant for
    /// the small ranges used here but kept away with rejection anyway.
    std::uint64_t uniform(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    /// Independent stream derived from this seed and a tag.
    static Rng stream(std::uint64_t seed, std::uint64_t tag) {
        Rng mix(seed ^ (0x6a09e667f3bcc909ULL * (tag + 1)));
        mix.next();
        return Rng(mix.next());
    }

private:
    std::uint64_t state_;
};

/// A free-running clock: edges at phase + k*period, k >= 0.
struct ClockSignal {
    Duration period;
    Duration phase; // first edge, in [0, period)

    /// First edge at or after t.
    Duration at_or_after(Duration t) const {
        if (t <= phase) return phase;
        std::int64_t k = ceil_div(t.ps - phase.ps, period.ps);
        return phase + k * period;
    }

    /// First edge strictly after t.
    Duration after(Duration t) const { return at_or_after(t + Duration{1}); }
};

/// Deterministic discrete-event engine. Events at equal timestamps run in
/// scheduling order (monotone sequence number), so runs are reproducible
/// regardless of container details.
class Engine {
public:
    using Action = std::function<void()>;

    Duration now() const { return now_; }

    void at(Duration t, Action a) {
        queue_.push(Entry{t < now_ ? now_ : t, seq_++, std::move(a)});
    }
    void after(Duration dt, Action a) { at(now_ + dt, std::move(a)); }

    /// Run until the queue drains or the horizon passes. Returns false when
    /// the horizon was hit with work still pending.
    bool run(Duration horizon) {
        while (!queue_.empty()) {
            if (queue_.top().time > horizon) return false;
            Entry e = std::move(const_cast<Entry&>(queue_.top()));
            queue_.pop();
            now_ = e.time;
            e.action();
        }
        return true;
    }

private:
    struct Entry {
        Duration time;
        std::uint64_t seq;
        Action action;
        bool operator>(const Entry& o) const {
            if (time != o.time) return time > o.time;
            return seq > o.seq;
        }
    };

    Duration now_;
    std::uint64_t seq_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue_;
};

} // namespace socrt::sim
