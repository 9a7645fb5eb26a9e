#pragma once

#include <atomic>
#include <chrono>
#include <limits>

namespace rwcert {

// Cooperative cancellation handle shared between the orchestrator and the
// engines. Engines poll it at iteration boundaries (search candidates, BFS
// layers, solver restarts) and abandon work once it fires.
class Budget {
public:
    using Clock = std::chrono::steady_clock;

    Budget() = default;

    static Budget unlimited() { return Budget{}; }

    static Budget within(std::chrono::milliseconds limit,
                         const std::atomic<bool>* cancel = nullptr) {
        Budget b;
        b.deadline_ = Clock::now() + limit;
        b.cancel_ = cancel;
        return b;
    }

    static Budget until(Clock::time_point deadline,
                        const std::atomic<bool>* cancel = nullptr) {
        Budget b;
        b.deadline_ = deadline;
        b.cancel_ = cancel;
        return b;
    }

    bool expired() const {
        if (cancel_ && cancel_->load(std::memory_order_relaxed))
            return true;
        return Clock::now() >= deadline_;
    }

    std::chrono::milliseconds remaining() const {
        auto now = Clock::now();
        if (now >= deadline_)
            return std::chrono::milliseconds{0};
        return std::chrono::duration_cast<std::chrono::milliseconds>(deadline_ - now);
    }

    Clock::time_point deadline() const { return deadline_; }
    const std::atomic<bool>* cancel_flag() const { return cancel_; }

private:
    Clock::time_point deadline_ = Clock::time_point::max();
    const std::atomic<bool>* cancel_ = nullptr;
};

} // namespace rwcert
