#pragma once

#include "specmult/errors.hpp"

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>

namespace specmult {

/// Cooperative cancellation: long computations call check() between rows or
/// candidates; it throws Error(TimeBudgetExceeded) once the deadline passes
/// or cancel() has been called on any copy of the token.
class CancelToken {
public:
    using Clock = std::chrono::steady_clock;

    CancelToken() : flag_(std::make_shared<std::atomic<bool>>(false)) {}

    static CancelToken with_budget(std::chrono::duration<double> budget) {
        CancelToken t;
        t.deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
        return t;
    }

    void cancel() const { flag_->store(true, std::memory_order_relaxed); }

    bool expired() const {
        if (flag_->load(std::memory_order_relaxed)) return true;
        return deadline_ && Clock::now() >= *deadline_;
    }

    void check() const {
        if (expired()) throw Error(ErrorKind::TimeBudgetExceeded, "time budget exceeded");
    }

private:
    std::shared_ptr<std::atomic<bool>> flag_;
    std::optional<Clock::time_point> deadline_;
};

} // namespace specmult
