#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ddehopf/errors.hpp"

namespace ddehopf {

/// Rolling record of the state over the last delay interval plus the
/// simulated past. Always holds at least n_lag + 1 samples, so the delayed
/// read (exactly n_lag steps behind the newest sample) is defined before the
/// first step is taken.
class HistoryBuffer {
public:
    HistoryBuffer(double dt, std::size_t n_lag, std::vector<double> initial)
        : dt_(dt), n_lag_(n_lag), values_(std::move(initial)) {
        if (!(dt_ > 0.0)) throw InvalidStep("HistoryBuffer: dt must be > 0");
        if (n_lag_ < 1) throw InvalidParameter("HistoryBuffer: n_lag must be >= 1");
        if (values_.size() < n_lag_ + 1)
            throw LengthMismatch("HistoryBuffer: need at least n_lag + 1 initial samples, got " +
                                 std::to_string(values_.size()));
        // Convention: the newest initial sample sits at t = 0.
        t_now_ = 0.0;
    }

    void reserve(std::size_t extra_steps) { values_.reserve(values_.size() + extra_steps); }

    void append(double u) {
        values_.push_back(u);
        t_now_ += dt_;
    }

    double latest() const { return values_.back(); }

    // Sample exactly n_lag steps behind the newest.
    double delayed() const { return values_[values_.size() - 1 - n_lag_]; }

    double dt() const { return dt_; }
    std::size_t n_lag() const { return n_lag_; }
    double t_now() const { return t_now_; }
    std::size_t size() const { return values_.size(); }
    std::span<const double> values() const { return values_; }

private:
    double dt_;
    std::size_t n_lag_;
    std::vector<double> values_;  // oldest-to-newest
    double t_now_ = 0.0;
};

}  // namespace ddehopf
