// dde_engine.hpp — fixed-step RK4 method-of-steps integrator for delay systems
//
// Delays are integer multiples q*tau of a base delay and the step is
// dt = tau / M with integer M, so every delayed lookup at a step boundary
// lands on a stored sample. Pre-history (t < 0) is identically zero.
//
// Each stored record holds the integrated state followed by optional
// auxiliary channels. Auxiliary channels are algebraic functions of the
// state and of delayed records, evaluated once per grid point; models use
// them to keep recursive quantities (e.g. a running comb sum) delayable.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "jcfb/core_types.hpp"

namespace jcfb {

class HistoryBuffer {
public:
    // Throws ValidationError unless tau > 0 and steps_per_delay >= 100.
    HistoryBuffer(double tau, int steps_per_delay, std::size_t width);

    double tau() const noexcept { return tau_; }
    double dt() const noexcept { return dt_; }
    int steps_per_delay() const noexcept { return steps_per_delay_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t size() const noexcept { return size_; }
    double time(std::size_t i) const noexcept { return static_cast<double>(i) * dt_; }

    std::span<const cplx> sample(std::size_t i) const;
    cplx value(std::size_t i, std::size_t component) const { return data_[i * width_ + component]; }
    void push(std::span<const cplx> record);
    void reserve(std::size_t samples) { data_.reserve(samples * width_); }

    // Record at t - q*tau. Zero record when t - q*tau < 0, the stored sample
    // when it is >= 0 (so t = q*tau returns the initial record). t must sit
    // on the grid; t beyond the last stored sample throws std::logic_error.
    std::vector<cplx> delayed_value(double t, int q) const;

private:
    double tau_;
    int steps_per_delay_;
    double dt_;
    std::size_t width_;
    std::size_t size_ = 0;
    std::vector<cplx> data_;
};

// Delayed records seen by one Runge-Kutta stage of the step [t_n, t_n + dt].
//
// For delay q the step maps onto the history interval [j, j+1] with
// j = n - q*M. The interval is taken with one-sided values: when j < 0 the
// whole interval is pre-history (zero), including its right end at t = 0.
// Midpoint values use a four-point Lagrange stencil kept inside the delay
// segment [k*M, (k+1)*M] containing the interval, so the derivative jumps at
// multiples of tau are never interpolated across.
class DelayedView {
public:
    enum class Stage { Start, Half, End };

    DelayedView(const HistoryBuffer& history, std::size_t step, Stage stage)
        : history_(&history), step_(static_cast<long>(step)), stage_(stage) {}

    // Component of the record at t_stage - q*tau, q >= 1.
    cplx at(int q, std::size_t component) const;

private:
    const HistoryBuffer* history_;
    long step_;
    Stage stage_;
};

// dy/dt = f(t, y, delayed). Must be a pure function of its arguments.
using DelayRhs = std::function<void(double t, std::span<const cplx> y, const DelayedView& delayed,
                                    std::span<cplx> dydt)>;

// Fills the auxiliary channels of the record at grid time t. The view's
// Start stage addresses records at t - q*tau exactly.
using AuxiliaryFn = std::function<void(double t, std::span<const cplx> y,
                                       const DelayedView& delayed, std::span<cplx> aux)>;

struct DelaySystem {
    std::size_t state_size = 0;
    std::size_t aux_size = 0;
    DelayRhs rhs;
    AuxiliaryFn aux;  // required when aux_size > 0
};

// Integrates from t = 0 to the first grid point >= t_max. The returned buffer
// holds every record on the grid, index 0 being the initial record.
// Throws NumericalError (with the offending time) on a non-finite state.
HistoryBuffer integrate(const DelaySystem& system, std::span<const cplx> initial, double t_max,
                        double tau, int steps_per_delay);

// Number of grid steps integrate() takes for t_max at step dt.
std::size_t step_count(double t_max, double dt);

// Classical RK4 for a time-local system, without a history buffer. The
// observer sees (step index, time, state) for the initial state and after
// every step. Used where the dense history would be too large.
using LocalRhs = std::function<void(double t, std::span<const cplx> y, std::span<cplx> dydt)>;
using LocalObserver = std::function<void(std::size_t step, double t, std::span<const cplx> y)>;

void integrate_local(const LocalRhs& rhs, std::vector<cplx> state, double dt, std::size_t n_steps,
                     const LocalObserver& observer);

}  // namespace jcfb
