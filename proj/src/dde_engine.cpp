#include "jcfb/dde_engine.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jcfb {

namespace {

// Lagrange weights for the midpoint of [j, j+1] from four consecutive
// samples starting at j - 1, j and j - 2 respectively.
constexpr std::array<double, 4> kCentered{-1.0 / 16, 9.0 / 16, 9.0 / 16, -1.0 / 16};
constexpr std::array<double, 4> kForward{5.0 / 16, 15.0 / 16, -5.0 / 16, 1.0 / 16};
constexpr std::array<double, 4> kBackward{1.0 / 16, -5.0 / 16, 15.0 / 16, 5.0 / 16};

bool all_finite(std::span<const cplx> v) {
    for (const auto& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

}  // namespace

HistoryBuffer::HistoryBuffer(double tau, int steps_per_delay, std::size_t width)
    : tau_(tau), steps_per_delay_(steps_per_delay), dt_(0.0), width_(width) {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ValidationError("history buffer needs a finite tau > 0");
    }
    if (steps_per_delay < 100) {
        throw ValidationError("steps_per_delay must be >= 100, got " +
                              std::to_string(steps_per_delay));
    }
    if (width == 0) throw ValidationError("history buffer needs a nonzero record width");
    dt_ = tau / steps_per_delay;
}

std::span<const cplx> HistoryBuffer::sample(std::size_t i) const {
    if (i >= size_) throw std::out_of_range("history sample index past the frontier");
    return {data_.data() + i * width_, width_};
}

void HistoryBuffer::push(std::span<const cplx> record) {
    if (record.size() != width_) throw std::invalid_argument("record width mismatch");
    data_.insert(data_.end(), record.begin(), record.end());
    ++size_;
}

std::vector<cplx> HistoryBuffer::delayed_value(double t, int q) const {
    if (q < 0) throw std::invalid_argument("delay multiple q must be >= 0");
    const double x = t / dt_ - static_cast<double>(q) * steps_per_delay_;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) > 1e-6) {
        throw std::invalid_argument("t - q*tau is not on the history grid");
    }
    if (nearest < 0.0) return std::vector<cplx>(width_, cplx{});
    const auto index = static_cast<std::size_t>(nearest);
    if (index >= size_) {
        throw std::logic_error("delayed lookup beyond the integration frontier");
    }
    auto s = sample(index);
    return {s.begin(), s.end()};
}

cplx DelayedView::at(int q, std::size_t component) const {
    const long m = history_->steps_per_delay();
    const long j = step_ - static_cast<long>(q) * m;
    if (q < 1) throw std::invalid_argument("DelayedView serves delays q >= 1 only");
    if (j < 0) return {};
    const auto& h = *history_;
    switch (stage_) {
        case Stage::Start:
            return h.value(static_cast<std::size_t>(j), component);
        case Stage::End:
            return h.value(static_cast<std::size_t>(j + 1), component);
        case Stage::Half:
            break;
    }
    const long seg_lo = (j / m) * m;
    const long seg_hi = seg_lo + m;
    long start = j - 1;
    const std::array<double, 4>* w = &kCentered;
    if (start < seg_lo) {
        start = j;
        w = &kForward;
    } else if (start + 3 > seg_hi) {
        start = j - 2;
        w = &kBackward;
    }
    cplx acc{};
    for (int k = 0; k < 4; ++k) {
        acc += (*w)[k] * h.value(static_cast<std::size_t>(start + k), component);
    }
    return acc;
}

std::size_t step_count(double t_max, double dt) {
    return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

HistoryBuffer integrate(const DelaySystem& system, std::span<const cplx> initial, double t_max,
                        double tau, int steps_per_delay) {
    const std::size_t n = system.state_size;
    const std::size_t a = system.aux_size;
    if (n == 0 || !system.rhs) throw ValidationError("delay system needs a state and a rhs");
    if (a > 0 && !system.aux) throw ValidationError("auxiliary channels need an aux function");
    if (initial.size() != n) throw ValidationError("initial state has the wrong dimension");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be finite and > 0");
    if (!all_finite(initial)) throw ValidationError("initial state must be finite");

    HistoryBuffer history(tau, steps_per_delay, n + a);
    const double dt = history.dt();
    const std::size_t steps = step_count(t_max, dt);
    history.reserve(steps + 1);

    std::vector<cplx> record(n + a);
    std::copy(initial.begin(), initial.end(), record.begin());
    if (a > 0) {
        system.aux(0.0, initial, DelayedView(history, 0, DelayedView::Stage::Start),
                   std::span<cplx>(record).subspan(n));
    }
    history.push(record);

    std::vector<cplx> y(initial.begin(), initial.end());
    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        const DelayedView start(history, step, DelayedView::Stage::Start);
        const DelayedView half(history, step, DelayedView::Stage::Half);
        const DelayedView end(history, step, DelayedView::Stage::End);

        system.rhs(t, y, start, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        system.rhs(t + 0.5 * dt, tmp, half, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        system.rhs(t + 0.5 * dt, tmp, half, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        system.rhs(t + dt, tmp, end, k4);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        const double t_next = static_cast<double>(step + 1) * dt;
        if (!all_finite(y)) {
            throw NumericalError("non-finite state at t=" + std::to_string(t_next), t_next);
        }
        std::copy(y.begin(), y.end(), record.begin());
        if (a > 0) {
            system.aux(t_next, y, DelayedView(history, step + 1, DelayedView::Stage::Start),
                       std::span<cplx>(record).subspan(n));
        }
        history.push(record);
    }
    return history;
}

void integrate_local(const LocalRhs& rhs, std::vector<cplx> state, double dt, std::size_t n_steps,
                     const LocalObserver& observer) {
    const std::size_t n = state.size();
    if (n == 0 || !rhs) throw ValidationError("local system needs a state and a rhs");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and > 0");

    std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
    if (observer) observer(0, 0.0, state);
    for (std::size_t step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        rhs(t, state, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k1[i];
        rhs(t + 0.5 * dt, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + 0.5 * dt * k2[i];
        rhs(t + 0.5 * dt, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = state[i] + dt * k3[i];
        rhs(t + dt, tmp, k4);
        for (std::size_t i = 0; i < n; ++i) {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        const double t_next = static_cast<double>(step + 1) * dt;
        if (!all_finite(state)) {
            throw NumericalError("non-finite state at t=" + std::to_string(t_next), t_next);
        }
        if (observer) observer(step + 1, t_next, state);
    }
}

}  // namespace jcfb
