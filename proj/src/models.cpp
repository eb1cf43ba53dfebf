#include "jcfb/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jcfb/dde_engine.hpp"

namespace jcfb {

namespace {

constexpr cplx kI{0.0, 1.0};

Trajectory to_trajectory(const HistoryBuffer& history) {
    Trajectory out;
    const std::size_t n = history.size();
    out.times.resize(n);
    out.c_e.resize(n);
    out.c_g.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.times[i] = history.time(i);
        out.c_e[i] = history.value(i, 0);
        out.c_g[i] = history.value(i, 1);
    }
    return out;
}

void check_grid(double t_max, int steps_per_delay) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be finite and > 0");
    if (steps_per_delay < 100) throw ValidationError("steps_per_delay must be >= 100");
}

double max_detuning(const FeedbackParams& p, int n) {
    const double w = std::numbers::pi / p.tau();
    const double top = (2.0 * n + 1.0) * w - p.delta0();
    const double bottom = (-2.0 * n + 1.0) * w - p.delta0();
    return std::max(std::abs(top), std::abs(bottom));
}

}  // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::NoFeedback: return "nofb";
        case ModelKind::ContinuousMode: return "cm";
        case ModelKind::DiscreteModeDelay: return "dm";
        case ModelKind::DiscreteModeSum: return "modesum";
    }
    return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "nofb") return ModelKind::NoFeedback;
    if (name == "cm") return ModelKind::ContinuousMode;
    if (name == "dm") return ModelKind::DiscreteModeDelay;
    if (name == "modesum") return ModelKind::DiscreteModeSum;
    throw ValidationError("unknown model '" + name + "' (expected nofb, cm, dm, modesum)");
}

Trajectory simulate_no_feedback(const FeedbackParams& params, double t_max, int steps_per_delay,
                                InitialAmplitudes initial) {
    check_grid(t_max, steps_per_delay);
    const double g = params.gamma();
    const double k = params.kappa() + params.kappa1();
    const double dt = params.tau() / steps_per_delay;
    const std::size_t steps = step_count(t_max, dt);
    const double omega_sq = g * g - k * k;
    const double omega = std::sqrt(std::abs(omega_sq));

    Trajectory out;
    out.times.resize(steps + 1);
    out.c_e.resize(steps + 1);
    out.c_g.resize(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        // e^{At} = e^{-k t} [C(t) I + S(t) (A + k I)], A + k I = [[k, i g], [i g, -k]].
        double c, s;
        if (omega_sq > 0.0) {
            c = std::cos(omega * t);
            s = std::sin(omega * t) / omega;
        } else if (omega_sq < 0.0) {
            c = std::cosh(omega * t);
            s = std::sinh(omega * t) / omega;
        } else {
            c = 1.0;
            s = t;
        }
        out.times[i] = t;
        if (g == 0.0) {  // decoupled: keep c_e exact
            out.c_e[i] = initial.c_e;
            out.c_g[i] = std::exp(-2.0 * k * t) * initial.c_g;
            continue;
        }
        const double decay = std::exp(-k * t);
        out.c_e[i] = decay * ((c + k * s) * initial.c_e + kI * g * s * initial.c_g);
        out.c_g[i] = decay * (kI * g * s * initial.c_e + (c - k * s) * initial.c_g);
    }
    return out;
}

Trajectory simulate_cm(const FeedbackParams& params, double t_max, int steps_per_delay,
                       InitialAmplitudes initial) {
    check_grid(t_max, steps_per_delay);
    const double g = params.gamma();
    const double loss = 2.0 * (params.kappa() + params.kappa1());
    const cplx feedback = 2.0 * params.kappa() * std::polar(1.0, params.phi());

    DelaySystem system;
    system.state_size = 2;
    system.rhs = [=](double, std::span<const cplx> y, const DelayedView& delayed,
                     std::span<cplx> dydt) {
        dydt[0] = kI * g * y[1];
        dydt[1] = kI * g * y[0] - loss * y[1] + feedback * delayed.at(1, 1);
    };
    const cplx y0[2] = {initial.c_e, initial.c_g};
    return to_trajectory(integrate(system, y0, t_max, params.tau(), steps_per_delay));
}

Trajectory simulate_dm_delay(const FeedbackParams& params, double t_max, int steps_per_delay,
                             InitialAmplitudes initial) {
    check_grid(t_max, steps_per_delay);
    const double g = params.gamma();
    const double loss = 2.0 * (params.kappa() + params.kappa1());
    // ratio of consecutive comb taps, (-1) e^{-i delta0 tau}
    const cplx w = -std::polar(1.0, -params.phi());
    const cplx tail = -4.0 * params.kappa() * w;

    // record = (c_e, c_g, S) with S(t) = sum_q w^q c_g(t - q tau)
    DelaySystem system;
    system.state_size = 2;
    system.aux_size = 1;
    system.rhs = [=](double, std::span<const cplx> y, const DelayedView& delayed,
                     std::span<cplx> dydt) {
        dydt[0] = kI * g * y[1];
        dydt[1] = kI * g * y[0] - loss * y[1] + tail * delayed.at(1, 2);
    };
    system.aux = [=](double, std::span<const cplx> y, const DelayedView& delayed,
                     std::span<cplx> aux) { aux[0] = y[1] + w * delayed.at(1, 2); };
    const cplx y0[2] = {initial.c_e, initial.c_g};
    return to_trajectory(integrate(system, y0, t_max, params.tau(), steps_per_delay));
}

int recommended_modes(const FeedbackParams& params) {
    const double target = 40.0 * std::max({params.gamma(), params.kappa(),
                                           2.0 * std::numbers::pi / params.tau()});
    int n = 1;
    while (max_detuning(params, n) < target) ++n;
    return n;
}

ModeSumResult simulate_dm_modesum(const FeedbackParams& params, double t_max, int steps_per_delay,
                                  ModeSumOptions options, InitialAmplitudes initial) {
    check_grid(t_max, steps_per_delay);
    ModeSumResult result;
    const int recommended = recommended_modes(params);
    const int n_modes = options.modes > 0 ? options.modes : recommended;
    if (options.modes < 0) throw ValidationError("mode truncation N must be >= 1");
    if (n_modes < recommended) {
        result.warnings.push_back("N=" + std::to_string(n_modes) +
                                  " is below the bandwidth heuristic N=" +
                                  std::to_string(recommended));
    }

    const std::size_t count = 2 * static_cast<std::size_t>(n_modes) + 1;
    ModeRegister& reg = result.modes;
    reg.q_indices.resize(count);
    reg.detunings.resize(count);
    std::vector<double> sign(count);
    for (std::size_t j = 0; j < count; ++j) {
        const int q = static_cast<int>(j) - n_modes;
        reg.q_indices[j] = q;
        reg.detunings[j] = (2.0 * q + 1.0) * std::numbers::pi / params.tau() - params.delta0();
        sign[j] = (q % 2 == 0) ? 1.0 : -1.0;
    }

    const double out_dt = params.tau() / steps_per_delay;
    const double cap = 2.0 * std::numbers::pi / (40.0 * max_detuning(params, n_modes));
    const int sub = std::max(1, static_cast<int>(std::ceil(out_dt / cap - 1e-12)));
    const double dt = out_dt / sub;
    result.substeps = sub;
    const std::size_t out_steps = step_count(t_max, out_dt);

    const double g = params.gamma();
    const double coupling = params.mode_coupling();
    const double loss = 2.0 * params.kappa1();

    // e^{i delta_q t}, advanced by half-step rotations and resynchronized
    // from std::polar periodically.
    std::vector<cplx> phase(count), half_turn(count);
    for (std::size_t j = 0; j < count; ++j) half_turn[j] = std::polar(1.0, reg.detunings[j] * dt / 2);
    double phase_time = -1.0;
    int rotations = 0;
    auto sync_phase = [&](double t) {
        if (phase_time >= 0.0 && std::abs(t - phase_time) < 1e-9 * dt) return;
        if (phase_time >= 0.0 && rotations < 512 && std::abs(t - phase_time - dt / 2) < 1e-9 * dt) {
            for (std::size_t j = 0; j < count; ++j) phase[j] *= half_turn[j];
            ++rotations;
        } else {
            for (std::size_t j = 0; j < count; ++j) phase[j] = std::polar(1.0, reg.detunings[j] * t);
            rotations = 0;
        }
        phase_time = t;
    };

    auto rhs = [&](double t, std::span<const cplx> y, std::span<cplx> dydt) {
        sync_phase(t);
        cplx feed{};
        const cplx cg = y[1];
        for (std::size_t j = 0; j < count; ++j) {
            feed += sign[j] * std::conj(phase[j]) * y[2 + j];
            dydt[2 + j] = kI * coupling * sign[j] * phase[j] * cg;
        }
        dydt[0] = kI * g * cg;
        dydt[1] = kI * g * y[0] - loss * cg + kI * coupling * feed;
    };

    std::size_t stride = options.register_stride > 0
                             ? static_cast<std::size_t>(options.register_stride)
                             : std::max<std::size_t>(1, out_steps / 200);
    Trajectory& traj = result.trajectory;
    traj.times.reserve(out_steps + 1);
    traj.c_e.reserve(out_steps + 1);
    traj.c_g.reserve(out_steps + 1);
    auto observer = [&](std::size_t step, double, std::span<const cplx> y) {
        if (step % static_cast<std::size_t>(sub) != 0) return;
        const std::size_t k = step / static_cast<std::size_t>(sub);
        traj.times.push_back(static_cast<double>(k) * out_dt);
        traj.c_e.push_back(y[0]);
        traj.c_g.push_back(y[1]);
        if (k % stride == 0 || k == out_steps) {
            reg.snapshot_times.push_back(static_cast<double>(k) * out_dt);
            reg.amplitudes.emplace_back(y.begin() + 2, y.end());
        }
    };

    std::vector<cplx> state(count + 2);
    state[0] = initial.c_e;
    state[1] = initial.c_g;
    integrate_local(rhs, std::move(state), dt, out_steps * static_cast<std::size_t>(sub), observer);
    return result;
}

Trajectory simulate(ModelKind kind, const FeedbackParams& params, double t_max,
                    int steps_per_delay, InitialAmplitudes initial) {
    switch (kind) {
        case ModelKind::NoFeedback:
            return simulate_no_feedback(params, t_max, steps_per_delay, initial);
        case ModelKind::ContinuousMode:
            return simulate_cm(params, t_max, steps_per_delay, initial);
        case ModelKind::DiscreteModeDelay:
            return simulate_dm_delay(params, t_max, steps_per_delay, initial);
        case ModelKind::DiscreteModeSum:
            return simulate_dm_modesum(params, t_max, steps_per_delay, {}, initial).trajectory;
    }
    throw ValidationError("unknown model kind");
}

}  // namespace jcfb
