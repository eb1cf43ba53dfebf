#include "jcfb/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "jcfb/analysis.hpp"
#include "jcfb/dde_engine.hpp"
#include "jcfb/models.hpp"

namespace jcfb::validation {

namespace {

constexpr double kPi = std::numbers::pi;

Measurement less(std::string label, double value, double threshold) {
    return {std::move(label), value, "<", threshold, 0.0, value < threshold};
}

Measurement greater(std::string label, double value, double threshold) {
    return {std::move(label), value, ">", threshold, 0.0, value > threshold};
}

Measurement at_least(std::string label, double value, double threshold) {
    return {std::move(label), value, ">=", threshold, 0.0, value >= threshold};
}

Measurement exactly(std::string label, double value, double expected) {
    return {std::move(label), value, "==", expected, 0.0, value == expected};
}

Measurement in_range(std::string label, double value, double lo, double hi) {
    return {std::move(label), value, "in", lo, hi, value >= lo && value <= hi};
}

void runtime_limit(CheckResult& r, Level level, double seconds_limit, double elapsed) {
    if (level == Level::Full) r.measurements.push_back(less("runtime [s]", elapsed, seconds_limit));
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t index_at(const Trajectory& tr, double t) {
    return static_cast<std::size_t>(std::llround(t / tr.dt()));
}

double max_abs2_difference(const Trajectory& a, const Trajectory& b, double t_end) {
    double worst = 0.0;
    const std::size_t n = std::min({a.size(), b.size(), index_at(a, t_end) + 1});
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(std::norm(a.c_g[i]) - std::norm(b.c_g[i])));
    }
    return worst;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double sum = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    return sum;
}

// Strict local maxima of |c_g|^2 on the sample grid inside [t0, t1].
int count_maxima(const Trajectory& tr, double t0, double t1) {
    int count = 0;
    for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
        if (tr.times[i] < t0 || tr.times[i] > t1) continue;
        const double x = std::norm(tr.c_g[i]);
        if (x > std::norm(tr.c_g[i - 1]) && x >= std::norm(tr.c_g[i + 1]) && x > 1e-300) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------

void universality(Level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20190611);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + unit(rng) * std::log(hi / lo));
    };
    double worst_cm = 0.0, worst_dm = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double coupling = log_uniform(0.1, 10.0);
        const double delay = log_uniform(0.3, 10.0);
        const double kappa1 = (unit(rng) < 0.5) ? 0.0 : 0.5;
        const double phi = 2.0 * kPi * unit(rng);
        const auto p = make_params(coupling, 1.0, kappa1, delay, phi);
        const double t_end = 0.999 * p.tau();
        const auto ref = simulate_no_feedback(p, t_end, 1000);
        const auto cm = simulate_cm(p, t_end, 1000);
        const auto dm = simulate_dm_delay(p, t_end, 1000);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            worst_cm = std::max({worst_cm, std::abs(cm.c_e[i] - ref.c_e[i]), std::abs(cm.c_g[i] - ref.c_g[i])});
            worst_dm = std::max({worst_dm, std::abs(dm.c_e[i] - ref.c_e[i]), std::abs(dm.c_g[i] - ref.c_g[i])});
        }
    }
    r.notes.push_back("20 sets, gamma/kappa and kappa*tau log-uniform, kappa1 in {0, kappa/2}, M=1000");
    r.measurements.push_back(less("CM max |x - closed form| on [0, 0.999 tau]", worst_cm, 1e-6));
    r.measurements.push_back(less("DM max |x - closed form| on [0, 0.999 tau]", worst_dm, 1e-6));
    runtime_limit(r, Level::Full, 10.0, elapsed_since(start));
}

void short_delay(Level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    // kappa = 1: kappa*tau = 0.01, gamma*tau = 0.1
    const double t_end = 50.0 / 10.0;
    double diff[2];
    const double phases[2] = {2.0 * kPi, kPi};
    for (int k = 0; k < 2; ++k) {
        const auto p = make_params(10.0, 1.0, 0.0, 0.01, phases[k]);
        diff[k] = max_abs2_difference(simulate_dm_delay(p, t_end, 1000), simulate_cm(p, t_end, 1000), t_end);
    }
    r.measurements.push_back(less("phi=2pi: max ||c_g|^2 DM - CM| on [0, 50/gamma]", diff[0], 0.02));
    r.measurements.push_back(greater("phi=pi:  max ||c_g|^2 DM - CM| on [0, 50/gamma]", diff[1], 0.05));
    runtime_limit(r, Level::Full, 30.0, elapsed_since(start));
}

void trapping(Level level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    const int m = level == Level::Full ? 1000 : 400;
    const auto p = make_params(1.0, 1.0, 0.5, kPi / 3.0, kPi);
    const double t_end = 200.0;
    const auto dm = simulate_dm_delay(p, t_end, m);
    const auto cm = simulate_cm(p, t_end, m);
    const double target = 1.0 / (1.0 + kPi / 12.0);
    r.measurements.push_back(less("| |c_e(200/kappa)|_DM - 1/(1+pi/12) |",
                                  std::abs(std::abs(dm.c_e[index_at(dm, t_end)]) - target), 1e-3));
    r.measurements.push_back(less("|c_e(200/kappa)|^2_CM", std::norm(cm.c_e[index_at(cm, t_end)]), 1e-3));
    runtime_limit(r, level, 30.0, elapsed_since(start));
}

void kappa1_independence(Level level, CheckResult& r) {
    const int m = level == Level::Full ? 1000 : 400;
    const double t_end = 200.0;
    std::vector<double> levels;
    for (double k1 : {0.25, 0.5, 1.0}) {
        const auto p = make_params(1.0, 1.0, k1, kPi / 3.0, kPi);
        const auto dm = simulate_dm_delay(p, t_end, m);
        levels.push_back(std::abs(dm.c_e[index_at(dm, t_end)]));
    }
    double spread = 0.0;
    for (double a : levels) {
        for (double b : levels) spread = std::max(spread, std::abs(a - b));
    }
    r.notes.push_back("|c_e(200/kappa)| for kappa1 = kappa/4, kappa/2, kappa: " + std::to_string(levels[0]) +
                      ", " + std::to_string(levels[1]) + ", " + std::to_string(levels[2]));
    r.measurements.push_back(less("max pairwise difference", spread, 1e-3));
}

void dark_state(Level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7321);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double gamma = 5.0 * unit(rng);
        const double kappa = 0.05 + 5.0 * unit(rng);
        const double tau = 0.05 + 20.0 * unit(rng);
        const auto p = make_params(gamma, kappa, 0.0, tau, kPi);
        const double trapped = steady_state_dm(p).real();
        const double overlap = normal_modes(gamma, p.mode_coupling()).dark_overlap;
        worst = std::max(worst, std::abs(trapped - overlap));
    }
    r.measurements.push_back(less("max |steady_state_dm - dark_overlap| (100 sets)", worst, 1e-12));
    r.measurements.push_back(less("runtime [s]", elapsed_since(start), 1.0));
}

// kappa = 1, kappa*tau = pi, gamma*tau = pi, (delta0 + gamma)*tau = 2*pi.
FeedbackParams rabi_params() { return make_params(1.0, 1.0, 0.0, kPi, kPi); }

void rabi_cm(Level level, CheckResult& r) {
    const auto p = rabi_params();
    const int m = level == Level::Full ? 1000 : 400;
    const auto tr = simulate_cm(p, 60.0 * p.tau(), m);
    std::vector<double> peak_times, peak_values;
    for (std::size_t i = 1; i + 1 < tr.size(); ++i) {
        if (tr.times[i] < 40.0 * p.tau() || tr.times[i] > 60.0 * p.tau()) continue;
        const double a = std::abs(tr.c_g[i - 1]), b = std::abs(tr.c_g[i]), c = std::abs(tr.c_g[i + 1]);
        if (b > a && b >= c) {
            // parabola through the three samples
            const double shift = 0.5 * (a - c) / (a - 2.0 * b + c);
            peak_times.push_back(tr.times[i] + shift * tr.dt());
            peak_values.push_back(b - 0.25 * (a - c) * shift);
        }
    }
    if (peak_times.size() < 3) throw std::runtime_error("fewer than three peaks in [40 tau, 60 tau]");
    double worst_spacing = 0.0;
    for (std::size_t i = 1; i < peak_times.size(); ++i) {
        const double spacing = peak_times[i] - peak_times[i - 1];
        worst_spacing = std::max(worst_spacing, std::abs(spacing / (kPi / p.gamma()) - 1.0));
    }
    double mean = 0.0;
    for (double v : peak_values) mean += v;
    mean /= static_cast<double>(peak_values.size());
    double var = 0.0;
    for (double v : peak_values) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / static_cast<double>(peak_values.size()));

    const auto poles = find_poles(CharacteristicFunction::continuous(p),
                                  {-p.kappa(), p.kappa(), -3.0 * p.gamma(), 3.0 * p.gamma()}, 40);
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& pole : poles) closest = std::min(closest, std::abs(pole.s.real()));

    const double predicted = 1.0 / (1.0 + p.kappa() * kPi / p.gamma());
    r.notes.push_back(std::to_string(peak_times.size()) + " peaks; mean amplitude " + std::to_string(mean) +
                      ", predicted 1/(1+kappa*pi/gamma) = " + std::to_string(predicted));
    r.measurements.push_back(less("max |peak spacing / (pi/gamma) - 1|", worst_spacing, 0.01));
    r.measurements.push_back(less("peak amplitude sd / mean", sd / mean, 1e-3));
    r.measurements.push_back(less("CM pole search: min |Re s|", closest, 1e-8));
}

void rabi_dm(Level, CheckResult& r) {
    const auto p = rabi_params();
    const auto poles = find_poles(CharacteristicFunction::discrete(p),
                                  {-p.kappa(), p.kappa(), -3.0 * p.gamma(), 3.0 * p.gamma()}, 40);
    int marginal = 0;
    for (const auto& pole : poles) {
        if (std::abs(pole.s.real()) < 1e-4) {
            ++marginal;
            r.notes.push_back("DM kernel root s = " + std::to_string(pole.s.real()) + " + " +
                              std::to_string(pole.s.imag()) + "i");
        }
    }
    r.measurements.push_back(exactly("DM kernel roots with |Re s| < 1e-4", marginal, 0.0));

    const auto sums = dm_rabi_diagnostic(p, p.gamma(), 10000);
    double mean = 0.0;
    for (std::size_t i = 5001; i <= 10000; ++i) mean += sums[i];
    mean /= 5000.0;
    double var = 0.0;
    for (std::size_t i = 5001; i <= 10000; ++i) var += (sums[i] - mean) * (sums[i] - mean);
    r.measurements.push_back(at_least("variance of partial sums 5001..10000", var / 5000.0, 0.01));
}

void oracle_equivalence(Level level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    const auto p = make_params(1.0, 1.0, 0.0, kPi / 3.0, kPi);
    const double t_end = 10.0 * p.tau();
    const int m = level == Level::Full ? 1000 : 500;
    const int n_small = level == Level::Full ? 400 : 100;
    const auto delay = simulate_dm_delay(p, t_end, m);
    const auto small = simulate_dm_modesum(p, t_end, m, {n_small, 0});
    const auto large = simulate_dm_modesum(p, t_end, m, {2 * n_small, 0});
    const double d_small = max_abs2_difference(small.trajectory, delay, t_end);
    const double d_large = max_abs2_difference(large.trajectory, delay, t_end);
    r.measurements.push_back(less("N=" + std::to_string(n_small) + ": max ||c_g|^2 modesum - delay|", d_small, 1e-2));
    r.measurements.push_back(at_least("deviation ratio N=" + std::to_string(n_small) + " / N=" +
                                          std::to_string(2 * n_small),
                                      d_small / d_large, 2.0));
    runtime_limit(r, level, 120.0, elapsed_since(start));
}

void series_equivalence(Level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    const auto p = make_params(1.0, 1.0, 0.0, kPi / 3.0, kPi);
    const auto cm = simulate_cm(p, 3.0 * p.tau(), 1000);
    const auto dm = simulate_dm_delay(p, 3.0 * p.tau(), 1000);
    double worst_cm = 0.0, worst_dm = 0.0;
    for (int k = 1; k <= 20; ++k) {
        const std::size_t i = static_cast<std::size_t>(k) * 150;
        const double t = cm.times[i];
        worst_cm = std::max(worst_cm, std::abs(series_cm(p, t, 8) - cm.c_g[i]));
        worst_dm = std::max(worst_dm, std::abs(series_dm(p, t, 8, 8) - dm.c_g[i]));
    }
    r.measurements.push_back(less("max |series_cm - CM delay backend| (20 times in (0, 3 tau])", worst_cm, 1e-4));
    r.measurements.push_back(less("max |series_dm - DM delay backend| (20 times in (0, 3 tau])", worst_dm, 1e-4));
    runtime_limit(r, Level::Full, 10.0, elapsed_since(start));
}

void spectra(Level level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    const auto p = make_params(1.0, 1.0, 0.5, 1.0, kPi);
    const double limit = 50.0 * std::max({p.gamma(), p.kappa(), 2.0 * kPi / p.tau()});
    const auto grid = symmetric_grid(limit, 200001);
    const int m = level == Level::Full ? 1000 : 400;
    double min_value = std::numeric_limits<double>::infinity();

    for (auto kind : {ModelKind::NoFeedback, ModelKind::ContinuousMode, ModelKind::DiscreteModeDelay}) {
        const auto s = spectrum(p, kind, grid);
        for (double v : s.values) min_value = std::min(min_value, v);
        const double freq_side = trapezoid(s.omegas, s.values);
        const auto tr = simulate(kind, p, 100.0, m);
        std::vector<double> pop(tr.size());
        for (std::size_t i = 0; i < tr.size(); ++i) pop[i] = std::norm(tr.c_g[i]);
        const double time_side = 4.0 * p.kappa1() * trapezoid(tr.times, pop);
        r.measurements.push_back(less("(a) " + to_string(kind) + ": |int S dw / (4 kappa1 int |c_g|^2 dt) - 1|",
                                      std::abs(freq_side / time_side - 1.0), 0.01));
    }

    const double s_dm0 = spectral_density(p, ModelKind::DiscreteModeDelay, 0.0);
    const double s_nofb0 = spectral_density(p, ModelKind::NoFeedback, 0.0);
    const double expected_nofb0 = 2.0 * p.kappa1() / (kPi * p.gamma() * p.gamma());
    r.measurements.push_back(exactly("(b) S_dm(0), phi=pi", s_dm0, 0.0));
    r.measurements.push_back(less("(b) |S_nofb(0) / (2 kappa1/(pi gamma^2)) - 1|",
                                  std::abs(s_nofb0 / expected_nofb0 - 1.0), 1e-14));
    r.measurements.push_back(greater("(b) S_nofb(0)", s_nofb0, 0.0));
    r.notes.push_back("S_dm(0)/S_nofb(0) = " + std::to_string(s_dm0 / s_nofb0) +
                      " (reduced emission on resonance; limit (eta/(1+eta))^2 = " +
                      std::to_string(std::pow(p.eta() / (1.0 + p.eta()), 2)) + ")");

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const auto q = make_params(3.0 * std::abs(unit(rng)), 0.1 + std::abs(unit(rng)),
                                   0.01 + std::abs(unit(rng)), 0.01 + 10.0 * std::abs(unit(rng)),
                                   4.0 * kPi * unit(rng));
        const auto g = symmetric_grid(20.0, 4001);
        for (auto kind : {ModelKind::NoFeedback, ModelKind::ContinuousMode, ModelKind::DiscreteModeDelay}) {
            for (double v : spectrum(q, kind, g).values) min_value = std::min(min_value, v);
        }
    }
    r.measurements.push_back(at_least("(c) min S over all grids", min_value, 0.0));

    const auto lim = make_params(1.0, 1.0, 0.5, 1e-6, 0.0);
    double worst = 0.0, worst_lossless = 0.0;
    const auto lossless = make_params(1.0, 1e-300, 0.5, 1e-6, 0.0);
    for (double w : symmetric_grid(10.0 * lim.gamma(), 2001)) {
        const double cm = spectral_density(lim, ModelKind::ContinuousMode, w);
        worst = std::max(worst, std::abs(cm / spectral_density(lim, ModelKind::NoFeedback, w) - 1.0));
        worst_lossless = std::max(worst_lossless,
                                  std::abs(cm / spectral_density(lossless, ModelKind::NoFeedback, w) - 1.0));
    }
    r.measurements.push_back(less("(d) kappa*tau=1e-6, phi=0: max |S_cm / S_nofb - 1| on |w| <= 10 gamma", worst, 1e-6));
    r.notes.push_back("(d) against the no-feedback form with the feedback channel removed (kappa -> 0): "
                      "max rel. deviation " + std::to_string(worst_lossless));
    runtime_limit(r, level, 30.0, elapsed_since(start));
}

void long_delay(Level level, CheckResult& r) {
    const auto start = std::chrono::steady_clock::now();
    const auto p = make_params(1.0, 1.0, 0.0, 100.0 * kPi, 2.0 * kPi);
    const int m = level == Level::Full ? 20000 : 5000;
    const double window = 30.0 / p.kappa();
    const double t_end = 3.0 * p.tau() + window + 1.0;
    const auto cm = simulate_cm(p, t_end, m);
    const auto dm = simulate_dm_delay(p, t_end, m);
    int cm_counts[4], dm_counts[4];
    std::string cm_text, dm_text;
    for (int q = 0; q <= 3; ++q) {
        cm_counts[q] = count_maxima(cm, q * p.tau(), q * p.tau() + window);
        dm_counts[q] = count_maxima(dm, q * p.tau(), q * p.tau() + window);
        cm_text += " " + std::to_string(cm_counts[q]);
        dm_text += " " + std::to_string(dm_counts[q]);
    }
    r.notes.push_back("maxima of |c_g|^2 in [q tau, q tau + 30/kappa], q = 0..3: CM" + cm_text + "; DM" + dm_text);
    int cm_changes = 0, dm_min_gain = 1 << 20;
    for (int q = 2; q <= 3; ++q) {
        if (cm_counts[q] != cm_counts[q - 1]) ++cm_changes;
        dm_min_gain = std::min(dm_min_gain, dm_counts[q] - dm_counts[q - 1]);
    }
    r.measurements.push_back(exactly("CM: count changes across roundtrips 1-3", cm_changes, 0.0));
    r.measurements.push_back(at_least("DM: min count gain per roundtrip (1-3)", dm_min_gain, 1.0));
    runtime_limit(r, level, 120.0, elapsed_since(start));
}

// Error of the engine on dc/dt = -2 kappa c (kappa = 10, tau = 1, t in [0, 1]).
double exponential_error(int m) {
    const double k = 10.0;
    DelaySystem s;
    s.state_size = 1;
    s.rhs = [k](double, std::span<const cplx> y, const DelayedView&, std::span<cplx> d) { d[0] = -2.0 * k * y[0]; };
    const cplx y0[1] = {1.0};
    const auto h = integrate(s, y0, 1.0, 1.0, m);
    double err = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        err = std::max(err, std::abs(h.value(i, 0) - std::exp(-2.0 * k * h.time(i))));
    }
    return err;
}

// Error on dc/dt = i w c + a c(t - tau), zero pre-history, c(0) = 1, whose
// solution is sum_k a^k (t - k tau)^k / k! e^{i w (t - k tau)} Theta(t - k tau).
double single_delay_error(int m) {
    const double w = 10.0, a = -2.0, tau = 1.0, t_end = 4.0;
    DelaySystem s;
    s.state_size = 1;
    s.rhs = [=](double, std::span<const cplx> y, const DelayedView& d, std::span<cplx> dy) {
        dy[0] = cplx{0.0, w} * y[0] + a * d.at(1, 0);
    };
    const cplx y0[1] = {1.0};
    const auto h = integrate(s, y0, t_end, tau, m);
    double err = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double t = h.time(i);
        cplx exact{};
        double factorial = 1.0;
        for (int k = 0; t - k * tau >= 0.0; ++k) {
            if (k > 0) factorial *= k;
            const double u = t - k * tau;
            exact += std::pow(a * u, k) / factorial * std::polar(1.0, w * u);
        }
        err = std::max(err, std::abs(h.value(i, 0) - exact));
    }
    return err;
}

double fitted_order(const std::vector<int>& ms, const std::vector<double>& errors) {
    // least-squares slope of -log(err) against log(M)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(ms.size());
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const double x = std::log(static_cast<double>(ms[i]));
        const double y = -std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void integrator_order(Level, CheckResult& r) {
    const std::vector<int> ms{250, 500, 1000, 2000};
    std::vector<double> exp_err, delay_err;
    for (int m : ms) {
        exp_err.push_back(exponential_error(m));
        delay_err.push_back(single_delay_error(m));
    }
    r.measurements.push_back(in_range("order, dc/dt = -2 kappa c", fitted_order(ms, exp_err), 3.7, 4.3));
    r.measurements.push_back(in_range("order, dc/dt = i w c + a c(t - tau)", fitted_order(ms, delay_err), 3.7, 4.3));
}

}  // namespace

bool CheckResult::passed() const {
    if (!error.empty()) return false;
    return std::all_of(measurements.begin(), measurements.end(), [](const Measurement& m) { return m.passed; });
}

const std::vector<Check>& checks() {
    static const std::vector<Check> catalogue{
        {"A1", "universality", "pre-feedback universality", universality},
        {"A2", "shortdelay", "short-delay agreement/divergence", short_delay},
        {"A3", "trapping", "excitation trapping", trapping},
        {"A4", "kappa1", "trapping independent of kappa1", kappa1_independence},
        {"A5", "darkstate", "dark-state identity", dark_state},
        {"A6", "rabi-cm", "stabilized Rabi oscillations (CM)", rabi_cm},
        {"A7", "rabi-dm", "no Rabi recovery (DM)", rabi_dm},
        {"A8", "appB", "mode-sum oracle equivalence", oracle_equivalence},
        {"A9", "appC", "series solutions vs delay backends", series_equivalence},
        {"A10", "spectrum", "spectrum properties", spectra},
        {"A11", "longdelay", "long-delay pulse morphology", long_delay},
        {"A12", "order", "integrator order", integrator_order},
    };
    return catalogue;
}

bool matches(const Check& check, const std::string& selector) {
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
        return s;
    };
    return lower(check.id) == lower(selector) || lower(check.tag) == lower(selector);
}

CheckResult run_check(const Check& check, Level level) {
    CheckResult result;
    result.id = check.id;
    result.tag = check.tag;
    result.title = check.title;
    const auto start = std::chrono::steady_clock::now();
    try {
        check.body(level, result);
    } catch (const std::exception& e) {
        result.error = e.what();
    }
    result.seconds = elapsed_since(start);
    return result;
}

std::vector<CheckResult> run_checks(Level level, const std::vector<std::string>& only, bool parallel) {
    std::vector<const Check*> selected;
    for (const auto& selector : only) {
        if (std::none_of(checks().begin(), checks().end(),
                         [&](const Check& c) { return matches(c, selector); })) {
            throw std::invalid_argument("no validation check named '" + selector + "'");
        }
    }
    for (const auto& c : checks()) {
        if (only.empty() || std::any_of(only.begin(), only.end(),
                                        [&](const std::string& s) { return matches(c, s); })) {
            selected.push_back(&c);
        }
    }

    std::vector<CheckResult> results;
    if (!parallel) {
        for (const auto* c : selected) results.push_back(run_check(*c, level));
        return results;
    }
    std::vector<std::future<CheckResult>> pending;
    for (const auto* c : selected) {
        pending.push_back(std::async(std::launch::async, [c, level] { return run_check(*c, level); }));
    }
    for (auto& f : pending) results.push_back(f.get());
    return results;
}

void print(std::ostream& os, const CheckResult& result) {
    os << (result.passed() ? "[PASS] " : "[FAIL] ") << result.id << " " << result.tag << ": " << result.title
       << " (" << result.seconds << " s)\n";
    for (const auto& m : result.measurements) {
        os << "    " << (m.passed ? "ok   " : "FAIL ") << m.label << " = " << m.value << " ";
        if (m.relation == "in") {
            os << "in [" << m.threshold << ", " << m.threshold_hi << "]";
        } else {
            os << m.relation << " " << m.threshold;
        }
        os << "\n";
    }
    for (const auto& note : result.notes) os << "    note: " << note << "\n";
    if (!result.error.empty()) os << "    error: " << result.error << "\n";
}

}  // namespace jcfb::validation
