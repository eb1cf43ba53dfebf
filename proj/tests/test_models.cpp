#include <doctest.h>

#include <cmath>
#include <numbers>

#include "jcfb/dde_engine.hpp"
#include "jcfb/models.hpp"
#include "oracles.hpp"

using namespace jcfb;
constexpr double kPi = std::numbers::pi;

namespace {

double max_diff(const Trajectory& a, const Trajectory& b, double t_end) {
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()) && a.times[i] <= t_end; ++i) {
        worst = std::max({worst, std::abs(a.c_e[i] - b.c_e[i]), std::abs(a.c_g[i] - b.c_g[i])});
    }
    return worst;
}

std::size_t at(const Trajectory& tr, double t) { return static_cast<std::size_t>(std::llround(t / tr.dt())); }

}  // namespace

TEST_CASE("no-feedback closed form") {
    SUBCASE("decoupled atom") {
        const auto tr = simulate_no_feedback(make_params(0.0, 1.0, 0.3, 1.0, 0.0), 5.0, 100);
        for (std::size_t i = 0; i < tr.size(); ++i) {
            CHECK(tr.c_e[i] == cplx{1.0});
            CHECK(tr.c_g[i] == cplx{0.0});
        }
    }
    SUBCASE("critical damping peaks at e^-2") {
        const auto tr = simulate_no_feedback(make_params(1.0, 1.0, 0.0, 1.0, 0.0), 3.0, 1000);
        const std::size_t i = at(tr, 1.0);
        CHECK(std::abs(tr.c_g[i] - cplx{0.0, std::exp(-1.0)}) < 1e-15);
        CHECK(std::norm(tr.c_g[i]) == doctest::Approx(std::exp(-2.0)));
        CHECK(std::norm(tr.c_g[i - 1]) < std::norm(tr.c_g[i]));
        CHECK(std::norm(tr.c_g[i + 1]) < std::norm(tr.c_g[i]));
    }
    SUBCASE("first node at pi / Omega") {
        const double omega = std::sqrt(3.0);
        const auto p = make_params(2.0, 1.0, 0.0, kPi / omega, 0.0);
        const auto tr = simulate_no_feedback(p, p.tau(), 1000);
        CHECK(std::abs(tr.c_g.back()) < 1e-14);
    }
    SUBCASE("matches the oracle in all three regimes") {
        for (double g : {0.5, 1.5, 4.0}) {
            const auto tr = simulate_no_feedback(make_params(g, 1.0, 0.5, 1.0, 0.0), 4.0, 200);
            double worst = 0.0;
            for (std::size_t i = 0; i < tr.size(); ++i) {
                worst = std::max({worst, std::abs(tr.c_g[i] - oracle::damped_rabi_cg(g, 1.5, tr.times[i])),
                                  std::abs(tr.c_e[i] - oracle::damped_rabi_ce(g, 1.5, tr.times[i]))});
            }
            CHECK(worst < 1e-13);
        }
    }
}

TEST_CASE("feedback models reduce to the Markovian solution before tau") {
    for (double phi : {0.0, 1.3, kPi}) {
        const auto p = make_params(1.7, 0.8, 0.4, 2.0, phi);
        const auto ref = simulate_no_feedback(p, 0.999 * p.tau(), 1000);
        CHECK(max_diff(simulate_cm(p, 0.999 * p.tau(), 1000), ref, p.tau()) < 1e-8);
        CHECK(max_diff(simulate_dm_delay(p, 0.999 * p.tau(), 1000), ref, p.tau()) < 1e-8);
    }
}

TEST_CASE("continuous mode: stabilized Rabi oscillation") {
    // kappa tau = pi, (delta0 + gamma) tau = 2 pi, m = 1
    const auto p = make_params(1.0, 1.0, 0.0, kPi, kPi);
    const auto tr = simulate_cm(p, 60.0 * kPi, 1000);
    double peak = 0.0;
    for (std::size_t i = at(tr, 50.0 * kPi); i < tr.size(); ++i) peak = std::max(peak, std::abs(tr.c_g[i]));
    CHECK(peak == doctest::Approx(1.0 / (1.0 + kPi)).epsilon(1e-5));
}

TEST_CASE("continuous mode: no trapping") {
    const auto p = make_params(1.0, 1.0, 0.5, kPi / 3.0, kPi);
    const auto tr = simulate_cm(p, 200.0, 400);
    CHECK(std::norm(tr.c_e.back()) < 1e-3);
}

TEST_CASE("discrete mode: trapping at 1/(1+eta)") {
    const auto p = make_params(1.0, 1.0, 0.5, kPi / 3.0, kPi);
    const auto tr = simulate_dm_delay(p, 200.0, 1000);
    CHECK(std::abs(std::abs(tr.c_e.back()) - 1.0 / (1.0 + kPi / 12.0)) < 1e-3);
}

TEST_CASE("discrete mode on (tau, 2 tau] is the CM equation with a doubled delayed term") {
    for (double phi : {kPi, 2.0 * kPi}) {
        const auto p = make_params(1.3, 0.9, 0.2, 1.5, phi);
        const double g = p.gamma(), loss = 2.0 * (p.kappa() + p.kappa1());
        const cplx doubled = 4.0 * p.kappa() * std::polar(1.0, p.phi());
        DelaySystem s;
        s.state_size = 2;
        s.rhs = [=](double, std::span<const cplx> y, const DelayedView& d, std::span<cplx> dy) {
            dy[0] = cplx{0.0, g} * y[1];
            dy[1] = cplx{0.0, g} * y[0] - loss * y[1] + doubled * d.at(1, 1);
        };
        const cplx y0[2] = {1.0, 0.0};
        const auto h = integrate(s, y0, 2.0 * p.tau(), p.tau(), 1000);
        const auto dm = simulate_dm_delay(p, 2.0 * p.tau(), 1000);
        double worst = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            worst = std::max(worst, std::abs(h.value(i, 1) - dm.c_g[i]));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("linearity in the initial amplitude") {
    const auto p = make_params(1.1, 0.7, 0.1, 1.3, 0.4);
    const cplx alpha{0.6, -0.8};
    for (auto kind : {ModelKind::NoFeedback, ModelKind::ContinuousMode, ModelKind::DiscreteModeDelay}) {
        const auto ref = simulate(kind, p, 4.0, 200);
        const auto scaled = simulate(kind, p, 4.0, 200, {alpha, 0.0});
        double worst = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            worst = std::max({worst, std::abs(scaled.c_e[i] - alpha * ref.c_e[i]),
                              std::abs(scaled.c_g[i] - alpha * ref.c_g[i])});
        }
        CHECK(worst < 1e-14);
    }
}

TEST_CASE("mode sum: closed-system norm") {
    const auto p = make_params(1.0, 1.0, 0.0, kPi / 3.0, kPi);
    const auto r = simulate_dm_modesum(p, 3.0 * p.tau(), 200, {60, 0});
    double worst = 0.0;
    const auto& tr = r.trajectory;
    for (std::size_t k = 0; k < r.modes.snapshot_times.size(); ++k) {
        const std::size_t i = at(tr, r.modes.snapshot_times[k]);
        const double total = std::norm(tr.c_e[i]) + std::norm(tr.c_g[i]) + r.modes.population(k);
        worst = std::max(worst, std::abs(total - 1.0));
    }
    CHECK(worst < 1e-6);
    CHECK(r.modes.q_indices.size() == 121);
    CHECK(r.modes.detunings[60] == doctest::Approx(kPi / p.tau() - p.delta0()));
}

TEST_CASE("mode sum: decoupled atom") {
    const auto p = make_params(0.0, 1.0, 0.0, 1.0, kPi);
    SUBCASE("excited atom stays put") {
        const auto r = simulate_dm_modesum(p, 2.0, 100, {20, 0});
        for (const auto& c : r.trajectory.c_e) CHECK(c == cplx{1.0});
        for (const auto& c : r.trajectory.c_g) CHECK(c == cplx{0.0});
    }
    SUBCASE("cavity excitation leaks into the modes") {
        const auto r = simulate_dm_modesum(p, 0.5, 100, {40, 0}, {0.0, 1.0});
        const auto& tr = r.trajectory;
        CHECK(std::norm(tr.c_g.back()) < 0.5);
        for (std::size_t k = 0; k < r.modes.snapshot_times.size(); ++k) {
            const std::size_t i = at(tr, r.modes.snapshot_times[k]);
            CHECK(r.modes.population(k) == doctest::Approx(1.0 - std::norm(tr.c_g[i])).epsilon(1e-6));
        }
    }
}

TEST_CASE("mode sum: warnings and validation") {
    const auto p = make_params(1.0, 1.0, 0.0, 1.0, kPi);
    const int n = recommended_modes(p);
    CHECK(n >= 1);
    CHECK(simulate_dm_modesum(p, 0.1, 100, {1, 0}).warnings.size() == 1);
    CHECK(simulate_dm_modesum(p, 0.1, 100, {n, 0}).warnings.empty());
    CHECK_THROWS_AS(simulate_dm_modesum(p, 0.1, 100, {-1, 0}), ValidationError);
}

TEST_CASE("model kinds and grid validation") {
    for (auto kind : {ModelKind::NoFeedback, ModelKind::ContinuousMode, ModelKind::DiscreteModeDelay,
                      ModelKind::DiscreteModeSum}) {
        CHECK(parse_model_kind(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(parse_model_kind("bogus"), ValidationError);
    const auto p = make_params(1.0, 1.0, 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(simulate_cm(p, 1.0, 50), ValidationError);
    CHECK_THROWS_AS(simulate_cm(p, -1.0, 100), ValidationError);
}
