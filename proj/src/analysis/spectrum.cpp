#include <cmath>
#include <numbers>

#include "jcfb/analysis.hpp"

namespace jcfb {

namespace {

double no_feedback_density(const FeedbackParams& p, double w) {
    const double g2 = p.gamma() * p.gamma();
    const double k = p.kappa1() + p.kappa();
    const double a = w * w - g2;
    return 2.0 * g2 * p.kappa1() / std::numbers::pi / (a * a + 4.0 * k * k * w * w);
}

double continuous_density(const FeedbackParams& p, double w) {
    const double g2 = p.gamma() * p.gamma();
    const double arg = w * p.tau() - p.phi();
    const double a = w * w - g2 + 2.0 * w * p.kappa() * std::sin(arg);
    const double b = p.kappa1() + p.kappa() - p.kappa() * std::cos(arg);
    return 2.0 * g2 * p.kappa1() / std::numbers::pi / (a * a + 4.0 * b * b * w * w);
}

// tan((w tau - phi)/2) multiplied through by cos((w tau - phi)/2).
double discrete_density(const FeedbackParams& p, double w) {
    const double g2 = p.gamma() * p.gamma();
    const double pref = 2.0 * g2 * p.kappa1() / std::numbers::pi;
    const double k = p.kappa();
    const double k1 = p.kappa1();
    if (is_odd_pi_phase(p.phi())) {
        // cos = +-sin(w tau/2), sin = -+cos(w tau/2); divide through by w so
        // the omega -> 0 limit stays finite: sc = sin(w tau/2)/w.
        const double x = 0.5 * w * p.tau();
        const double sc = (x == 0.0) ? 0.5 * p.tau() : std::sin(x) / w;
        const double a = (w * w - g2) * sc - 2.0 * k * std::cos(x);
        return pref * sc * sc / (a * a + 4.0 * k1 * k1 * w * w * sc * sc);
    }
    const double half = 0.5 * (w * p.tau() - p.phi());
    const double c = std::cos(half);
    const double sn = std::sin(half);
    const double a = (w * w - g2) * c + 2.0 * k * w * sn;
    return pref * c * c / (a * a + 4.0 * k1 * k1 * w * w * c * c);
}

}  // namespace

double spectral_density(const FeedbackParams& params, ModelKind kind, double omega) {
    if (!(params.kappa1() > 0.0)) {
        throw ValidationError("spectrum needs kappa1 > 0: nothing is emitted into the detection channel");
    }
    if (!std::isfinite(omega)) throw ValidationError("spectrum frequencies must be finite");
    switch (kind) {
        case ModelKind::NoFeedback: return no_feedback_density(params, omega);
        case ModelKind::ContinuousMode: return continuous_density(params, omega);
        case ModelKind::DiscreteModeDelay:
        case ModelKind::DiscreteModeSum: return discrete_density(params, omega);
    }
    throw ValidationError("unknown model kind");
}

Spectrum spectrum(const FeedbackParams& params, ModelKind kind, const std::vector<double>& omegas) {
    Spectrum out;
    out.omegas = omegas;
    out.values.reserve(omegas.size());
    for (double w : omegas) out.values.push_back(spectral_density(params, kind, w));
    if (omegas.empty() && !(params.kappa1() > 0.0)) {
        throw ValidationError("spectrum needs kappa1 > 0: nothing is emitted into the detection channel");
    }
    return out;
}

std::vector<double> symmetric_grid(double limit, std::size_t points) {
    if (!(limit > 0.0) || !std::isfinite(limit)) throw ValidationError("grid limit must be finite and > 0");
    if (points < 2) throw ValidationError("grid needs at least 2 points");
    std::vector<double> grid(points);
    const double step = 2.0 * limit / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = -limit + step * static_cast<double>(i);
    }
    // exact zero at the centre of odd-sized grids
    if (points % 2 == 1) grid[points / 2] = 0.0;
    return grid;
}

}  // namespace jcfb
