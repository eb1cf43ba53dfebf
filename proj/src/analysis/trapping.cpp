#include <cmath>
#include <numbers>

#include "jcfb/analysis.hpp"

namespace jcfb {

std::vector<double> dm_rabi_diagnostic(const FeedbackParams& params, double mu, int n_max) {
    if (n_max < 1) throw ValidationError("n_max must be >= 1");
    const double theta = (mu + params.delta0()) * params.tau();
    std::vector<double> sums;
    sums.reserve(static_cast<std::size_t>(n_max) + 1);
    double acc = 0.0;
    for (int q = 0; q <= n_max; ++q) {
        const double term = std::cos(q * theta);
        acc += (q % 2 == 0) ? term : -term;
        sums.push_back(acc);
    }
    return sums;
}

bool is_odd_pi_phase(double phi) {
    const double pi = std::numbers::pi;
    const double n = std::round((phi / pi - 1.0) / 2.0);
    return std::abs(phi - (2.0 * n + 1.0) * pi) < 1e-9;
}

cplx steady_state_dm(const FeedbackParams& params) {
    if (!is_odd_pi_phase(params.phi())) return 0.0;
    return 1.0 / (1.0 + params.eta());
}

NormalModeSet normal_modes(double gamma, double big_g) {
    if (!(gamma >= 0.0) || !(big_g >= 0.0) || !std::isfinite(gamma) || !std::isfinite(big_g)) {
        throw ValidationError("normal modes need finite, non-negative couplings");
    }
    if (gamma == 0.0 && big_g == 0.0) {
        throw ValidationError("normal modes need at least one nonzero coupling");
    }
    NormalModeSet set;
    const double xi = std::hypot(gamma, big_g);
    const double b = 1.0 / (std::numbers::sqrt2 * xi);
    set.xi = xi;
    set.energies = {xi, -xi, 0.0};
    set.modes = {
        {gamma * b, xi * b, big_g * b},
        {gamma * b, -xi * b, big_g * b},
        {-big_g / xi, 0.0, gamma / xi},
    };
    set.dark_overlap = big_g * big_g / (xi * xi);
    return set;
}

}  // namespace jcfb
