#include "jcfb/core_types.hpp"

#include <cmath>
#include <cstdio>

namespace jcfb {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

}  // namespace

FeedbackParams make_params(double gamma, double kappa, double kappa1, double tau, double phi) {
    require_finite(gamma, "gamma");
    require_finite(kappa, "kappa");
    require_finite(kappa1, "kappa1");
    require_finite(tau, "tau");
    require_finite(phi, "phi");
    if (gamma < 0.0) throw ValidationError("gamma must be >= 0, got " + std::to_string(gamma));
    if (kappa <= 0.0) throw ValidationError("kappa must be > 0, got " + std::to_string(kappa));
    if (kappa1 < 0.0) throw ValidationError("kappa1 must be >= 0, got " + std::to_string(kappa1));
    if (tau <= 0.0) throw ValidationError("tau must be > 0, got " + std::to_string(tau));
    return FeedbackParams(gamma, kappa, kappa1, tau, phi);
}

double FeedbackParams::mode_coupling() const noexcept {
    return 2.0 * std::sqrt(kappa_ / tau_);
}

std::string FeedbackParams::describe() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "gamma=%.17g kappa=%.17g kappa1=%.17g tau=%.17g phi=%.17g",
                  gamma_, kappa_, kappa1_, tau_, phi_);
    return buf;
}

RegimeLabel regime_label(const FeedbackParams& params) {
    RegimeLabel label{};
    label.delay_parameter = params.delay_parameter();
    label.coupling_parameter = params.coupling_parameter();

    if (label.delay_parameter < 0.1) {
        label.delay = DelayRegime::ShortDelay;
    } else if (label.delay_parameter > 10.0) {
        label.delay = DelayRegime::LongDelay;
    } else {
        label.delay = DelayRegime::Intermediate;
    }

    if (label.coupling_parameter > 10.0) {
        label.coupling = CouplingRegime::Strong;
    } else if (label.coupling_parameter < 0.1) {
        label.coupling = CouplingRegime::BadCavity;
    } else {
        label.coupling = CouplingRegime::Weak;
    }
    return label;
}

std::string to_string(DelayRegime r) {
    switch (r) {
        case DelayRegime::ShortDelay: return "short-delay";
        case DelayRegime::Intermediate: return "intermediate";
        case DelayRegime::LongDelay: return "long-delay";
    }
    return "unknown";
}

std::string to_string(CouplingRegime r) {
    switch (r) {
        case CouplingRegime::BadCavity: return "bad-cavity";
        case CouplingRegime::Weak: return "weak";
        case CouplingRegime::Strong: return "strong";
    }
    return "unknown";
}

double ModeRegister::population(std::size_t k) const {
    double sum = 0.0;
    for (const auto& a : amplitudes.at(k)) sum += std::norm(a);
    return sum;
}

}  // namespace jcfb
