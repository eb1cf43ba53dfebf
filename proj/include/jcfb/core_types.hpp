// core_types.hpp — parameter set and result containers for the feedback simulators
//
// Rates (gamma, kappa, kappa1) are in 1/time, tau in time, phi in radians.
// Nothing is normalized here; callers pick the unit of time.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcfb {

using cplx = std::complex<double>;

// Thrown for rejected inputs (bad parameters, malformed requests).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when an integration produces a non-finite state.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

// Immutable physical parameter set. Construct through make_params().
//
// The feedback phase is the canonical input; the detuning of the central
// reservoir mode is derived as delta0 = phi / tau.
class FeedbackParams {
public:
    double gamma() const noexcept { return gamma_; }
    double kappa() const noexcept { return kappa_; }
    double kappa1() const noexcept { return kappa1_; }
    double tau() const noexcept { return tau_; }
    double phi() const noexcept { return phi_; }

    double delta0() const noexcept { return phi_ / tau_; }
    // Cavity-to-reservoir-mode coupling 2*sqrt(kappa/tau). The same number is
    // the cavity-cavity coupling G of the single-mode reduction.
    double mode_coupling() const noexcept;
    double eta() const noexcept { return gamma_ * gamma_ * tau_ / (4.0 * kappa_); }

    double delay_parameter() const noexcept { return kappa_ * tau_; }
    double coupling_parameter() const noexcept { return gamma_ / kappa_; }

    // Single-line "gamma=... kappa=..." rendering with 17 significant digits.
    std::string describe() const;

    friend FeedbackParams make_params(double gamma, double kappa, double kappa1, double tau,
                                      double phi);

private:
    FeedbackParams(double gamma, double kappa, double kappa1, double tau, double phi)
        : gamma_(gamma), kappa_(kappa), kappa1_(kappa1), tau_(tau), phi_(phi) {}

    double gamma_;
    double kappa_;
    double kappa1_;
    double tau_;
    double phi_;
};

// Validates and builds a parameter set. Throws ValidationError for
// non-finite values, gamma < 0, kappa <= 0, kappa1 < 0 or tau <= 0.
FeedbackParams make_params(double gamma, double kappa, double kappa1, double tau, double phi);

enum class DelayRegime { ShortDelay, Intermediate, LongDelay };
enum class CouplingRegime { BadCavity, Weak, Strong };

struct RegimeLabel {
    double delay_parameter;     // kappa * tau
    double coupling_parameter;  // gamma / kappa
    DelayRegime delay;
    CouplingRegime coupling;
};

// Informational only: thresholds 0.1 and 10 on both axes, strict inequalities
// at the extremes (kappa*tau < 0.1 is short, > 10 is long; same for gamma/kappa).
RegimeLabel regime_label(const FeedbackParams& params);

std::string to_string(DelayRegime r);
std::string to_string(CouplingRegime r);

// Sampled amplitudes on a uniform grid. times[i] = i * dt.
struct Trajectory {
    std::vector<double> times;
    std::vector<cplx> c_e;
    std::vector<cplx> c_g;

    std::size_t size() const noexcept { return times.size(); }
    double dt() const noexcept { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

// Discrete reservoir modes q in [-N, N] with detunings
// delta_q = (2q+1)*pi/tau - delta0. Amplitudes are stored as snapshots:
// amplitudes[k][j] is mode q_indices[j] at time snapshot_times[k].
struct ModeRegister {
    std::vector<int> q_indices;
    std::vector<double> detunings;
    std::vector<double> snapshot_times;
    std::vector<std::vector<cplx>> amplitudes;

    // Sum over modes of |c_{g,q}|^2 at snapshot k.
    double population(std::size_t k) const;
};

struct Spectrum {
    std::vector<double> omegas;
    std::vector<double> values;
};

// Normal modes of atom A coupled (gamma) to cavity C1, itself coupled (G)
// to a second cavity C2. Basis order (A, C1, C2).
struct NormalModeSet {
    double xi = 0.0;
    std::vector<double> energies;               // +xi, -xi, 0
    std::vector<std::vector<double>> modes;     // B+, B-, D
    double dark_overlap = 0.0;                  // G^2 / xi^2
};

}  // namespace jcfb
