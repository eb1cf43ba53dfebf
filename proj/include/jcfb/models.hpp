// models.hpp — dynamics backends for the single-excitation feedback problem
//
// All backends start from an excited atom by default and return amplitudes
// on the grid dt = tau / steps_per_delay.

#pragma once

#include <string>
#include <vector>

#include "jcfb/core_types.hpp"

namespace jcfb {

enum class ModelKind { NoFeedback, ContinuousMode, DiscreteModeDelay, DiscreteModeSum };

std::string to_string(ModelKind kind);
// Accepts "nofb", "cm", "dm" (delay backend) and "modesum". Throws ValidationError.
ModelKind parse_model_kind(const std::string& name);

struct InitialAmplitudes {
    cplx c_e{1.0, 0.0};
    cplx c_g{0.0, 0.0};
};

inline constexpr int kDefaultStepsPerDelay = 1000;

// Closed-form damped Rabi solution of
//   dc_e/dt = i*gamma*c_g,  dc_g/dt = i*gamma*c_e - 2*(kappa + kappa1)*c_g.
Trajectory simulate_no_feedback(const FeedbackParams& params, double t_max,
                                int steps_per_delay = kDefaultStepsPerDelay,
                                InitialAmplitudes initial = {});

// Continuous-mode reservoir: a single delayed tap,
//   dc_g/dt = i*gamma*c_e - 2*kappa1*c_g - 2*kappa*[c_g(t) - e^{i*phi} c_g(t - tau)].
Trajectory simulate_cm(const FeedbackParams& params, double t_max,
                       int steps_per_delay = kDefaultStepsPerDelay, InitialAmplitudes initial = {});

// Discrete-mode reservoir: a tap at every multiple of tau,
//   dc_g/dt = i*gamma*c_e - 2*kappa1*c_g
//             + 4*kappa*[c_g/2 - sum_q (-1)^q e^{-i*delta0*q*tau} c_g(t - q*tau)].
// The comb sum obeys S(t) = c_g(t) - e^{-i*phi} S(t - tau) and is carried as an
// auxiliary history channel, so each step costs O(1) regardless of t / tau.
Trajectory simulate_dm_delay(const FeedbackParams& params, double t_max,
                             int steps_per_delay = kDefaultStepsPerDelay,
                             InitialAmplitudes initial = {});

struct ModeSumOptions {
    int modes = 0;              // N: modes q = -N..N. 0 picks recommended_modes().
    int register_stride = 0;    // snapshot every k output samples; 0 picks ~200 snapshots
};

struct ModeSumResult {
    Trajectory trajectory;      // sampled on the tau / steps_per_delay grid
    ModeRegister modes;
    int substeps = 1;           // RK4 steps per output sample
    std::vector<std::string> warnings;
};

// Smallest N with max|delta_q| >= 40 * max(gamma, kappa, 2*pi/tau).
int recommended_modes(const FeedbackParams& params);

// Truncated mode expansion of the discrete reservoir: 2N+3 coupled ODEs in the
// interaction picture,
//   dc_g/dt     = i*gamma*c_e - 2*kappa1*c_g + i*g*sum_q (-1)^q e^{-i*delta_q*t} c_{g,q}
//   dc_{g,q}/dt = i*g*(-1)^q e^{+i*delta_q*t} c_g
// with g = 2*sqrt(kappa/tau). The internal step is the output step divided
// until dt <= 2*pi / (40 * max|delta_q|).
ModeSumResult simulate_dm_modesum(const FeedbackParams& params, double t_max,
                                  int steps_per_delay = kDefaultStepsPerDelay,
                                  ModeSumOptions options = {}, InitialAmplitudes initial = {});

// Dispatches on kind; DiscreteModeSum uses default ModeSumOptions.
Trajectory simulate(ModelKind kind, const FeedbackParams& params, double t_max,
                    int steps_per_delay = kDefaultStepsPerDelay, InitialAmplitudes initial = {});

}  // namespace jcfb
