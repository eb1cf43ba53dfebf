// analysis.hpp — Laplace-domain and closed-form results for the feedback models
//
// Characteristic functions (denominators of the Laplace-transformed cavity
// amplitude), Newton pole search, the partial sums behind the discrete-mode
// Rabi argument, steady-state trapping, the two-cavity normal modes, emission
// spectra and the gamma == kappa series solutions.

#pragma once

#include <stdexcept>
#include <vector>

#include "jcfb/core_types.hpp"
#include "jcfb/models.hpp"

namespace jcfb {

// Evaluation outside an expression's domain (kernel pole, unstable series).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class KernelKind { ContinuousMode, DiscreteMode };

// D(s) = s^2 + gamma^2 + 2*kappa1*s + 2*kappa*s*K(s), E = exp(-(s + i*delta0)*tau):
//   continuous mode, interval 0:   K = 1
//   continuous mode, interval >= 1: K = 1 - E
//   discrete mode, interval n:     K = 2*sum_{q=0}^{n} (-E)^q - 1
//   discrete mode, kInfinite:      K = 2/(1 + E) - 1
// The closed discrete kernel is the geometric sum for Re s > 0 and its
// analytic continuation elsewhere.
struct CharacteristicFunction {
    static constexpr int kInfinite = -1;

    KernelKind kind;
    int interval;
    FeedbackParams params;

    static CharacteristicFunction continuous(const FeedbackParams& p, int interval = 1) {
        return {KernelKind::ContinuousMode, interval, p};
    }
    static CharacteristicFunction discrete(const FeedbackParams& p, int interval = kInfinite) {
        return {KernelKind::DiscreteMode, interval, p};
    }
};

// D(s). Throws DomainError on a pole of the closed discrete kernel (E = -1).
cplx char_eval(const CharacteristicFunction& cf, cplx s);
// dD/ds and d2D/ds2, same domain as char_eval.
cplx char_derivative(const CharacteristicFunction& cf, cplx s);
cplx char_second_derivative(const CharacteristicFunction& cf, cplx s);

struct SearchBox {
    double re_min, re_max, im_min, im_max;
};

struct Pole {
    cplx s;
    double abs_d;       // |D(s)| at the reported root
    int multiplicity;   // 1, or 2 when D' vanishes there as well
};

// Newton iterations from the centres of a grid x grid mesh over the box.
// Keeps roots inside the box with |D| < 1e-10 * scale, scale = max(gamma,
// kappa, kappa1, 1/tau)^2, merged within 1e-6 * max(kappa, gamma). Double
// roots are refined on D' and flagged. Returns roots sorted by (Re, Im).
std::vector<Pole> find_poles(const CharacteristicFunction& cf, const SearchBox& box,
                             int grid = 40);

// sum_{q=0}^{n} (-1)^q cos(q*(mu + delta0)*tau) for n = 0..n_max.
std::vector<double> dm_rabi_diagnostic(const FeedbackParams& params, double mu, int n_max);

// True when phi is within 1e-9 of an odd multiple of pi.
bool is_odd_pi_phase(double phi);

// Long-time limit of c_e for the discrete-mode model: 1/(1 + eta),
// eta = gamma^2 tau / (4 kappa), for odd-pi phases, 0 for every other phase.
cplx steady_state_dm(const FeedbackParams& params);

// Throws ValidationError when gamma or big_g is negative or both are zero.
NormalModeSet normal_modes(double gamma, double big_g);

// S(omega) = (2 kappa1 / pi) |c_g~(-i omega)|^2 in closed form. NoFeedback
// and ContinuousMode use their rational/trigonometric forms; the discrete
// kinds (delay and mode-sum describe the same reservoir) use the tan-free
// form, with the removable 0/0 at omega = 0 for odd-pi phases replaced by
// its limit. Throws ValidationError when kappa1 <= 0.
Spectrum spectrum(const FeedbackParams& params, ModelKind kind, const std::vector<double>& omegas);
double spectral_density(const FeedbackParams& params, ModelKind kind, double omega);

// Symmetric uniform grid of `points` frequencies on [-limit, limit].
std::vector<double> symmetric_grid(double limit, std::size_t points);

// Cavity amplitude for gamma == kappa, kappa1 == 0 as an explicit sum over
// delay orders (exact once the orders cover t / tau). Terms with delay
// index m (and p) carry Theta(t - (m + p) tau).
//   continuous: i sum_{m,l} 2^m (-1)^l C(m,l) x^{m+l+1}/(m+l+1)! e^{-x + i m phi},
//               x = kappa (t - m tau)
//   discrete:   i sum_{m,l,p} 4^m (-1)^{l+p} C(m,l) C(p+m-1,p) x^{m+l+1}/(m+l+1)!
//               e^{-x - i (m+p) phi},  x = kappa (t - (m + p) tau)
// The discrete sum equals the resummed form with delays on p only,
//   i { sum_{m>=1,l,p} (-4)^m (-1)^p C(m,l) C(p+m-1,p) y^{m+l+1}/(m+l+1)! e^{+y - i p phi} + k t e^{k t} },
// y = kappa (t - p tau), which needs unbounded m and cancels like e^{3y}.
// Throws ValidationError outside gamma == kappa, kappa1 == 0 and DomainError
// when doubling the orders moves the result by 1e-8 or more, or when
// cancellation leaves less than 1e-8 absolute accuracy.
cplx series_cm(const FeedbackParams& params, double t, int m_max);
cplx series_dm(const FeedbackParams& params, double t, int m_max, int p_max);

// Largest t (on a tau/50 grid, up to t_limit) for which the series above
// evaluates without DomainError at the given orders.
double series_horizon(const FeedbackParams& params, KernelKind kind, int m_max, int p_max,
                      double t_limit);

}  // namespace jcfb
