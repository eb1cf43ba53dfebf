#include <cmath>

#include "jcfb/analysis.hpp"

namespace jcfb {

namespace {

// Feedback kernel K(s) and its first two derivatives.
struct Kernel {
    cplx k, dk, d2k;
};

Kernel kernel(const CharacteristicFunction& cf, cplx s) {
    const auto& p = cf.params;
    const double tau = p.tau();
    if (cf.kind == KernelKind::ContinuousMode) {
        if (cf.interval == 0) return {1.0, 0.0, 0.0};
        const cplx e = std::exp(-(s + cplx{0.0, p.delta0()}) * tau);
        return {1.0 - e, tau * e, -tau * tau * e};
    }

    const cplx e = std::exp(-(s + cplx{0.0, p.delta0()}) * tau);
    if (cf.interval == CharacteristicFunction::kInfinite) {
        const cplx d = 1.0 + e;
        if (std::abs(d) < 1e-14) {
            throw DomainError("s lies on a pole of the discrete-mode kernel (exp(-(s+i delta0) tau) = -1)");
        }
        return {2.0 / d - 1.0, 2.0 * tau * e / (d * d), -2.0 * tau * tau * e * (1.0 - e) / (d * d * d)};
    }
    if (cf.interval < 0) throw ValidationError("discrete-mode interval index must be >= 0");

    // sums of (-E)^q weighted by 1, q, q^2
    cplx term = 1.0, s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int q = 0; q <= cf.interval; ++q) {
        s0 += term;
        s1 += static_cast<double>(q) * term;
        s2 += static_cast<double>(q) * q * term;
        term *= -e;
    }
    return {2.0 * s0 - 1.0, -2.0 * tau * s1, 2.0 * tau * tau * s2};
}

}  // namespace

cplx char_eval(const CharacteristicFunction& cf, cplx s) {
    const auto& p = cf.params;
    const Kernel k = kernel(cf, s);
    return s * s + p.gamma() * p.gamma() + 2.0 * p.kappa1() * s + 2.0 * p.kappa() * s * k.k;
}

cplx char_derivative(const CharacteristicFunction& cf, cplx s) {
    const auto& p = cf.params;
    const Kernel k = kernel(cf, s);
    return 2.0 * s + 2.0 * p.kappa1() + 2.0 * p.kappa() * (k.k + s * k.dk);
}

cplx char_second_derivative(const CharacteristicFunction& cf, cplx s) {
    const auto& p = cf.params;
    const Kernel k = kernel(cf, s);
    return 2.0 + 2.0 * p.kappa() * (2.0 * k.dk + s * k.d2k);
}

}  // namespace jcfb
