// Independent reference solutions used by the unit tests. Nothing here calls
// into the library.
#pragma once

#include <cmath>
#include <complex>

namespace oracle {

using cplx = std::complex<double>;

inline double exp_decay(double rate, double t) { return std::exp(-rate * t); }

// dc/dt = c(t - tau), c(0) = 1, zero pre-history: sum_k (t - k tau)^k / k!
inline double unit_delay(double t, double tau) {
    double sum = 0.0, factorial = 1.0;
    for (int k = 0; t - k * tau >= 0.0; ++k) {
        if (k > 0) factorial *= k;
        sum += std::pow(t - k * tau, k) / factorial;
    }
    return sum;
}

// dc/dt = i w c + a c(t - tau), c(0) = 1, zero pre-history.
inline cplx rotating_delay(double w, double a, double tau, double t) {
    cplx sum{};
    double factorial = 1.0;
    for (int k = 0; t - k * tau >= 0.0; ++k) {
        if (k > 0) factorial *= k;
        const double u = t - k * tau;
        sum += std::pow(a * u, k) / factorial * std::polar(1.0, w * u);
    }
    return sum;
}

// Cavity amplitude of the damped Rabi problem
//   dc_e/dt = i g c_g,  dc_g/dt = i g c_e - 2 k c_g,  c_e(0) = 1, c_g(0) = 0
// written as (i g / W) e^{-k t} sin(W t), W = sqrt(g^2 - k^2).
inline cplx damped_rabi_cg(double g, double k, double t) {
    const double w2 = g * g - k * k;
    double shape;
    if (std::abs(w2) < 1e-14 * (g * g + k * k)) {
        shape = t;
    } else if (w2 > 0.0) {
        shape = std::sin(std::sqrt(w2) * t) / std::sqrt(w2);
    } else {
        shape = std::sinh(std::sqrt(-w2) * t) / std::sqrt(-w2);
    }
    return cplx{0.0, g * shape * std::exp(-k * t)};
}

inline cplx damped_rabi_ce(double g, double k, double t) {
    const double w2 = g * g - k * k;
    double c, s;
    if (std::abs(w2) < 1e-14 * (g * g + k * k)) {
        c = 1.0;
        s = t;
    } else if (w2 > 0.0) {
        c = std::cos(std::sqrt(w2) * t);
        s = std::sin(std::sqrt(w2) * t) / std::sqrt(w2);
    } else {
        c = std::cosh(std::sqrt(-w2) * t);
        s = std::sinh(std::sqrt(-w2) * t) / std::sqrt(-w2);
    }
    return (c + k * s) * std::exp(-k * t);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// The gamma == kappa discrete-mode series in its commonly quoted form, with
// exponent sign `s` on kappa (t - p tau):
//   i { sum_{m>=1, l<=m, p>=0} (-4)^m (-1)^p C(m,l) C(p+m-1,p)
//       [k(t - p tau)]^{m+l+1}/(m+l+1)! e^{s k (t - p tau) - i p phi} + k t e^{s k t} }
inline cplx quoted_series_dm(double k, double tau, double phi, double t, int sign, int m_max, int p_max) {
    cplx sum = k * t * std::exp(sign * k * t);
    for (int p = 0; p <= p_max && t - p * tau >= 0.0; ++p) {
        const double x = k * (t - p * tau);
        for (int m = 1; m <= m_max; ++m) {
            for (int l = 0; l <= m; ++l) {
                const double coeff = std::pow(-4.0, m) * ((p % 2) ? -1.0 : 1.0) * binomial(m, l) *
                                     binomial(p + m - 1, p);
                sum += coeff * std::pow(x, m + l + 1) / factorial(m + l + 1) * std::exp(sign * x) *
                       std::polar(1.0, -p * phi);
            }
        }
    }
    return cplx{0.0, 1.0} * sum;
}

// Continuous-mode counterpart:
//   i { sum_{m>=1, l<=m} 2^m (-1)^l C(m,l) [k(t - l tau)]^{m+l+1}/(m+l+1)!
//       e^{s k (t - l tau) + i l phi} + k t e^{s k t} }
inline cplx quoted_series_cm(double k, double tau, double phi, double t, int sign, int m_max) {
    cplx sum = k * t * std::exp(sign * k * t);
    for (int m = 1; m <= m_max; ++m) {
        for (int l = 0; l <= m && t - l * tau >= 0.0; ++l) {
            const double x = k * (t - l * tau);
            sum += std::pow(2.0, m) * ((l % 2) ? -1.0 : 1.0) * binomial(m, l) * std::pow(x, m + l + 1) /
                   factorial(m + l + 1) * std::exp(sign * x) * std::polar(1.0, l * phi);
        }
    }
    return cplx{0.0, 1.0} * sum;
}

}  // namespace oracle
