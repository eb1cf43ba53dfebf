#include <cmath>
#include <limits>

#include "jcfb/analysis.hpp"

namespace jcfb {

namespace {

// Neumaier-compensated complex sum that also tracks sum |term| for the
// cancellation estimate.
class CompensatedSum {
public:
    void add(cplx z) {
        add_part(re_, re_c_, z.real());
        add_part(im_, im_c_, z.imag());
        magnitude_ += std::abs(z);
    }
    cplx value() const { return {re_ + re_c_, im_ + im_c_}; }
    double magnitude() const { return magnitude_; }

private:
    static void add_part(double& sum, double& comp, double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0, magnitude_ = 0.0;
};

void require_series_regime(const FeedbackParams& p, double t) {
    if (std::abs(p.gamma() - p.kappa()) > 1e-12 * p.kappa()) {
        throw ValidationError("series solutions require gamma == kappa");
    }
    if (p.kappa1() != 0.0) throw ValidationError("series solutions require kappa1 == 0");
    if (!std::isfinite(t) || t < 0.0) throw ValidationError("series time must be finite and >= 0");
}

double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// x^n / n! computed in log space for large n, directly otherwise.
double power_over_factorial(double x, int n) {
    if (x <= 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(x) - std::lgamma(n + 1.0));
}

CompensatedSum sum_cm(const FeedbackParams& p, double t, int m_max) {
    CompensatedSum acc;
    const double k = p.kappa();
    for (int m = 0; m <= m_max; ++m) {
        const double x = k * (t - m * p.tau());
        if (x <= 0.0) break;
        const cplx phase = std::polar(std::exp(-x), m * p.phi());
        const double scale = std::ldexp(1.0, m);
        for (int l = 0; l <= m; ++l) {
            const double sign = (l % 2 == 0) ? 1.0 : -1.0;
            acc.add(sign * scale * binomial(m, l) * power_over_factorial(x, m + l + 1) * phase);
        }
    }
    return acc;
}

CompensatedSum sum_dm(const FeedbackParams& p, double t, int m_max, int p_max) {
    CompensatedSum acc;
    const double k = p.kappa();
    for (int m = 0; m <= m_max; ++m) {
        const double scale = std::ldexp(1.0, 2 * m);
        const int p_top = (m == 0) ? 0 : p_max;
        for (int q = 0; q <= p_top; ++q) {
            const int delays = m + q;
            const double x = k * (t - delays * p.tau());
            if (x <= 0.0) break;
            const cplx phase = std::polar(std::exp(-x), -delays * p.phi());
            const double weight = scale * (m == 0 ? 1.0 : binomial(q + m - 1, q)) *
                                  ((q % 2 == 0) ? 1.0 : -1.0);
            for (int l = 0; l <= m; ++l) {
                const double sign = (l % 2 == 0) ? 1.0 : -1.0;
                acc.add(sign * weight * binomial(m, l) * power_over_factorial(x, m + l + 1) * phase);
            }
        }
    }
    return acc;
}

cplx checked(const CompensatedSum& base, const CompensatedSum& doubled) {
    constexpr double kTolerance = 1e-8;
    const double rounding = 16.0 * std::numeric_limits<double>::epsilon() * doubled.magnitude();
    if (rounding >= kTolerance) {
        throw DomainError("series cancellation exceeds 1e-8 at this time; use the delay-equation backend");
    }
    if (std::abs(doubled.value() - base.value()) >= kTolerance) {
        throw DomainError("series not converged at these orders (doubling them changes the result); "
                          "raise the orders or use the delay-equation backend");
    }
    return cplx{0.0, 1.0} * base.value();
}

}  // namespace

cplx series_cm(const FeedbackParams& params, double t, int m_max) {
    require_series_regime(params, t);
    if (m_max < 0) throw ValidationError("m_max must be >= 0");
    return checked(sum_cm(params, t, m_max), sum_cm(params, t, 2 * m_max + 1));
}

cplx series_dm(const FeedbackParams& params, double t, int m_max, int p_max) {
    require_series_regime(params, t);
    if (m_max < 0 || p_max < 0) throw ValidationError("series orders must be >= 0");
    return checked(sum_dm(params, t, m_max, p_max), sum_dm(params, t, 2 * m_max + 1, 2 * p_max + 1));
}

double series_horizon(const FeedbackParams& params, KernelKind kind, int m_max, int p_max,
                      double t_limit) {
    const double step = params.tau() / 50.0;
    double last = 0.0;
    for (double t = 0.0; t <= t_limit; t += step) {
        try {
            if (kind == KernelKind::ContinuousMode) {
                series_cm(params, t, m_max);
            } else {
                series_dm(params, t, m_max, p_max);
            }
        } catch (const DomainError&) {
            break;
        }
        last = t;
    }
    return last;
}

}  // namespace jcfb
