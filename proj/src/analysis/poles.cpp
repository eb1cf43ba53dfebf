#include <algorithm>
#include <cmath>

#include "jcfb/analysis.hpp"

namespace jcfb {

namespace {

struct Scales {
    double rate;       // max(kappa, gamma): length scale in the s plane
    double tolerance;  // acceptance bound on |D|
};

Scales scales_for(const FeedbackParams& p) {
    const double r = std::max({p.gamma(), p.kappa(), p.kappa1(), 1.0 / p.tau()});
    return {std::max(p.kappa(), p.gamma()), 1e-10 * r * r};
}

bool inside(const SearchBox& box, cplx s, double slack) {
    return s.real() >= box.re_min - slack && s.real() <= box.re_max + slack &&
           s.imag() >= box.im_min - slack && s.imag() <= box.im_max + slack;
}

// Plain Newton on D from one seed; returns false when the iteration leaves
// the neighbourhood of the box or hits a kernel pole.
bool newton(const CharacteristicFunction& cf, const SearchBox& box, double rate, cplx& s) {
    const double width = std::max(box.re_max - box.re_min, box.im_max - box.im_min);
    for (int it = 0; it < 200; ++it) {
        const cplx d = char_eval(cf, s);
        if (d == cplx{}) return true;
        const cplx dp = char_derivative(cf, s);
        if (dp == cplx{}) return true;
        cplx step = d / dp;
        if (std::abs(step) > 0.5 * width) step *= 0.5 * width / std::abs(step);
        s -= step;
        if (!inside(box, s, width)) return false;
        if (std::abs(step) < 1e-15 * rate) return true;
    }
    return true;
}

}  // namespace

std::vector<Pole> find_poles(const CharacteristicFunction& cf, const SearchBox& box, int grid) {
    if (!std::isfinite(box.re_min) || !std::isfinite(box.re_max) || !std::isfinite(box.im_min) ||
        !std::isfinite(box.im_max) || box.re_min >= box.re_max || box.im_min >= box.im_max) {
        throw ValidationError("pole search box must be finite with min < max on both axes");
    }
    if (grid < 1) throw ValidationError("pole search grid must be >= 1");

    const Scales sc = scales_for(cf.params);
    const double merge = 1e-6 * sc.rate;
    std::vector<Pole> found;

    for (int a = 0; a < grid; ++a) {
        for (int b = 0; b < grid; ++b) {
            const double re = box.re_min + (a + 0.5) * (box.re_max - box.re_min) / grid;
            const double im = box.im_min + (b + 0.5) * (box.im_max - box.im_min) / grid;
            cplx s{re, im};
            try {
                if (!newton(cf, box, sc.rate, s)) continue;
                int multiplicity = 1;
                const cplx d2 = char_second_derivative(cf, s);
                if (d2 != cplx{} &&
                    std::abs(char_derivative(cf, s) / d2) < 1e-4 * sc.rate) {
                    // D' nearly vanishes too: the root is (close to) double;
                    // it is a simple root of D', where Newton converges fast.
                    cplx r = s;
                    for (int it = 0; it < 50; ++it) {
                        const cplx dd = char_second_derivative(cf, r);
                        if (dd == cplx{}) break;
                        const cplx step = char_derivative(cf, r) / dd;
                        r -= step;
                        if (std::abs(step) < 1e-15 * sc.rate) break;
                    }
                    if (std::abs(char_eval(cf, r)) < sc.tolerance) {
                        s = r;
                        multiplicity = 2;
                    }
                }
                const double abs_d = std::abs(char_eval(cf, s));
                if (!(abs_d < sc.tolerance) || !inside(box, s, 1e-9 * sc.rate)) continue;

                auto same = std::find_if(found.begin(), found.end(),
                                         [&](const Pole& p) { return std::abs(p.s - s) < merge; });
                if (same == found.end()) {
                    found.push_back({s, abs_d, multiplicity});
                } else if (abs_d < same->abs_d) {
                    *same = {s, abs_d, std::max(multiplicity, same->multiplicity)};
                }
            } catch (const DomainError&) {
                continue;
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const Pole& x, const Pole& y) {
        if (x.s.real() != y.s.real()) return x.s.real() < y.s.real();
        return x.s.imag() < y.s.imag();
    });
    return found;
}

}  // namespace jcfb
