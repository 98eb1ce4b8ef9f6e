#include "cyldecay/smooth_step.hpp"
#include "cyldecay/errors.hpp"

#include <cmath>

namespace cyldecay {

namespace {

// Naive evaluation at the endpoints forms tan near +-pi/2 and produces
// NaN*0; the analytic limits are exact, so a guard band returns them.
constexpr double kGuard = 1e-9;
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

} // namespace

double theta(double t) {
    if (t <= kGuard) return 1.0;
    if (t >= 1.0 - kGuard) return 0.0;
    const double x = std::tan(kPi * (t - 0.5));
    // G(x) = (1 + erf(x)) / 2
    return 1.0 - 0.5 * (1.0 + std::erf(x));
}

double theta_deriv(double t, int order) {
    if (order < 1 || order > 3) throw ParameterDomain("theta_deriv: order must be 1, 2 or 3");
    if (t <= kGuard || t >= 1.0 - kGuard) return 0.0;
    const double x = std::tan(kPi * (t - 0.5));
    const double x2 = x * x;
    const double e = std::exp(-x2);
    if (e == 0.0) return 0.0;
    switch (order) {
    case 1:
        return -kSqrtPi * e * (1.0 + x2);
    case 2:
        return 2.0 * kSqrtPi * kPi * e * x * x2 * (1.0 + x2);
    default:
        return 2.0 * kSqrtPi * kPi * kPi * e * x2 * (1.0 + x2) * (3.0 + 3.0 * x2 - 2.0 * x2 * x2);
    }
}

double theta_deriv_sup(int order) {
    switch (order) {
    case 1:
        return kSqrtPi;
    case 2:
        return 12.885701806161232; // max of 2 sqrt(pi) pi x^3 (1+x^2) e^{-x^2}
    case 3:
        return 231.19415606274179;
    default:
        throw ParameterDomain("theta_deriv_sup: order must be 1, 2 or 3");
    }
}

double Window::value(double t) const {
    const double v = theta((t - t_start) / width);
    return ascending ? 1.0 - v : v;
}

double Window::deriv(double t, int order) const {
    if (order == 0) return value(t);
    double d = theta_deriv((t - t_start) / width, order);
    for (int i = 0; i < order; ++i) d /= width;
    return ascending ? -d : d;
}

} // namespace cyldecay
