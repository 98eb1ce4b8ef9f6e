#include "cyldecay/ode.hpp"
#include "cyldecay/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cyldecay {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct State {
    double g, dg;
};

} // namespace

void SecondOrderLinearOde::integrate(const std::function<double(double)>& q, double t_from,
                                     double t_to, double g0, double dg0, double logfac0,
                                     double rate_scale, double rtol, double atol) {
    samples_.clear();
    forward_ = t_to >= t_from;
    rate_scale_ = std::max(rate_scale, 1.0);
    const double span = t_to - t_from;
    if (span == 0.0) {
        samples_.push_back({t_from, g0, dg0, q(t_from) * g0, logfac0});
        return;
    }

    auto rhs = [&](double t, const State& y) { return State{y.dg, q(t) * y.g}; };

    double t = t_from;
    State y{g0, dg0};
    double logfac = logfac0;

    // initial renormalization
    auto renorm = [&]() {
        const double m = std::max(std::abs(y.g), std::abs(y.dg) / rate_scale_);
        if (m > 0.0 && (m > 4.0 || m < 0.25)) {
            y.g /= m;
            y.dg /= m;
            logfac += std::log(m);
        }
    };
    renorm();
    samples_.push_back({t, y.g, y.dg, q(t) * y.g, logfac});

    double h = span / std::max(16.0, std::abs(span) * rate_scale_ / 0.05);
    if (!forward_) h = -std::abs(h);
    const double hmin = std::abs(span) * 1e-14;
    std::size_t steps = 0;

    while (forward_ ? t < t_to : t > t_to) {
        if (forward_ ? (t + h > t_to) : (t + h < t_to)) h = t_to - t;
        if (++steps > 20000000) throw OdeTolerance("ode: step count exceeded");

        const State k1 = rhs(t, y);
        const State k2 = rhs(t + c2 * h, {y.g + h * a21 * k1.g, y.dg + h * a21 * k1.dg});
        const State k3 = rhs(t + c3 * h, {y.g + h * (a31 * k1.g + a32 * k2.g),
                                          y.dg + h * (a31 * k1.dg + a32 * k2.dg)});
        const State k4 = rhs(t + c4 * h, {y.g + h * (a41 * k1.g + a42 * k2.g + a43 * k3.g),
                                          y.dg + h * (a41 * k1.dg + a42 * k2.dg + a43 * k3.dg)});
        const State k5 =
            rhs(t + c5 * h, {y.g + h * (a51 * k1.g + a52 * k2.g + a53 * k3.g + a54 * k4.g),
                             y.dg + h * (a51 * k1.dg + a52 * k2.dg + a53 * k3.dg + a54 * k4.dg)});
        const State k6 = rhs(
            t + h, {y.g + h * (a61 * k1.g + a62 * k2.g + a63 * k3.g + a64 * k4.g + a65 * k5.g),
                    y.dg + h * (a61 * k1.dg + a62 * k2.dg + a63 * k3.dg + a64 * k4.dg +
                                a65 * k5.dg)});
        State y5{y.g + h * (b1 * k1.g + b3 * k3.g + b4 * k4.g + b5 * k5.g + b6 * k6.g),
                 y.dg + h * (b1 * k1.dg + b3 * k3.dg + b4 * k4.dg + b5 * k5.dg + b6 * k6.dg)};
        const State k7 = rhs(t + h, y5);
        const double err_g =
            h * (e1 * k1.g + e3 * k3.g + e4 * k4.g + e5 * k5.g + e6 * k6.g + e7 * k7.g);
        const double err_dg =
            h * (e1 * k1.dg + e3 * k3.dg + e4 * k4.dg + e5 * k5.dg + e6 * k6.dg + e7 * k7.dg);

        const double sc_g = atol + rtol * std::max(std::abs(y.g), std::abs(y5.g));
        const double sc_dg =
            rate_scale_ * (atol + rtol * std::max(std::abs(y.dg), std::abs(y5.dg)) / rate_scale_);
        const double err = std::max(std::abs(err_g) / sc_g, std::abs(err_dg) / sc_dg);

        if (err <= 1.0) {
            t += h;
            y = y5;
            renorm();
            samples_.push_back({t, y.g, y.dg, q(t) * y.g, logfac});
        }
        const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-10, -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) < hmin) throw OdeTolerance("ode: step size underflow");
    }
}

void SecondOrderLinearOde::eval(double t, double& g, double& dg, double& logfac) const {
    if (samples_.empty()) throw OdeTolerance("ode: not integrated");
    if (samples_.size() == 1) {
        g = samples_[0].g;
        dg = samples_[0].dg;
        logfac = samples_[0].logfac;
        return;
    }
    // locate the bracketing step (samples are monotone in t)
    std::size_t lo = 0, hi = samples_.size() - 1;
    auto before = [&](double a, double b) { return forward_ ? a <= b : a >= b; };
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (before(samples_[mid].t, t))
            lo = mid;
        else
            hi = mid;
    }
    const Sample& L = samples_[lo];
    const Sample& R = samples_[hi];
    const double hstep = R.t - L.t;
    if (hstep == 0.0) {
        g = L.g;
        dg = L.dg;
        logfac = L.logfac;
        return;
    }
    // rescale the right endpoint to the left log factor
    const double r = std::exp(R.logfac - L.logfac);
    const double gR = R.g * r, dgR = R.dg * r, ddgR = R.ddg * r;
    const double s = (t - L.t) / hstep;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2,
                 h11 = s3 - s2;
    g = h00 * L.g + h10 * hstep * L.dg + h01 * gR + h11 * hstep * dgR;
    // g' gets its own Hermite cubic, with node second derivatives from the ODE
    dg = h00 * L.dg + h10 * hstep * L.ddg + h01 * dgR + h11 * hstep * ddgR;
    logfac = L.logfac;
}

} // namespace cyldecay
