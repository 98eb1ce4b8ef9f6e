#pragma once

#include <functional>
#include <vector>

namespace cyldecay {

/// Renormalized adaptive Dormand-Prince 5(4) integration of the linear
/// second-order problem  g'' = q(t) g.
///
/// The dominant solution grows like e^{k|t - t0|}; after each accepted step
/// the state is divided by its magnitude and the log factor accumulated, so
/// arbitrarily long growth never leaves native range. Steps are stored for
/// dense (cubic Hermite) evaluation.
class SecondOrderLinearOde {
public:
    struct Sample {
        double t;
        double g, dg, ddg; // renormalized; ddg = q(t) g from the ODE
        double logfac;     // true (g, dg) = stored * exp(logfac)
    };

    /// Integrate from t_from to t_to (either direction) with initial data
    /// (g0, dg0) at t_from given at log factor logfac0.
    ///
    /// rate_scale balances g against g' in the error norm and in the
    /// renormalization (use the characteristic rate k).
    void integrate(const std::function<double(double)>& q, double t_from, double t_to, double g0,
                   double dg0, double logfac0, double rate_scale, double rtol = 1e-10,
                   double atol = 1e-12);

    /// Dense evaluation: value, first derivative, and the local log factor.
    /// The second derivative follows from the ODE relation.
    void eval(double t, double& g, double& dg, double& logfac) const;

    const std::vector<Sample>& samples() const { return samples_; }

private:
    std::vector<Sample> samples_;
    bool forward_ = true;
    double rate_scale_ = 1.0;
};

} // namespace cyldecay
