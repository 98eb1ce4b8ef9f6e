#pragma once

namespace cyldecay {

/// The canonical smooth step theta(t) = 1 - G(tan(pi(t-1/2))), where G is
/// the Gaussian cumulative integral. Equal to 1 for t <= 0, 0 for t >= 1,
/// strictly decreasing in between, with all derivatives vanishing at both
/// ends. sup |theta'| = sqrt(pi), attained at t = 1/2.
double theta(double t);

/// Closed-form derivative of theta of the given order (1, 2 or 3).
/// Each order has the shape exp(-x^2) * P_n(x) with x = tan(pi(t-1/2));
/// returns exactly 0 outside (0, 1).
double theta_deriv(double t, int order);

/// Empirical sup of |theta^(n)| over [0,1], n in {1,2,3}.
double theta_deriv_sup(int order);

/// A scaled and shifted copy of theta (or of 1 - theta).
///
/// Descending windows go 1 -> 0 over [t_start, t_start + width]; ascending
/// ones go 0 -> 1. Order-n derivatives pick up a width^-n factor.
struct Window {
    double t_start = 0.0;
    double width = 1.0;
    bool ascending = false;

    static Window descending(double t_start, double width) { return {t_start, width, false}; }
    static Window ascending_from(double t_start, double width) { return {t_start, width, true}; }

    double value(double t) const;
    double deriv(double t, int order) const;
};

} // namespace cyldecay
