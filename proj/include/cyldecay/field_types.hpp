#pragma once

#include "cyldecay/log_scalar.hpp"

#include <complex>
#include <vector>

namespace cyldecay {

enum class Axis { X, Y };

/// Spatial carrier of one mode: a cosine (elliptic) or e^{i k.} (parabolic).
enum class Carrier { Cosine, ComplexExp };

struct ModeInfo {
    Axis axis = Axis::X;
    int k = 1;
    Carrier carrier = Carrier::Cosine;
};

/// Ellipticity bound Lambda >= 1 and sup of coefficient first derivatives.
struct RegularityClass {
    double Lambda = 1.0;
    double C1bound = 0.0;
};

/// Point evaluation of u and its derivatives at a common log scale:
/// the true quantity is (stored native) * exp(logscale). sup_scale is the
/// sup over the torus of |u(.,.,t)| at the same scale (= |f| + |g|).
struct FieldEval {
    double logscale = 0.0;
    double u = 0.0, ut = 0.0, utt = 0.0;
    double ux = 0.0, uy = 0.0;
    double uxx = 0.0, uyy = 0.0, uxy = 0.0;
    double sup_scale = 0.0;
};

/// Complex counterpart for the parabolic fields.
struct FieldEvalC {
    using C = std::complex<double>;
    double logscale = 0.0;
    C u{}, ut{};
    C ux{}, uy{};
    C uxx{}, uyy{};
    double sup_scale = 0.0;
};

/// Coefficient matrix (symmetric 2x2) and its first derivatives at a point.
struct CoeffEval {
    double a11 = 1.0, a12 = 0.0, a22 = 1.0;
    double dx11 = 0.0, dx12 = 0.0, dx22 = 0.0;
    double dy11 = 0.0, dy12 = 0.0, dy22 = 0.0;
    double dt11 = 0.0, dt12 = 0.0, dt22 = 0.0;

    /// Eigenvalues of the symmetric part.
    void eigenvalues(double& lo, double& hi) const;
    /// Largest |entry| of A - Id.
    double dev_from_identity() const;
    /// Largest first-derivative magnitude over all entries and directions.
    double max_derivative() const;
};

/// Drift vector for the parabolic equation, with one-sided continuity data.
struct DriftEval {
    std::complex<double> b1{}, b2{};
};

/// Per-axis profile magnitudes at a time; sup over T^2 of |u| is their sum.
struct SupEval {
    LogScalar fx; // magnitude of the X-axis mode profile
    LogScalar fy; // magnitude of the Y-axis mode profile
    LogScalar total() const { return log_add(fx.abs(), fy.abs()); }
};

/// Force a side when evaluating exactly at an interval endpoint shared by
/// two pieces; Auto resolves to the piece whose closed interval contains t.
enum class Side { Auto, Left, Right };

} // namespace cyldecay
