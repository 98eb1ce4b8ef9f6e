#pragma once

#include <array>

namespace cyldecay {

/// Symmetric 2x2 matrix evaluated at a point.
struct PlanarMatrix {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;
};

/// First spatial derivatives of a PlanarMatrix.
struct PlanarMatrixGrad {
    double dx11 = 0.0, dx12 = 0.0, dx22 = 0.0;
    double dy11 = 0.0, dy12 = 0.0, dy22 = 0.0;
};

/// Wavenumber pair and mixing amplitude for the two-mode matrix lemmas.
/// The canonical domain is 1 <= k <= kprime <= 2k, s >= 0.
struct PlanarParams {
    int k = 1;
    int kprime = 1;
    double s = 0.0;

    bool canonical() const { return k >= 1 && k <= kprime && kprime <= 2 * k && s >= 0.0; }
};

enum class PlanarVariant { Add, Remove };

/// V with div(V) = cos(k'y); paired with matrix_add for u = cos(kx) + s cos(k'y).
std::array<double, 2> vector_field_add(const PlanarParams& p, double x, double y);

/// V with div(V) = cos(kx); the x<->y, k<->k' mirror, paired with matrix_remove
/// for v = s cos(kx) + cos(k'y).
std::array<double, 2> vector_field_remove(const PlanarParams& p, double x, double y);

/// A_s = (a_s, b_s; b_s, 0) with A_s grad(u) = vector_field_add pointwise.
/// Entries are bounded by 4(1+|s|)/k^2 and gradients by 4(1+|s|)/k.
PlanarMatrix matrix_add(const PlanarParams& p, double x, double y);

/// A_s = (0, b_s; b_s, c_s) with A_s grad(v) = vector_field_remove pointwise.
/// Same bounds with k' in the denominator role.
PlanarMatrix matrix_remove(const PlanarParams& p, double x, double y);

PlanarMatrixGrad matrix_add_grad(const PlanarParams& p, double x, double y);
PlanarMatrixGrad matrix_remove_grad(const PlanarParams& p, double x, double y);

/// d/ds of the matrix entries; only the s-linear term survives.
PlanarMatrix matrix_s_derivative(PlanarVariant variant, const PlanarParams& p, double x, double y);

/// Frozen implicit constant of the entry/gradient norm bounds.
inline constexpr double kPlanarBoundConstant = 4.0;

} // namespace cyldecay
