#include "cyldecay/planar.hpp"

#include <cmath>

namespace cyldecay {

std::array<double, 2> vector_field_add(const PlanarParams& p, double x, double y) {
    const double k = p.k, kp = p.kprime;
    const double skx = std::sin(k * x);
    return {std::sin(2.0 * k * x) * std::cos(kp * y) / (2.0 * k),
            2.0 * std::sin(kp * y) * skx * skx / kp};
}

std::array<double, 2> vector_field_remove(const PlanarParams& p, double x, double y) {
    const double k = p.k, kp = p.kprime;
    const double sky = std::sin(kp * y);
    return {2.0 * std::sin(k * x) * sky * sky / k,
            std::sin(2.0 * kp * y) * std::cos(k * x) / (2.0 * kp)};
}

PlanarMatrix matrix_add(const PlanarParams& p, double x, double y) {
    const double k = p.k, kp = p.kprime;
    const double sky = std::sin(kp * y);
    PlanarMatrix m;
    m.a12 = -2.0 * sky * std::sin(k * x) / (k * kp);
    m.a11 = -std::cos(kp * y) * std::cos(k * x) / (k * k) + 2.0 * p.s * sky * sky / (k * k);
    m.a22 = 0.0;
    return m;
}

PlanarMatrix matrix_remove(const PlanarParams& p, double x, double y) {
    const double k = p.k, kp = p.kprime;
    const double skx = std::sin(k * x);
    PlanarMatrix m;
    m.a12 = -2.0 * skx * std::sin(kp * y) / (k * kp);
    m.a22 = -std::cos(k * x) * std::cos(kp * y) / (kp * kp) + 2.0 * p.s * skx * skx / (kp * kp);
    m.a11 = 0.0;
    return m;
}

PlanarMatrixGrad matrix_add_grad(const PlanarParams& p, double x, double y) {
    const double k = p.k, kp = p.kprime;
    const double skx = std::sin(k * x), ckx = std::cos(k * x);
    const double sky = std::sin(kp * y), cky = std::cos(kp * y);
    PlanarMatrixGrad g;
    g.dx12 = -2.0 * sky * ckx / kp;
    g.dy12 = -2.0 * cky * skx / k;
    g.dx11 = cky * skx / k;
    g.dy11 = kp * sky * ckx / (k * k) + 4.0 * p.s * kp * sky * cky / (k * k);
    return g;
}

PlanarMatrixGrad matrix_remove_grad(const PlanarParams& p, double x, double y) {
    const double k = p.k, kp = p.kprime;
    const double skx = std::sin(k * x), ckx = std::cos(k * x);
    const double sky = std::sin(kp * y), cky = std::cos(kp * y);
    PlanarMatrixGrad g;
    g.dx12 = -2.0 * ckx * sky / kp;
    g.dy12 = -2.0 * skx * cky / k;
    g.dy22 = ckx * sky / kp;
    g.dx22 = k * skx * cky / (kp * kp) + 4.0 * p.s * k * skx * ckx / (kp * kp);
    return g;
}

PlanarMatrix matrix_s_derivative(PlanarVariant variant, const PlanarParams& p, double x, double y) {
    PlanarMatrix m;
    if (variant == PlanarVariant::Add) {
        const double sky = std::sin(p.kprime * y);
        m.a11 = 2.0 * sky * sky / (double(p.k) * p.k);
    } else {
        const double skx = std::sin(p.k * x);
        m.a22 = 2.0 * skx * skx / (double(p.kprime) * p.kprime);
    }
    return m;
}

} // namespace cyldecay
