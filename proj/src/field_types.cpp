#include "cyldecay/field_types.hpp"

#include <algorithm>
#include <cmath>

namespace cyldecay {

void CoeffEval::eigenvalues(double& lo, double& hi) const {
    const double tr = a11 + a22;
    const double d = std::sqrt((a11 - a22) * (a11 - a22) + 4.0 * a12 * a12);
    lo = 0.5 * (tr - d);
    hi = 0.5 * (tr + d);
}

double CoeffEval::dev_from_identity() const {
    return std::max({std::abs(a11 - 1.0), std::abs(a12), std::abs(a22 - 1.0)});
}

double CoeffEval::max_derivative() const {
    return std::max({std::abs(dx11), std::abs(dx12), std::abs(dx22), std::abs(dy11),
                     std::abs(dy12), std::abs(dy22), std::abs(dt11), std::abs(dt12),
                     std::abs(dt22)});
}

} // namespace cyldecay
