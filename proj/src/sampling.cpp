#include "cyldecay/sampling.hpp"

#include <cmath>
#include <thread>

namespace cyldecay {

double HaltonSampler::radical_inverse(std::uint64_t i, std::uint64_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= double(base);
        r += f * double(i % base);
        i /= base;
    }
    return r;
}

void HaltonSampler::next(double& u0, double& u1, double& u2) {
    u0 = radical_inverse(index_, 2);
    u1 = radical_inverse(index_, 3);
    u2 = radical_inverse(index_, 5);
    ++index_;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit f;
    const std::size_t n = x.size();
    if (n < 2) return f;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += e * e;
    }
    f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y) {
    QuadraticFit f;
    const std::size_t n = x.size();
    if (n < 3) return f;
    // normal equations for [1, x, x^2]
    double s0 = double(n), s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double b0 = 0, b1 = 0, b2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i], x2 = xi * xi;
        s1 += xi;
        s2 += x2;
        s3 += x2 * xi;
        s4 += x2 * x2;
        b0 += y[i];
        b1 += y[i] * xi;
        b2 += y[i] * x2;
    }
    // solve the 3x3 system by Cramer's rule
    const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s2 * s3) +
                       s2 * (s1 * s3 - s2 * s2);
    if (det == 0.0) return f;
    f.c0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) + s2 * (b1 * s3 - b2 * s2)) / det;
    f.c1 = (s0 * (b1 * s4 - b2 * s3) - b0 * (s1 * s4 - s2 * s3) + s2 * (s1 * b2 - s2 * b1)) / det;
    f.c2 = (s0 * (s2 * b2 - s3 * b1) - s1 * (s1 * b2 - s2 * b1) + b0 * (s1 * s3 - s2 * s2)) / det;
    double ss_res = 0, syy = 0;
    const double my = b0 / n;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.c0 + f.c1 * x[i] + f.c2 * x[i] * x[i]);
        ss_res += e * e;
        syy += (y[i] - my) * (y[i] - my);
    }
    f.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t nchunks = (n + kChunkSize - 1) / kChunkSize;
    if (workers <= 1 || nchunks == 1) {
        for (std::size_t c = 0; c < nchunks; ++c)
            body(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
        return;
    }
    std::vector<std::thread> pool;
    const int nw = std::min<std::size_t>(workers, nchunks);
    for (int w = 0; w < nw; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t c = w; c < nchunks; c += nw)
                body(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace cyldecay
