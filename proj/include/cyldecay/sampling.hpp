#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cyldecay {

/// Low-discrepancy points, deterministic for a given seed: a Halton sequence
/// (bases 2, 3, 5) entered at an offset derived from the seed.
class HaltonSampler {
public:
    explicit HaltonSampler(std::uint64_t seed) : index_(1 + (seed % 9973) * 131071) {}

    /// Next triple in [0,1)^3.
    void next(double& u0, double& u1, double& u2);

private:
    static double radical_inverse(std::uint64_t i, std::uint64_t base);
    std::uint64_t index_;
};

/// Ordinary least squares y ~ c0 + c1 x. Returns slope/intercept and R^2.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Least squares y ~ c0 + c1 x + c2 x^2.
struct QuadraticFit {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double r2 = 0.0;
};
QuadraticFit fit_quadratic(const std::vector<double>& x, const std::vector<double>& y);

/// Deterministic parallel loop: the index space is split into fixed chunks,
/// each chunk reduced in index order, chunk results combined sequentially,
/// so results do not depend on the worker count.
void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(std::size_t chunk_id, std::size_t begin,
                                              std::size_t end)>& body);

/// Chunk size used by parallel_chunks (exposed so callers can preallocate
/// per-chunk accumulators).
inline constexpr std::size_t kChunkSize = 1024;

} // namespace cyldecay
