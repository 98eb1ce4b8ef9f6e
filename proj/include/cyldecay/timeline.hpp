#pragma once

#include "cyldecay/segment.hpp"

#include <optional>
#include <vector>

namespace cyldecay {

enum class TimelineKind { Harmonic, EigenHalf, EigenFull, PlisMiller, Gaussian, Parabolic };

const char* timeline_kind_name(TimelineKind k);
TimelineKind timeline_kind_from_name(const std::string& name);

/// Strict packing keeps the paper's fixed block layout (needs large
/// frequencies); flexible stretches the pre-acceleration window so small
/// frequencies fit, at the cost of non-standard block lengths.
enum class PackingMode { Strict, Flexible };

/// Per-block bookkeeping: frequencies, parity, value scales at both ends,
/// and the eigen-lift junction data.
struct Block {
    int index = 1;            // 1-based position in the chain
    double t0 = 0.0, t1 = 0.0;
    int k_in = 1, k_out = 1;
    bool swapped = false;     // even blocks exchange x and y
    bool lift_applies = true; // false on the symmetrization head
    LogScalar v_in, v_out;    // value scale of the single carrying mode at t0 / t1
    std::size_t seg_begin = 0, seg_end = 0; // [begin, end) into segments

    // eigen-lift data (valid when the timeline carries a lift):
    // entries use k_in, k_out, k2 = k_{n+2}, k3 = k_{n+3} and the junction
    // times t1 (own end) and t_next (end of the following block).
    double lift_k2 = 0.0, lift_k3 = 0.0;
    double t_next = 0.0;
};

/// An ordered, contiguous chain of segments with block bookkeeping.
/// Evaluation applies the per-block parity swap, the eigen lift, and (for
/// the full cylinder) the even reflection about t = 0.
class Timeline {
public:
    TimelineKind kind = TimelineKind::Harmonic;
    PackingMode mode = PackingMode::Strict;
    int n0 = 0;
    int N = 0;
    double mu = 0.0;
    double alpha = 0.0;        // PlisMiller exponent
    double head_t0 = 0.0;      // EigenFull glue time
    double head_t1 = 0.0;      // EigenFull head transition start parameter
    bool reflected = false;    // EigenFull
    double pm_T = 0.0;         // PlisMiller horizon T = lim a_n (with tail bound)
    RegularityClass declared;  // whole-chain class (R(80,60) / R(100,61))

    std::vector<SegmentPtr> segments;
    std::vector<Block> blocks;

    double t_begin() const { return reflected ? -t_end_ : 0.0; }
    double t_end() const { return t_end_; }
    void finalize(); // computes t_end_, indexes

    bool has_lift() const { return kind == TimelineKind::EigenHalf || kind == TimelineKind::EigenFull; }

    FieldEval field(double x, double y, double t, Side side = Side::Auto) const;
    CoeffEval coeff(double x, double y, double t, Side side = Side::Auto) const;
    LogScalar sup(double t, Side side = Side::Auto) const;

    /// All interior one-sided comparison times (positive side only).
    std::vector<double> junctions() const;

    const Segment& segment_at(double t, Side side = Side::Auto) const;
    std::size_t segment_index_at(double t, Side side = Side::Auto) const;
    const Block& block_of_segment(std::size_t seg_index) const;

private:
    CoeffEval coeff_canonical(std::size_t idx, double x, double y, double t) const;
    double t_end_ = 0.0;
    std::vector<std::size_t> seg_to_block_;
};

/// The elementary 402-long composition: identity hold, coefficient change
/// to diag(1,1/9), slowing down, acceleration, identity tail. Returns the
/// phase segments and the exit value scale.
struct BuildingBlock {
    std::vector<SegmentPtr> segments;
    LogScalar v_out;       // value scale at the block end
    double t_end = 0.0;    // t1 + 402 in strict mode
    double slow_duration = 0.0;
};
BuildingBlock building_block(int k, int kprime, double t1, LogScalar v_in,
                             PackingMode mode = PackingMode::Strict);

/// Block length of the strict composition.
inline constexpr double kBlockLength = 402.0;

/// N dyadic blocks (k_n = 2^{n+n0-1}) with parity swap; A-harmonic,
/// class R(80, 60). Strict mode requires n0 >= 12.
Timeline harmonic_half_cylinder(int n0, int N, PackingMode mode = PackingMode::Strict);

/// Harmonic chain plus the blockwise diagonal eigen-lift: solves
/// u_tt + div(A' grad u) = -mu u, class R(100, 61).
Timeline eigen_half_cylinder(double mu, int n0, int N, PackingMode mode = PackingMode::Strict);

/// Symmetrization head glued to a shifted eigen half-cylinder at t0, then
/// evenly reflected about t = 0.
Timeline eigen_full_cylinder(double mu, int n0, int N, PackingMode mode = PackingMode::Strict,
                             double head_t1 = 0.01);

/// The Hölder-coefficient chain: k_n = (n+n0)^{1/alpha} (rounded to
/// integers), w_n = (n+n0)^{(alpha-1)/alpha}, glue blocks of width 2 w_n.
/// Requires 0 < alpha < 1/2 and the block-1 ellipticity margin
/// 1/(2 w_1 k_1) <= 1/100.
Timeline plis_miller_chain(double alpha, int n0, int N);

/// Gaussian-decay chain: k_n = n + n0, unit widths, fixed block length 2.
Timeline gaussian_chain(int n0, int N);

/// Eigen-lift frequency floor: 2^{n0} >= 10 sqrt(mu) * sqrt(300 sqrt(pi)),
/// which pins the lift derivative below 1/100.
double eigen_frequency_floor(double mu);

} // namespace cyldecay
