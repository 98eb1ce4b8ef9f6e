#pragma once

#include "cyldecay/field_types.hpp"
#include "cyldecay/log_scalar.hpp"

#include <memory>
#include <vector>

namespace cyldecay {

enum class ParabolicKind { Wait, AddWindow, RemoveWindow };

/// One phase of the complex drifted-heat construction, canonical
/// orientation (e^{ikx} incoming, e^{ik'y} introduced). Exact solution of
/// u_t = Laplacian(u) + B . grad(u), with B zero outside the windows.
///
/// Division by du1/dx = i k u1 is exact because the carrier is a complex
/// exponential that never vanishes; this is why the construction is
/// complex-valued.
class ParabolicSegment {
public:
    virtual ~ParabolicSegment() = default;

    ParabolicKind kind() const { return kind_; }
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    const std::vector<ModeInfo>& modes() const { return modes_; }
    int max_wavenumber() const;

    FieldEvalC field(double x, double y, double t) const;
    DriftEval drift(double x, double y, double t) const;
    SupEval sup_profiles(double t) const;

    /// Sampled-sup envelope of |B| on this phase.
    virtual double drift_envelope() const { return 0.0; }

protected:
    ParabolicSegment(ParabolicKind kind, double t0, double t1) : kind_(kind), t0_(t0), t1_(t1) {}
    virtual FieldEvalC field_impl(double x, double y, double t) const = 0;
    virtual DriftEval drift_impl(double x, double y, double t) const = 0;
    virtual SupEval sup_impl(double t) const = 0;
    void check_interval(double t) const;

    ParabolicKind kind_;
    double t0_, t1_;
    std::vector<ModeInfo> modes_;
};

using ParabolicSegmentPtr = std::shared_ptr<const ParabolicSegment>;

struct ParabolicBlockInfo {
    int index = 1;
    double t0 = 0.0, t1 = 0.0;
    int k_in = 1, k_out = 2;
    bool swapped = false;
    LogScalar v_in, v_out;
    std::size_t seg_begin = 0, seg_end = 0;
    double drift_envelope = 0.0; // sqrt(pi) e^{3((k')^2-k^2)/k}
};

/// The parabolic chain: blocks of length 7/(2 k_n) with k_n = k_start+n-1,
/// parity swap on even blocks, amplitudes chained by
/// c_n e^{-k_n^2 t_n} = c_{n+1} e^{-k_{n+1}^2 t_n}.
class ParabolicChain {
public:
    int k_start = 1;
    int N = 0;
    std::vector<ParabolicSegmentPtr> segments;
    std::vector<ParabolicBlockInfo> blocks;

    double t_begin() const { return 0.0; }
    double t_end() const { return t_end_; }
    void finalize();

    FieldEvalC field(double x, double y, double t, Side side = Side::Auto) const;
    DriftEval drift(double x, double y, double t, Side side = Side::Auto) const;
    LogScalar sup(double t, Side side = Side::Auto) const;
    std::vector<double> junctions() const;
    std::size_t segment_index_at(double t, Side side = Side::Auto) const;
    const ParabolicBlockInfo& block_of_segment(std::size_t seg_index) const;

    /// u_t - Laplacian(u) - B.grad(u), relative to sup_scale (1 + k_max^2).
    double relative_residual(double x, double y, double t) const;

private:
    double t_end_ = 0.0;
    std::vector<std::size_t> seg_to_block_;
};

/// One building block [t1, t1 + 7/(2k)]: e^{ikx-k^2 t} -> c2 e^{ik'y-k'^2 t}.
/// Requires 1 <= k <= k' <= k+10 (the drift bound needs (k'^2-k^2)/k
/// bounded). v_in is the common value scale at t1.
struct ParabolicBlock {
    std::vector<ParabolicSegmentPtr> segments;
    LogScalar v_out;
    double t_end = 0.0;
    double drift_envelope = 0.0;
};
ParabolicBlock parabolic_block(int k, int kprime, LogScalar v_in, double t1);

ParabolicChain parabolic_chain(int N, int k_start = 1);

} // namespace cyldecay
