#include "cyldecay/parabolic.hpp"
#include "cyldecay/errors.hpp"
#include "cyldecay/smooth_step.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyldecay {

namespace {

constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
using C = std::complex<double>;

/// Real time profile of one complex-exponential mode at a log scale.
struct PartC {
    bool present = false;
    double logmag = 0.0;
    double v = 0.0, d1 = 0.0;
};

FieldEvalC combine(const PartC& px, const PartC& py, int kx, int ky, double x, double y) {
    FieldEvalC e;
    double L = 0.0;
    if (px.present && py.present)
        L = std::max(px.logmag, py.logmag);
    else if (px.present)
        L = px.logmag;
    else if (py.present)
        L = py.logmag;
    e.logscale = L;
    if (px.present) {
        const double f = std::exp(px.logmag - L);
        const C E{std::cos(kx * x), std::sin(kx * x)};
        const double v = px.v * f;
        e.u += v * E;
        e.ut += px.d1 * f * E;
        e.ux += C(0.0, double(kx)) * v * E;
        e.uxx += -double(kx) * kx * v * E;
        e.sup_scale += std::abs(v);
    }
    if (py.present) {
        const double f = std::exp(py.logmag - L);
        const C E{std::cos(ky * y), std::sin(ky * y)};
        const double v = py.v * f;
        e.u += v * E;
        e.ut += py.d1 * f * E;
        e.uy += C(0.0, double(ky)) * v * E;
        e.uyy += -double(ky) * ky * v * E;
        e.sup_scale += std::abs(v);
    }
    return e;
}

LogScalar part_magnitude(const PartC& p) {
    if (!p.present || p.v == 0.0) return LogScalar::zero();
    return LogScalar::from_log(1, p.logmag + std::log(std::abs(p.v)));
}

class PWait final : public ParabolicSegment {
public:
    struct Mode {
        Axis axis;
        int k;
        LogScalar amp; // value scale at t0
    };
    PWait(std::vector<Mode> ms, double t0, double t1)
        : ParabolicSegment(ParabolicKind::Wait, t0, t1), ms_(std::move(ms)) {
        for (const auto& m : ms_) modes_.push_back({m.axis, m.k, Carrier::ComplexExp});
    }

    FieldEvalC field_impl(double x, double y, double t) const override {
        PartC px, py;
        fill(px, py, t);
        return combine(px, py, kx(), ky(), x, y);
    }

    DriftEval drift_impl(double, double, double) const override { return {}; }

    SupEval sup_impl(double t) const override {
        PartC px, py;
        fill(px, py, t);
        return {part_magnitude(px), part_magnitude(py)};
    }

private:
    int kx() const {
        for (const auto& m : ms_)
            if (m.axis == Axis::X) return m.k;
        return 1;
    }
    int ky() const {
        for (const auto& m : ms_)
            if (m.axis == Axis::Y) return m.k;
        return 1;
    }
    void fill(PartC& px, PartC& py, double t) const {
        for (const auto& m : ms_) {
            if (m.amp.is_zero()) continue;
            PartC& p = (m.axis == Axis::X) ? px : py;
            const double r = -double(m.k) * m.k;
            p.present = true;
            p.logmag = m.amp.logmag + r * (t - t0_);
            p.v = m.amp.sign;
            p.d1 = r * p.v;
        }
    }
    std::vector<Mode> ms_;
};

/// u = u1 + (1 - alpha) u2 with alpha = theta(k tau) over tau in [0, 1/k];
/// B = (-alpha' u2 / du1/dx, 0).
class PAdd final : public ParabolicSegment {
public:
    PAdd(int k, int kp, LogScalar ax, LogScalar ay, double t0)
        : ParabolicSegment(ParabolicKind::AddWindow, t0, t0 + 1.0 / k), k_(k), kp_(kp), ax_(ax),
          ay_(ay) {
        modes_.push_back({Axis::X, k, Carrier::ComplexExp});
        modes_.push_back({Axis::Y, kp, Carrier::ComplexExp});
    }

    FieldEvalC field_impl(double x, double y, double t) const override {
        PartC px, py;
        fill(px, py, t);
        return combine(px, py, k_, kp_, x, y);
    }

    DriftEval drift_impl(double x, double y, double t) const override {
        const double tau = t - t0_;
        const double ad = theta_deriv(k_ * tau, 1) * k_;
        if (ad == 0.0) return {};
        // -alpha' g e^{ik'y} / (i k f e^{ikx}), with the log magnitudes of
        // f and g combined exactly in log domain
        const double lf = ax_.logmag - double(k_) * k_ * tau;
        const double lg = ay_.logmag - double(kp_) * kp_ * tau;
        const double ratio = std::exp(lg - lf) * (double(ay_.sign) / ax_.sign);
        const C phase{std::cos(kp_ * y - k_ * x), std::sin(kp_ * y - k_ * x)};
        DriftEval d;
        d.b1 = (C(0.0, 1.0) * ad * ratio / double(k_)) * phase;
        return d;
    }

    SupEval sup_impl(double t) const override {
        PartC px, py;
        fill(px, py, t);
        return {part_magnitude(px), part_magnitude(py)};
    }

    // |B1| <= sqrt(pi) e^{-(k'^2-k^2) t}: the ratio decays, so sqrt(pi) caps it
    double drift_envelope() const override { return kSqrtPi; }

private:
    void fill(PartC& px, PartC& py, double t) const {
        const double tau = t - t0_;
        const double al = theta(k_ * tau);
        const double ad = theta_deriv(k_ * tau, 1) * k_;
        px.present = ax_.sign != 0;
        px.logmag = ax_.logmag - double(k_) * k_ * tau;
        px.v = ax_.sign;
        px.d1 = -double(k_) * k_ * px.v;
        py.present = ay_.sign != 0;
        py.logmag = ay_.logmag - double(kp_) * kp_ * tau;
        py.v = ay_.sign * (1.0 - al);
        py.d1 = ay_.sign * (-ad - double(kp_) * kp_ * (1.0 - al));
    }

    int k_, kp_;
    LogScalar ax_, ay_;
};

/// u = alpha u1 + u2 with alpha = theta(k tau); B = (0, alpha' u1 / du2/dy).
class PRemove final : public ParabolicSegment {
public:
    PRemove(int k, int kp, LogScalar ax, LogScalar ay, double t0)
        : ParabolicSegment(ParabolicKind::RemoveWindow, t0, t0 + 1.0 / k), k_(k), kp_(kp),
          ax_(ax), ay_(ay) {
        modes_.push_back({Axis::X, k, Carrier::ComplexExp});
        modes_.push_back({Axis::Y, kp, Carrier::ComplexExp});
    }

    FieldEvalC field_impl(double x, double y, double t) const override {
        PartC px, py;
        fill(px, py, t);
        return combine(px, py, k_, kp_, x, y);
    }

    DriftEval drift_impl(double x, double y, double t) const override {
        const double tau = t - t0_;
        const double ad = theta_deriv(k_ * tau, 1) * k_;
        if (ad == 0.0) return {};
        const double lf = ax_.logmag - double(k_) * k_ * tau;
        const double lg = ay_.logmag - double(kp_) * kp_ * tau;
        const double ratio = std::exp(lf - lg) * (double(ax_.sign) / ay_.sign);
        const C phase{std::cos(k_ * x - kp_ * y), std::sin(k_ * x - kp_ * y)};
        DriftEval d;
        d.b2 = (C(0.0, -1.0) * ad * ratio / double(kp_)) * phase;
        return d;
    }

    SupEval sup_impl(double t) const override {
        PartC px, py;
        fill(px, py, t);
        return {part_magnitude(px), part_magnitude(py)};
    }

    double drift_envelope() const override {
        // |C2| <= sqrt(pi) (k/k') e^{(k'^2-k^2) t}, t <= 3/k within the block
        return kSqrtPi * std::exp(3.0 * (double(kp_) * kp_ - double(k_) * k_) / k_);
    }

private:
    void fill(PartC& px, PartC& py, double t) const {
        const double tau = t - t0_;
        const double al = theta(k_ * tau);
        const double ad = theta_deriv(k_ * tau, 1) * k_;
        px.present = ax_.sign != 0;
        px.logmag = ax_.logmag - double(k_) * k_ * tau;
        px.v = ax_.sign * al;
        px.d1 = ax_.sign * (ad - double(k_) * k_ * al);
        py.present = ay_.sign != 0;
        py.logmag = ay_.logmag - double(kp_) * kp_ * tau;
        py.v = ay_.sign;
        py.d1 = -double(kp_) * kp_ * py.v;
    }

    int k_, kp_;
    LogScalar ax_, ay_;
};

} // namespace

int ParabolicSegment::max_wavenumber() const {
    int m = 1;
    for (const auto& md : modes_) m = std::max(m, md.k);
    return m;
}

void ParabolicSegment::check_interval(double t) const {
    if (t < t0_ || t > t1_) {
        std::ostringstream os;
        os << "parabolic segment: t=" << t << " outside [" << t0_ << ", " << t1_ << "]";
        throw OutOfInterval(os.str());
    }
}

FieldEvalC ParabolicSegment::field(double x, double y, double t) const {
    check_interval(t);
    return field_impl(x, y, t);
}

DriftEval ParabolicSegment::drift(double x, double y, double t) const {
    check_interval(t);
    return drift_impl(x, y, t);
}

SupEval ParabolicSegment::sup_profiles(double t) const {
    check_interval(t);
    return sup_impl(t);
}

ParabolicBlock parabolic_block(int k, int kprime, LogScalar v_in, double t1) {
    if (!(k >= 1 && k <= kprime && kprime <= k + 10))
        throw ParameterDomain("parabolic_block: need 1 <= k <= k' <= k+10 "
                              "(the drift bound needs (k'^2-k^2)/k bounded)");
    ParabolicBlock out;
    const double k2 = double(k) * k, kp2 = double(kprime) * kprime;
    auto val = [](const LogScalar& base, double logdelta) {
        return LogScalar::from_log(base.sign, base.logmag + logdelta);
    };
    auto& segs = out.segments;
    const double h = 1.0 / k;
    // [t1, t1 + 1/2k]: pure incoming mode
    segs.push_back(std::make_shared<PWait>(
        std::vector<PWait::Mode>{{Axis::X, k, v_in}}, t1, t1 + 0.5 * h));
    // [.., + 3/2k]: add window
    double tc = segs.back()->t_end();
    LogScalar ax = val(v_in, -k2 * (tc - t1));
    LogScalar ay = val(v_in, -kp2 * (tc - t1));
    segs.push_back(std::make_shared<PAdd>(k, kprime, ax, ay, tc));
    // [.., + 2/k]: both modes
    tc = segs.back()->t_end();
    ax = val(v_in, -k2 * (tc - t1));
    ay = val(v_in, -kp2 * (tc - t1));
    segs.push_back(std::make_shared<PWait>(
        std::vector<PWait::Mode>{{Axis::X, k, ax}, {Axis::Y, kprime, ay}}, tc, t1 + 2.0 * h));
    // [.., + 3/k]: remove window
    tc = segs.back()->t_end();
    ax = val(v_in, -k2 * (tc - t1));
    ay = val(v_in, -kp2 * (tc - t1));
    segs.push_back(std::make_shared<PRemove>(k, kprime, ax, ay, tc));
    // [.., + 7/2k]: pure outgoing mode
    tc = segs.back()->t_end();
    ay = val(v_in, -kp2 * (tc - t1));
    segs.push_back(std::make_shared<PWait>(
        std::vector<PWait::Mode>{{Axis::Y, kprime, ay}}, tc, t1 + 3.5 * h));

    out.t_end = segs.back()->t_end();
    out.v_out = val(v_in, -kp2 * (out.t_end - t1));
    out.drift_envelope = kSqrtPi * std::exp(3.0 * (kp2 - k2) / k);
    return out;
}

ParabolicChain parabolic_chain(int N, int k_start) {
    if (N < 1) throw ParameterDomain("parabolic_chain: N >= 1 required");
    if (k_start < 1) throw ParameterDomain("parabolic_chain: k_start >= 1 required");
    ParabolicChain ch;
    ch.N = N;
    ch.k_start = k_start;
    double t = 0.0;
    LogScalar v = LogScalar::one();
    for (int n = 1; n <= N; ++n) {
        const int k = k_start + n - 1, kp = k + 1;
        ParabolicBlock bb = parabolic_block(k, kp, v, t);
        ParabolicBlockInfo blk;
        blk.index = n;
        blk.t0 = t;
        blk.t1 = bb.t_end;
        blk.k_in = k;
        blk.k_out = kp;
        blk.swapped = (n % 2 == 0);
        blk.v_in = v;
        blk.v_out = bb.v_out;
        blk.seg_begin = ch.segments.size();
        for (auto& s : bb.segments) ch.segments.push_back(std::move(s));
        blk.seg_end = ch.segments.size();
        blk.drift_envelope = bb.drift_envelope;
        ch.blocks.push_back(blk);
        t = bb.t_end;
        v = bb.v_out;
    }
    ch.finalize();
    return ch;
}

void ParabolicChain::finalize() {
    if (segments.empty()) throw ParameterDomain("parabolic chain: no segments");
    t_end_ = segments.back()->t_end();
    seg_to_block_.assign(segments.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t s = blocks[b].seg_begin; s < blocks[b].seg_end; ++s)
            seg_to_block_[s] = b;
}

std::size_t ParabolicChain::segment_index_at(double t, Side side) const {
    if (t < 0.0 || t > t_end_) {
        std::ostringstream os;
        os << "parabolic chain: t=" << t << " outside [0, " << t_end_ << "]";
        throw OutOfRange(os.str());
    }
    std::size_t a = 0, b = segments.size();
    while (b - a > 1) {
        const std::size_t m = (a + b) / 2;
        if (segments[m]->t_begin() <= t)
            a = m;
        else
            b = m;
    }
    if (side == Side::Left && a > 0 && t == segments[a]->t_begin()) --a;
    if (side == Side::Right && a + 1 < segments.size() && t == segments[a]->t_end()) ++a;
    return a;
}

const ParabolicBlockInfo& ParabolicChain::block_of_segment(std::size_t seg_index) const {
    return blocks[seg_to_block_[seg_index]];
}

std::vector<double> ParabolicChain::junctions() const {
    std::vector<double> js;
    for (std::size_t i = 1; i < segments.size(); ++i) js.push_back(segments[i]->t_begin());
    std::sort(js.begin(), js.end());
    return js;
}

FieldEvalC ParabolicChain::field(double x, double y, double t, Side side) const {
    const std::size_t idx = segment_index_at(t, side);
    const ParabolicBlockInfo& blk = block_of_segment(idx);
    FieldEvalC e = blk.swapped ? segments[idx]->field(y, x, t) : segments[idx]->field(x, y, t);
    if (blk.swapped) {
        std::swap(e.ux, e.uy);
        std::swap(e.uxx, e.uyy);
    }
    return e;
}

DriftEval ParabolicChain::drift(double x, double y, double t, Side side) const {
    const std::size_t idx = segment_index_at(t, side);
    const ParabolicBlockInfo& blk = block_of_segment(idx);
    DriftEval d = blk.swapped ? segments[idx]->drift(y, x, t) : segments[idx]->drift(x, y, t);
    if (blk.swapped) std::swap(d.b1, d.b2);
    return d;
}

LogScalar ParabolicChain::sup(double t, Side side) const {
    const std::size_t idx = segment_index_at(t, side);
    return segments[idx]->sup_profiles(t).total();
}

double ParabolicChain::relative_residual(double x, double y, double t) const {
    const std::size_t idx = segment_index_at(t);
    const FieldEvalC e = field(x, y, t);
    const DriftEval d = drift(x, y, t);
    const C r = e.ut - (e.uxx + e.uyy) - (d.b1 * e.ux + d.b2 * e.uy);
    const int km = segments[idx]->max_wavenumber();
    const double scale = e.sup_scale * (1.0 + double(km) * km);
    return scale > 0.0 ? std::abs(r) / scale : std::abs(r);
}

} // namespace cyldecay
