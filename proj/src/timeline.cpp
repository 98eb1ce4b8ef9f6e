#include "cyldecay/timeline.hpp"
#include "cyldecay/errors.hpp"
#include "cyldecay/smooth_step.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyldecay {

namespace {
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;
}

const char* timeline_kind_name(TimelineKind k) {
    switch (k) {
    case TimelineKind::Harmonic: return "harmonic";
    case TimelineKind::EigenHalf: return "eigen_half";
    case TimelineKind::EigenFull: return "eigen_full";
    case TimelineKind::PlisMiller: return "plis_miller";
    case TimelineKind::Gaussian: return "gaussian";
    case TimelineKind::Parabolic: return "parabolic";
    }
    return "?";
}

TimelineKind timeline_kind_from_name(const std::string& name) {
    if (name == "harmonic") return TimelineKind::Harmonic;
    if (name == "eigen_half" || name == "eigen-half") return TimelineKind::EigenHalf;
    if (name == "eigen_full" || name == "eigen-full") return TimelineKind::EigenFull;
    if (name == "plis_miller" || name == "plis-miller") return TimelineKind::PlisMiller;
    if (name == "gaussian") return TimelineKind::Gaussian;
    if (name == "parabolic") return TimelineKind::Parabolic;
    throw SchemaError("unknown timeline kind: " + name);
}

void Timeline::finalize() {
    if (segments.empty()) throw ParameterDomain("timeline: no segments");
    t_end_ = segments.back()->t_end();
    seg_to_block_.assign(segments.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (std::size_t s = blocks[b].seg_begin; s < blocks[b].seg_end; ++s)
            seg_to_block_[s] = b;
}

std::size_t Timeline::segment_index_at(double t, Side side) const {
    if (reflected && t < 0.0) {
        t = -t;
        if (side == Side::Left)
            side = Side::Right;
        else if (side == Side::Right)
            side = Side::Left;
    }
    const double lo = segments.front()->t_begin();
    if (t < lo || t > t_end_) {
        std::ostringstream os;
        os << "timeline: t=" << t << " outside [" << lo << ", " << t_end_ << "]";
        throw OutOfRange(os.str());
    }
    std::size_t idx = 0;
    {
        std::size_t a = 0, b = segments.size();
        while (b - a > 1) {
            const std::size_t m = (a + b) / 2;
            if (segments[m]->t_begin() <= t)
                a = m;
            else
                b = m;
        }
        idx = a;
    }
    if (side == Side::Left && idx > 0 && t == segments[idx]->t_begin()) --idx;
    if (side == Side::Right && idx + 1 < segments.size() && t == segments[idx]->t_end()) ++idx;
    return idx;
}

const Segment& Timeline::segment_at(double t, Side side) const {
    return *segments[segment_index_at(t, side)];
}

const Block& Timeline::block_of_segment(std::size_t seg_index) const {
    return blocks[seg_to_block_[seg_index]];
}

std::vector<double> Timeline::junctions() const {
    std::vector<double> js;
    for (std::size_t i = 1; i < segments.size(); ++i) js.push_back(segments[i]->t_begin());
    for (const auto& s : segments)
        for (double b : s->internal_breaks()) js.push_back(b);
    std::sort(js.begin(), js.end());
    return js;
}

FieldEval Timeline::field(double x, double y, double t, Side side) const {
    bool refl = false;
    if (reflected && t < 0.0) {
        t = -t;
        refl = true;
        if (side == Side::Left)
            side = Side::Right;
        else if (side == Side::Right)
            side = Side::Left;
    }
    const std::size_t idx = segment_index_at(t, side);
    const Block& blk = block_of_segment(idx);
    FieldEval e = blk.swapped ? segments[idx]->field(y, x, t) : segments[idx]->field(x, y, t);
    if (blk.swapped) {
        std::swap(e.ux, e.uy);
        std::swap(e.uxx, e.uyy);
    }
    if (refl) e.ut = -e.ut;
    return e;
}

CoeffEval Timeline::coeff_canonical(std::size_t idx, double x, double y, double t) const {
    CoeffEval c = segments[idx]->coeff(x, y, t);
    const Block& blk = block_of_segment(idx);
    if (has_lift() && blk.lift_applies) {
        const double kin2 = double(blk.k_in) * blk.k_in;
        const double kout2 = double(blk.k_out) * blk.k_out;
        const double k22 = blk.lift_k2 * blk.lift_k2;
        const double k32 = blk.lift_k3 * blk.lift_k3;
        const double argx = 100.0 * (t - blk.t1) + 1.0;
        const double argy = 100.0 * (t - blk.t_next) + 1.0;
        c.a11 += mu * (1.0 / kin2 - 1.0 / k22) * theta(argx) + mu / k22;
        c.dt11 += mu * (1.0 / kin2 - 1.0 / k22) * 100.0 * theta_deriv(argx, 1);
        c.a22 += mu * (1.0 / kout2 - 1.0 / k32) * theta(argy) + mu / k32;
        c.dt22 += mu * (1.0 / kout2 - 1.0 / k32) * 100.0 * theta_deriv(argy, 1);
    }
    return c;
}

CoeffEval Timeline::coeff(double x, double y, double t, Side side) const {
    bool refl = false;
    if (reflected && t < 0.0) {
        t = -t;
        refl = true;
        if (side == Side::Left)
            side = Side::Right;
        else if (side == Side::Right)
            side = Side::Left;
    }
    const std::size_t idx = segment_index_at(t, side);
    const Block& blk = block_of_segment(idx);
    CoeffEval c = blk.swapped ? coeff_canonical(idx, y, x, t) : coeff_canonical(idx, x, y, t);
    if (blk.swapped) {
        CoeffEval s;
        s.a11 = c.a22;
        s.a22 = c.a11;
        s.a12 = c.a12;
        s.dx11 = c.dy22;
        s.dy11 = c.dx22;
        s.dx22 = c.dy11;
        s.dy22 = c.dx11;
        s.dx12 = c.dy12;
        s.dy12 = c.dx12;
        s.dt11 = c.dt22;
        s.dt22 = c.dt11;
        s.dt12 = c.dt12;
        c = s;
    }
    if (refl) {
        c.dt11 = -c.dt11;
        c.dt12 = -c.dt12;
        c.dt22 = -c.dt22;
    }
    return c;
}

LogScalar Timeline::sup(double t, Side side) const {
    if (reflected && t < 0.0) {
        t = -t;
        if (side == Side::Left)
            side = Side::Right;
        else if (side == Side::Right)
            side = Side::Left;
    }
    const std::size_t idx = segment_index_at(t, side);
    return segments[idx]->sup_profiles(t).total();
}

// -------------------------------------------------------- building block

BuildingBlock building_block(int k, int kprime, double t1, LogScalar v_in, PackingMode mode) {
    if (!(k >= 8 && k < kprime && kprime <= 2 * k))
        throw ParameterDomain("building_block: need 8 <= k < k' <= 2k");
    if (mode == PackingMode::Strict && k < 4096)
        throw ParameterDomain("building_block: strict packing requires k >= 2^12");

    const double a = 1.0, b = 1.0 / 9.0;
    const double eps = std::pow(double(k), -4.0);
    const double wp = std::cbrt(eps); // k^{-4/3}
    const double lnk = std::log(double(k));
    const double t0s = 8.0 * lnk / (double(k) - double(kprime) / 3.0);
    const double wrc = std::sqrt(4.0 * lnk) / std::cbrt(double(kprime));
    const double cslow = t0s + wp + 0.01 + wrc;

    if (mode == PackingMode::Strict && cslow > 0.5)
        throw PackingViolation("building_block: slowing-down duration exceeds its 1/2 slot");

    BuildingBlock out;
    out.slow_duration = cslow;
    auto& segs = out.segments;
    const int sgn = v_in.sign;
    // each phase's entry amplitude is the exact exit magnitude of the
    // previous segment's dominant mode, so junction log scales match to the
    // last bit even when they reach 1e9
    auto exit_x = [&](double t) {
        const SupEval e = segs.back()->sup_profiles(t);
        return LogScalar::from_log(sgn, e.fx.logmag);
    };
    auto exit_y = [&](double t) {
        const SupEval e = segs.back()->sup_profiles(t);
        return LogScalar::from_log(sgn, e.fy.logmag);
    };

    const double kd = k, kpd = kprime;
    const double rb = kpd / 3.0; // k' sqrt(1/9)

    // identity hold
    segs.push_back(wait_segment({{Axis::X, k, -kd, v_in}}, 1.0, 1.0, t1, t1 + 0.01));
    // change the y-coefficient to 1/9
    double tc = segs.back()->t_end();
    segs.push_back(change_coeff_segment(a, b, k, tc, 1.0 / 3.0 - 0.01, exit_x(tc)));
    // constant stretch to the slow-down slot
    tc = segs.back()->t_end();
    segs.push_back(wait_segment({{Axis::X, k, -kd, exit_x(tc)}}, a, b, tc, t1 + 0.5));
    // perturb in the slow mode at relative size eps
    tc = segs.back()->t_end();
    segs.push_back(perturb_add_segment(k, kprime, a, b, eps, tc, exit_x(tc)));
    // wait for the fast mode to fall eps^2 below the slow one
    tc = segs.back()->t_end();
    const double t_slow0 = t1 + 0.5;
    {
        const LogScalar vx = exit_x(tc);
        const LogScalar vy = exit_y(tc);
        segs.push_back(wait_segment({{Axis::X, k, -kd, vx}, {Axis::Y, kprime, -rb, vy}}, a, b,
                                    tc, t_slow0 + t0s));
    }
    // remove the fast mode
    tc = segs.back()->t_end();
    segs.push_back(perturb_remove_segment(k, kprime, a, b, eps, tc, exit_y(tc)));
    // settle
    tc = segs.back()->t_end();
    segs.push_back(wait_segment({{Axis::Y, kprime, -rb, exit_y(tc)}}, a, b, tc, tc + 0.01));
    // raise the amplitude back by k^4
    tc = segs.back()->t_end();
    segs.push_back(remove_constant_segment(kprime, a, b, -4.0 * lnk, tc, exit_y(tc)));
    // constant stretch to the acceleration slot
    const double t9 = segs.back()->t_end();
    double ta = t1 + 1.0;
    if (mode == PackingMode::Flexible) ta = std::max(ta, t9 + 0.01);
    if (t9 > ta) throw PackingViolation("building_block: slowing-down overruns the slot");
    segs.push_back(wait_segment({{Axis::Y, kprime, -rb, exit_y(t9)}}, a, b, t9, ta));
    // accelerate e^{-k't/3} -> e^{-k't}
    ta = segs.back()->t_end();
    segs.push_back(accelerate_segment(kprime, a, b, 1.0, ta, exit_y(ta)));
    // identity tail
    const double tb = segs.back()->t_end();
    segs.push_back(wait_segment({{Axis::Y, kprime, -kpd, exit_y(tb)}}, 1.0, 1.0, tb, tb + 1.0));

    out.t_end = segs.back()->t_end();
    out.v_out = exit_y(out.t_end);
    return out;
}

// ------------------------------------------------------------- builders

namespace {

int dyadic_k(int n0, int n) {
    const int e = n0 + n - 1;
    if (e > 30) throw ParameterDomain("frequency 2^{n0+n-1} exceeds the integer range");
    return 1 << e;
}

Timeline dyadic_chain(int n0, int N, PackingMode mode) {
    if (N < 1) throw ParameterDomain("chain: N >= 1 required");
    if (mode == PackingMode::Strict && n0 < 12)
        throw ParameterDomain("strict packing requires n0 >= 12 (frequency floor k1 = 2^12)");
    if (mode == PackingMode::Flexible && n0 < 3)
        throw ParameterDomain("flexible packing requires n0 >= 3");

    Timeline tl;
    tl.kind = TimelineKind::Harmonic;
    tl.mode = mode;
    tl.n0 = n0;
    tl.N = N;
    tl.declared = {80.0, 60.0};

    double t = 0.0;
    LogScalar v = LogScalar::one();
    for (int n = 1; n <= N; ++n) {
        const int k = dyadic_k(n0, n);
        const int kp = dyadic_k(n0, n + 1);
        BuildingBlock bb = building_block(k, kp, t, v, mode);
        Block blk;
        blk.index = n;
        blk.t0 = t;
        blk.t1 = bb.t_end;
        blk.k_in = k;
        blk.k_out = kp;
        blk.swapped = (n % 2 == 0);
        blk.v_in = v;
        blk.v_out = bb.v_out;
        blk.seg_begin = tl.segments.size();
        for (auto& s : bb.segments) tl.segments.push_back(std::move(s));
        blk.seg_end = tl.segments.size();
        blk.lift_k2 = double(dyadic_k(n0, n + 2));
        blk.lift_k3 = double(dyadic_k(n0, n + 3));
        tl.blocks.push_back(blk);
        t = bb.t_end;
        v = bb.v_out;
    }
    for (std::size_t i = 0; i < tl.blocks.size(); ++i)
        tl.blocks[i].t_next =
            (i + 1 < tl.blocks.size()) ? tl.blocks[i + 1].t1 : tl.blocks[i].t1 + kBlockLength;
    tl.finalize();
    return tl;
}

} // namespace

double eigen_frequency_floor(double mu) {
    return 10.0 * std::sqrt(mu) * std::sqrt(300.0 * kSqrtPi);
}

Timeline harmonic_half_cylinder(int n0, int N, PackingMode mode) {
    return dyadic_chain(n0, N, mode);
}

Timeline eigen_half_cylinder(double mu, int n0, int N, PackingMode mode) {
    if (!(mu > 0.0)) throw ParameterDomain("eigen chain: mu must be positive");
    if (double(1 << std::min(n0, 30)) < eigen_frequency_floor(mu))
        throw FrequencyFloor("eigen chain: 2^{n0} >= 10 sqrt(mu) sqrt(300 sqrt(pi)) fails "
                             "(need 2^{n0} >> sqrt(mu))");
    Timeline tl = dyadic_chain(n0, N, mode);
    tl.kind = TimelineKind::EigenHalf;
    tl.mu = mu;
    tl.declared = {100.0, 61.0};
    return tl;
}

Timeline eigen_full_cylinder(double mu, int n0, int N, PackingMode mode, double head_t1) {
    Timeline chain = eigen_half_cylinder(mu, n0, N, mode);
    const int k1 = dyadic_k(n0, 1);
    SymmetrizeHead head = symmetrize_head_segment(mu, k1, head_t1);

    Timeline tl;
    tl.kind = TimelineKind::EigenFull;
    tl.mode = mode;
    tl.n0 = n0;
    tl.N = N;
    tl.mu = mu;
    tl.head_t0 = head.t0;
    tl.head_t1 = head_t1;
    tl.reflected = true;
    tl.declared = {100.0, 61.0};

    Block hb;
    hb.index = 0;
    hb.t0 = 0.0;
    hb.t1 = head.t0;
    hb.k_in = k1;
    hb.k_out = k1;
    hb.swapped = false;
    hb.lift_applies = false;
    hb.v_in = LogScalar::one();
    hb.v_out = LogScalar::one();
    hb.seg_begin = 0;
    hb.seg_end = 1;
    tl.segments.push_back(head.segment);
    tl.blocks.push_back(hb);

    // shift the chain by t0 (rebuild with shifted origin to keep every
    // segment's reference-time representation exact)
    double t = head.t0;
    LogScalar v = LogScalar::one();
    for (int n = 1; n <= N; ++n) {
        const int k = dyadic_k(n0, n);
        const int kp = dyadic_k(n0, n + 1);
        BuildingBlock bb = building_block(k, kp, t, v, mode);
        Block blk;
        blk.index = n;
        blk.t0 = t;
        blk.t1 = bb.t_end;
        blk.k_in = k;
        blk.k_out = kp;
        blk.swapped = (n % 2 == 0);
        blk.v_in = v;
        blk.v_out = bb.v_out;
        blk.seg_begin = tl.segments.size();
        for (auto& s : bb.segments) tl.segments.push_back(std::move(s));
        blk.seg_end = tl.segments.size();
        blk.lift_k2 = double(dyadic_k(n0, n + 2));
        blk.lift_k3 = double(dyadic_k(n0, n + 3));
        tl.blocks.push_back(blk);
        t = bb.t_end;
        v = bb.v_out;
    }
    for (std::size_t i = 1; i < tl.blocks.size(); ++i)
        tl.blocks[i].t_next =
            (i + 1 < tl.blocks.size()) ? tl.blocks[i + 1].t1 : tl.blocks[i].t1 + kBlockLength;
    tl.finalize();
    return tl;
}

Timeline plis_miller_chain(double alpha, int n0, int N) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw ParameterDomain("plis_miller: the construction requires alpha < 1/2");
    if (N < 1) throw ParameterDomain("plis_miller: N >= 1 required");
    auto kn = [&](int n) {
        const double v = std::pow(double(n + n0), 1.0 / alpha);
        if (v > 2e9) throw ParameterDomain("plis_miller: frequency exceeds the integer range");
        return int(std::llround(v));
    };
    auto wn = [&](int n) { return std::pow(double(n + n0), (alpha - 1.0) / alpha); };

    const double margin1 = 1.0 / (2.0 * wn(1) * kn(1));
    if (margin1 > 0.01 * (1.0 + 1e-12))
        throw ParameterDomain("plis_miller: ellipticity margin 1/(2 w_1 k_1) <= 1/100 fails; "
                              "increase n0");

    Timeline tl;
    tl.kind = TimelineKind::PlisMiller;
    tl.n0 = n0;
    tl.N = N;
    tl.alpha = alpha;
    tl.declared = {2.0, 0.0}; // refined per segment; chain-level dev is o(1)

    double a = 0.0;
    LogScalar v = LogScalar::one();
    for (int n = 1; n <= N; ++n) {
        const int k = kn(n), kp = kn(n + 1);
        const double w = wn(n);
        if (kp <= k) throw ParameterDomain("plis_miller: frequency sequence not increasing");
        Block blk;
        blk.index = n;
        blk.t0 = a;
        blk.t1 = a + 2.0 * w;
        blk.k_in = k;
        blk.k_out = kp;
        blk.swapped = (n % 2 == 0);
        blk.v_in = v;
        blk.seg_begin = tl.segments.size();
        tl.segments.push_back(pml_add_segment(k, kp, w, v, a));
        tl.segments.push_back(pml_remove_segment(k, kp, w, v, tl.segments.back()->t_end()));
        blk.seg_end = tl.segments.size();
        blk.t1 = tl.segments.back()->t_end();
        blk.v_out = LogScalar::from_log(
            v.sign, tl.segments.back()->sup_profiles(blk.t1).fy.logmag);
        tl.blocks.push_back(blk);
        v = blk.v_out;
        a = blk.t1;
    }
    // horizon T = lim a_n: partial sums plus an integral tail bound
    double tail = 0.0;
    const double p = (1.0 - alpha) / alpha;
    const int cutoff = 1000000;
    for (int n = N + 1; n <= N + cutoff; ++n) tail += 2.0 * std::pow(double(n + n0), -p);
    tail += 2.0 * std::pow(double(N + cutoff + n0), 1.0 - p) / (p - 1.0);
    tl.pm_T = a + tail;
    tl.finalize();
    return tl;
}

Timeline gaussian_chain(int n0, int N) {
    if (n0 < 1 || N < 1) throw ParameterDomain("gaussian: n0, N >= 1 required");
    Timeline tl;
    tl.kind = TimelineKind::Gaussian;
    tl.n0 = n0;
    tl.N = N;
    tl.declared = {2.0, 0.0};

    double a = 0.0;
    LogScalar v = LogScalar::one();
    for (int n = 1; n <= N; ++n) {
        const int k = n + n0, kp = n + n0 + 1;
        Block blk;
        blk.index = n;
        blk.t0 = a;
        blk.t1 = a + 2.0;
        blk.k_in = k;
        blk.k_out = kp;
        blk.swapped = (n % 2 == 0);
        blk.v_in = v;
        blk.seg_begin = tl.segments.size();
        tl.segments.push_back(pml_add_segment(k, kp, 1.0, v, a));
        tl.segments.push_back(pml_remove_segment(k, kp, 1.0, v, tl.segments.back()->t_end()));
        blk.seg_end = tl.segments.size();
        blk.t1 = tl.segments.back()->t_end();
        blk.v_out = LogScalar::from_log(
            v.sign, tl.segments.back()->sup_profiles(blk.t1).fy.logmag);
        tl.blocks.push_back(blk);
        v = blk.v_out;
        a = blk.t1;
    }
    tl.finalize();
    return tl;
}

} // namespace cyldecay
