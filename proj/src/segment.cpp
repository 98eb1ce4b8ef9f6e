#include "cyldecay/segment.hpp"
#include "cyldecay/errors.hpp"
#include "cyldecay/planar.hpp"
#include "cyldecay/smooth_step.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cyldecay {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

/// One mode's time profile at a common log scale.
struct Part {
    bool present = false;
    double logmag = 0.0;
    double v = 0.0, d1 = 0.0, d2 = 0.0;
};

FieldEval combine(const Part& px, const Part& py, int kx, int ky, double x, double y) {
    FieldEval e;
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
        const double c = std::cos(kx * x), s = std::sin(kx * x);
        const double v = px.v * f;
        e.u += v * c;
        e.ut += px.d1 * f * c;
        e.utt += px.d2 * f * c;
        e.ux += -kx * v * s;
        e.uxx += -double(kx) * kx * v * c;
        e.sup_scale += std::abs(v);
    }
    if (py.present) {
        const double f = std::exp(py.logmag - L);
        const double c = std::cos(ky * y), s = std::sin(ky * y);
        const double v = py.v * f;
        e.u += v * c;
        e.ut += py.d1 * f * c;
        e.utt += py.d2 * f * c;
        e.uy += -ky * v * s;
        e.uyy += -double(ky) * ky * v * c;
        e.sup_scale += std::abs(v);
    }
    return e;
}

LogScalar part_magnitude(const Part& p) {
    if (!p.present || p.v == 0.0) return LogScalar::zero();
    return LogScalar::from_log(1, p.logmag + std::log(std::abs(p.v)));
}

SupEval sup_from_parts(const Part& px, const Part& py) {
    SupEval s;
    s.fx = part_magnitude(px);
    s.fy = part_magnitude(py);
    return s;
}

struct StepEval {
    double a = 0.0;  // alpha
    double d1 = 0.0; // alpha'
    double d2 = 0.0;
    double d3 = 0.0;
};

StepEval window_steps(double tau, double w) {
    StepEval s;
    const double r = tau / w;
    s.a = theta(r);
    s.d1 = theta_deriv(r, 1) / w;
    s.d2 = theta_deriv(r, 2) / (w * w);
    s.d3 = theta_deriv(r, 3) / (w * w * w);
    return s;
}

} // namespace

const char* segment_kind_name(SegmentKind k) {
    switch (k) {
    case SegmentKind::Wait: return "wait";
    case SegmentKind::ChangeCoeff: return "change_coeff";
    case SegmentKind::PmlAdd: return "pml_add";
    case SegmentKind::PmlRemove: return "pml_remove";
    case SegmentKind::PerturbAdd: return "perturb_add";
    case SegmentKind::PerturbRemove: return "perturb_remove";
    case SegmentKind::RemoveConstant: return "remove_constant";
    case SegmentKind::Accelerate: return "accelerate";
    case SegmentKind::SymmetrizeHead: return "symmetrize_head";
    }
    return "?";
}

void Segment::spectrum_envelope(double& lo, double& hi) const {
    lo = 1.0 / declared_.Lambda;
    hi = declared_.Lambda;
}

int Segment::max_wavenumber() const {
    int m = 1;
    for (const auto& md : modes_) m = std::max(m, md.k);
    return m;
}

void Segment::check_interval(double t) const {
    if (t < t0_ || t > t1_) {
        std::ostringstream os;
        os << segment_kind_name(kind_) << ": t=" << t << " outside [" << t0_ << ", " << t1_ << "]";
        throw OutOfInterval(os.str());
    }
}

FieldEval Segment::field(double x, double y, double t) const {
    check_interval(t);
    return field_impl(x, y, t);
}

CoeffEval Segment::coeff(double x, double y, double t) const {
    check_interval(t);
    return coeff_impl(x, y, t);
}

SupEval Segment::sup_profiles(double t) const {
    check_interval(t);
    return sup_impl(t);
}

// ---------------------------------------------------------------- wait

namespace {

class WaitSegment final : public Segment {
public:
    WaitSegment(std::vector<WaitMode> ms, double a11, double a22, double t0, double t1)
        : Segment(SegmentKind::Wait, t0, t1,
                  RegularityClass{std::max({a11, a22, 1.0 / a11, 1.0 / a22}), 0.0}),
          wm_(std::move(ms)), a11_(a11), a22_(a22) {
        for (const auto& m : wm_) {
            const double aa = (m.axis == Axis::X) ? a11_ : a22_;
            const double want = double(m.k) * m.k * aa;
            const double got = m.rate * m.rate;
            if (std::abs(got - want) > 1e-12 * std::max(std::abs(want), got))
                throw IncompatibleField("wait: dispersion relation rate^2 = k^2 A fails");
            modes_.push_back({m.axis, m.k, Carrier::Cosine});
        }
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, py, t);
        return combine(px, py, kx(), ky(), x, y);
    }

    CoeffEval coeff_impl(double, double, double) const override {
        CoeffEval c;
        c.a11 = a11_;
        c.a22 = a22_;
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, py, t);
        return sup_from_parts(px, py);
    }

private:
    int kx() const {
        for (const auto& m : wm_)
            if (m.axis == Axis::X) return m.k;
        return 1;
    }
    int ky() const {
        for (const auto& m : wm_)
            if (m.axis == Axis::Y) return m.k;
        return 1;
    }
    void fill(Part& px, Part& py, double t) const {
        const double tau = t - t0_;
        for (const auto& m : wm_) {
            if (m.amp.is_zero()) continue;
            Part& p = (m.axis == Axis::X) ? px : py;
            p.present = true;
            p.logmag = m.amp.logmag + m.rate * tau;
            p.v = m.amp.sign;
            p.d1 = m.rate * p.v;
            p.d2 = m.rate * m.rate * p.v;
        }
    }

    std::vector<WaitMode> wm_;
    double a11_, a22_;
};

} // namespace

SegmentPtr wait_segment(std::vector<WaitMode> modes, double a11, double a22, double t0,
                        double t1) {
    if (!(t1 > t0)) throw ParameterDomain("wait: empty interval");
    if (!(a11 > 0.0 && a22 > 0.0)) throw ParameterDomain("wait: coefficients must be positive");
    return std::make_shared<WaitSegment>(std::move(modes), a11, a22, t0, t1);
}

// ---------------------------------------------------------- change_coeff

namespace {

class ChangeCoeffSegment final : public Segment {
public:
    ChangeCoeffSegment(double a, double b, int k, double t0, double dur, LogScalar amp)
        : Segment(SegmentKind::ChangeCoeff, t0, t0 + dur,
                  RegularityClass{10.0, 10.0 * kSqrtPi / dur}),
          a_(a), b_(b), k_(k), dur_(dur), amp_(amp) {
        modes_.push_back({Axis::X, k, Carrier::Cosine});
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, t);
        return combine(px, py, k_, 1, x, y);
    }

    CoeffEval coeff_impl(double, double, double t) const override {
        CoeffEval c;
        const double r = (t - t0_) / dur_;
        c.a11 = a_;
        c.a22 = (a_ - b_) * theta(r) + b_;
        c.dt22 = (a_ - b_) * theta_deriv(r, 1) / dur_;
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& px, double t) const {
        const double rate = -k_ * std::sqrt(a_);
        px.present = !amp_.is_zero();
        px.logmag = amp_.logmag + rate * (t - t0_);
        px.v = amp_.sign;
        px.d1 = rate * px.v;
        px.d2 = rate * rate * px.v;
    }

    double a_, b_;
    int k_;
    double dur_;
    LogScalar amp_;
};

} // namespace

SegmentPtr change_coeff_segment(double a, double b, int k, double t0, double duration,
                                LogScalar amp) {
    if (!(a > 0.1 && a < 10.0 && b > 0.1 && b < 10.0))
        throw ParameterDomain("change_coeff: a, b must lie in (1/10, 10)");
    if (k < 1) throw ParameterDomain("change_coeff: k >= 1 required");
    if (!(duration > 0.0)) throw ParameterDomain("change_coeff: duration must be positive");
    return std::make_shared<ChangeCoeffSegment>(a, b, k, t0, duration, amp);
}

// ------------------------------------------------------------------ pml

namespace {

/// Construction-time envelopes of the glue coefficients on a time grid.
///
/// The proof's estimates carry factors e^{(k'-k) tau'} whose exponent is
/// bounded only by the hypothesis constant in k'-k <= 4/w; at desk scale
/// those factors can be enormous (the remove half of a Plis-Miller block
/// with the cube schedule reaches |A - Id| in the hundreds), so honest
/// declared bounds have to be computed, not assumed small.
struct PmlEnvelope {
    double dev = 0.0;  // sup over the half of the Gershgorin row deviation
    double grad = 0.0; // sup of any first spatial derivative entry
    double dt = 0.0;   // sup of any time derivative entry
};

PmlEnvelope pml_envelope(int k, int kp, double w, bool remove_half) {
    PmlEnvelope env;
    const int n = 2048;
    const double kd = k, kpd = kp;
    for (int i = 0; i <= n; ++i) {
        const double sig = w * i / n;
        const double a1 = theta(sig / w);
        const double d1 = theta_deriv(sig / w, 1) / w;
        const double d2 = theta_deriv(sig / w, 2) / (w * w);
        const double d3 = theta_deriv(sig / w, 3) / (w * w * w);
        double F, Fd, sv, sd, eA, eB;
        if (!remove_half) {
            const double E = std::exp((kd - kpd) * sig);
            F = std::abs((-2.0 * kpd * d1 + d2) * E);
            Fd = std::abs((-2.0 * kpd * d2 + d3) * E) +
                 std::abs((-2.0 * kpd * d1 + d2) * (kd - kpd) * E);
            sv = (1.0 - a1) * E;
            sd = std::abs((-d1 + (1.0 - a1) * (kd - kpd)) * E);
            eA = (1.0 + 2.0 * sv) / (kd * kd); // a_s bound
            eB = 2.0 / (kd * kpd);             // b_s bound
        } else {
            const double taup = w + sig;
            const double E = std::exp((kpd - kd) * taup);
            F = std::abs((2.0 * kd * d1 - d2) * E);
            Fd = std::abs((2.0 * kd * d2 - d3) * E) +
                 std::abs((2.0 * kd * d1 - d2) * (kpd - kd) * E);
            sv = a1 * E;
            sd = std::abs((d1 + a1 * (kpd - kd)) * E);
            eA = (1.0 + 2.0 * sv) / (kpd * kpd); // c_s bound
            eB = 2.0 / (kd * kpd);
        }
        const double row = F * (eA + eB);
        env.dev = std::max(env.dev, row);
        const double gmax = kPlanarBoundConstant * (1.0 + sv) / std::min(kd, kpd);
        env.grad = std::max(env.grad, F * gmax);
        const double smax = remove_half ? 2.0 / (kpd * kpd) : 2.0 / (kd * kd);
        env.dt = std::max(env.dt, Fd * (eA + eB) + F * sd * smax);
    }
    return env;
}

RegularityClass pml_class(const PmlEnvelope& env) {
    const double lo = 1.0 - env.dev;
    const double lam = lo > 0.0 ? std::max((1.0 + env.dev) / lo, 1.0 + env.dev)
                                : 4.0 * (1.0 + env.dev); // not elliptic at this scale
    return {lam, std::max(env.grad, env.dt)};
}

void pml_check(int k, int kprime, double w) {
    if (k < 1 || kprime <= k) throw ParameterDomain("pml: need integers 1 <= k < k'");
    if (!(w > 0.0)) throw ParameterDomain("pml: width must be positive");
    if (double(kprime - k) > 4.0 / w)
        throw ParameterDomain("pml: frequency step violates k' - k <= 4/w");
    if (1.0 / w > double(k)) throw ParameterDomain("pml: width violates 1/w <= k");
}

class PmlAddSegment final : public Segment {
public:
    PmlAddSegment(int k, int kp, double w, LogScalar amp, double t0)
        : Segment(SegmentKind::PmlAdd, t0, t0 + w, {1.0, 0.0}), k_(k), kp_(kp), w_(w),
          amp_(amp) {
        env_ = pml_envelope(k, kp, w, false);
        declared_ = pml_class(env_);
        modes_.push_back({Axis::X, k, Carrier::Cosine});
        modes_.push_back({Axis::Y, kp, Carrier::Cosine});
    }

    void spectrum_envelope(double& lo, double& hi) const override {
        lo = 1.0 - env_.dev;
        hi = 1.0 + env_.dev;
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, py, t);
        return combine(px, py, k_, kp_, x, y);
    }

    CoeffEval coeff_impl(double x, double y, double t) const override {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double E = std::exp((k_ - kp_) * tau);
        const double beta = -2.0 * kp_ * st.d1 + st.d2;
        const double betad = -2.0 * kp_ * st.d2 + st.d3;
        const double s = (1.0 - st.a) * E;
        const double sd = (-st.d1 + (1.0 - st.a) * (k_ - kp_)) * E;
        const PlanarParams p{k_, kp_, s};
        const PlanarMatrix m = matrix_add(p, x, y);
        const PlanarMatrixGrad g = matrix_add_grad(p, x, y);
        const PlanarMatrix ms = matrix_s_derivative(PlanarVariant::Add, p, x, y);
        const double F = beta * E;
        const double Fd = betad * E + beta * (k_ - kp_) * E;
        CoeffEval c;
        c.a11 = 1.0 + F * m.a11;
        c.a12 = F * m.a12;
        c.a22 = 1.0;
        c.dx11 = F * g.dx11;
        c.dy11 = F * g.dy11;
        c.dx12 = F * g.dx12;
        c.dy12 = F * g.dy12;
        c.dt11 = Fd * m.a11 + F * ms.a11 * sd;
        c.dt12 = Fd * m.a12;
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, py, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& px, Part& py, double t) const {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const int sgn = amp_.sign;
        px.present = sgn != 0;
        px.logmag = amp_.logmag - double(k_) * tau;
        px.v = sgn;
        px.d1 = -double(k_) * px.v;
        px.d2 = double(k_) * k_ * px.v;
        py.present = sgn != 0;
        py.logmag = amp_.logmag - double(kp_) * tau;
        py.v = sgn * (1.0 - st.a);
        py.d1 = sgn * (-st.d1 - kp_ * (1.0 - st.a));
        py.d2 = sgn * (-st.d2 + 2.0 * kp_ * st.d1 + double(kp_) * kp_ * (1.0 - st.a));
    }

    int k_, kp_;
    double w_;
    LogScalar amp_;
    PmlEnvelope env_;
};

class PmlRemoveSegment final : public Segment {
public:
    // t0 is the pair midpoint; amp is the value scale at the pair entry
    // (one width earlier), matching the unshifted lemma's time origin.
    PmlRemoveSegment(int k, int kp, double w, LogScalar amp, double t0)
        : Segment(SegmentKind::PmlRemove, t0, t0 + w, {1.0, 0.0}), k_(k), kp_(kp), w_(w),
          amp_(amp) {
        env_ = pml_envelope(k, kp, w, true);
        declared_ = pml_class(env_);
        modes_.push_back({Axis::X, k, Carrier::Cosine});
        modes_.push_back({Axis::Y, kp, Carrier::Cosine});
    }

    void spectrum_envelope(double& lo, double& hi) const override {
        lo = 1.0 - env_.dev;
        hi = 1.0 + env_.dev;
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, py, t);
        return combine(px, py, k_, kp_, x, y);
    }

    CoeffEval coeff_impl(double x, double y, double t) const override {
        const double sig = t - t0_;
        const double taup = w_ + sig; // lemma-local time in [w, 2w]
        const StepEval st = window_steps(sig, w_);
        const double E = std::exp((kp_ - k_) * taup);
        const double beta = 2.0 * k_ * st.d1 - st.d2;
        const double betad = 2.0 * k_ * st.d2 - st.d3;
        const double s = st.a * E;
        const double sd = (st.d1 + st.a * (kp_ - k_)) * E;
        const PlanarParams p{k_, kp_, s};
        const PlanarMatrix m = matrix_remove(p, x, y);
        const PlanarMatrixGrad g = matrix_remove_grad(p, x, y);
        const PlanarMatrix ms = matrix_s_derivative(PlanarVariant::Remove, p, x, y);
        const double F = beta * E;
        const double Fd = betad * E + beta * (kp_ - k_) * E;
        CoeffEval c;
        c.a11 = 1.0;
        c.a12 = F * m.a12;
        c.a22 = 1.0 + F * m.a22;
        c.dx12 = F * g.dx12;
        c.dy12 = F * g.dy12;
        c.dx22 = F * g.dx22;
        c.dy22 = F * g.dy22;
        c.dt12 = Fd * m.a12;
        c.dt22 = Fd * m.a22 + F * ms.a22 * sd;
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, py, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& px, Part& py, double t) const {
        const double sig = t - t0_;
        const double taup = w_ + sig;
        const StepEval st = window_steps(sig, w_);
        const int sgn = amp_.sign;
        px.present = sgn != 0;
        px.logmag = amp_.logmag - double(k_) * taup;
        px.v = sgn * st.a;
        px.d1 = sgn * (st.d1 - k_ * st.a);
        px.d2 = sgn * (st.d2 - 2.0 * k_ * st.d1 + double(k_) * k_ * st.a);
        py.present = sgn != 0;
        py.logmag = amp_.logmag - double(kp_) * taup;
        py.v = sgn;
        py.d1 = -double(kp_) * py.v;
        py.d2 = double(kp_) * kp_ * py.v;
    }

    int k_, kp_;
    double w_;
    LogScalar amp_;
    PmlEnvelope env_;
};

} // namespace

SegmentPtr pml_add_segment(int k, int kprime, double w, LogScalar amp, double t0) {
    pml_check(k, kprime, w);
    return std::make_shared<PmlAddSegment>(k, kprime, w, amp, t0);
}

SegmentPtr pml_remove_segment(int k, int kprime, double w, LogScalar amp, double t0) {
    pml_check(k, kprime, w);
    return std::make_shared<PmlRemoveSegment>(k, kprime, w, amp, t0);
}

// ---------------------------------------------------------- perturbation

namespace {

void perturb_check(int k, int kprime, double a, double b, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterDomain("perturb: eps must lie in (0, 1)");
    if (!(k >= 1 && k <= kprime && kprime <= 2 * k))
        throw ParameterDomain("perturb: need 1 <= k <= k' <= 2k");
    if (!(a > 0.1 && a < 10.0 && b > 0.1 && b < 10.0))
        throw ParameterDomain("perturb: a, b must lie in (1/10, 10)");
    const double lo = std::pow(eps, -0.25), hi = std::pow(eps, -1.0 / 3.0);
    if (double(k) < lo || double(kprime) > hi)
        throw ParameterDomain("perturb: window constraint eps^{-1/4} <= k, k' <= eps^{-1/3} fails");
}

class PerturbAddSegment final : public Segment {
public:
    PerturbAddSegment(int k, int kp, double a, double b, double eps, double t0, LogScalar amp)
        : Segment(SegmentKind::PerturbAdd, t0, t0 + std::cbrt(eps), RegularityClass{20.0, 10.0}),
          k_(k), kp_(kp), a_(a), b_(b), eps_(eps), w_(std::cbrt(eps)), amp_(amp) {
        modes_.push_back({Axis::X, k, Carrier::Cosine});
        modes_.push_back({Axis::Y, kp, Carrier::Cosine});
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, py, t);
        return combine(px, py, k_, kp_, x, y);
    }

    CoeffEval coeff_impl(double x, double y, double t) const override {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double ra = k_ * std::sqrt(a_), rb = kp_ * std::sqrt(b_);
        const double E = std::exp((ra - rb) * tau);
        const double beta = eps_ * (st.d2 - 2.0 * st.d1 * rb);
        const double betad = eps_ * (st.d3 - 2.0 * st.d2 * rb);
        const double s = eps_ * (1.0 - st.a) * E;
        const double sd = eps_ * (-st.d1 + (1.0 - st.a) * (ra - rb)) * E;
        const PlanarParams p{k_, kp_, s};
        const PlanarMatrix m = matrix_add(p, x, y);
        const PlanarMatrixGrad g = matrix_add_grad(p, x, y);
        const PlanarMatrix ms = matrix_s_derivative(PlanarVariant::Add, p, x, y);
        const double F = beta * E;
        const double Fd = betad * E + beta * (ra - rb) * E;
        CoeffEval c;
        c.a11 = a_ + F * m.a11;
        c.a12 = F * m.a12;
        c.a22 = b_;
        c.dx11 = F * g.dx11;
        c.dy11 = F * g.dy11;
        c.dx12 = F * g.dx12;
        c.dy12 = F * g.dy12;
        c.dt11 = Fd * m.a11 + F * ms.a11 * sd;
        c.dt12 = Fd * m.a12;
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, py, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& px, Part& py, double t) const {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double ra = k_ * std::sqrt(a_), rb = kp_ * std::sqrt(b_);
        const int sgn = amp_.sign;
        px.present = sgn != 0;
        px.logmag = amp_.logmag - ra * tau;
        px.v = sgn;
        px.d1 = -ra * px.v;
        px.d2 = ra * ra * px.v;
        py.present = sgn != 0;
        py.logmag = amp_.logmag + std::log(eps_) - rb * tau;
        py.v = sgn * (1.0 - st.a);
        py.d1 = sgn * (-st.d1 - rb * (1.0 - st.a));
        py.d2 = sgn * (-st.d2 + 2.0 * rb * st.d1 + rb * rb * (1.0 - st.a));
    }

    int k_, kp_;
    double a_, b_, eps_, w_;
    LogScalar amp_;
};

class PerturbRemoveSegment final : public Segment {
public:
    PerturbRemoveSegment(int k, int kp, double a, double b, double eps, double t0, LogScalar amp)
        : Segment(SegmentKind::PerturbRemove, t0, t0 + std::cbrt(eps),
                  RegularityClass{20.0, 10.0}),
          k_(k), kp_(kp), a_(a), b_(b), eps_(eps), w_(std::cbrt(eps)), amp_(amp) {
        modes_.push_back({Axis::X, k, Carrier::Cosine});
        modes_.push_back({Axis::Y, kp, Carrier::Cosine});
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, py, t);
        return combine(px, py, k_, kp_, x, y);
    }

    CoeffEval coeff_impl(double x, double y, double t) const override {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double ra = k_ * std::sqrt(a_), rb = kp_ * std::sqrt(b_);
        const double E = std::exp((rb - ra) * tau);
        const double beta = eps_ * (2.0 * ra * st.d1 - st.d2);
        const double betad = eps_ * (2.0 * ra * st.d2 - st.d3);
        const double s = eps_ * st.a * E;
        const double sd = eps_ * (st.d1 + st.a * (rb - ra)) * E;
        const PlanarParams p{k_, kp_, s};
        const PlanarMatrix m = matrix_remove(p, x, y);
        const PlanarMatrixGrad g = matrix_remove_grad(p, x, y);
        const PlanarMatrix ms = matrix_s_derivative(PlanarVariant::Remove, p, x, y);
        const double F = beta * E;
        const double Fd = betad * E + beta * (rb - ra) * E;
        CoeffEval c;
        c.a11 = a_;
        c.a12 = F * m.a12;
        c.a22 = b_ + F * m.a22;
        c.dx12 = F * g.dx12;
        c.dy12 = F * g.dy12;
        c.dx22 = F * g.dx22;
        c.dy22 = F * g.dy22;
        c.dt12 = Fd * m.a12;
        c.dt22 = Fd * m.a22 + F * ms.a22 * sd;
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, py, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& px, Part& py, double t) const {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double ra = k_ * std::sqrt(a_), rb = kp_ * std::sqrt(b_);
        const int sgn = amp_.sign;
        px.present = sgn != 0;
        px.logmag = amp_.logmag + std::log(eps_) - ra * tau;
        px.v = sgn * st.a;
        px.d1 = sgn * (st.d1 - ra * st.a);
        px.d2 = sgn * (st.d2 - 2.0 * ra * st.d1 + ra * ra * st.a);
        py.present = sgn != 0;
        py.logmag = amp_.logmag - rb * tau;
        py.v = sgn;
        py.d1 = -rb * py.v;
        py.d2 = rb * rb * py.v;
    }

    int k_, kp_;
    double a_, b_, eps_, w_;
    LogScalar amp_;
};

} // namespace

SegmentPtr perturb_add_segment(int k, int kprime, double a, double b, double eps, double t0,
                               LogScalar amp) {
    perturb_check(k, kprime, a, b, eps);
    return std::make_shared<PerturbAddSegment>(k, kprime, a, b, eps, t0, amp);
}

SegmentPtr perturb_remove_segment(int k, int kprime, double a, double b, double eps, double t0,
                                  LogScalar amp) {
    perturb_check(k, kprime, a, b, eps);
    return std::make_shared<PerturbRemoveSegment>(k, kprime, a, b, eps, t0, amp);
}

// ------------------------------------------------------- remove_constant

namespace {

class RemoveConstantSegment final : public Segment {
public:
    RemoveConstantSegment(int kp, double a, double b, double F, double t0, LogScalar amp)
        : Segment(SegmentKind::RemoveConstant, t0,
                  t0 + std::sqrt(-F) / std::cbrt(double(kp)), RegularityClass{20.0, 1.0}),
          kp_(kp), a_(a), b_(b), F_(F), w_(std::sqrt(-F) / std::cbrt(double(kp))), amp_(amp) {
        modes_.push_back({Axis::Y, kp, Carrier::Cosine});
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(py, t);
        return combine(px, py, 1, kp_, x, y);
    }

    CoeffEval coeff_impl(double, double, double t) const override {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double rb = kp_ * std::sqrt(b_);
        const double h1 = -rb + F_ * st.d1;
        const double h2 = F_ * st.d2;
        const double h3 = F_ * st.d3;
        CoeffEval c;
        c.a11 = a_;
        c.a22 = h2 / (double(kp_) * kp_) + (h1 / kp_) * (h1 / kp_);
        c.dt22 = h3 / (double(kp_) * kp_) + 2.0 * h1 * h2 / (double(kp_) * kp_);
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(py, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& py, double t) const {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, w_);
        const double rb = kp_ * std::sqrt(b_);
        // anchored at the entry value: h(0) = 0 exactly
        const double h = -rb * tau + F_ * (st.a - 1.0);
        const double h1 = -rb + F_ * st.d1;
        const double h2 = F_ * st.d2;
        py.present = !amp_.is_zero();
        py.logmag = amp_.logmag + h;
        py.v = amp_.sign;
        py.d1 = h1 * py.v;
        py.d2 = (h2 + h1 * h1) * py.v;
    }

    int kp_;
    double a_, b_, F_, w_;
    LogScalar amp_;
};

} // namespace

SegmentPtr remove_constant_segment(int kprime, double a, double b, double factor_log, double t0,
                                   LogScalar amp) {
    if (!(factor_log < 0.0)) throw ParameterDomain("remove_constant: factor_log must be negative");
    if (kprime < 2) throw ParameterDomain("remove_constant: k' >= 2 required");
    if (!(a > 0.1 && a < 10.0 && b > 0.1 && b < 10.0))
        throw ParameterDomain("remove_constant: a, b must lie in (1/10, 10)");
    return std::make_shared<RemoveConstantSegment>(kprime, a, b, factor_log, t0, amp);
}

// ------------------------------------------------------------ accelerate

namespace {

class AccelerateSegment final : public Segment {
public:
    AccelerateSegment(int k, double a, double b, double bp, double t0, LogScalar amp)
        : Segment(SegmentKind::Accelerate, t0, t0 + kAccelerationWidth,
                  RegularityClass{80.0, 10.0}),
          k_(k), a_(a), sb_(std::sqrt(b)), sbp_(std::sqrt(bp)), amp_(amp) {
        modes_.push_back({Axis::Y, k, Carrier::Cosine});
    }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(py, t);
        return combine(px, py, 1, k_, x, y);
    }

    CoeffEval coeff_impl(double, double, double t) const override {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, kAccelerationWidth);
        double g1, g2, g3;
        derivs(tau, st, g1, g2, g3);
        CoeffEval c;
        c.a11 = a_;
        c.a22 = -g2 / (double(k_) * k_) + (g1 / k_) * (g1 / k_);
        c.dt22 = -g3 / (double(k_) * k_) + 2.0 * g1 * g2 / (double(k_) * k_);
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(py, t);
        return sup_from_parts(px, py);
    }

private:
    void derivs(double tau, const StepEval& st, double& g1, double& g2, double& g3) const {
        const double d = sb_ - sbp_;
        g1 = d * st.d1 * k_ * tau + (sbp_ + d * st.a) * k_;
        g2 = d * st.d2 * k_ * tau + 2.0 * d * st.d1 * k_;
        g3 = d * st.d3 * k_ * tau + 3.0 * d * st.d2 * k_;
    }
    void fill(Part& py, double t) const {
        const double tau = t - t0_;
        const StepEval st = window_steps(tau, kAccelerationWidth);
        const double g = (sbp_ + (sb_ - sbp_) * st.a) * k_ * tau;
        double g1, g2, g3;
        derivs(tau, st, g1, g2, g3);
        py.present = !amp_.is_zero();
        py.logmag = amp_.logmag - g;
        py.v = amp_.sign;
        py.d1 = -g1 * py.v;
        py.d2 = (-g2 + g1 * g1) * py.v;
    }

    int k_;
    double a_, sb_, sbp_;
    LogScalar amp_;
};

} // namespace

SegmentPtr accelerate_segment(int k, double a, double b, double bprime, double t0, LogScalar amp) {
    if (!(a > 0.1 && a < 10.0 && b > 0.1 && b < 10.0 && bprime > 0.1 && bprime < 10.0))
        throw ParameterDomain("accelerate: a, b, b' must lie in (1/10, 10)");
    if (!(b <= bprime)) throw ParameterDomain("accelerate: b <= b' required");
    if (k < 1) throw ParameterDomain("accelerate: k >= 1 required");
    return std::make_shared<AccelerateSegment>(k, a, b, bprime, t0, amp);
}

// -------------------------------------------------------- symmetrization

namespace {

class SymmetrizeHeadSegment final : public Segment {
public:
    SymmetrizeHeadSegment(double mu, int k, double t1, double t2, double sigma, double t0_glue,
                          double trig_logfac, double trig_R, double trig_phi,
                          std::shared_ptr<SecondOrderLinearOde> ode)
        : Segment(SegmentKind::SymmetrizeHead, 0.0, t0_glue,
                  RegularityClass{5.0 * k * k / mu, 10.0}, mu),
          mu_(mu), k_(k), t1_(t1), t2_(t2), sigma_(sigma), trig_logfac_(trig_logfac),
          trig_R_(trig_R), trig_phi_(trig_phi), ode_(std::move(ode)) {
        modes_.push_back({Axis::X, k, Carrier::Cosine});
        omega_ = std::sqrt(mu_ / 2.0);
        delta_ = t2_ - t1_;
    }

    std::vector<double> internal_breaks() const override { return {t1_ - sigma_}; }

    FieldEval field_impl(double x, double y, double t) const override {
        Part px, py;
        fill(px, t);
        return combine(px, py, k_, 1, x, y);
    }

    CoeffEval coeff_impl(double, double, double t) const override {
        const double r = (t + sigma_ - t1_) / delta_;
        CoeffEval c;
        const double k2 = double(k_) * k_;
        c.a11 = 1.0 + mu_ / k2 - (mu_ / (2.0 * k2) + 1.0) * theta(r);
        c.dt11 = -(mu_ / (2.0 * k2) + 1.0) * theta_deriv(r, 1) / delta_;
        c.a22 = 1.0 + mu_ / (4.0 * k2);
        return c;
    }

    SupEval sup_impl(double t) const override {
        Part px, py;
        fill(px, t);
        return sup_from_parts(px, py);
    }

private:
    void fill(Part& px, double t) const {
        const double ts = t + sigma_;
        px.present = true;
        if (ts <= t1_) {
            const double ph = omega_ * ts - trig_phi_;
            px.logmag = trig_logfac_ + std::log(trig_R_);
            px.v = std::cos(ph);
            px.d1 = -omega_ * std::sin(ph);
            px.d2 = -omega_ * omega_ * px.v;
        } else {
            double g, dg, lf;
            ode_->eval(ts, g, dg, lf);
            const double k2 = double(k_) * k_;
            const double r = (ts - t1_) / delta_;
            const double a = 1.0 + mu_ / k2 - (mu_ / (2.0 * k2) + 1.0) * theta(r);
            px.logmag = lf;
            px.v = g;
            px.d1 = dg;
            px.d2 = (k2 * a - mu_) * g;
        }
    }

    double mu_;
    int k_;
    double t1_, t2_, sigma_, delta_, omega_;
    double trig_logfac_, trig_R_, trig_phi_;
    std::shared_ptr<SecondOrderLinearOde> ode_;
};

} // namespace

SymmetrizeHead symmetrize_head_segment(double mu, int k, double t1) {
    if (!(mu > 0.0)) throw ParameterDomain("symmetrize: mu must be positive");
    if (!(t1 > 0.0)) throw ParameterDomain("symmetrize: t1 must be positive");
    if (double(k) * k < 100.0 * mu)
        throw ParameterDomain("symmetrize: frequency floor k^2 >= 100 mu fails (need k >> sqrt(mu))");

    const double k2 = double(k) * k;
    const double delta = (kSqrtPi / 10.0) * (1.0 + mu / (2.0 * k2));
    const double t2 = t1 + delta;

    auto q = [mu, k2, t1, delta](double t) {
        const double a = 1.0 + mu / k2 - (mu / (2.0 * k2) + 1.0) * theta((t - t1) / delta);
        return k2 * a - mu;
    };

    auto ode = std::make_shared<SecondOrderLinearOde>();
    ode->integrate(q, t2, t1, 1.0, -double(k), 0.0, double(k));

    double g1, dg1, lf;
    ode->eval(t1, g1, dg1, lf);
    const double omega = std::sqrt(mu / 2.0);
    const double c = std::cos(omega * t1), s = std::sin(omega * t1);
    const double al = g1 * c - dg1 * s / omega;
    const double be = g1 * s + dg1 * c / omega;
    const double R = std::hypot(al, be);
    if (!(R > 0.0)) throw DegenerateMatch("symmetrize: oscillatory amplitude vanished");
    const double phi = std::atan2(be, al);
    const double sigma = (phi - kPi) / omega; // <= 0, so t0 - (t2-t1) = t1 - sigma > 0
    const double t0 = t2 - sigma;

    SymmetrizeHead out;
    out.t0 = t0;
    out.t1 = t1;
    out.t2 = t2;
    out.sigma = sigma;
    out.segment = std::make_shared<SymmetrizeHeadSegment>(mu, k, t1, t2, sigma, t0, lf, R, phi,
                                                          std::move(ode));
    return out;
}

double slowdown_duration(int k, int kprime, double a, double b) {
    const double gap = k * std::sqrt(a) - kprime * std::sqrt(b);
    if (!(gap > 0.0)) throw ParameterDomain("slowdown: need k sqrt(a) > k' sqrt(b)");
    return std::pow(double(k), -4.0 / 3.0) + 8.0 * std::log(double(k)) / gap +
           std::sqrt(4.0 * std::log(double(k))) / std::cbrt(double(kprime)) + 0.01;
}

} // namespace cyldecay
