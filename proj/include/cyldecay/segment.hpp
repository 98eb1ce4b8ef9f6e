#pragma once

#include "cyldecay/field_types.hpp"
#include "cyldecay/log_scalar.hpp"
#include "cyldecay/ode.hpp"

#include <memory>
#include <string>
#include <vector>

namespace cyldecay {

enum class SegmentKind {
    Wait,
    ChangeCoeff,
    PmlAdd,
    PmlRemove,
    PerturbAdd,
    PerturbRemove,
    RemoveConstant,
    Accelerate,
    SymmetrizeHead,
};

const char* segment_kind_name(SegmentKind k);

/// One transformation phase in canonical orientation (incoming mode on the
/// x axis, newly introduced mode on the y axis). Immutable after
/// construction; evaluation is pure.
///
/// All segments are exact solutions of  u_tt + div(A grad u) + mu u = 0
/// with their own coefficient A; amplitudes live in log domain via the
/// common logscale of the returned bundles.
class Segment {
public:
    virtual ~Segment() = default;

    SegmentKind kind() const { return kind_; }
    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }
    double mu() const { return mu_; }
    const RegularityClass& declared_class() const { return declared_; }
    const std::vector<ModeInfo>& modes() const { return modes_; }
    int max_wavenumber() const;

    /// Interior times where the closed form switches branch (one-sided
    /// limits are compared there by the verifier).
    virtual std::vector<double> internal_breaks() const { return {}; }

    /// A-priori envelope of the coefficient spectrum on this segment.
    /// Defaults to [1/Lambda, Lambda]; the glue segments override it with a
    /// deviation interval, which can reach below zero at desk scale where
    /// the construction's implicit constants are large.
    virtual void spectrum_envelope(double& lo, double& hi) const;

    FieldEval field(double x, double y, double t) const;
    CoeffEval coeff(double x, double y, double t) const;
    SupEval sup_profiles(double t) const;

protected:
    Segment(SegmentKind kind, double t0, double t1, RegularityClass declared, double mu = 0.0)
        : kind_(kind), t0_(t0), t1_(t1), declared_(declared), mu_(mu) {}

    virtual FieldEval field_impl(double x, double y, double t) const = 0;
    virtual CoeffEval coeff_impl(double x, double y, double t) const = 0;
    virtual SupEval sup_impl(double t) const = 0;

    void check_interval(double t) const;

    SegmentKind kind_;
    double t0_, t1_;
    RegularityClass declared_;
    double mu_;
    std::vector<ModeInfo> modes_;
};

using SegmentPtr = std::shared_ptr<const Segment>;

/// One exponential mode with constant amplitude, for wait segments.
struct WaitMode {
    Axis axis = Axis::X;
    int k = 1;
    double rate = 0.0;  // profile = amp * exp(rate * (t - t_begin))
    LogScalar amp;      // value scale at t_begin
};

/// Constant-coefficient stretch. Checks the dispersion relation
/// rate^2 = k^2 * A_axis per mode and rejects incompatible fields.
SegmentPtr wait_segment(std::vector<WaitMode> modes, double a11, double a22, double t0, double t1);

/// Diagonal coefficient morph diag(a,a) -> diag(a,b) over [t0, t0+duration]
/// carrying u = amp cos(kx) e^{-k sqrt(a) t}; exact because the x-entry is
/// constant. Class R(10, 10 sqrt(pi)/duration).
SegmentPtr change_coeff_segment(double a, double b, int k, double t0, double duration,
                                LogScalar amp);

/// First half of the two-mode gluing: u = f + (1-alpha) g on [t0, t0+w],
/// f = amp cos(kx) e^{-k tau}, g = amp (1-alpha(tau)) cos(k'y) e^{-k' tau}.
/// amp is the value scale at t0. Requires 0 < k'-k <= 4/w and 1/w <= k.
SegmentPtr pml_add_segment(int k, int kprime, double w, LogScalar amp, double t0);

/// Second half: u = alpha f + g on [t0, t0+w] with local time starting at w
/// of the unshifted lemma; amp is the common value scale at the midpoint.
SegmentPtr pml_remove_segment(int k, int kprime, double w, LogScalar amp, double t0);

/// u = u1 + (1-alpha) eps u2 over an eps^{1/3} window; A = diag(a,b) plus
/// the add-variant planar correction. amp is u1's value scale at t0.
SegmentPtr perturb_add_segment(int k, int kprime, double a, double b, double eps, double t0,
                               LogScalar amp);

/// Mirror: u = eps alpha u1 + u2 with the remove-variant correction;
/// amp is u2's value scale at t0 (u1 enters eps times smaller).
SegmentPtr perturb_remove_segment(int k, int kprime, double a, double b, double eps, double t0,
                                  LogScalar amp);

/// Raise the amplitude by e^{-factor_log} while keeping the carrier:
/// u = amp cos(k'y) e^{h(tau)}, h = -k' sqrt(b) tau + factor_log (alpha(tau)-1),
/// A = diag(a, h''/k'^2 + (h'/k')^2); amp is the entry value scale. The
/// width is sqrt(-factor_log)/k'^{1/3}, i.e. sqrt(4 ln k)/k'^{1/3} for the
/// standard factor_log = -4 ln k.
SegmentPtr remove_constant_segment(int kprime, double a, double b, double factor_log, double t0,
                                   LogScalar amp);

/// Decay acceleration e^{-k sqrt(b) t} -> e^{-k sqrt(b') t} on a fixed
/// window of 400, via g(tau) = (sqrt(b') + (sqrt(b)-sqrt(b')) alpha) k tau.
/// The mode lives on the y axis. Class R(80, 10).
SegmentPtr accelerate_segment(int k, double a, double b, double bprime, double t0, LogScalar amp);

inline constexpr double kAccelerationWidth = 400.0;

/// Result of the symmetrization head construction.
struct SymmetrizeHead {
    SegmentPtr segment; // covers [0, t0]
    double t0 = 0.0;    // glue time: f(t) = e^{-k(t-t0)} for t >= t0
    double t1 = 0.0;    // start of the coefficient transition (shifted frame)
    double t2 = 0.0;    // end of transition, t2 - t1 = (sqrt(pi)/10)(1 + mu/2k^2)
    double sigma = 0.0; // phase shift applied to the ODE solution (<= 0)
};

/// Eigenfunction head on [0, t0]: integrates g'' = (k^2 a(t) - mu) g
/// backwards from (1, -k) at t2, shifts so that f'(0) = 0, and exposes
/// u = cos(kx) f(t) with A = diag(a(t+sigma), 1 + mu/4k^2).
/// Requires k^2 >= 100 mu. t1 defaults to 1/100.
SymmetrizeHead symmetrize_head_segment(double mu, int k, double t1 = 0.01);

/// Standard slowing-down duration  k^{-4/3} + 8 ln k/(k sqrt(a) - k' sqrt(b))
/// + sqrt(4 ln k)/k'^{1/3} + 1/100.
double slowdown_duration(int k, int kprime, double a, double b);

} // namespace cyldecay
