#pragma once

#include "cyldecay/parabolic.hpp"
#include "cyldecay/timeline.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cyldecay {

/// Central tolerance record; every pass/fail cites one of these.
struct Tolerances {
    double residual_rel = 1e-9;
    double residual_rel_ode = 1e-8; // timelines containing an integrator head
    double junction_u_rel = 1e-8;
    double junction_coeff_abs = 1e-8;
    double drift_defect = 1e-10;
    double monotone_logmag = 1e-12;
    double fd_cross_rel = 1e-5;
    double richardson_lo = 3.0;
    double richardson_hi = 5.0;
    double decay_slope_rel = 0.10;
    double gaussian_fit_r2 = 0.999;
    double pm_fit_r2 = 0.99;
    double extension_logmag = -69.0;
    double class_margin_rel = 1e-9; // slack on declared-class comparisons
    double holder_uniform_bound = 1e5;
    double recursion_logmag_rel = 1e-12;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string comparison; // "<=", ">=", "in"
    std::string detail;
};

struct DecayFit {
    std::vector<double> times;
    std::vector<double> logmags; // log sup at the block times
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Structured record of everything measured against the declared claims.
struct VerificationReport {
    std::string timeline_kind;
    std::uint64_t seed = 0;
    Tolerances tol;
    std::vector<CheckResult> checks;
    DecayFit decay;
    std::map<std::string, double> stats; // named scalar measurements

    bool all_pass() const;
    int failed_count() const;
    CheckResult& add(const std::string& name, bool pass, double measured, double tolerance,
                     const std::string& comparison, const std::string& detail = "");
};

struct VerifyOptions {
    int samples_per_segment = 1000;
    int ellipticity_samples = 10000;
    std::uint64_t seed = 1;
    int workers = 0; // 0 = hardware concurrency
    Tolerances tol;
};

/// u_tt + div(A grad u) + mu u at a point, relative to
/// sup|u| (1 + k_max^2).
double relative_residual(const Timeline& tl, double x, double y, double t);

/// Same residual through second-order finite differences of the analytic
/// flux and of u in time.
double relative_residual_fd(const Timeline& tl, double x, double y, double t, double h);

// Individual suites; each appends its checks to the report.
void verify_residual(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_ellipticity(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_c1(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_junctions(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_decay(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_fd_consistency(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_holder(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);
void verify_extension_zero(const Timeline& tl, const VerifyOptions& o, VerificationReport& rep);

void verify_residual(const ParabolicChain& ch, const VerifyOptions& o, VerificationReport& rep);
void verify_junctions(const ParabolicChain& ch, const VerifyOptions& o, VerificationReport& rep);
void verify_decay(const ParabolicChain& ch, const VerifyOptions& o, VerificationReport& rep);
void verify_drift_bounds(const ParabolicChain& ch, const VerifyOptions& o,
                         VerificationReport& rep);
void verify_fd_consistency(const ParabolicChain& ch, const VerifyOptions& o,
                           VerificationReport& rep);

/// Run the named suite ("all", "residual", "ellipticity", "c1", "junctions",
/// "decay", "fd", "holder", "extension") on an elliptic timeline.
VerificationReport run_suite(const Timeline& tl, const std::string& suite,
                             const VerifyOptions& o);

/// Suites for the parabolic chain ("all", "residual", "junctions", "decay",
/// "drift", "fd").
VerificationReport run_suite(const ParabolicChain& ch, const std::string& suite,
                             const VerifyOptions& o);

} // namespace cyldecay
