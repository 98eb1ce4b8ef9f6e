// Acceptance suite: one pass/fail line per criterion, each pinned to its
// stated tolerance. Exit code is the number of failed criteria.

#include "cyldecay/errors.hpp"
#include "cyldecay/parabolic.hpp"
#include "cyldecay/planar.hpp"
#include "cyldecay/timeline.hpp"
#include "cyldecay/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

using namespace cyldecay;

namespace {

int g_failed = 0;

class Criterion {
public:
    explicit Criterion(std::string name) : name_(std::move(name)), ok_(true) {
        start_ = std::chrono::steady_clock::now();
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok_ = false;
            notes_ += (notes_.empty() ? "" : "; ") + what;
        }
    }
    void finish(double time_limit_s) {
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (dt > time_limit_s) {
            ok_ = false;
            notes_ += (notes_.empty() ? "" : "; ") + std::string("over time limit");
        }
        std::printf("%s %s (%.1fs)%s%s\n", ok_ ? "PASS" : "FAIL", name_.c_str(), dt,
                    notes_.empty() ? "" : " -- ", notes_.c_str());
        std::fflush(stdout);
        if (!ok_) ++g_failed;
    }

private:
    std::string name_;
    bool ok_;
    std::string notes_;
    std::chrono::steady_clock::time_point start_;
};

const CheckResult* find(const VerificationReport& rep, const std::string& name) {
    for (const auto& c : rep.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void junction_criterion_accumulate(Criterion& c, const Timeline& tl, const char* label) {
    VerifyOptions o;
    o.workers = 0;
    VerificationReport rep;
    verify_junctions(tl, o, rep);
    for (const auto& ck : rep.checks)
        c.require(ck.pass, std::string(label) + ":" + ck.name + "=" + num(ck.measured));
}

} // namespace

int main() {
    constexpr double kTwoPi = 6.283185307179586476925286766559005768;
    VerifyOptions opts;
    opts.workers = 0;

    // 1. residual exactness on the harmonic half-cylinder
    {
        Criterion c("AC1 residual exactness: harmonic n0=12 N=3, 10^3 samples/segment <= 1e-9");
        const Timeline tl = harmonic_half_cylinder(12, 3);
        VerificationReport rep;
        VerifyOptions o = opts;
        o.samples_per_segment = 1000;
        verify_residual(tl, o, rep);
        const CheckResult* r = find(rep, "residual.max_relative");
        c.require(r && r->pass && r->tolerance == 1e-9,
                  "max rel residual " + num(r ? r->measured : -1));
        c.finish(30.0);
    }

    // 2. eigenfunction residual on the full cylinder
    {
        Criterion c("AC2 eigenfunction residual: eigen full mu=1 n0=12 N=3 <= 1e-8");
        const Timeline tl = eigen_full_cylinder(1.0, 12, 3);
        VerificationReport rep;
        VerifyOptions o = opts;
        o.samples_per_segment = 1000;
        verify_residual(tl, o, rep);
        const CheckResult* r = find(rep, "residual.max_relative");
        c.require(r && r->pass && r->tolerance == 1e-8,
                  "max rel residual " + num(r ? r->measured : -1));
        c.finish(60.0);
    }

    // 3. regularity classes R(80,60) and R(100,61)
    {
        Criterion c("AC3 regularity classes: harmonic in R(80,60), eigen in R(100,61), 10^4 samples");
        VerifyOptions o = opts;
        o.ellipticity_samples = 10000;
        {
            const Timeline tl = harmonic_half_cylinder(12, 3);
            VerificationReport rep;
            verify_ellipticity(tl, o, rep);
            verify_c1(tl, o, rep);
            const double lo = rep.stats.at("eigen_min"), hi = rep.stats.at("eigen_max");
            c.require(lo >= 1.0 / 80.0 && hi <= 80.0,
                      "harmonic spectrum [" + num(lo) + ", " + num(hi) + "]");
            c.require(rep.stats.at("c1_max") <= 60.0,
                      "harmonic C1 " + num(rep.stats.at("c1_max")));
        }
        {
            const Timeline tl = eigen_half_cylinder(1.0, 12, 3);
            VerificationReport rep;
            verify_ellipticity(tl, o, rep);
            verify_c1(tl, o, rep);
            const double lo = rep.stats.at("eigen_min"), hi = rep.stats.at("eigen_max");
            c.require(lo >= 1.0 / 100.0 && hi <= 100.0,
                      "eigen spectrum [" + num(lo) + ", " + num(hi) + "]");
            c.require(rep.stats.at("c1_max") <= 61.0, "eigen C1 " + num(rep.stats.at("c1_max")));
        }
        c.finish(30.0);
    }

    // 4. junction smoothness across every built timeline
    {
        Criterion c("AC4 junctions: u C2 defect <= 1e-8 rel, A C1 defect <= 1e-8 abs, all timelines");
        junction_criterion_accumulate(c, harmonic_half_cylinder(12, 3), "harmonic3");
        junction_criterion_accumulate(c, eigen_half_cylinder(1.0, 12, 3), "eigen3");
        junction_criterion_accumulate(c, eigen_full_cylinder(1.0, 12, 3), "eigenfull3");
        junction_criterion_accumulate(c, harmonic_half_cylinder(12, 10), "harmonic10");
        junction_criterion_accumulate(c, plis_miller_chain(1.0 / 3.0, 50, 40), "pm40");
        junction_criterion_accumulate(c, gaussian_chain(100, 20), "gaussian20");
        {
            const ParabolicChain ch = parabolic_chain(12);
            VerifyOptions o = opts;
            VerificationReport rep;
            verify_junctions(ch, o, rep);
            for (const auto& ck : rep.checks)
                if (ck.name == "junctions.u_c2")
                    c.require(ck.pass, "parabolic:" + ck.name + "=" + num(ck.measured));
        }
        c.finish(60.0);
    }

    // 5. decay closed form and double-exponential slope, N = 10
    {
        Criterion c("AC5 decay closed form C_n (rel 1e-12 in logmag) and slope within 10% of ln2/402");
        const Timeline tl = harmonic_half_cylinder(12, 10);
        VerificationReport rep;
        verify_decay(tl, opts, rep);
        const CheckResult* cf = find(rep, "decay.closed_form");
        c.require(cf && cf->pass && cf->tolerance == 1e-12,
                  "closed-form dev " + num(cf ? cf->measured : -1));
        const double slope = rep.stats.at("decay_slope");
        const double want = std::log(2.0) / 402.0;
        c.require(std::abs(slope - want) <= 0.10 * want,
                  "slope " + num(slope) + " vs ln2/402 = " + num(want));
        c.finish(30.0);
    }

    // 6. building-block amplitude constant c = e^{-k/2 + 5k'/6}
    {
        Criterion c("AC6 building-block constant: logmag ratio 4778.667 for (4096, 8192), rel 1e-9");
        const BuildingBlock bb = building_block(4096, 8192, 0.0, LogScalar::one());
        const long double oracle = -4096.0L / 2.0L + 5.0L * 8192.0L / 6.0L;
        const double got = bb.v_out.logmag + 8192.0 * 402.0; // remove the e^{-k' t} carrier
        c.require(std::abs(got - double(oracle)) <= 1e-9 * std::abs(double(oracle)),
                  "got " + num(got) + " want " + num(double(oracle)));
        c.finish(10.0);
    }

    // 7. symmetrization head
    {
        Criterion c("AC7 symmetrization: f'(0) flat, exponential tail, duration <= 2/5, |a'| <= 10");
        const double mu = 1.0;
        const int k = 4096;
        const SymmetrizeHead h = symmetrize_head_segment(mu, k, 0.01);
        const FieldEval e0 = h.segment->field(0.3, 0.0, 0.0);
        c.require(std::abs(e0.ut) <= 1e-8 * k * std::abs(e0.u), "f'(0) not flat");
        // tail: the full-cylinder field past t0 is cos(kx) e^{-k (t - t0)}
        const Timeline tl = eigen_full_cylinder(mu, 12, 1);
        for (int i = 1; i <= 20; ++i) {
            const double t = tl.head_t0 + 0.0005 * i;
            const FieldEval e = tl.field(0.2, 0.1, t);
            const double want = std::cos(k * 0.2) * std::exp(-double(k) * (t - tl.head_t0) +
                                                             e.logscale * 0.0);
            const double got = e.u * std::exp(e.logscale + double(k) * (t - tl.head_t0));
            c.require(std::abs(got - std::cos(k * 0.2)) <= 1e-8 * std::abs(std::cos(k * 0.2)),
                      "tail mismatch at t-t0=" + num(t - tl.head_t0) + " got " + num(got) +
                          " want " + num(want));
        }
        const double delta = h.t2 - h.t1;
        const double want_delta =
            std::sqrt(M_PI) / 10.0 * (1.0 + mu / (2.0 * double(k) * k));
        c.require(std::abs(delta - want_delta) <= 1e-12 && delta <= 0.4,
                  "duration " + num(delta));
        double mda = 0.0;
        for (int i = 0; i <= 20000; ++i)
            mda = std::max(mda,
                           std::abs(h.segment->coeff(0, 0, h.t0 * i / 20000.0).dt11));
        c.require(mda <= 10.0 * (1.0 + 1e-9), "|a'| " + num(mda));
        c.finish(10.0);
    }

    // 8. the Hoelder chain at desk scale
    {
        Criterion c("AC8 Plis-Miller alpha=1/3 n0=50 N=40: Hoelder uniform, margins, decay fit, "
                    "extension by zero");
        const Timeline tl = plis_miller_chain(1.0 / 3.0, 50, 40);
        VerificationReport rep;
        VerifyOptions o = opts;
        verify_holder(tl, o, rep);
        verify_decay(tl, o, rep);
        verify_extension_zero(tl, o, rep);
        for (const char* name :
             {"holder.uniform", "holder.claim22_bound", "holder.ellipticity_margin_block1",
              "holder.deviation_decreasing", "decay.pm_quadratic", "extension.magnitudes"}) {
            const CheckResult* r = find(rep, name);
            c.require(r && r->pass,
                      std::string(name) + " measured " + num(r ? r->measured : -1));
        }
        c.finish(60.0);
    }

    // 9. parabolic chain
    {
        Criterion c("AC9 parabolic N=12: residual <= 1e-9, drift continuous/bounded, "
                    "log C_n <= -(7/4)n(n-1)");
        const ParabolicChain ch = parabolic_chain(12);
        VerificationReport rep;
        VerifyOptions o = opts;
        o.samples_per_segment = 1000;
        verify_residual(ch, o, rep);
        verify_junctions(ch, o, rep);
        verify_drift_bounds(ch, o, rep);
        verify_decay(ch, o, rep);
        for (const char* name : {"residual.max_relative", "junctions.drift_continuity",
                                 "drift.envelope", "decay.parabolic_cn"}) {
            const CheckResult* r = find(rep, name);
            c.require(r && r->pass,
                      std::string(name) + " measured " + num(r ? r->measured : -1));
        }
        const CheckResult* r = find(rep, "residual.max_relative");
        c.require(r && r->tolerance == 1e-9, "residual tolerance pinned at 1e-9");
        c.finish(30.0);
    }

    // 10. planar lemma identities over random draws
    {
        Criterion c("AC10 planar identities: A_s grad u = V (1e-12), FD divergence (1e-6), "
                    "mirror exact, 10^3 draws");
        std::mt19937_64 rng(2026);
        std::uniform_int_distribution<int> kd(1, 32);
        std::uniform_real_distribution<double> xd(0.0, kTwoPi), sd(0.0, 2.0);
        double id_worst = 0.0, fd_worst = 0.0;
        bool mirror_exact = true;
        for (int i = 0; i < 1000; ++i) {
            const int k = kd(rng);
            std::uniform_int_distribution<int> kpd(k, 2 * k);
            const PlanarParams p{k, kpd(rng), sd(rng)};
            const double x = xd(rng), y = xd(rng);
            {
                const double ux = -p.k * std::sin(p.k * x);
                const double uy = -p.s * p.kprime * std::sin(p.kprime * y);
                const PlanarMatrix m = matrix_add(p, x, y);
                const auto V = vector_field_add(p, x, y);
                const double d = std::max(std::abs(m.a11 * ux + m.a12 * uy - V[0]),
                                          std::abs(m.a12 * ux + m.a22 * uy - V[1]));
                id_worst = std::max(id_worst, d / (1.0 + p.s));
            }
            {
                const double vx = -p.s * p.k * std::sin(p.k * x);
                const double vy = -p.kprime * std::sin(p.kprime * y);
                const PlanarMatrix m = matrix_remove(p, x, y);
                const auto V = vector_field_remove(p, x, y);
                const double d = std::max(std::abs(m.a11 * vx + m.a12 * vy - V[0]),
                                          std::abs(m.a12 * vx + m.a22 * vy - V[1]));
                id_worst = std::max(id_worst, d / (1.0 + p.s));
            }
            {
                const double hx = 1e-4 / p.k, hy = 1e-4 / p.kprime;
                const double da =
                    (vector_field_add(p, x + hx, y)[0] - vector_field_add(p, x - hx, y)[0]) /
                        (2.0 * hx) +
                    (vector_field_add(p, x, y + hy)[1] - vector_field_add(p, x, y - hy)[1]) /
                        (2.0 * hy);
                fd_worst = std::max(fd_worst, std::abs(da - std::cos(p.kprime * y)));
                const double dr =
                    (vector_field_remove(p, x + hx, y)[0] -
                     vector_field_remove(p, x - hx, y)[0]) /
                        (2.0 * hx) +
                    (vector_field_remove(p, x, y + hy)[1] -
                     vector_field_remove(p, x, y - hy)[1]) /
                        (2.0 * hy);
                fd_worst = std::max(fd_worst, std::abs(dr - std::cos(p.k * x)));
            }
            {
                const PlanarMatrix rem = matrix_remove(p, x, y);
                const PlanarMatrix add = matrix_add({p.kprime, p.k, p.s}, y, x);
                mirror_exact = mirror_exact && rem.a22 == add.a11 && rem.a12 == add.a12 &&
                               rem.a11 == add.a22;
            }
        }
        c.require(id_worst <= 1e-12, "identity defect " + num(id_worst));
        c.require(fd_worst <= 1e-6, "FD divergence defect " + num(fd_worst));
        c.require(mirror_exact, "mirror symmetry not exact");
        c.finish(10.0);
    }

    // 11. numerical hygiene: derivative cross-checks and order-2 convergence
    {
        Criterion c("AC11 numerical hygiene: FD cross-checks (1e-5) and residual order 2 "
                    "(ratio in [3,5], >= 100 points)");
        int points = 0;
        {
            const Timeline tl = harmonic_half_cylinder(12, 3);
            VerificationReport rep;
            verify_fd_consistency(tl, opts, rep);
            for (const char* name :
                 {"fd.derivative_cross_check", "fd.residual_order2", "fd.residual_agreement"}) {
                const CheckResult* r = find(rep, name);
                c.require(r && r->pass,
                          std::string("harmonic:") + name + " " + num(r ? r->measured : -1));
            }
            const std::string d = find(rep, "fd.residual_order2")->detail;
            const auto pos = d.find("over ");
            if (pos != std::string::npos) points += std::atoi(d.c_str() + pos + 5);
        }
        {
            const ParabolicChain ch = parabolic_chain(12);
            VerificationReport rep;
            verify_fd_consistency(ch, opts, rep);
            for (const char* name : {"fd.derivative_cross_check", "fd.residual_order2"}) {
                const CheckResult* r = find(rep, name);
                c.require(r && r->pass,
                          std::string("parabolic:") + name + " " + num(r ? r->measured : -1));
            }
            const std::string d = find(rep, "fd.residual_order2")->detail;
            const auto pos = d.find("over ");
            if (pos != std::string::npos) points += std::atoi(d.c_str() + pos + 5);
        }
        c.require(points >= 100, "only " + std::to_string(points) + " convergence points");
        c.finish(30.0);
    }

    std::printf("%s: %d criteria failed\n", g_failed == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                g_failed);
    return g_failed;
}
