#include "cyldecay/errors.hpp"
#include "cyldecay/serialize.hpp"
#include "cyldecay/timeline.hpp"
#include "cyldecay/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

using namespace cyldecay;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559005768;
}

TEST_CASE("building block: duration, packing, amplitude constant") {
    BuildingBlock bb = building_block(4096, 8192, 0.0, LogScalar::one());
    CHECK(bb.t_end == 402.0);
    // slow-down duration against a long-double oracle
    const long double k = 4096.0L, kp = 8192.0L;
    const long double want = powl(k, -4.0L / 3.0L) + 8.0L * logl(k) / (k - kp / 3.0L) +
                             sqrtl(4.0L * logl(k)) / cbrtl(kp) + 0.01L;
    CHECK(bb.slow_duration == doctest::Approx(double(want)).epsilon(1e-12));
    CHECK(bb.slow_duration < 0.5);
    // c = e^{-k/2 + 5k'/6}: the block-end value is c e^{-k' 402} times the entry
    const long double logc = -k / 2.0L + 5.0L * kp / 6.0L;
    CHECK(double(logc) == doctest::Approx(4778.666666666667).epsilon(1e-12));
    const double got = bb.v_out.logmag + 8192.0 * 402.0;
    CHECK(got == doctest::Approx(double(logc)).epsilon(1e-9));
    // with k' = 2k the constant reads e^{7k/6}
    CHECK(double(-k / 2.0L + 5.0L * (2.0L * k) / 6.0L) ==
          doctest::Approx(7.0 * 4096.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("slow-down wait slot lasts t0 - eps^{1/3}") {
    BuildingBlock bb = building_block(4096, 8192, 0.0, LogScalar::one());
    // phase 5 is the two-mode wait between the perturbation windows
    const auto& w5 = *bb.segments.at(4);
    REQUIRE(w5.kind() == SegmentKind::Wait);
    REQUIRE(w5.modes().size() == 2);
    const double t0s = 8.0 * std::log(4096.0) / (4096.0 - 8192.0 / 3.0);
    const double wp = std::pow(4096.0, -4.0 / 3.0);
    CHECK(w5.t_end() - w5.t_begin() == doctest::Approx(t0s - wp).epsilon(1e-12));
}

TEST_CASE("serialization round trips the other kinds") {
    for (const char* kind : {"eigen_full", "plis_miller", "gaussian", "parabolic"}) {
        RunConfig cfg;
        cfg.kind = kind;
        cfg.n0 = std::string(kind) == "plis_miller" ? 50 : (std::string(kind) == "gaussian" ? 100 : 12);
        cfg.N = 2;
        const Built b = build_from_config(cfg);
        const Built b2 = timeline_from_json_text(timeline_to_json_text(b));
        if (b.is_parabolic()) {
            CHECK(b2.parabolic->blocks.back().v_out.logmag ==
                  b.parabolic->blocks.back().v_out.logmag);
        } else {
            CHECK(b2.timeline->blocks.back().v_out.logmag ==
                  b.timeline->blocks.back().v_out.logmag);
        }
    }
}

TEST_CASE("building block parameter domain") {
    CHECK_THROWS_AS(building_block(4096, 9000, 0.0, LogScalar::one()), ParameterDomain);
    CHECK_THROWS_AS(building_block(512, 1024, 0.0, LogScalar::one()), ParameterDomain);
    CHECK_NOTHROW(building_block(512, 1024, 0.0, LogScalar::one(), PackingMode::Flexible));
}

TEST_CASE("harmonic chain: entry form, identity coefficient, block table") {
    const Timeline tl = harmonic_half_cylinder(12, 3);
    CHECK(tl.blocks.size() == 3);
    CHECK(tl.blocks[0].k_in == 4096);
    CHECK(tl.blocks[2].k_out == 32768);
    // on [0, 1/100]: u = cos(k1 x) e^{-k1 t}, A = Id
    const FieldEval e = tl.field(0.77, 1.3, 0.005);
    CHECK(e.u == std::cos(4096.0 * 0.77));
    CHECK(e.logscale == -4096.0 * 0.005);
    CHECK(e.ut == -4096.0 * e.u);
    const CoeffEval c = tl.coeff(0.77, 1.3, 0.005);
    CHECK(c.a11 == 1.0);
    CHECK(c.a12 == 0.0);
    CHECK(c.a22 == 1.0);
    CHECK(c.max_derivative() == 0.0);
    CHECK_THROWS_AS(harmonic_half_cylinder(10, 2), ParameterDomain);
}

TEST_CASE("harmonic chain: parity swap on even blocks") {
    const Timeline tl = harmonic_half_cylinder(12, 2);
    // block 2 carries cos(k2 y) at its start (canonical x swapped to y)
    const double t = 402.005;
    const FieldEval e = tl.field(0.3, 0.9, t);
    const std::size_t idx = tl.segment_index_at(t);
    const FieldEval canon = tl.segments[idx]->field(0.9, 0.3, t);
    CHECK(e.u == canon.u);
    CHECK(e.ux == canon.uy);
    CHECK(e.uyy == canon.uxx);
    // the carrying mode reads cos(k2 y) after the swap of the canonical x-carrier
    CHECK(e.u == doctest::Approx(std::cos(8192.0 * 0.9) * e.sup_scale).epsilon(1e-12));
}

TEST_CASE("flexible packing admits small frequencies") {
    const Timeline tl = harmonic_half_cylinder(4, 2, PackingMode::Flexible);
    CHECK(tl.blocks[0].t1 > kBlockLength); // the stretched slot shows up in the length
    VerifyOptions o;
    o.samples_per_segment = 150;
    o.workers = 1;
    VerificationReport rep;
    verify_residual(tl, o, rep);
    verify_junctions(tl, o, rep);
    for (const auto& ck : rep.checks) CHECK(ck.pass);
}

TEST_CASE("eigen chain: lifted coefficient near t = 0 and lift bounds") {
    const double mu = 1.0;
    const Timeline tl = eigen_half_cylinder(mu, 12, 2);
    const double k1 = 4096.0;
    const CoeffEval c = tl.coeff(0.2, 0.4, 0.005);
    CHECK(c.a11 == doctest::Approx(1.0 + mu / (k1 * k1)).epsilon(1e-15));
    CHECK(c.a22 == doctest::Approx(1.0 + mu / (4.0 * k1 * k1)).epsilon(1e-15));
    CHECK(c.a12 == 0.0);
    // the lift value mu/k^2 at the first block
    CHECK(c.a11 - 1.0 == doctest::Approx(5.9604644775390625e-8).epsilon(1e-12));
    // lift time-derivative stays below 1/100 through the transition window
    double m = 0.0;
    const double t1 = tl.blocks[0].t1;
    for (int i = 0; i <= 2000; ++i) {
        const double t = t1 - 0.01 + 0.01 * i / 2000.0;
        const CoeffEval cc = tl.coeff(0.2, 0.4, t, Side::Left);
        m = std::max(m, std::max(std::abs(cc.dt11), std::abs(cc.dt22)));
    }
    CHECK(m <= 0.01);
    CHECK(m > 0.0);
    // the lift is exactly the difference from the harmonic coefficient
    const Timeline harm = harmonic_half_cylinder(12, 2);
    const CoeffEval ch = harm.coeff(0.2, 0.4, 200.0);
    const CoeffEval ce = tl.coeff(0.2, 0.4, 200.0);
    CHECK(ce.a12 == ch.a12);
    CHECK(ce.a11 - ch.a11 == doctest::Approx(mu / (k1 * k1)).epsilon(1e-12));
    CHECK(ce.a22 - ch.a22 == doctest::Approx(mu / (4.0 * k1 * k1)).epsilon(1e-12));
    CHECK_THROWS_AS(eigen_half_cylinder(1.0, 5, 2), FrequencyFloor);
    // the residual solves the lifted equation with mu on the nose
    VerifyOptions o;
    o.samples_per_segment = 200;
    o.workers = 1;
    VerificationReport rep;
    verify_residual(tl, o, rep);
    CHECK(rep.checks.at(0).pass);
}

TEST_CASE("full cylinder: reflection symmetry and head gluing") {
    const Timeline tl = eigen_full_cylinder(1.0, 12, 1);
    CHECK(tl.head_t0 > 0.0);
    CHECK(tl.t_begin() == -tl.t_end());
    // even reflection is exact
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xd(0.0, kTwoPi), td(0.0, tl.t_end());
    for (int i = 0; i < 200; ++i) {
        const double x = xd(rng), y = xd(rng), t = td(rng);
        const FieldEval a = tl.field(x, y, t);
        const FieldEval b = tl.field(x, y, -t);
        CHECK(a.u == b.u);
        CHECK(a.ut == -b.ut);
        CHECK(a.utt == b.utt);
        const CoeffEval ca = tl.coeff(x, y, t);
        const CoeffEval cb = tl.coeff(x, y, -t);
        CHECK(ca.a11 == cb.a11);
        CHECK(ca.dt11 == -cb.dt11);
    }
    // A is constant in t near zero, so the reflected coefficient is C^1
    CHECK(tl.coeff(0.1, 0.2, 0.0).max_derivative() == 0.0);
    // the head glues to cos(kx) e^{-k(t-t0)} with the identity-plus-lift matrix
    const double k1 = 4096.0;
    const FieldEval g = tl.field(0.0, 0.0, tl.head_t0, Side::Right);
    const FieldEval h = tl.field(0.0, 0.0, tl.head_t0, Side::Left);
    CHECK(g.u * std::exp(g.logscale) == doctest::Approx(h.u * std::exp(h.logscale)).epsilon(1e-10));
    CHECK(g.ut == doctest::Approx(-k1 * g.u).epsilon(1e-12));
}

TEST_CASE("plis-miller chain: constraints, rejections, tail metadata") {
    const Timeline tl = plis_miller_chain(1.0 / 3.0, 50, 10);
    // frequency schedule: exact cubes, increasing, with steps <= 4/w
    for (const auto& b : tl.blocks) {
        const double n = b.index + 50.0;
        CHECK(b.k_in == doctest::Approx(n * n * n));
        const double w = (b.t1 - b.t0) / 2.0;
        CHECK(double(b.k_out - b.k_in) <= 4.0 / w);
        CHECK(1.0 / w <= double(b.k_in));
    }
    CHECK(tl.pm_T > tl.t_end());
    CHECK_THROWS_AS(plis_miller_chain(0.6, 50, 5), ParameterDomain);
    CHECK_THROWS_AS(plis_miller_chain(0.5, 50, 5), ParameterDomain);
    // the block-1 ellipticity margin 1/(2 w_1 k_1) <= 1/100 gates n0
    CHECK_THROWS_AS(plis_miller_chain(1.0 / 3.0, 40, 5), ParameterDomain);
    CHECK_NOTHROW(plis_miller_chain(1.0 / 3.0, 49, 2));
}

TEST_CASE("gaussian chain: amplitude matching at junctions is exact in log domain") {
    const Timeline tl = gaussian_chain(100, 6);
    for (std::size_t i = 1; i < tl.blocks.size(); ++i) {
        const double a = tl.blocks[i].t0;
        const LogScalar l = tl.sup(a, Side::Left);
        const LogScalar r = tl.sup(a, Side::Right);
        CHECK(l.logmag == doctest::Approx(r.logmag).epsilon(1e-14));
    }
    // -log sup grows quadratically with t (slope of the t^2 fit positive)
    VerifyOptions o;
    o.workers = 1;
    VerificationReport rep;
    verify_decay(tl, o, rep);
    for (const auto& ck : rep.checks)
        if (ck.name != "decay.gaussian_linear_in_t2") CHECK(ck.pass);
}

TEST_CASE("gaussian fit needs many blocks relative to n0") {
    const Timeline tl = gaussian_chain(100, 2000);
    VerifyOptions o;
    o.workers = 1;
    VerificationReport rep;
    verify_decay(tl, o, rep);
    for (const auto& ck : rep.checks) CHECK(ck.pass);
}

TEST_CASE("timeline serialization round trip") {
    RunConfig cfg;
    cfg.kind = "harmonic";
    cfg.n0 = 12;
    cfg.N = 2;
    const Built b = build_from_config(cfg);
    const std::string text = timeline_to_json_text(b);
    const Built b2 = timeline_from_json_text(text);
    CHECK(b2.timeline->blocks.size() == b.timeline->blocks.size());
    for (std::size_t i = 0; i < b.timeline->blocks.size(); ++i) {
        CHECK(b2.timeline->blocks[i].v_in.logmag == b.timeline->blocks[i].v_in.logmag);
        CHECK(b2.timeline->blocks[i].t1 == b.timeline->blocks[i].t1);
    }
    CHECK_THROWS_AS(timeline_from_json_text("{\"format\": \"nonsense\"}"), SchemaError);
    CHECK_THROWS_AS(timeline_from_json_text("not json at all"), SchemaError);
}

TEST_CASE("out-of-range evaluation is rejected") {
    const Timeline tl = harmonic_half_cylinder(12, 1);
    CHECK_THROWS_AS(tl.field(0, 0, -1.0), OutOfRange);
    CHECK_THROWS_AS(tl.field(0, 0, 403.0), OutOfRange);
    CHECK_NOTHROW(tl.field(0, 0, 402.0));
}
