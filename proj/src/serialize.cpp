#include "cyldecay/serialize.hpp"
#include "cyldecay/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cyldecay {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json logscalar_to_json(const LogScalar& v) {
    json j;
    j["sign"] = v.sign;
    if (std::isinf(v.logmag))
        j["logmag"] = "-inf";
    else
        j["logmag"] = v.logmag;
    return j;
}

LogScalar logscalar_from_json(const json& j) {
    LogScalar v;
    v.sign = j.at("sign").get<int>();
    if (j.at("logmag").is_string())
        v.logmag = -std::numeric_limits<double>::infinity();
    else
        v.logmag = j.at("logmag").get<double>();
    return v;
}

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json tolerances_to_json(const Tolerances& t) {
    return json{{"residual_rel", t.residual_rel},
                {"residual_rel_ode", t.residual_rel_ode},
                {"junction_u_rel", t.junction_u_rel},
                {"junction_coeff_abs", t.junction_coeff_abs},
                {"drift_defect", t.drift_defect},
                {"monotone_logmag", t.monotone_logmag},
                {"fd_cross_rel", t.fd_cross_rel},
                {"richardson_lo", t.richardson_lo},
                {"richardson_hi", t.richardson_hi},
                {"decay_slope_rel", t.decay_slope_rel},
                {"gaussian_fit_r2", t.gaussian_fit_r2},
                {"pm_fit_r2", t.pm_fit_r2},
                {"extension_logmag", t.extension_logmag},
                {"class_margin_rel", t.class_margin_rel},
                {"holder_uniform_bound", t.holder_uniform_bound},
                {"recursion_logmag_rel", t.recursion_logmag_rel}};
}

void tolerances_from_json(const json& j, Tolerances& t) {
    auto get = [&](const char* key, double& slot) {
        if (j.contains(key)) slot = j.at(key).get<double>();
    };
    get("residual_rel", t.residual_rel);
    get("residual_rel_ode", t.residual_rel_ode);
    get("junction_u_rel", t.junction_u_rel);
    get("junction_coeff_abs", t.junction_coeff_abs);
    get("drift_defect", t.drift_defect);
    get("monotone_logmag", t.monotone_logmag);
    get("fd_cross_rel", t.fd_cross_rel);
    get("richardson_lo", t.richardson_lo);
    get("richardson_hi", t.richardson_hi);
    get("decay_slope_rel", t.decay_slope_rel);
    get("gaussian_fit_r2", t.gaussian_fit_r2);
    get("pm_fit_r2", t.pm_fit_r2);
    get("extension_logmag", t.extension_logmag);
    get("class_margin_rel", t.class_margin_rel);
    get("holder_uniform_bound", t.holder_uniform_bound);
    get("recursion_logmag_rel", t.recursion_logmag_rel);
}

json config_to_json(const RunConfig& c) {
    json j;
    j["kind"] = c.kind;
    j["n0"] = c.n0;
    j["N"] = c.N;
    j["mu"] = c.mu;
    j["alpha"] = c.alpha;
    j["mode"] = c.mode;
    j["head_t1"] = c.head_t1;
    j["k_start"] = c.k_start;
    j["samples_per_segment"] = c.samples_per_segment;
    j["ellipticity_samples"] = c.ellipticity_samples;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["tolerances"] = tolerances_to_json(c.tol);
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    auto geti = [&](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    geti("kind", c.kind);
    geti("n0", c.n0);
    geti("N", c.N);
    geti("mu", c.mu);
    geti("alpha", c.alpha);
    geti("mode", c.mode);
    geti("head_t1", c.head_t1);
    geti("k_start", c.k_start);
    geti("samples_per_segment", c.samples_per_segment);
    geti("ellipticity_samples", c.ellipticity_samples);
    geti("seed", c.seed);
    geti("workers", c.workers);
    if (j.contains("tolerances")) tolerances_from_json(j.at("tolerances"), c.tol);
    return c;
}

} // namespace

PackingMode RunConfig::packing() const {
    if (mode == "strict") return PackingMode::Strict;
    if (mode == "flexible") return PackingMode::Flexible;
    throw SchemaError("mode must be 'strict' or 'flexible', got '" + mode + "'");
}

Built build_from_config(const RunConfig& c) {
    Built b;
    b.config = c;
    const TimelineKind kind = timeline_kind_from_name(c.kind);
    switch (kind) {
    case TimelineKind::Harmonic:
        b.timeline = harmonic_half_cylinder(c.n0, c.N, c.packing());
        break;
    case TimelineKind::EigenHalf:
        b.timeline = eigen_half_cylinder(c.mu, c.n0, c.N, c.packing());
        break;
    case TimelineKind::EigenFull:
        b.timeline = eigen_full_cylinder(c.mu, c.n0, c.N, c.packing(), c.head_t1);
        break;
    case TimelineKind::PlisMiller:
        b.timeline = plis_miller_chain(c.alpha, c.n0, c.N);
        break;
    case TimelineKind::Gaussian:
        b.timeline = gaussian_chain(c.n0, c.N);
        break;
    case TimelineKind::Parabolic:
        b.parabolic = parabolic_chain(c.N, c.k_start);
        break;
    }
    return b;
}

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

std::string config_to_json_text(const RunConfig& c) { return config_to_json(c).dump(2); }

std::string timeline_to_json_text(const Built& b) {
    json j;
    j["format"] = "cyldecay-timeline";
    j["version"] = kFormatVersion;
    j["config"] = config_to_json(b.config);
    json blocks = json::array();
    if (b.is_parabolic()) {
        for (const auto& blk : b.parabolic->blocks) {
            json jb;
            jb["n"] = blk.index;
            jb["t0"] = blk.t0;
            jb["t1"] = blk.t1;
            jb["k_in"] = blk.k_in;
            jb["k_out"] = blk.k_out;
            jb["swapped"] = blk.swapped;
            jb["v_in"] = logscalar_to_json(blk.v_in);
            jb["v_out"] = logscalar_to_json(blk.v_out);
            blocks.push_back(jb);
        }
    } else {
        for (const auto& blk : b.timeline->blocks) {
            json jb;
            jb["n"] = blk.index;
            jb["t0"] = blk.t0;
            jb["t1"] = blk.t1;
            jb["k_in"] = blk.k_in;
            jb["k_out"] = blk.k_out;
            jb["swapped"] = blk.swapped;
            jb["v_in"] = logscalar_to_json(blk.v_in);
            jb["v_out"] = logscalar_to_json(blk.v_out);
            blocks.push_back(jb);
        }
        if (b.timeline->kind == TimelineKind::EigenFull) {
            j["head_t0"] = b.timeline->head_t0;
        }
        if (b.timeline->kind == TimelineKind::PlisMiller) j["horizon_T"] = b.timeline->pm_T;
    }
    j["blocks"] = blocks;
    return j.dump(2);
}

Built timeline_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("timeline parse error: ") + e.what());
    }
    if (!j.contains("format") || j.at("format") != "cyldecay-timeline")
        throw SchemaError("not a cyldecay timeline file");
    if (j.at("version").get<int>() != kFormatVersion)
        throw SchemaError("unsupported timeline format version");
    const RunConfig c = config_from_json(j.at("config"));
    Built b = build_from_config(c);
    // rebuilds are deterministic: stored block tables must match bit-exactly
    const auto& stored = j.at("blocks");
    auto check_block = [&](const json& jb, int index, double t0, double t1, int k_in,
                           const LogScalar& v_in) {
        if (jb.at("n").get<int>() != index || jb.at("t0").get<double>() != t0 ||
            jb.at("t1").get<double>() != t1 || jb.at("k_in").get<int>() != k_in)
            throw SchemaError("timeline file tables disagree with the deterministic rebuild");
        const LogScalar vs = logscalar_from_json(jb.at("v_in"));
        if (vs.sign != v_in.sign || vs.logmag != v_in.logmag)
            throw SchemaError("timeline file amplitudes disagree with the deterministic rebuild");
    };
    if (b.is_parabolic()) {
        if (stored.size() != b.parabolic->blocks.size())
            throw SchemaError("timeline file block count mismatch");
        for (std::size_t i = 0; i < stored.size(); ++i) {
            const auto& blk = b.parabolic->blocks[i];
            check_block(stored[i], blk.index, blk.t0, blk.t1, blk.k_in, blk.v_in);
        }
    } else {
        if (stored.size() != b.timeline->blocks.size())
            throw SchemaError("timeline file block count mismatch");
        for (std::size_t i = 0; i < stored.size(); ++i) {
            const auto& blk = b.timeline->blocks[i];
            check_block(stored[i], blk.index, blk.t0, blk.t1, blk.k_in, blk.v_in);
        }
    }
    return b;
}

std::string report_to_json_text(const VerificationReport& rep, const RunConfig& config) {
    json j;
    j["format"] = "cyldecay-report";
    j["version"] = kFormatVersion;
    j["timeline_kind"] = rep.timeline_kind;
    j["seed"] = rep.seed;
    j["config"] = config_to_json(config);
    j["tolerances"] = tolerances_to_json(rep.tol);
    json checks = json::array();
    for (const auto& c : rep.checks) {
        checks.push_back(json{{"name", c.name},
                              {"pass", c.pass},
                              {"measured", c.measured},
                              {"tolerance", c.tolerance},
                              {"comparison", c.comparison},
                              {"detail", c.detail}});
    }
    j["checks"] = checks;
    j["stats"] = rep.stats;
    json decay;
    decay["times"] = rep.decay.times;
    decay["logmags"] = rep.decay.logmags;
    decay["slope"] = rep.decay.slope;
    decay["intercept"] = rep.decay.intercept;
    decay["r2"] = rep.decay.r2;
    j["decay"] = decay;
    j["summary"] =
        json{{"pass", rep.all_pass()},
             {"checks", rep.checks.size()},
             {"failed", rep.failed_count()}};
    return j.dump(2);
}

std::string report_human_summary(const VerificationReport& rep) {
    std::ostringstream os;
    os << "verification of " << rep.timeline_kind << " (seed " << rep.seed << ")\n";
    for (const auto& c : rep.checks) {
        os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": measured "
           << full_precision(c.measured) << " " << c.comparison << " "
           << full_precision(c.tolerance);
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    os << (rep.all_pass() ? "all checks passed" : "SOME CHECKS FAILED") << " ("
       << rep.checks.size() - rep.failed_count() << "/" << rep.checks.size() << ")\n";
    return os.str();
}

bool report_file_summary(const std::string& json_text, std::string& summary) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SchemaError(std::string("report parse error: ") + e.what());
    }
    if (!j.contains("format") || j.at("format") != "cyldecay-report")
        throw SchemaError("not a cyldecay report file");
    std::ostringstream os;
    os << "report for " << j.at("timeline_kind").get<std::string>() << "\n";
    for (const auto& c : j.at("checks")) {
        os << "  [" << (c.at("pass").get<bool>() ? "PASS" : "FAIL") << "] "
           << c.at("name").get<std::string>() << ": " << c.at("measured").get<double>() << " "
           << c.at("comparison").get<std::string>() << " " << c.at("tolerance").get<double>()
           << "\n";
    }
    const bool pass = j.at("summary").at("pass").get<bool>();
    os << (pass ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    summary = os.str();
    return pass;
}

// ------------------------------------------------------------------ CSV

std::string decay_table_csv(const Built& b) {
    std::ostringstream os;
    os << "t,sup_sign,sup_logmag\n";
    auto emit = [&](double t, const LogScalar& s) {
        os << full_precision(t) << "," << s.sign << "," << full_precision(s.logmag) << "\n";
    };
    if (b.is_parabolic()) {
        for (const auto& blk : b.parabolic->blocks) emit(blk.t0, blk.v_in);
        emit(b.parabolic->blocks.back().t1, b.parabolic->blocks.back().v_out);
    } else {
        for (const auto& blk : b.timeline->blocks)
            if (blk.index >= 1) emit(blk.t0, blk.v_in);
        emit(b.timeline->blocks.back().t1, b.timeline->blocks.back().v_out);
    }
    return os.str();
}

std::string grid_slice_csv(const Built& b, int nx, int ny, double t) {
    constexpr double kTwoPi = 6.283185307179586476925286766559005768;
    std::ostringstream os;
    if (b.is_parabolic()) {
        os << "x,y,t,u_logmag,u_phase,b1_re,b1_im,b2_re,b2_im\n";
        for (int i = 0; i < nx; ++i)
            for (int jy = 0; jy < ny; ++jy) {
                const double x = kTwoPi * i / nx, y = kTwoPi * jy / ny;
                const FieldEvalC e = b.parabolic->field(x, y, t);
                const DriftEval d = b.parabolic->drift(x, y, t);
                const double mag = std::abs(e.u);
                const double lm = mag > 0 ? e.logscale + std::log(mag)
                                          : -std::numeric_limits<double>::infinity();
                os << full_precision(x) << "," << full_precision(y) << "," << full_precision(t)
                   << "," << full_precision(lm) << "," << full_precision(std::arg(e.u)) << ","
                   << full_precision(d.b1.real()) << "," << full_precision(d.b1.imag()) << ","
                   << full_precision(d.b2.real()) << "," << full_precision(d.b2.imag()) << "\n";
            }
    } else {
        os << "x,y,t,u_sign,u_logmag,a11,a12,a22\n";
        for (int i = 0; i < nx; ++i)
            for (int jy = 0; jy < ny; ++jy) {
                const double x = kTwoPi * i / nx, y = kTwoPi * jy / ny;
                const FieldEval e = b.timeline->field(x, y, t);
                const CoeffEval c = b.timeline->coeff(x, y, t);
                const int sign = e.u > 0 ? 1 : (e.u < 0 ? -1 : 0);
                const double lm = e.u != 0.0 ? e.logscale + std::log(std::abs(e.u))
                                             : -std::numeric_limits<double>::infinity();
                os << full_precision(x) << "," << full_precision(y) << "," << full_precision(t)
                   << "," << sign << "," << full_precision(lm) << "," << full_precision(c.a11)
                   << "," << full_precision(c.a12) << "," << full_precision(c.a22) << "\n";
            }
    }
    return os.str();
}

std::string t_line_csv(const Built& b, double x, double y, double t0, double t1, int n) {
    std::ostringstream os;
    os << "t,u_sign,u_logmag,sup_sign,sup_logmag\n";
    for (int i = 0; i < n; ++i) {
        const double t = t0 + (t1 - t0) * (n == 1 ? 0.0 : double(i) / (n - 1));
        LogScalar sup;
        int sign = 0;
        double lm = -std::numeric_limits<double>::infinity();
        if (b.is_parabolic()) {
            const FieldEvalC e = b.parabolic->field(x, y, t);
            sup = b.parabolic->sup(t);
            const double mag = std::abs(e.u);
            if (mag > 0) {
                sign = 1;
                lm = e.logscale + std::log(mag);
            }
        } else {
            const FieldEval e = b.timeline->field(x, y, t);
            sup = b.timeline->sup(t);
            if (e.u != 0.0) {
                sign = e.u > 0 ? 1 : -1;
                lm = e.logscale + std::log(std::abs(e.u));
            }
        }
        os << full_precision(t) << "," << sign << "," << full_precision(lm) << "," << sup.sign
           << "," << full_precision(sup.logmag) << "\n";
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw SchemaError("cannot open for writing: " + path);
    f << text;
    if (!f.good()) throw SchemaError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SchemaError("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace cyldecay
