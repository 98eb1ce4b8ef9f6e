// Command-line entry point: build timelines from a config, run verification
// suites, sample fields to CSV, render reports.
//
// Exit codes: 0 success (verify: all checks passed), 1 verification
// failures, 2 parameter-domain violations, I/O or schema errors.

#include "cyldecay/errors.hpp"
#include "cyldecay/serialize.hpp"
#include "cyldecay/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace {

using namespace cyldecay;

std::string out_path(const std::string& name) {
    const char* dir = std::getenv("CYLDECAY_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return name;
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

struct CommonOpts {
    std::string config_path;
    std::string kind;
    int n0 = -1;
    int N = -1;
    double mu = -1.0;
    double alpha = -1.0;
    std::string mode;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = -1;
};

RunConfig resolve_config(const CommonOpts& c) {
    RunConfig cfg;
    if (!c.config_path.empty()) cfg = config_from_json_text(read_text_file(c.config_path));
    if (!c.kind.empty()) cfg.kind = c.kind;
    if (c.n0 >= 0) cfg.n0 = c.n0;
    if (c.N >= 0) cfg.N = c.N;
    if (c.mu >= 0.0) cfg.mu = c.mu;
    if (c.alpha >= 0.0) cfg.alpha = c.alpha;
    if (!c.mode.empty()) cfg.mode = c.mode;
    if (c.seed_set) cfg.seed = c.seed;
    if (c.workers >= 0) cfg.workers = c.workers;
    return cfg;
}

void print_build_summary(const Built& b) {
    if (b.is_parabolic()) {
        std::cout << "parabolic chain: " << b.parabolic->blocks.size() << " blocks, t in [0, "
                  << b.parabolic->t_end() << "]\n";
        for (const auto& blk : b.parabolic->blocks)
            std::cout << "  block " << blk.index << ": k " << blk.k_in << " -> " << blk.k_out
                      << ", [" << blk.t0 << ", " << blk.t1 << "], log|c| at entry "
                      << blk.v_in.logmag << "\n";
    } else {
        const Timeline& tl = *b.timeline;
        std::cout << timeline_kind_name(tl.kind) << ": " << tl.blocks.size() << " blocks, "
                  << tl.segments.size() << " segments, t in [" << tl.t_begin() << ", "
                  << tl.t_end() << "]\n";
        for (const auto& blk : tl.blocks)
            std::cout << "  block " << blk.index << ": k " << blk.k_in << " -> " << blk.k_out
                      << ", [" << blk.t0 << ", " << blk.t1 << "], log sup at entry "
                      << blk.v_in.logmag << "\n";
    }
}

VerificationReport run_verification(const Built& b, const std::string& suite,
                                    const RunConfig& cfg) {
    VerifyOptions o;
    o.samples_per_segment = cfg.samples_per_segment;
    o.ellipticity_samples = cfg.ellipticity_samples;
    o.seed = cfg.seed;
    o.workers = cfg.workers;
    o.tol = cfg.tol;
    if (b.is_parabolic()) return run_suite(*b.parabolic, suite, o);
    return run_suite(*b.timeline, suite, o);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit decaying solutions on the cylinder: build, verify, sample"};
    app.require_subcommand(1);

    CommonOpts common;
    std::string out_file, timeline_file, report_file, suite = "all", tol_file;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "JSON config file");
        cmd->add_option("--kind", common.kind,
                        "harmonic|eigen-half|eigen-full|plis-miller|gaussian|parabolic");
        cmd->add_option("--n0", common.n0, "frequency seed");
        cmd->add_option("-N,--blocks", common.N, "number of blocks");
        cmd->add_option("--mu", common.mu, "eigenvalue");
        cmd->add_option("--alpha", common.alpha, "Hoelder exponent (plis-miller)");
        cmd->add_option("--mode", common.mode, "strict|flexible packing");
        cmd->add_option("--seed", common.seed, "sampling seed")->each([&](const std::string&) {
            common.seed_set = true;
        });
        cmd->add_option("--workers", common.workers, "verification worker count (0 = cores)");
    };

    CLI::App* build = app.add_subcommand("build", "build a timeline and write it to a file");
    add_common(build);
    build->add_option("--out", out_file, "output timeline file");

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--timeline", timeline_file, "timeline file (otherwise build from flags)");
    verify->add_option("--suite", suite,
                       "all|residual|ellipticity|c1|junctions|decay|fd|holder|extension|drift");
    verify->add_option("--tolerances", tol_file, "JSON tolerance overrides");
    verify->add_option("--out", out_file, "report output file");

    CLI::App* sample = app.add_subcommand("sample", "emit CSV samples of a timeline");
    add_common(sample);
    sample->add_option("--timeline", timeline_file, "timeline file (otherwise build from flags)");
    std::string what = "decay";
    int nx = 64, ny = 64, nt = 200;
    double at_t = 0.5, line_x = 0.0, line_y = 0.0, t0 = 0.0, t1 = -1.0;
    sample->add_option("--what", what, "decay|grid|line");
    sample->add_option("--nx", nx, "grid resolution in x");
    sample->add_option("--ny", ny, "grid resolution in y");
    sample->add_option("--t", at_t, "time of the grid slice");
    sample->add_option("--x", line_x, "x of the t-line");
    sample->add_option("--y", line_y, "y of the t-line");
    sample->add_option("--t0", t0, "t-line start");
    sample->add_option("--t1", t1, "t-line end (default: timeline end)");
    sample->add_option("--nt", nt, "t-line sample count");
    sample->add_option("--out", out_file, "output CSV file");

    CLI::App* report = app.add_subcommand("report", "render a stored report");
    report->add_option("--report", report_file, "report JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            const RunConfig cfg = resolve_config(common);
            const Built b = build_from_config(cfg);
            print_build_summary(b);
            const std::string path = out_path(out_file.empty() ? "timeline.json" : out_file);
            write_text_file(path, timeline_to_json_text(b));
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (verify->parsed()) {
            Built b = timeline_file.empty()
                          ? build_from_config(resolve_config(common))
                          : timeline_from_json_text(read_text_file(timeline_file));
            // flag overrides apply on top of the stored config
            if (common.seed_set) b.config.seed = common.seed;
            if (common.workers >= 0) b.config.workers = common.workers;
            if (!tol_file.empty()) {
                const RunConfig tc = config_from_json_text(read_text_file(tol_file));
                b.config.tol = tc.tol;
            }
            const VerificationReport rep = run_verification(b, suite, b.config);
            std::cout << report_human_summary(rep);
            const std::string path = out_path(out_file.empty() ? "report.json" : out_file);
            write_text_file(path, report_to_json_text(rep, b.config));
            std::cout << "wrote " << path << "\n";
            return rep.all_pass() ? 0 : 1;
        }
        if (sample->parsed()) {
            const Built b = timeline_file.empty()
                                ? build_from_config(resolve_config(common))
                                : timeline_from_json_text(read_text_file(timeline_file));
            std::string csv;
            if (what == "decay") {
                csv = decay_table_csv(b);
            } else if (what == "grid") {
                csv = grid_slice_csv(b, nx, ny, at_t);
            } else if (what == "line") {
                const double tend =
                    t1 >= t0 ? t1
                             : (b.is_parabolic() ? b.parabolic->t_end() : b.timeline->t_end());
                csv = t_line_csv(b, line_x, line_y, t0, tend, nt);
            } else {
                throw SchemaError("unknown sample kind: " + what);
            }
            const std::string path = out_path(out_file.empty() ? "sample.csv" : out_file);
            write_text_file(path, csv);
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (report->parsed()) {
            std::string summary;
            const bool pass = report_file_summary(read_text_file(report_file), summary);
            std::cout << summary;
            return pass ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
