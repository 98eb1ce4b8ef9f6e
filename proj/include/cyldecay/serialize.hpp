#pragma once

#include "cyldecay/parabolic.hpp"
#include "cyldecay/timeline.hpp"
#include "cyldecay/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace cyldecay {

/// Resolved build/verify configuration; every field has a default.
struct RunConfig {
    std::string kind = "harmonic";
    int n0 = 12;
    int N = 3;
    double mu = 1.0;
    double alpha = 1.0 / 3.0;
    std::string mode = "strict"; // or "flexible"
    double head_t1 = 0.01;
    int k_start = 1; // parabolic frequency override
    int samples_per_segment = 1000;
    int ellipticity_samples = 10000;
    std::uint64_t seed = 1;
    int workers = 0;
    Tolerances tol;

    PackingMode packing() const;
};

/// A built construction: exactly one of the two members is set.
struct Built {
    std::optional<Timeline> timeline;
    std::optional<ParabolicChain> parabolic;
    RunConfig config;

    bool is_parabolic() const { return parabolic.has_value(); }
};

/// Build from a resolved config (dispatches on config.kind).
Built build_from_config(const RunConfig& config);

RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& c);

/// Versioned timeline file: the resolved config plus the derived block
/// tables. Loading rebuilds from the config deterministically and verifies
/// the stored tables bit-exactly, so evaluators reconstruct identically.
std::string timeline_to_json_text(const Built& b);
Built timeline_from_json_text(const std::string& text);

std::string report_to_json_text(const VerificationReport& rep, const RunConfig& config);
std::string report_human_summary(const VerificationReport& rep);

/// Render a stored report file back into the human summary; returns pass.
bool report_file_summary(const std::string& json_text, std::string& summary);

/// CSV emission. Decay table: one row per block time.
std::string decay_table_csv(const Built& b);
/// Regular (x, y) grid of u and the coefficients at fixed t.
std::string grid_slice_csv(const Built& b, int nx, int ny, double t);
/// Values along a t-line at fixed (x, y).
std::string t_line_csv(const Built& b, double x, double y, double t0, double t1, int n);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace cyldecay
