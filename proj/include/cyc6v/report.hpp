// Verification suites with machine-readable reporting: named residual checks
// over every module, a deterministic run orchestrator, JSON report/config
// serialization with lossless decimal round-trips, and the spectrum listing
// used by the command-line tool.

#pragma once

#include <string>

#include "cyc6v/reductions.hpp"
#include "cyc6v/sov_spectrum.hpp"
#include "cyc6v/tq.hpp"

namespace cyc6v {

inline const char* report_version() { return "1.0.0"; }

struct RunSpec {
    std::string suite = "all";  // bulk|boundary|sov|spectrum|tq|reductions|all
    int p = 3;
    int p_prime = 2;
    int N = 2;
    std::uint64_t seed = 1;
    std::string mode;         // empty = per-suite default
    ToleranceProfile tol;
    std::string output;       // report path, empty = stdout only
    bool allow_large = false; // lift the p^N <= 243 cap
};

// Throws std::invalid_argument (usage error) when the spec is inconsistent.
void validate(const RunSpec& spec);

struct CheckRecord {
    std::string id;      // equation label the check certifies
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;   // residual <= tolerance
    long wall_time_ms = 0;
    std::string context;
};

struct Report {
    int p = 0, p_prime = 0, N = 0;
    std::uint64_t seed = 0;
    std::string mode;
    std::string version;
    std::vector<CheckRecord> checks;
    int n_pass = 0, n_fail = 0;
    bool all_pass() const { return n_fail == 0; }
};

// Runs the selected suite(s); deterministic for fixed spec (timing aside).
Report run(const RunSpec& spec);

// JSON serialization; complex numbers as exact decimal "re,im" strings.
std::string format_complex(cx z);
cx parse_complex(const std::string& s);

std::string report_to_json(const Report& rep);
void save_report(const Report& rep, const std::string& path);

// Chain-configuration round trip.  Loading rejects unknown keys and reports
// missing required keys by name.
std::string config_to_json(const ChainConfig& cfg);
ChainConfig config_from_json(const std::string& text);
void save_config(const ChainConfig& cfg, const std::string& path);
ChainConfig load_config(const std::string& path);

// Eigenvalue listing with per-eigenvalue determinant-condition residuals.
struct SpectrumListing {
    std::vector<cx> eigenvalues;        // tau(lambda_ref), one per state
    cx lambda_ref;
    std::vector<double> det_residuals;  // max_a |F_a| per eigenvalue
};
SpectrumListing spectrum_listing(const RunSpec& spec);

}  // namespace cyc6v
