#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "distribution.hpp"
#include "lowerbound.hpp"

namespace olab {

enum class ExperimentKind {
    sweep,
    phase_check,
    seginer,
    bbp,
    precancel,
    verify,
    lowerbound_demo
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::sweep;
    std::int64_t n = 20000;
    std::vector<double> c_grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0};
    std::int64_t trials = 20;
    std::int64_t k = 2;
    DistKind dist = DistKind::rademacher;
    std::uint64_t master_seed = 12345;
    std::string out_path;
    std::int64_t threads = 0;  // 0 = hardware concurrency
    double eps = 0.02;         // outlier margin for the phase check

    void validate() const; // trials >= 1, c_grid strictly increasing, n >= 100
};

// One sampled adjacency matrix at p = c log(n)/n: measured k-th largest
// |eigenvalue| against the row-norm predictor and its closed-form asymptote.
struct SweepRow {
    double c = 0.0;
    std::int64_t n = 0;
    std::int64_t trial = 0;
    double lambda_abs_k = 0.0;
    double two_sqrt_np = 0.0;
    double rho = 0.0;
    double rho_g_pred = 0.0;
    double max_row_norm = 0.0;
    std::int64_t max_degree = 0;
    bool converged = false;
};

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct PhaseReport {
    std::vector<double> c;
    std::vector<double> outlier_fraction; // fraction of trials above (1+eps) 2 sqrt(np)
    std::vector<double> median_ratio;     // median |lambda_k| / (2 sqrt(np))
    std::vector<double> predictor_ratio;  // closed-form predictor / (2 sqrt(np))
    double crossing_c = 0.0;              // interpolated 0.5-crossing (NaN if none)
};

PhaseReport phase_report_from_rows(const std::vector<SweepRow>& rows, double eps);
void write_phase_report(std::ostream& os, const PhaseReport& rep);

struct SeginerRow {
    double c = 0.0;
    std::int64_t trial = 0;
    double ratio = 0.0; // ||W|| / max row norm
};

std::vector<SeginerRow> run_seginer(const ExperimentConfig& cfg);
void write_seginer_csv(std::ostream& os, const std::vector<SeginerRow>& rows);

struct BbpRow {
    double theta = 0.0;
    std::int64_t trial = 0;
    double lambda1 = 0.0;    // largest eigenvalue of the deformed matrix
    double prediction = 0.0; // 2 below the transition, theta + 1/theta above
};

// Rank-one deformations over theta in {0.5, 0.9, 1.5, 2, 3}.
std::vector<BbpRow> run_bbp(const ExperimentConfig& cfg);
void write_bbp_csv(std::ostream& os, const std::vector<BbpRow>& rows);

struct PrecancelInstanceRow {
    std::int64_t n = 0;
    std::int64_t edges = 0;
    std::int64_t couples = 0;
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool ok = false;
};

struct PrecancelReport {
    bool ok = false;
    std::int64_t nontrivial = 0; // conditioning event with probability in (0,1)
    std::vector<PrecancelInstanceRow> instances;
};

PrecancelReport run_precancel(std::uint64_t master_seed, std::int64_t instances);
void write_precancel_report(std::ostream& os, const PrecancelReport& rep);

struct SuiteResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerifyReport {
    bool ok = false;
    std::vector<SuiteResult> suites;
};

// Exact property suites (combinatorics, path encoding, majorizer nets,
// cancellation, spectral interlacing); suite_filter restricts to one suite.
VerifyReport verify_all(std::uint64_t master_seed, const std::string& suite_filter = "");
void write_verify_report(std::ostream& os, const VerifyReport& rep);

// Certificate demo on one sampled adjacency matrix.
CertificateResult run_lowerbound_demo(const ExperimentConfig& cfg);

// Sweep CSV -> SVG 1.1 line chart (960x540, per-c medians of rho/sqrt(np),
// predictor/sqrt(np) and |lambda_k|/sqrt(np)). Deterministic bytes.
void emit_plot(std::istream& csv, std::ostream& svg);

} // namespace olab
