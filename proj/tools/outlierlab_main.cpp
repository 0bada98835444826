#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "outlierlab/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 2;
constexpr int kExitConfig = 3;

olab::DistKind dist_from_name(const std::string& name) {
    if (name == "rademacher") return olab::DistKind::rademacher;
    if (name == "constant_one") return olab::DistKind::constant_one;
    if (name == "uniform_symmetric") return olab::DistKind::uniform_symmetric;
    if (name == "smoothed") return olab::DistKind::smoothed;
    throw std::invalid_argument("unknown distribution: " + name);
}

std::vector<double> parse_c_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        out.push_back(std::stod(cell));
    }
    if (out.empty()) throw std::invalid_argument("empty c list");
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// plain-text `key = value` lines; '#' starts a comment
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        kv[trim(text.substr(0, eq))] = trim(text.substr(eq + 1));
    }
    return kv;
}

void apply_config_entry(olab::ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "n") cfg.n = std::stoll(value);
    else if (key == "trials") cfg.trials = std::stoll(value);
    else if (key == "k") cfg.k = std::stoll(value);
    else if (key == "seed") cfg.master_seed = std::stoull(value);
    else if (key == "threads") cfg.threads = std::stoll(value);
    else if (key == "eps") cfg.eps = std::stod(value);
    else if (key == "dist") cfg.dist = dist_from_name(value);
    else if (key == "c") cfg.c_grid = parse_c_list(value);
    else if (key == "out") cfg.out_path = value;
    else throw std::runtime_error("unknown config key: " + key);
}

struct CliValues {
    std::string config, c_list, dist, out, suite, input;
    std::uint64_t seed = 0;
    std::int64_t n = 0, trials = 0, k = 0, threads = 0;
    double eps = 0.0;
};

void add_common(CLI::App* sub, CliValues& v) {
    sub->add_option("--config", v.config, "plain-text key = value config file");
    sub->add_option("--seed", v.seed, "master seed");
    sub->add_option("--n", v.n, "matrix size");
    sub->add_option("--trials", v.trials, "trials per grid point");
    sub->add_option("--c", v.c_list, "comma-separated np/log n grid");
    sub->add_option("--k", v.k, "eigenvalue index / certificate count");
    sub->add_option("--dist", v.dist,
                    "atom kind: rademacher|constant_one|uniform_symmetric|smoothed");
    sub->add_option("--out", v.out, "output path (default stdout)");
    sub->add_option("--threads", v.threads, "worker threads (0 = hardware)");
    sub->add_option("--eps", v.eps, "outlier margin for the phase check");
}

olab::ExperimentConfig build_config(const CLI::App* sub, const CliValues& v) {
    olab::ExperimentConfig cfg;
    if (sub->get_name() == "bbp") cfg.n = 2000; // dense deformation scale
    if (sub->get_name() == "lowerbound") cfg.c_grid = {1.0};
    if (!v.config.empty())
        for (const auto& [key, value] : read_config_file(v.config))
            apply_config_entry(cfg, key, value);
    if (sub->count("--seed")) cfg.master_seed = v.seed;
    if (sub->count("--n")) cfg.n = v.n;
    if (sub->count("--trials")) cfg.trials = v.trials;
    if (sub->count("--c")) cfg.c_grid = parse_c_list(v.c_list);
    if (sub->count("--k")) cfg.k = v.k;
    if (sub->count("--dist")) cfg.dist = dist_from_name(v.dist);
    if (sub->count("--out")) cfg.out_path = v.out;
    if (sub->count("--threads")) cfg.threads = v.threads;
    if (sub->count("--eps")) cfg.eps = v.eps;
    return cfg;
}

// Build the report in memory first so failed runs never leave partial files.
int write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output path: " << out_path << '\n';
        return kExitConfig;
    }
    out << text;
    return out ? kExitOk : kExitConfig;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse random matrix outlier laboratory"};
    app.require_subcommand(1);
    CliValues v;

    auto* sweep = app.add_subcommand("sweep", "eigenvalue sweep over a c grid -> CSV");
    auto* phase = app.add_subcommand("phase", "outlier-fraction phase check -> report");
    auto* seginer = app.add_subcommand("seginer", "norm / max row norm ratios -> CSV");
    auto* bbp = app.add_subcommand("bbp", "rank-one deformation demo -> CSV");
    auto* precancel = app.add_subcommand("precancel", "exact cancellation identity check");
    auto* verify = app.add_subcommand("verify", "run the exact property suites");
    auto* lowerbound = app.add_subcommand("lowerbound", "certificate demo -> CSV");
    auto* plot = app.add_subcommand("plot", "sweep CSV -> SVG chart");
    for (CLI::App* sub : {sweep, phase, seginer, bbp, precancel, verify, lowerbound, plot})
        add_common(sub, v);
    verify->add_option("--suite", v.suite, "run a single suite by name");
    plot->add_option("input", v.input, "sweep CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        const auto cfg = build_config(sub, v);
        std::ostringstream text;
        int status = kExitOk;
        if (sub == sweep) {
            write_sweep_csv(text, olab::run_sweep(cfg));
        } else if (sub == phase) {
            const auto rows = olab::run_sweep(cfg);
            write_phase_report(text, olab::phase_report_from_rows(rows, cfg.eps));
        } else if (sub == seginer) {
            const auto rows = olab::run_seginer(cfg);
            write_seginer_csv(text, rows);
            std::int64_t in_range = 0;
            for (const auto& r : rows)
                if (r.ratio >= 1.0 - 1e-6 && r.ratio <= 2.2) ++in_range;
            if (in_range * 20 < static_cast<std::int64_t>(rows.size()) * 19)
                status = kExitFalsified; // < 95% inside the sandwich
        } else if (sub == bbp) {
            write_bbp_csv(text, olab::run_bbp(cfg));
        } else if (sub == precancel) {
            const auto rep =
                olab::run_precancel(cfg.master_seed, cfg.trials > 1 ? cfg.trials : 20);
            write_precancel_report(text, rep);
            if (!rep.ok) status = kExitFalsified;
        } else if (sub == verify) {
            const auto rep = olab::verify_all(cfg.master_seed, v.suite);
            write_verify_report(text, rep);
            if (!rep.ok) status = kExitFalsified;
        } else if (sub == lowerbound) {
            const auto cert = olab::run_lowerbound_demo(cfg);
            write_certificate_csv(text, cert);
            if (!cert.ok) status = kExitFalsified;
        } else { // plot
            std::ifstream in(v.input);
            if (!in) throw std::runtime_error("cannot open sweep CSV: " + v.input);
            olab::emit_plot(in, text);
        }
        const int io = write_output(cfg.out_path, text.str());
        return io != kExitOk ? io : status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}
