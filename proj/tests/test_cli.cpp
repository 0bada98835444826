#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli; // path to the command-line binary, passed as the last argument

struct RunResult {
    int code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_file = "/tmp/olab_cli_out.txt";
    const std::string cmd = g_cli + " " + args + " > " + out_file + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    res.output = ss.str();
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("verify runs a single suite and passes") {
    auto res = run("verify --suite dyck --seed 7");
    CHECK(res.code == 0);
    CHECK(res.output.find("suite dyck: PASS") != std::string::npos);
    CHECK(res.output.find("verify: OK") != std::string::npos);
}

TEST_CASE("unknown suite and bad flags exit with config status") {
    CHECK(run("verify --suite nonsense").code == 3);
    CHECK(run("sweep --no-such-flag").code == 3);
    CHECK(run("sweep --n 10 --c 1 --trials 1").code == 3); // n below spectral minimum
    CHECK(run("plot /no/such/file.csv --out /tmp/olab_x.svg").code == 3);
}

TEST_CASE("sweep CSV: schema, determinism across thread counts") {
    const std::string csv1 = "/tmp/olab_sweep1.csv";
    const std::string csv2 = "/tmp/olab_sweep2.csv";
    auto r1 = run("sweep --n 300 --trials 2 --c 1,3 --seed 99 --threads 1 --out " + csv1);
    auto r2 = run("sweep --n 300 --trials 2 --c 1,3 --seed 99 --threads 4 --out " + csv2);
    REQUIRE(r1.code == 0);
    REQUIRE(r2.code == 0);
    const auto a = slurp(csv1);
    CHECK(a == slurp(csv2));
    CHECK(a.rfind("#schema=1\n", 0) == 0);
    CHECK(a.find("c,n,trial,lambda_abs_k") != std::string::npos);
    // header comment + column header + 2 c-values x 2 trials
    std::stringstream ss(a);
    std::string line;
    int rows = 0;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'c') ++rows;
    CHECK(rows == 4);
}

TEST_CASE("plot emits a deterministic three-series SVG") {
    const std::string csv = "/tmp/olab_sweep1.csv"; // produced by the sweep case
    const std::string svg1 = "/tmp/olab_fig1.svg";
    const std::string svg2 = "/tmp/olab_fig2.svg";
    REQUIRE(run("plot " + csv + " --out " + svg1).code == 0);
    REQUIRE(run("plot " + csv + " --out " + svg2).code == 0);
    const auto s = slurp(svg1);
    CHECK(s == slurp(svg2));
    CHECK(s.find("<svg xmlns") != std::string::npos);
    int polylines = 0;
    for (std::size_t pos = 0; (pos = s.find("<polyline", pos)) != std::string::npos; ++pos)
        ++polylines;
    CHECK(polylines == 3);
    CHECK(s.find("predictor / sqrt(np)") != std::string::npos);
}

TEST_CASE("config file is applied and overridden by flags") {
    const std::string cfg = "/tmp/olab_cfg.txt";
    {
        std::ofstream out(cfg);
        out << "# sweep configuration\n";
        out << "n = 300\n";
        out << "trials = 1\n";
        out << "c = 2\n";
        out << "seed = 5\n";
    }
    const std::string csv1 = "/tmp/olab_cfg1.csv";
    const std::string csv2 = "/tmp/olab_cfg2.csv";
    REQUIRE(run("sweep --config " + cfg + " --out " + csv1).code == 0);
    REQUIRE(run("sweep --config " + cfg + " --trials 2 --out " + csv2).code == 0);
    std::stringstream s1(slurp(csv1)), s2(slurp(csv2));
    std::string line;
    int rows1 = 0, rows2 = 0;
    while (std::getline(s1, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'c') ++rows1;
    while (std::getline(s2, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'c') ++rows2;
    CHECK(rows1 == 1);
    CHECK(rows2 == 2); // flag overrode the config trials

    {
        std::ofstream out(cfg);
        out << "nonsense = 1\n";
    }
    CHECK(run("sweep --config " + cfg).code == 3);
}

TEST_CASE("precancel subcommand reports equality") {
    auto res = run("precancel --seed 11");
    CHECK(res.code == 0);
    CHECK(res.output.find("#result=equal") != std::string::npos);
}

TEST_CASE("phase report carries the predictor column") {
    auto res = run("phase --n 300 --trials 2 --c 1,3 --seed 42");
    CHECK(res.code == 0);
    CHECK(res.output.find("c,outlier_fraction,median_ratio,predictor_ratio") !=
          std::string::npos);
    CHECK(res.output.find("#crossing_c=") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [doctest args]\n");
        return 1;
    }
    g_cli = argv[argc - 1];
    doctest::Context ctx(argc - 1, argv);
    return ctx.run();
}
