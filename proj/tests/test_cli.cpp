// End-to-end checks of the fsisim command line: exit codes and emitted files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run_cmd(const std::string& args) {
    const std::string cmd = std::string(FSISIM_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::filesystem::path scratch() {
    const auto dir = std::filesystem::temp_directory_path() / "fsi_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_config(const std::string& name, const std::string& body) {
    const auto path = scratch() / name;
    std::ofstream out(path);
    out << body;
    return path.string();
}

}  // namespace

TEST_CASE("run on the steady preset exits 0 and keeps the residual at zero") {
    const auto outdir = (scratch() / "steady_out").string();
    const std::string cfg = write_config("steady.cfg",
                                         "[grid]\nnx = 16\nnz = 8\n"
                                         "[numerics]\nt_end = 0.01\ndt = 1e-3\n"
                                         "[output]\ndir = " + outdir + "\n");
    CHECK(run_cmd("run --config " + cfg) == 0);

    std::ifstream ts(outdir + "/timeseries.csv");
    REQUIRE(ts.good());
    std::string line;
    std::getline(ts, line);  // header
    int rows = 0;
    while (std::getline(ts, line)) {
        std::stringstream ss(line);
        std::string cell;
        for (int c = 0; c <= 10; ++c) std::getline(ss, cell, ',');
        CHECK(std::abs(std::stod(cell)) < 1e-10);  // steady_residual column
        ++rows;
    }
    CHECK(rows == 10);
}

TEST_CASE("check-compat passes on a matched kick of small amplitude") {
    const std::string cfg = write_config("kick_tiny.cfg",
                                         "[grid]\nnx = 16\nnz = 8\n"
                                         "[initial]\npreset = beam_kick\namplitude = 1e-9\n"
                                         "[numerics]\nt_end = 0.01\n");
    CHECK(run_cmd("check-compat --config " + cfg) == 0);

    // at a visible amplitude the second-order condition fails at O(amplitude)
    const std::string big = write_config("kick_big.cfg",
                                         "[grid]\nnx = 16\nnz = 8\n"
                                         "[initial]\npreset = beam_kick\namplitude = 1e-3\n"
                                         "[numerics]\nt_end = 0.01\n");
    CHECK(run_cmd("check-compat --config " + big) == 1);
}

TEST_CASE("usage errors exit 2, runtime errors exit 1") {
    CHECK(run_cmd("no-such-subcommand") == 2);
    CHECK(run_cmd("") == 2);
    CHECK(run_cmd("run --config /nonexistent.cfg") == 1);
}

TEST_CASE("run honors the --out override") {
    const auto outdir = (scratch() / "override_out").string();
    const std::string cfg = write_config("override.cfg",
                                         "[grid]\nnx = 16\nnz = 8\n"
                                         "[numerics]\nt_end = 0.002\ndt = 1e-3\n"
                                         "[output]\ndir = " + (scratch() / "unused").string() +
                                             "\n");
    CHECK(run_cmd("run --config " + cfg + " --out " + outdir) == 0);
    CHECK(std::filesystem::exists(outdir + "/timeseries.csv"));
    CHECK(!std::filesystem::exists((scratch() / "unused" / "timeseries.csv")));
}

TEST_CASE("oracle subcommands run") {
    const std::string cfg = write_config("oracle.cfg",
                                         "[grid]\nnx = 16\nnz = 8\n"
                                         "[numerics]\nt_end = 0.01\n");
    CHECK(run_cmd("oracle beam --config " + cfg) == 0);
    CHECK(run_cmd("oracle transport --config " + cfg) == 0);
}
