#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "fzeta-cli-tests";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(FZETA_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_drum(const std::string& name, const std::string& content) {
    const fs::path dir = fs::temp_directory_path() / "fzeta-cli-tests";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream(p) << content;
    return p;
}

const std::string kPowerJson = R"({"ambient_dim":2,"family":{"tag":"power_tail","alpha":2.0}})";
const std::string kCantorJson =
    R"({"ambient_dim":2,"family":{"tag":"cantor_infinity","a":0.25,"b":2.0}})";

}  // namespace

TEST_CASE("zeta-eval reproduces 1/(s+3) for the power tail") {
    const fs::path drum = write_drum("power.json", kPowerJson);
    const RunResult r =
        run_cli("zeta-eval --drum " + drum.string() + " --s-grid \"-2:2:5,0:0:1\"");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "re_s,im_s,re_zeta,im_zeta,err");
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        double re, im, zr, zi, err;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &re, &im, &zr, &zi, &err) == 5);
        CHECK(zr == doctest::Approx(1.0 / (re + 3.0)).epsilon(1e-10));
        CHECK(std::abs(zi) < 1e-12);
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("outputs are byte-identical across repeated runs") {
    const fs::path drum = write_drum("cantor.json", kCantorJson);
    const std::string args = "zeta-eval --drum " + drum.string() +
                             " --s-grid \"-2:0:4,-6:6:3\" --kind tube --tol 1e-8";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("malformed drum JSON: exit code 2, no partial outputs") {
    const fs::path bad = write_drum("bad.json", "{not json");
    const fs::path dir = fs::temp_directory_path() / "fzeta-cli-tests";
    const fs::path out = dir / "should_not_exist.csv";
    fs::remove(out);
    const RunResult r =
        run_cli("tube --drum " + bad.string() + " --t-grid 1:10:3 --out " + out.string());
    CHECK(r.exit_code == 2);
    CHECK_FALSE(fs::exists(out));
    // machine-readable diagnostics on stderr
    const nlohmann::json diag = nlohmann::json::parse(r.err);
    CHECK(diag.at("error").at("type") == "config");
}

TEST_CASE("invalid parameters: exit code 2") {
    const fs::path drum =
        write_drum("badparam.json",
                   R"({"ambient_dim":2,"family":{"tag":"cantor_infinity","a":0.25,"b":1.4}})");
    CHECK(run_cli("dim --drum " + drum.string()).exit_code == 2);
    const fs::path power = write_drum("power.json", kPowerJson);
    CHECK(run_cli("zeta-eval --drum " + power.string() + " --s-grid 0:1:2,0:0:1 --tol 1").exit_code ==
          2);
}

TEST_CASE("numeric failure: exit code 3") {
    // closed-form evaluation pinned to a pole
    const fs::path power = write_drum("power.json", kPowerJson);
    const RunResult r =
        run_cli("zeta-eval --drum " + power.string() + " --s-grid \"-3:-3:1,0:0:1\"");
    CHECK(r.exit_code == 3);
    const nlohmann::json diag = nlohmann::json::parse(r.err);
    CHECK(diag.at("error").at("type") == "numeric");
}

TEST_CASE("verify emits a residual table and exits 0 on the stacked drum") {
    const fs::path drum = write_drum("cantor.json", kCantorJson);
    const RunResult r = run_cli("verify --drum " + drum.string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("functional_equation") != std::string::npos);
    CHECK(r.out.find("fourier_residue_link") != std::string::npos);
    CHECK(r.out.find("content_bound_C3") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("construct round-trips through the drum loader") {
    const RunResult r = run_cli("construct --recipe algebraic --order 2 --dimension -2.5 --a1 0.25");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema") == "fzeta/1");
    CHECK(j.at("report").at("classification") == "algebraic");
    CHECK(j.at("report").at("independence_probe").at("pass") == true);
    // the emitted drum is loadable by the other subcommands
    const fs::path drum = write_drum("built.json", j.at("drum").dump());
    const RunResult t = run_cli("tube --drum " + drum.string() + " --t-grid 2:64:4");
    CHECK(t.exit_code == 0);
}

TEST_CASE("JSON output format mirrors the CSV") {
    const fs::path drum = write_drum("power.json", kPowerJson);
    const RunResult r = run_cli("dim --drum " + drum.string() + " --format json");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema") == "fzeta/1");
    CHECK(j.at("columns").at(0) == "dimension");
    CHECK(j.at("rows").at(0).at(0).get<double>() == doctest::Approx(-3.0));
}
