#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>

#include "mmthz/report.hpp"
#include "mmthz/txchain.hpp"
#include "mmthz/units.hpp"

using namespace mmthz;
using Catch::Approx;
namespace fsys = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fsys::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fsys::path test_dir() {
    static const fsys::path dir = [] {
        auto d = fsys::temp_directory_path() /
                 ("mmthz_cli_test_" + std::to_string(static_cast<long>(::getpid())));
        fsys::remove_all(d);
        fsys::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fsys::path out = test_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fsys::path err = test_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(MMTHZ_CLI_PATH) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out);
    result.err = slurp(err);
    return result;
}

double column_value(const ReportEnvelope& envelope, std::size_t row, const std::string& column) {
    for (std::size_t c = 0; c < envelope.payload.columns.size(); ++c)
        if (envelope.payload.columns[c] == column)
            return std::get<double>(envelope.payload.rows[row][c]);
    throw std::runtime_error("no such column: " + column);
}

}  // namespace

TEST_CASE("absorption: single frequency degenerates to one row") {
    const RunResult r = run_cli("absorption --fmin 183.31 --fmax 183.31 --step 0.1 --cond hot");
    REQUIRE(r.exit_code == 0);
    const ReportEnvelope envelope = from_csv(r.out);
    REQUIRE(envelope.payload.rows.size() == 1);
    CHECK(column_value(envelope, 0, "a_abs_1km_db") > 100.0);
    CHECK(column_value(envelope, 0, "a_abs_100m_db") == Approx(15.0).margin(3.0));
    CHECK(envelope.config.at("cond") == "hot");
}

TEST_CASE("absorption: cold_dry peaks below hot at the water line") {
    const RunResult hot = run_cli("absorption --fmin 183.3 --fmax 183.4 --step 0.1 --cond hot");
    const RunResult cold =
        run_cli("absorption --fmin 183.3 --fmax 183.4 --step 0.1 --cond cold_dry");
    REQUIRE(hot.exit_code == 0);
    REQUIRE(cold.exit_code == 0);
    const double g_hot = column_value(from_csv(hot.out), 0, "gamma_db_per_km");
    const double g_cold = column_value(from_csv(cold.out), 0, "gamma_db_per_km");
    CHECK(g_cold < g_hot);
}

TEST_CASE("txnf: endpoints and anchor rows") {
    const RunResult r = run_cli("txnf --tech both --fmin 30 --fmax 500 --step 5");
    REQUIRE(r.exit_code == 0);
    const ReportEnvelope envelope = from_csv(r.out);
    REQUIRE(envelope.payload.rows.size() == 2 * 95);

    const auto find_row = [&](const std::string& tech, double f_ghz) -> std::size_t {
        for (std::size_t i = 0; i < envelope.payload.rows.size(); ++i) {
            if (std::get<std::string>(envelope.payload.rows[i][0]) == tech &&
                std::get<double>(envelope.payload.rows[i][1]) == f_ghz)
                return i;
        }
        throw std::runtime_error("row not found");
    };
    CHECK(column_value(envelope, find_row("cmos", 30.0), "f_tx_db") == Approx(17.0).margin(0.5));
    CHECK(column_value(envelope, find_row("cmos", 500.0), "f_tx_db") == Approx(20.8).margin(0.5));
    CHECK(column_value(envelope, find_row("sige", 30.0), "f_tx_db") == Approx(11.0).margin(0.5));
    CHECK(column_value(envelope, find_row("sige", 500.0), "f_tx_db") == Approx(14.5).margin(0.5));

    // anchor frequency emits the exact survey-derived cascade
    const double at_anchor = column_value(envelope, find_row("cmos", 150.0), "f_tx_db");
    const double expected = to_db(from_db(14.5) + (from_db(7.9) - 1.0) / from_db(-5.0));
    CHECK(at_anchor == Approx(expected).margin(1e-9));
    CHECK(column_value(envelope, find_row("sige", 65.0), "chain_gain_db") ==
          Approx(32.0).margin(1e-9));
}

TEST_CASE("errors exit nonzero with a single-line message") {
    const RunResult bad_flag = run_cli("absorption --bogus 1");
    CHECK(bad_flag.exit_code != 0);
    CHECK(bad_flag.err.rfind("error:", 0) == 0);
    CHECK(bad_flag.err.find('\n') == bad_flag.err.size() - 1);

    const RunResult bad_cond = run_cli("absorption --cond sauna");
    CHECK(bad_cond.exit_code != 0);
    CHECK(bad_cond.err.rfind("error:", 0) == 0);

    const RunResult bad_out = run_cli("absorption --fmin 100 --fmax 100 --step 1 --out /nonexistent_dir_x/y.csv");
    CHECK(bad_out.exit_code != 0);
    CHECK(bad_out.err.rfind("error:", 0) == 0);

    const RunResult bad_grid = run_cli("dominance --axis1 nf:8:23:0 --axis2 frequency:30:300:5");
    CHECK(bad_grid.exit_code != 0);
    CHECK(bad_grid.err.rfind("error:", 0) == 0);
}

TEST_CASE("config file merges under explicit flags and rejects unknown keys") {
    const fsys::path good = test_dir() / "good.cfg";
    std::ofstream(good) << "fmin=100\nfmax=100\nstep=1\ncond=cold_dry\n";
    const RunResult merged = run_cli("absorption --config " + good.string() + " --cond hot");
    REQUIRE(merged.exit_code == 0);
    const ReportEnvelope envelope = from_csv(merged.out);
    CHECK(envelope.config.at("cond") == "hot");  // flag wins
    CHECK(envelope.config.at("fmin") == "100");
    REQUIRE(envelope.payload.rows.size() == 1);

    const fsys::path bad = test_dir() / "bad.cfg";
    std::ofstream(bad) << "fmim=100\n";
    const RunResult rejected = run_cli("absorption --config " + bad.string());
    CHECK(rejected.exit_code != 0);
    CHECK(rejected.err.find("fmim") != std::string::npos);

    const fsys::path json = test_dir() / "good.json";
    std::ofstream(json) << R"({"fmin": 100, "fmax": 100, "step": 1})";
    const RunResult from_json = run_cli("absorption --config " + json.string());
    REQUIRE(from_json.exit_code == 0);
    CHECK(from_csv(from_json.out).payload.rows.size() == 1);
}

TEST_CASE("custom conditions file") {
    const fsys::path cond = test_dir() / "cond.cfg";
    std::ofstream(cond) << "temperature_k=290\npressure_pa=100000\nwater_vapor_density_g_m3=5\n";
    const RunResult r =
        run_cli("absorption --fmin 183.31 --fmax 183.31 --step 1 --cond " + cond.string());
    REQUIRE(r.exit_code == 0);
    const ReportEnvelope envelope = from_csv(r.out);
    CHECK(envelope.config.at("cond") == "custom");
    CHECK(envelope.config.at("cond_temperature_k") == "290");
    // 5 g/m3 sits between the cold_dry 3.4 and moderate 12.8 line strengths
    const double gamma = column_value(envelope, 0, "gamma_db_per_km");
    CHECK(gamma > 14.0);
    CHECK(gamma < 48.0);
}

TEST_CASE("component table override changes the cascade") {
    fsys::path modified = test_dir() / "components.csv";
    {
        std::ifstream in(std::string(MMTHZ_DATA_DIR) + "/components.csv");
        std::ofstream out(modified);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (!first && line.rfind("cmos,mixer_plus_if,30,100", 0) == 0)
                line = "cmos,mixer_plus_if,30,100,20.0,-2,what-if";
            out << line << "\n";
            first = false;
        }
    }
    const RunResult base = run_cli("txnf --tech cmos --fmin 65 --fmax 65 --step 1");
    const RunResult what_if =
        run_cli("txnf --tech cmos --fmin 65 --fmax 65 --step 1 --components " + modified.string());
    REQUIRE(base.exit_code == 0);
    REQUIRE(what_if.exit_code == 0);
    const double nf_base = column_value(from_csv(base.out), 0, "f_tx_db");
    const double nf_mod = column_value(from_csv(what_if.out), 0, "f_tx_db");
    CHECK(nf_mod > nf_base + 3.0);
}

TEST_CASE("json and csv payloads carry the same numbers") {
    const std::string args = "sweep --axis frequency --from 100 --to 140 --steps 5 --preset medium";
    const RunResult csv = run_cli(args + " --format csv");
    const RunResult json = run_cli(args + " --format json");
    REQUIRE(csv.exit_code == 0);
    REQUIRE(json.exit_code == 0);
    const ReportEnvelope a = from_csv(csv.out);
    const ReportEnvelope b = from_json_string(json.out);
    REQUIRE(a.payload.rows.size() == b.payload.rows.size());
    for (std::size_t r = 0; r < a.payload.rows.size(); ++r)
        for (std::size_t c = 0; c < a.payload.columns.size(); ++c) {
            const auto& ca = a.payload.rows[r][c];
            if (const auto* num = std::get_if<double>(&ca))
                REQUIRE(*num == std::get<double>(b.payload.rows[r][c]));
            else
                REQUIRE(std::get<std::string>(ca) ==
                        std::get<std::string>(b.payload.rows[r][c]));
        }
}

TEST_CASE("rerunning from the echoed config reproduces the payload") {
    const RunResult first =
        run_cli("sweep --axis distance --from 0.001 --to 1 --steps 7 --log --freq 140");
    REQUIRE(first.exit_code == 0);
    const ReportEnvelope envelope = from_csv(first.out);

    // write the echoed config back out and rerun with no other flags
    const fsys::path cfg = test_dir() / "echo.cfg";
    {
        std::ofstream out(cfg);
        for (const auto& [key, value] : envelope.config)
            if (key != "format") out << key << "=" << value << "\n";
    }
    const RunResult second = run_cli("sweep --config " + cfg.string());
    REQUIRE(second.exit_code == 0);
    CHECK(from_csv(second.out).payload.rows == envelope.payload.rows);
}

TEST_CASE("dominance row report carries both constants and the tier ladder") {
    const RunResult r = run_cli("dominance --preset short --freq 140 --fmin 140 --fmax 140 --step 1");
    REQUIRE(r.exit_code == 0);
    const ReportEnvelope envelope = from_csv(r.out);
    CHECK(envelope.constants.onset_threshold_db_report == -5.9);
    CHECK(envelope.constants.onset_threshold_db_exact == Approx(-5.8683).margin(1e-3));
    CHECK(envelope.constants.boltzmann_j_per_k == 1.380649e-23);
    REQUIRE(envelope.payload.rows.size() == 1);
    CHECK(column_value(envelope, 0, "degradation_db") > 5.0);
    CHECK(std::get<std::string>(envelope.payload.rows[0][8]) == "architectural");
    CHECK(std::get<std::string>(envelope.payload.rows[0][9]) == "true");
}

TEST_CASE("dominance grid emits contour-ready cells") {
    const RunResult r = run_cli(
        "dominance --preset medium --freq 250 --axis1 nf:8:23:4 --axis2 pathloss:90:140:6");
    REQUIRE(r.exit_code == 0);
    const ReportEnvelope envelope = from_csv(r.out);
    REQUIRE(envelope.payload.rows.size() == 24);
    CHECK(envelope.payload.columns[0] == "nf_db");
    CHECK(envelope.payload.columns[1] == "pathloss_db");
    // higher loss means less degradation along each nf row
    for (std::size_t i = 0; i + 1 < 6; ++i)
        CHECK(column_value(envelope, i, "degradation_db") >
              column_value(envelope, i + 1, "degradation_db"));
}

TEST_CASE("casestudy and sensitivity runs are deterministic") {
    const fsys::path dir_a = test_dir() / "case_a";
    const fsys::path dir_b = test_dir() / "case_b";
    const std::string args = "casestudy --preset short --fmin 30 --fmax 500 --step 25 --points 201";
    REQUIRE(run_cli(args + " --out " + dir_a.string()).exit_code == 0);
    REQUIRE(run_cli(args + " --out " + dir_b.string()).exit_code == 0);
    for (const auto& entry : fsys::directory_iterator(dir_a)) {
        const auto other = dir_b / entry.path().filename();
        REQUIRE(fsys::exists(other));
        REQUIRE(slurp(entry.path()) == slurp(other));
    }
    REQUIRE(std::distance(fsys::directory_iterator(dir_a), fsys::directory_iterator{}) == 4);

    // concurrent executions agree as well
    const fsys::path dir_c = test_dir() / "sens_c";
    const fsys::path dir_d = test_dir() / "sens_d";
    const std::string sens = "sensitivity --fmin 60 --fmax 300 --step 30 --points 201";
    auto fut_c = std::async(std::launch::async,
                            [&] { return run_cli(sens + " --out " + dir_c.string()); });
    auto fut_d = std::async(std::launch::async,
                            [&] { return run_cli(sens + " --out " + dir_d.string()); });
    REQUIRE(fut_c.get().exit_code == 0);
    REQUIRE(fut_d.get().exit_code == 0);
    int files = 0;
    for (const auto& entry : fsys::directory_iterator(dir_c)) {
        REQUIRE(slurp(entry.path()) == slurp(dir_d / entry.path().filename()));
        ++files;
    }
    CHECK(files == 3);
}

TEST_CASE("casestudy medium emits the frequency sweep file") {
    const fsys::path dir = test_dir() / "case_medium";
    const RunResult r = run_cli("casestudy --preset medium --fmin 100 --fmax 120 --step 10 "
                                "--points 101 --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    const ReportEnvelope envelope = from_csv(slurp(dir / "medium_snr_vs_frequency.csv"));
    REQUIRE(envelope.payload.rows.size() == 3);
    CHECK(envelope.config.at("preset") == "medium");
    CHECK(envelope.config.at("distance") == "100");
    // every SNR column ordering holds in the emitted file
    for (std::size_t i = 0; i < envelope.payload.rows.size(); ++i) {
        CHECK(column_value(envelope, i, "snr_thermal_only_db") >=
              column_value(envelope, i, "snr_baseline_db"));
        CHECK(column_value(envelope, i, "snr_baseline_db") >=
              column_value(envelope, i, "snr_baseline_plus_tx_db"));
    }
}
