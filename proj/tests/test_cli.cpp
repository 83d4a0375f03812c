#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string cli = ORDPAT_CLI_PATH;

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "ordpat_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path wpath(const std::string& name) { return work_dir() / name; }

int run_cli(const std::string& args) {
    static int call = 0;
    const fs::path out = wpath("stdout_" + std::to_string(++call) + ".txt");
    const std::string cmd = cli + " " + args + " > " + out.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    f << content;
}

// a step series without ties, usable by the mean-based commands
void write_step_csv(const fs::path& p, int first, int second, double jump) {
    std::ostringstream os;
    os << "value\n";
    for (int i = 0; i < first; ++i) os << (0.0) << "\n";
    for (int i = 0; i < second; ++i) os << jump << "\n";
    write_file(p, os.str());
}

} // namespace

TEST_CASE("simulate writes byte-identical artifacts for one seed", "[cli]") {
    const fs::path a = wpath("sim_a.csv");
    const fs::path b = wpath("sim_b.csv");
    REQUIRE(run_cli("simulate --model bm --T 50 --seed 3 --output " + a.string()) == 0);
    REQUIRE(run_cli("simulate --model bm --T 50 --seed 3 --output " + b.string()) == 0);
    const std::string sa = slurp(a);
    CHECK(sa == slurp(b));
    CHECK(sa.find("# tool: ordpat") != std::string::npos);
    CHECK(sa.find("# seed: 3") != std::string::npos);
    CHECK(sa.find("index,value") != std::string::npos);

    const fs::path c = wpath("sim_c.csv");
    REQUIRE(run_cli("simulate --model bm --T 50 --seed 4 --output " + c.string()) == 0);
    CHECK(slurp(c) != sa);
}

TEST_CASE("simulated output feeds straight back into the analyzers", "[cli]") {
    const fs::path sim = wpath("pipe_sim.csv");
    REQUIRE(run_cli("simulate --model bm --T 300 --seed 4 --output " + sim.string()) == 0);

    const fs::path pat = wpath("pipe_pat.csv");
    REQUIRE(run_cli("patterns --input " + sim.string() + " --column value --order 4 --lags 1 " +
                    "--format csv --output " + pat.string()) == 0);
    const std::string table = slurp(pat);
    std::size_t data_lines = 0;
    bool header_seen = false;
    std::istringstream in(table);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) continue;
        if (!header_seen) {
            CHECK(line == "index,pattern,lag1");
            header_seen = true;
        } else {
            ++data_lines;
        }
    }
    CHECK(data_lines == 24);
}

TEST_CASE("patterns emits a json envelope with meta and result", "[cli]") {
    const fs::path sim = wpath("env_sim.csv");
    REQUIRE(run_cli("simulate --model bm --T 300 --seed 5 --output " + sim.string()) == 0);
    const fs::path out = wpath("env_pat.json");
    REQUIRE(run_cli("patterns --input " + sim.string() +
                    " --column value --order 3 --lags 1,2,3 --output " + out.string()) == 0);
    const json j = slurp_json(out);
    CHECK(j["meta"]["tool"] == "ordpat");
    CHECK(j["meta"]["command"] == "patterns");
    CHECK(j["meta"]["version"].is_string());
    CHECK(j["meta"]["config"]["order"] == 3);
    CHECK(j["result"]["length"] == 300);
    REQUIRE(j["result"]["per_lag"].size() == 3);
    CHECK(j["result"]["per_lag"][0]["lag"] == 1);
    CHECK(j["result"]["per_lag"][0]["frequencies"].size() == 6);
    REQUIRE(j["result"].contains("averaged"));
    double sum = 0.0;
    for (const auto& item : j["result"]["averaged"]["frequencies"].items())
        sum += item.value().get<double>();
    CHECK(sum == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("summary reports the per-lag statistics", "[cli]") {
    const fs::path sim = wpath("sum_sim.csv");
    REQUIRE(run_cli("simulate --model bm --T 500 --seed 6 --output " + sim.string()) == 0);
    const fs::path out = wpath("sum.json");
    REQUIRE(run_cli("summary --input " + sim.string() + " --column value --lags 1,2 --output " +
                    out.string()) == 0);
    const json j = slurp_json(out);
    CHECK(j["meta"]["command"] == "summary");
    CHECK(j["result"]["turning_rate_by_lag"].size() == 2);
    const double alpha = j["result"]["mean_turning_rate"].get<double>();
    CHECK(alpha > 0.3);
    CHECK(alpha < 0.7);
}

TEST_CASE("exit codes distinguish usage, data and io failures", "[cli]") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("patterns --help") == 0);
    CHECK(run_cli("frobnicate") == 1);
    CHECK(run_cli("patterns --input x.csv --column value --no-such-flag") == 1);
    CHECK(run_cli("patterns --column value") == 1);  // --input is required
    CHECK(run_cli("patterns --input " + wpath("absent.csv").string() + " --column value") == 3);

    const fs::path constant = wpath("const.csv");
    std::ostringstream os;
    os << "value\n";
    for (int i = 0; i < 30; ++i) os << "5\n";
    write_file(constant, os.str());
    CHECK(run_cli("patterns --input " + constant.string() + " --column value --order 3") == 2);
    // tie-breaking jitter turns the same input into a valid one
    CHECK(run_cli("patterns --input " + constant.string() +
                  " --column value --order 3 --jitter auto") == 0);
}

TEST_CASE("test-bm echoes its seed and reruns identically", "[cli]") {
    const fs::path sim = wpath("tbm_sim.csv");
    REQUIRE(run_cli("simulate --model bm --T 300 --seed 7 --output " + sim.string()) == 0);
    const fs::path r1 = wpath("tbm_1.json");
    const fs::path r2 = wpath("tbm_2.json");
    const fs::path null_csv = wpath("tbm_null.csv");
    const std::string args = "test-bm --input " + sim.string() +
                             " --column value --order 3 --lags 1,2 --N 150 --seed 11 ";
    REQUIRE(run_cli(args + "--dump-null " + null_csv.string() + " --output " + r1.string()) == 0);
    REQUIRE(run_cli(args + "--output " + r2.string()) == 0);
    CHECK(slurp(r1) == slurp(r2));

    const json j = slurp_json(r1);
    CHECK(j["meta"]["seed"] == 11);
    CHECK(j["result"]["statistic_name"] == "bm_pattern_distance");
    const double p = j["result"]["p_value"].get<double>();
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    CHECK(j["result"]["n_simulations"] == 150);

    const std::string null_sample = slurp(null_csv);
    CHECK(null_sample.rfind("distance\n", 0) == 0);
    CHECK(count_lines(null_sample) == 151);
}

TEST_CASE("bienayme covers both null hypotheses", "[cli]") {
    const fs::path sim = wpath("bien_sim.csv");
    REQUIRE(run_cli("simulate --model ar1 --phi 0 --T 400 --seed 8 --output " + sim.string()) == 0);
    const fs::path csv = wpath("bien.csv");
    REQUIRE(run_cli("bienayme --input " + sim.string() + " --column value --null iid --format csv " +
                    "--output " + csv.string()) == 0);
    const std::string out = slurp(csv);
    CHECK(out.find("statistic,observed,null_median,z,p_value") != std::string::npos);
    CHECK(out.find("turning_points_vs_iid") != std::string::npos);
    CHECK(out.find("up_steps_vs_iid") != std::string::npos);

    // a monotone ramp is as far from a fair coin as possible
    const fs::path ramp = wpath("ramp.csv");
    std::ostringstream os;
    os << "value\n";
    for (int i = 0; i < 12; ++i) os << i << "\n";
    write_file(ramp, os.str());
    const fs::path rj = wpath("bien_ramp.json");
    REQUIRE(run_cli("bienayme --input " + ramp.string() + " --column value --null bm --exact " +
                    "--output " + rj.string()) == 0);
    const json j = slurp_json(rj);
    CHECK(j["result"]["turning_points"]["p_value"].get<double>() ==
          Catch::Approx(2.0 / 1024.0).epsilon(1e-9));
    CHECK(j["result"]["up_steps"]["statistic_name"] == "up_steps_vs_bm");
}

TEST_CASE("changepoint finds a clean mean shift and writes the curve", "[cli]") {
    const fs::path step = wpath("step.csv");
    write_step_csv(step, 50, 50, 1.0);
    const fs::path out = wpath("cp.json");
    const fs::path curve = wpath("cp_curve.csv");
    REQUIRE(run_cli("changepoint --input " + step.string() + " --column value --method mean " +
                    "--curve-out " + curve.string() + " --output " + out.string()) == 0);
    const json j = slurp_json(out);
    CHECK(j["meta"]["command"] == "changepoint");
    CHECK(j["result"]["change_point"]["index"] == 50);
    CHECK(j["result"]["change_point"]["sign"] == "max");
    CHECK(j["result"]["change_point"]["value"].get<double>() == 1.0);
    const std::string curve_csv = slurp(curve);
    CHECK(curve_csv.rfind("k,label,value,c_k", 0) == 0);
    CHECK(count_lines(curve_csv) == 100);  // header + k = 1..99
}

TEST_CASE("segment recovers two level shifts", "[cli]") {
    const fs::path steps = wpath("steps.csv");
    std::ostringstream os;
    os << "value\n";
    for (int i = 0; i < 200; ++i) os << 0.0 << "\n";
    for (int i = 0; i < 200; ++i) os << 5.0 << "\n";
    for (int i = 0; i < 200; ++i) os << 0.0 << "\n";
    write_file(steps, os.str());
    const fs::path out = wpath("seg.json");
    REQUIRE(run_cli("segment --input " + steps.string() + " --column value --method mean " +
                    "--margin 20 --min-segment 50 --output " + out.string()) == 0);
    const json j = slurp_json(out);
    REQUIRE(j["result"]["points"].size() == 2);
    CHECK(j["result"]["points"][0]["index"] == 200);
    CHECK(j["result"]["points"][1]["index"] == 400);
    CHECK(j["result"]["all_zero"] == false);
}

TEST_CASE("local emits a plot-ready csv by default", "[cli]") {
    const fs::path step = wpath("local_step.csv");
    write_step_csv(step, 50, 50, 1.0);
    const fs::path out = wpath("local.csv");
    REQUIRE(run_cli("local --input " + step.string() + " --column value --statistic mean " +
                    "--window 10 --output " + out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.find("k,label,value,c_k") != std::string::npos);
    CHECK(csv.find("\n50,,-1,1\n") != std::string::npos);
}

TEST_CASE("variance-lag reports slopes alongside the table", "[cli]") {
    const fs::path out = wpath("var.json");
    REQUIRE(run_cli("variance-lag --model bm --T 100 --trials 60 --lags 1,2 --seed 2 --output " +
                    out.string()) == 0);
    const json j = slurp_json(out);
    CHECK(j["meta"]["seed"] == 2);
    CHECK(j["result"]["trials"] == 60);
    REQUIRE(j["result"]["var_alpha"].size() == 2);
    CHECK(j["result"].contains("slope_var_alpha"));
    CHECK(j["result"].contains("slope_var_beta"));
    CHECK(j["result"]["degenerate"] == false);

    const fs::path csv = wpath("var.csv");
    REQUIRE(run_cli("variance-lag --model bm --T 100 --trials 60 --lags 1,2 --seed 2 "
                    "--format csv --output " + csv.string()) == 0);
    CHECK(slurp(csv).find("lag,mean_alpha,var_alpha,mean_beta,var_beta") != std::string::npos);
}

TEST_CASE("row selection by index and by label range", "[cli]") {
    const fs::path sim = wpath("slice_sim.csv");
    REQUIRE(run_cli("simulate --model bm --T 200 --seed 9 --output " + sim.string()) == 0);
    const fs::path out = wpath("slice_pat.json");
    REQUIRE(run_cli("patterns --input " + sim.string() + " --column value --order 3 --lags 1 " +
                    "--index-range 1:100 --output " + out.string()) == 0);
    CHECK(slurp_json(out)["result"]["length"] == 100);

    const fs::path dated = wpath("dated.csv");
    write_file(dated, "date,close\n"
                      "2001-03-01,10\n"
                      "2002-01-05,11\n"
                      "2002-07-09,9\n"
                      "2003-02-02,12\n"
                      "2004-04-04,8\n");
    const fs::path dout = wpath("dated_sum.json");
    REQUIRE(run_cli("patterns --input " + dated.string() + " --column close --label-column date " +
                    "--range 2002:2003 --order 3 --lags 1 --output " + dout.string()) == 0);
    CHECK(slurp_json(dout)["result"]["length"] == 3);
}
